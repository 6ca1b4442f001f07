//! Quadratic curves y² ≡ ax² + 1 over F_p: solution counting in three
//! independent ways, the cyclic group structure on the solution set,
//! Kronecker-symbol machinery, generalized Gaussian sums with extracted
//! periods, and the index bijection underpinning the re-indexed sums.

pub mod conic;
pub mod error;
pub mod gausssum;
pub mod group;
pub mod indexmap;
pub mod modarith;
pub mod parallel;
pub mod report;
pub mod symbols;

pub use error::{Error, Result};
pub use modarith::{Fp2Elem, PrimeModulus};
