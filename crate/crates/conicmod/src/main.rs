use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use conicmod::conic::{
    conductor, count_formula, enumerate_solutions, level, scan_rows, Curve,
};
use conicmod::gausssum::{
    closed_form_gp, fbar, gauss_sum_character, gauss_sum_quadratic, quad_exp_sum,
    theta_char_partial, theta_partial,
};
use conicmod::group::{verify_cyclic, z_embed, ZEmbedding};
use conicmod::indexmap::index_table;
use conicmod::report::{render_records, Field, Format, OutputRecord};
use conicmod::symbols::kronecker;
use conicmod::{Error, PrimeModulus};

#[derive(Parser)]
#[command(name = "conicmod", version, about = "Quadratic curves over F_p: counts, group structure, Gaussian sums")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Table)]
    format: FormatArg,
    /// Write output to a file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Table,
    Csv,
    Json,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::Table => Format::Table,
            FormatArg::Csv => Format::Csv,
            FormatArg::Json => Format::Json,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Kronecker symbol (a/n)_K.
    Symbol {
        #[arg(long, allow_negative_numbers = true)]
        a: i64,
        #[arg(long, allow_negative_numbers = true)]
        n: i64,
    },
    /// Solution count N(p) and defect b(p) for y² ≡ ax² + 1 (mod p).
    Count {
        #[arg(long, allow_negative_numbers = true)]
        a: i64,
        #[arg(long)]
        p: u64,
    },
    /// One row per odd prime p ≤ p-max: N(p), b(p), (a/p)_K.
    Scan {
        #[arg(long, allow_negative_numbers = true)]
        a: i64,
        #[arg(long = "p-max")]
        p_max: u64,
    },
    /// Enumerate all solutions (x, y).
    Solutions {
        #[arg(long, allow_negative_numbers = true)]
        a: i64,
        #[arg(long)]
        p: u64,
    },
    /// Generator chain [k]G and Z-embedding table.
    Group {
        #[arg(long, allow_negative_numbers = true)]
        a: i64,
        #[arg(long)]
        p: u64,
    },
    /// Gaussian sum G_p in both expressions plus the closed form.
    Gauss {
        #[arg(long)]
        p: u64,
    },
    /// One period of the generalized Gaussian sum at τ = 1/|a|.
    Fbar {
        #[arg(long, allow_negative_numbers = true)]
        a: i64,
    },
    /// Quadratic exponential sum form for a ≡ 2 (mod 4).
    Quadexp {
        #[arg(long, allow_negative_numbers = true)]
        a: i64,
    },
    /// Truncated G(τ) and ϑ at a point with Im τ > 0.
    Theta {
        #[arg(long = "tau-re", allow_negative_numbers = true)]
        tau_re: f64,
        #[arg(long = "tau-im", allow_negative_numbers = true)]
        tau_im: f64,
        #[arg(long)]
        terms: u32,
    },
    /// The n ↔ m correspondence table for odd a.
    Indexmap {
        #[arg(long)]
        a: u64,
    },
    /// Conductor N_C (and level N_L where defined).
    Conductor {
        #[arg(long, allow_negative_numbers = true)]
        a: i64,
    },
}

fn complex_outputs(rec: OutputRecord, prefix: &str, v: Complex64) -> OutputRecord {
    rec.output(&format!("{prefix}_re"), Field::Float(v.re))
        .output(&format!("{prefix}_im"), Field::Float(v.im))
}

fn run(cli: &Cli) -> Result<Vec<OutputRecord>, Error> {
    match cli.command {
        Command::Symbol { a, n } => Ok(vec![OutputRecord::new("symbol")
            .input("a", Field::Int(a))
            .input("n", Field::Int(n))
            .output("value", Field::Int(kronecker(a, n) as i64))]),
        Command::Count { a, p } => {
            let p = PrimeModulus::new(p)?;
            let count = count_formula(&Curve::new(a, p)?)?;
            Ok(vec![OutputRecord::new("count")
                .input("a", Field::Int(a))
                .input("p", Field::UInt(p.get()))
                .output("N", Field::UInt(count.n))
                .output("b", Field::Int(count.b))])
        }
        Command::Scan { a, p_max } => Ok(scan_rows(a, p_max)?
            .into_iter()
            .map(|row| {
                OutputRecord::new("scan")
                    .input("a", Field::Int(a))
                    .input("p", Field::UInt(row.p))
                    .output("N", Field::UInt(row.n))
                    .output("b", Field::Int(row.b))
                    .output("symbol", Field::Int(row.symbol as i64))
            })
            .collect()),
        Command::Solutions { a, p } => {
            let p = PrimeModulus::new(p)?;
            Ok(enumerate_solutions(&Curve::new(a, p)?)?
                .into_iter()
                .map(|(x, y)| {
                    OutputRecord::new("solutions")
                        .input("a", Field::Int(a))
                        .input("p", Field::UInt(p.get()))
                        .output("x", Field::UInt(x))
                        .output("y", Field::UInt(y))
                })
                .collect())
        }
        Command::Group { a, p } => {
            let p = PrimeModulus::new(p)?;
            let curve = Curve::new(a, p)?;
            let cert = verify_cyclic(&curve)?;
            let emb = ZEmbedding::new(curve)?;
            let mut records = Vec::with_capacity(cert.n as usize);
            for (k, point) in cert.iterates.iter().enumerate() {
                let z = z_embed(point, &emb)?;
                records.push(
                    OutputRecord::new("group")
                        .input("a", Field::Int(a))
                        .input("p", Field::UInt(p.get()))
                        .output("k", Field::UInt(k as u64 + 1))
                        .output("x", Field::UInt(point.x()))
                        .output("y", Field::UInt(point.y()))
                        .output("z_u", Field::UInt(z.u))
                        .output("z_v", Field::UInt(z.v))
                        .output("d", Field::UInt(z.d)),
                );
            }
            Ok(records)
        }
        Command::Gauss { p } => {
            let p = PrimeModulus::new(p)?;
            let rec = OutputRecord::new("gauss").input("p", Field::UInt(p.get()));
            let rec = complex_outputs(rec, "character", gauss_sum_character(p)?);
            let rec = complex_outputs(rec, "quadratic", gauss_sum_quadratic(p)?);
            let rec = complex_outputs(rec, "closed", closed_form_gp(p)?);
            Ok(vec![rec])
        }
        Command::Fbar { a } => {
            let r = fbar(a)?;
            let terms: Vec<String> = r
                .terms
                .iter()
                .map(|&(n, c)| format!("{}{}^{}", if c > 0 { "+" } else { "-" }, r.nome.label(), n))
                .collect();
            let mut rec = OutputRecord::new("fbar")
                .input("a", Field::Int(a))
                .output("value_re", Field::Float(r.value.re))
                .output("value_im", Field::Float(r.value.im))
                .output("period", Field::UInt(r.period))
                .output("nome", Field::Text(r.nome.label().to_string()))
                .output("terms", Field::Text(terms.join("")));
            if let Some(cf) = r.closed_form {
                rec = complex_outputs(rec, "closed_form", cf);
            }
            Ok(vec![rec])
        }
        Command::Quadexp { a } => {
            let rec = OutputRecord::new("quadexp").input("a", Field::Int(a));
            Ok(vec![complex_outputs(rec, "value", quad_exp_sum(a)?)])
        }
        Command::Theta { tau_re, tau_im, terms } => {
            let rec = OutputRecord::new("theta")
                .input("tau_re", Field::Float(tau_re))
                .input("tau_im", Field::Float(tau_im))
                .input("terms", Field::UInt(terms as u64));
            let rec = complex_outputs(rec, "g", theta_partial(tau_re, tau_im, terms)?);
            let rec = complex_outputs(rec, "theta", theta_char_partial(tau_re, tau_im, terms)?);
            Ok(vec![rec])
        }
        Command::Indexmap { a } => Ok(index_table(a)?
            .into_iter()
            .map(|t| {
                OutputRecord::new("indexmap")
                    .input("a", Field::UInt(a))
                    .output("m", Field::UInt(t.m))
                    .output("ell", Field::UInt(t.ell))
                    .output("n", Field::UInt(t.n))
            })
            .collect()),
        Command::Conductor { a } => {
            let mut rec = OutputRecord::new("conductor")
                .input("a", Field::Int(a))
                .output("conductor", Field::UInt(conductor(a)?));
            if let Ok(nl) = level(a) {
                rec = rec.output("level", Field::UInt(nl));
            }
            Ok(vec![rec])
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let records = match run(&cli) {
        Ok(records) => records,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let rendered = render_records(&records, cli.format.into());
    let result = match &cli.output {
        Some(path) => fs::write(path, rendered),
        None => std::io::stdout().write_all(rendered.as_bytes()),
    };
    if let Err(e) = result {
        eprintln!("error: {e}");
        return ExitCode::from(1);
    }
    ExitCode::SUCCESS
}
