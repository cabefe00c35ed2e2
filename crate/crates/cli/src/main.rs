use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use wqsym_core::charseries::{adams, eulerian_idempotent, sigma_hat};
use wqsym_core::expr::{self, Context};
use wqsym_core::packedword::{realize, PackedWord};
use wqsym_core::qsym::{lyndon_generator_report, MAX_REPORT_WEIGHT};
use wqsym_core::rational;
use wqsym_core::verify::{self, SuiteConfig};
use wqsym_core::Error;

const DEFAULT_DEGREE: usize = 5;
const HARD_CAP: usize = 7;
const MAX_ALPHABET: usize = 8;

#[derive(Parser)]
#[command(name = "wqsym", version, about = "Exact computations in WQSym, its characteristic series and QSym")]
struct Cli {
    /// Truncation degree for series and suites.
    #[arg(long, global = true, default_value_t = DEFAULT_DEGREE)]
    degree: usize,
    /// Seed for the verification suites.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Seeded cases per suite.
    #[arg(long, global = true, default_value_t = 100)]
    cases: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Generators of the coefficient algebra used by quasi-shuffle suites.
    #[arg(long, global = true, default_value_t = 3)]
    generators: u16,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Object {
    Psi,
    E,
    #[value(name = "sigma_t")]
    SigmaT,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate an expression such as "M[1,1] * M[2,1]".
    Eval { expr: String },
    /// Expand Psi(k), e(i) or sigma_t up to the degree.
    Expand {
        #[arg(value_enum)]
        object: Object,
        /// k for psi, i for e, the rational t for sigma_t.
        index: String,
    },
    /// Run a verification suite (or "all").
    Verify { suite: String },
    /// List the words over [1..m] that pack to the given packed word.
    Realize {
        word: String,
        #[arg(long)]
        alphabet: usize,
    },
    /// Rank of the Lyndon generator products at each weight.
    Generators,
}

struct Failed(u8, String);

impl From<Error> for Failed {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::BasisMismatch(_) => 3,
            Error::CutoffExceeded { .. } | Error::ResourceLimit { .. } | Error::WordTooLong(_) => 4,
            _ => 2,
        };
        Failed(code, e.to_string())
    }
}

fn hard_cap() -> usize {
    std::env::var("WQSYM_MAX_DEGREE").ok().and_then(|v| v.parse().ok()).unwrap_or(HARD_CAP)
}

fn check_degree(degree: usize) -> Result<(), Failed> {
    let cap = hard_cap();
    if degree > cap {
        return Err(Error::ResourceLimit { what: "degree", requested: degree, cap }.into());
    }
    if degree > DEFAULT_DEGREE {
        eprintln!("warning: degree {degree} exceeds {DEFAULT_DEGREE}; memory use grows with the Fubini numbers");
    }
    Ok(())
}

fn parse_word(s: &str) -> Result<PackedWord, Failed> {
    let letters: Vec<u32> = if s.contains(',') || s.contains('[') {
        s.trim_matches(|c| c == '[' || c == ']')
            .split(',')
            .map(|p| p.trim().parse().map_err(|_| Failed(2, format!("invalid letter {p:?}"))))
            .collect::<Result<_, _>>()?
    } else {
        s.chars()
            .map(|c| c.to_digit(10).ok_or_else(|| Failed(2, format!("invalid letter {c:?}"))))
            .collect::<Result<_, _>>()?
    };
    Ok(PackedWord::new(&letters)?)
}

fn emit(format: Format, text: String, value: serde_json::Value) {
    match format {
        Format::Text => println!("{text}"),
        Format::Json => println!("{value}"),
    }
}

fn run(cli: Cli) -> Result<u8, Failed> {
    let Cli { degree, seed, cases, format, generators, command } = cli;
    match command {
        Command::Eval { expr } => {
            check_degree(degree)?;
            let v = expr::eval_str(&expr, &Context::new(degree, hard_cap()))?;
            emit(format, v.to_string(), v.to_json_value());
        }
        Command::Expand { object, index } => {
            check_degree(degree)?;
            let s = match object {
                Object::Psi => adams(parse_index(&index)?, degree),
                Object::E => eulerian_idempotent(parse_index(&index)?, degree),
                Object::SigmaT => sigma_hat(&rational::parse(&index)?, degree),
            };
            emit(format, s.to_string(), s.to_json_value());
        }
        Command::Verify { suite } => {
            check_degree(degree)?;
            let cfg = SuiteConfig { degree, seed, cases, generators, ..Default::default() };
            let reports = verify::run(&suite, &cfg)?;
            let passed = reports.iter().all(|r| r.passed);
            for r in &reports {
                eprintln!("{}: {:.3}s", r.suite, r.wall_time.as_secs_f64());
            }
            let mut text = Vec::new();
            for r in &reports {
                text.push(r.summary_line());
                for f in &r.failures {
                    text.push(format!("  case {} [{}]: {}", f.case, f.check, f.reproducer));
                }
            }
            let value = if suite == "all" {
                json!({ "suite": "all", "passed": passed, "reports": reports })
            } else {
                serde_json::to_value(&reports[0]).expect("serializable")
            };
            emit(format, text.join("\n"), value);
            return Ok(if passed { 0 } else { 1 });
        }
        Command::Realize { word, alphabet } => {
            if alphabet > MAX_ALPHABET {
                return Err(Error::ResourceLimit { what: "alphabet size", requested: alphabet, cap: MAX_ALPHABET }.into());
            }
            let u = parse_word(&word)?;
            let words = realize(&u, alphabet);
            let text = words
                .iter()
                .map(|w| w.iter().map(u32::to_string).collect::<String>())
                .collect::<Vec<_>>()
                .join("\n");
            emit(format, text, json!(words));
        }
        Command::Generators => {
            if degree > MAX_REPORT_WEIGHT {
                return Err(Error::ResourceLimit { what: "generator weight", requested: degree, cap: MAX_REPORT_WEIGHT }.into());
            }
            let report = lyndon_generator_report(degree)?;
            let ok = report.iter().all(|g| g.full_rank);
            let text = report
                .iter()
                .map(|g| {
                    let lyndon: Vec<String> = g.lyndon.iter().map(ToString::to_string).collect();
                    format!(
                        "weight {}: {} Lyndon [{}], rank {}/{}{}",
                        g.weight,
                        g.lyndon.len(),
                        lyndon.join(" "),
                        g.rank,
                        g.dimension,
                        if g.full_rank { " full" } else { " DEFICIENT" }
                    )
                })
                .collect::<Vec<_>>()
                .join("\n");
            emit(format, text, json!(report));
            return Ok(if ok { 0 } else { 1 });
        }
    }
    Ok(0)
}

fn parse_index(s: &str) -> Result<usize, Failed> {
    s.parse().map_err(|_| Failed(2, format!("expected a nonnegative integer, found {s:?}")))
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(Failed(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
