use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use dp4_core::algebra::Field;
use dp4_core::classifier::classify_line;
use dp4_core::ffcount::{count, VarietyId};
use dp4_core::grassmann::FlagLine;
use dp4_core::poincare::{
    odd_primes, pp_blowup, pp_projective, run_stable_maps_chain, ComparisonStatus, D_DEGREE,
    H2_DEGREE,
};
use dp4_core::report::{parse_suites, run, RunConfig};
use dp4_core::{Error, Result};

#[derive(Parser)]
#[command(name = "dp4", version, about = "Verification engine for the quintic del Pezzo fourfold")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites and emit a JSON report.
    Verify {
        /// `all` or a comma-separated list of suites.
        suites: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_delimiter = ',', default_value = "3,5,7,11")]
        primes: Vec<u64>,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Worker threads.
        #[arg(long, env = "DP4_JOBS")]
        jobs: Option<usize>,
    },
    /// Classify the line of lines through `vertex` inside `plane`.
    ClassifyLine {
        #[arg(long)]
        vertex: String,
        #[arg(long)]
        plane: String,
        /// `QQ` or a prime.
        #[arg(long, default_value = "QQ")]
        field: String,
    },
    /// Count the `F_q`-points of a variety.
    Count {
        #[arg(long)]
        variety: String,
        #[arg(long)]
        q: u64,
    },
    /// Evaluate a Poincaré polynomial chain.
    Poincare {
        #[arg(long, value_enum)]
        chain: Chain,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Chain {
    StableMaps,
    H1yBlowup,
}

fn parse_field(s: &str) -> Result<Field> {
    match s {
        "QQ" | "Q" | "qq" => Ok(Field::Rational),
        _ => Field::prime(
            s.parse()
                .map_err(|_| Error::InvalidInput(format!("unknown field `{s}`")))?,
        ),
    }
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn print(v: &serde_json::Value) {
    emit(&serde_json::to_string_pretty(v).expect("json"));
}

fn execute(cmd: Command) -> Result<u8> {
    match cmd {
        Command::Verify {
            suites,
            seed,
            primes,
            samples,
            out,
            jobs,
        } => {
            let jobs = jobs.unwrap_or_else(|| {
                std::thread::available_parallelism().map_or(1, |n| n.get())
            });
            let config = RunConfig {
                primes,
                samples,
                seed,
                suites: parse_suites(&suites)?,
                jobs,
            };
            let report = run(&config)?;
            let text = report.to_json();
            match out {
                Some(path) => {
                    std::fs::write(&path, text + "\n")
                        .map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
                    let s = report.summary;
                    eprintln!(
                        "{} pass, {} fail, {} flagged -> {}",
                        s.pass,
                        s.fail,
                        s.flagged,
                        path.display()
                    );
                }
                None => emit(&text),
            }
            Ok(report.exit_code() as u8)
        }
        Command::ClassifyLine {
            vertex,
            plane,
            field,
        } => {
            let line = FlagLine::parse(parse_field(&field)?, &vertex, &plane)?;
            let c = classify_line(&line)?;
            print(&json!({
                "type": c.line_type,
                "normal_bundle": c.normal_bundle,
                "support_points": c.support_points,
                "family_dim": c.family_dim,
                "meets_s": c.meets_s,
                "in_r": c.in_r_by_elimination,
                "flags": c.flags,
            }));
            Ok(0)
        }
        Command::Count { variety, q } => {
            let v: VarietyId = variety.parse()?;
            let start = Instant::now();
            let n = count(v, q)?;
            print(&json!({
                "variety": v.name(),
                "q": q,
                "count": n,
                "elapsed_ms": start.elapsed().as_millis() as u64,
            }));
            Ok(0)
        }
        Command::Poincare { chain } => {
            match chain {
                Chain::StableMaps => {
                    let c = run_stable_maps_chain(
                        &odd_primes(H2_DEGREE + 2),
                        &odd_primes(D_DEGREE + 2),
                    );
                    let primary = c.primary();
                    print(&json!({
                        "chain": "stable-maps",
                        "status": primary.map(|p| p.status),
                        "result": primary.map(|p| p.result.to_string()),
                        "target": primary.map(|p| p.target.to_string()),
                        "details": c,
                    }));
                    if primary.map(|p| p.status) != Some(ComparisonStatus::Pass) {
                        eprintln!("stable-maps chain flagged");
                    }
                }
                Chain::H1yBlowup => {
                    let p = pp_blowup(&pp_projective(4), &pp_projective(1), 3)?;
                    let checks: Vec<_> = [3u64, 5]
                        .iter()
                        .map(|&q| {
                            let n = count(VarietyId::H1Y, q)?;
                            Ok(json!({ "q": q, "count": n, "poincare_at_q": p.eval_q(q as i64).to_string() }))
                        })
                        .collect::<Result<_>>()?;
                    print(&json!({ "chain": "h1y-blowup", "poincare": p.to_string(), "checks": checks }));
                }
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
