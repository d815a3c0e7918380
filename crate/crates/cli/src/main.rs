mod cache;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use ringlab::constructions::{ideal_generated, quotient_by_ideal, Limits, DEFAULT_MAX_CARD};
use ringlab::dsl::{self, DslError};
use ringlab::structure::Analysis;
use ringlab::verify::{catalog, Harness};
use ringlab::{BuildError, Elem, Ring};
use serde_json::{json, Value};

use cache::Cache;

/// Finite rings: clean-family classification and claim verification.
#[derive(Parser)]
#[command(name = "ringlab", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    global: Global,
}

#[derive(Args)]
struct Global {
    /// Emit structured JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Largest ring card any construction may produce.
    #[arg(long, global = true, env = "RINGLAB_MAX_CARD", default_value_t = DEFAULT_MAX_CARD)]
    max_card: u64,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a ring against every clean-family property.
    Classify {
        expr: String,
        /// Include counterexample displays.
        #[arg(long)]
        witness: bool,
        /// Quotient by the ideal generated by these element indices first.
        #[arg(long, value_delimiter = ',')]
        ideal: Vec<u32>,
        /// Directory of the result cache.
        #[arg(long, env = "RINGLAB_CACHE_DIR")]
        cache_dir: Option<PathBuf>,
        /// Report computation times (disables byte-stable output).
        #[arg(long)]
        timings: bool,
    },
    /// Decompose one element given by its canonical index.
    Element {
        expr: String,
        index: u32,
        #[arg(long, value_delimiter = ',')]
        ideal: Vec<u32>,
    },
    /// Run the claim-verification suite.
    Verify {
        /// Run only these check ids.
        #[arg(long, value_delimiter = ',')]
        only: Vec<String>,
    },
    /// List the ring catalog with expected flags.
    Catalog,
}

/// Exit-code-carrying failure.
struct Failure {
    code: u8,
    message: String,
}

impl From<BuildError> for Failure {
    fn from(e: BuildError) -> Self {
        let code = if matches!(e, BuildError::Guard { .. }) { 3 } else { 2 };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<DslError> for Failure {
    fn from(e: DslError) -> Self {
        match e {
            DslError::Build(b) => b.into(),
            parse => Failure {
                code: 2,
                message: parse.to_string(),
            },
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

/// Parses, optionally quotients, and returns the canonical key plus ring.
fn load(expr: &str, ideal: &[u32], limits: &Limits) -> Result<(String, Ring), Failure> {
    let e = dsl::parse(expr).map_err(DslError::from)?;
    let mut key = dsl::canonical(&e);
    let ring = dsl::build(&e, limits)?;
    if ideal.is_empty() {
        return Ok((key, ring));
    }
    if let Some(bad) = ideal.iter().find(|&&g| g as usize >= ring.card()) {
        return Err(usage(format!("ideal generator {bad} out of range for card {}", ring.card())));
    }
    let gens: Vec<Elem> = ideal.iter().map(|&g| Elem(g)).collect();
    let q = quotient_by_ideal(&ring, &ideal_generated(&ring, &gens))?;
    let list: Vec<String> = ideal.iter().map(u32::to_string).collect();
    key = format!("{key} / <{}>", list.join(","));
    Ok((key, q.ring))
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let limits = Limits::from_env().with_max_card(cli.global.max_card);
    match cli.command {
        Command::Classify {
            expr,
            witness,
            ideal,
            cache_dir,
            timings,
        } => {
            let started = Instant::now();
            let pre = dsl::parse(&expr).map_err(DslError::from)?;
            let cache = cache_dir.as_deref().map(Cache::new);
            let mut key = dsl::canonical(&pre);
            if !ideal.is_empty() {
                let list: Vec<String> = ideal.iter().map(u32::to_string).collect();
                key = format!("{key} / <{}>", list.join(","));
            }
            let cached = cache.as_ref().and_then(|c| c.get(&key)).filter(|v| {
                // a cached ring still has to respect the current guard
                v["card"].as_u64().is_some_and(|card| card <= limits.max_card)
            });
            let mut value = match cached {
                Some(v) => v,
                None => {
                    let (key, ring) = load(&expr, &ideal, &limits)?;
                    let built = started.elapsed();
                    let an = Analysis::new(ring);
                    let mut v = report::classify_value(&key, &an);
                    if let Some(c) = &cache {
                        if let Err(e) = c.put(&key, &v) {
                            eprintln!("warning: cache write failed: {e}");
                        }
                    }
                    if timings {
                        v["timings"] = json!({
                            "build_ms": built.as_secs_f64() * 1e3,
                            "total_ms": started.elapsed().as_secs_f64() * 1e3,
                        });
                    }
                    v
                }
            };
            if timings && value.get("timings").is_none() {
                value["timings"] = json!({ "cached": true, "total_ms": started.elapsed().as_secs_f64() * 1e3 });
            }
            if !witness {
                value.as_object_mut().expect("object").remove("witnesses");
            }
            if cli.global.json {
                print_json(&value);
            } else {
                print!("{}", report::classify_text(&value, witness));
            }
            Ok(0)
        }
        Command::Element { expr, index, ideal } => {
            let (key, ring) = load(&expr, &ideal, &limits)?;
            if index as usize >= ring.card() {
                return Err(usage(format!("element {index} out of range for card {}", ring.card())));
            }
            let an = Analysis::new(ring);
            let v = report::element_value(&key, &an, Elem(index));
            if cli.global.json {
                print_json(&v);
            } else {
                print!("{}", report::element_text(&v));
            }
            Ok(0)
        }
        Command::Verify { only } => {
            let harness = Harness::new(limits);
            let rep = harness.run_all(&only).map_err(usage)?;
            if cli.global.json {
                print_json(&serde_json::to_value(&rep).expect("serializable"));
            } else {
                print!("{}", report::verify_text(&rep));
            }
            Ok(if rep.summary.failed > 0 { 1 } else { 0 })
        }
        Command::Catalog => {
            let entries = catalog();
            if cli.global.json {
                print_json(&report::catalog_value(&entries));
            } else {
                print!("{}", report::catalog_text(&entries));
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.global.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
