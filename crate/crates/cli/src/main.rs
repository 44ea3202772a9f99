//! `syang`: exact computations with super Yangian modules, with a
//! content-addressed result cache.

mod cache;
mod commands;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use syang_core::codec::{rational_to_json, to_canonical_string};
use syang_core::exactmath::rational::parse;
use syang_core::suites::DEFAULT_SEED;

use cache::{Cache, JobManifest, ResultRecord};
use commands::{run, Outcome, EXIT_FAILURE, EXIT_INPUT};

#[derive(Parser, Debug)]
#[command(name = "syang", version, about = "Exact super Yangian Y(gl(M|N)) toolkit")]
struct Cli {
    /// Grading context as `M,N`.
    #[arg(long, global = true, value_parser = parse_ctx)]
    ctx: Option<(usize, usize)>,
    /// Comma-separated exact shifts, first entry 0 (e.g. `0,1/2`).
    #[arg(long, global = true, allow_hyphen_values = true)]
    alphas: Option<String>,
    /// Total-level cutoff of the induced construction.
    #[arg(long, global = true)]
    cutoff: Option<usize>,
    /// Highest mode level checked by relation sweeps.
    #[arg(long, global = true)]
    level_max: Option<usize>,
    /// Seed for randomized sweeps.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Write the JSON result here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Recompute; if a cached record exists, fail unless it matches.
    #[arg(long, global = true)]
    no_cache: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// PBW normal form of an algebra element.
    Straighten { element: PathBuf },
    /// Evaluation module of a gl(M|N) module (default: the vector module).
    EvalRep {
        /// gl(M|N) module JSON.
        #[arg(long)]
        gl: Option<PathBuf>,
        /// Tensor power of the vector module.
        #[arg(long)]
        copies: Option<usize>,
        /// One-dimensional character twisting the tensor power.
        #[arg(long, allow_hyphen_values = true)]
        twist: Option<String>,
        /// Target gl highest weight inside the tensor word, comma-separated.
        #[arg(long, allow_hyphen_values = true)]
        weight: Option<String>,
    },
    /// Shifted tensor product of module files (default: vector evaluation modules).
    Tensor { modules: Vec<PathBuf> },
    /// Irreducible quotient generated by the first maximal vector.
    Irrep {
        /// Module JSON; without it, the shifted tensor of vector modules at --alphas.
        module: Option<PathBuf>,
    },
    /// Maximal vectors and their highest weights.
    Hw { module: PathBuf },
    /// Finite-dimensionality verdict, Drinfeld data and fundamental factors.
    CheckFd { weight: PathBuf },
    /// Degree-truncated induced module over a one-dimensional V0 (experimental).
    Induced {
        /// Highest weight JSON for V0 (default: the vector evaluation weight).
        weight: Option<PathBuf>,
    },
    /// Run a verification suite.
    Verify {
        suite: Suite,
        /// Module JSON to check instead of the built-in list (relations suite).
        #[arg(long)]
        module: Option<PathBuf>,
        /// Random cases per property (pbw suite).
        #[arg(long)]
        samples: Option<usize>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Suite {
    Pbw,
    Relations,
    Hopf,
    Oracle,
}

fn parse_ctx(s: &str) -> std::result::Result<(usize, usize), String> {
    let (m, n) = s.split_once(',').ok_or("expected M,N")?;
    let p = |x: &str| x.trim().parse::<usize>().map_err(|e| format!("{x}: {e}"));
    Ok((p(m)?, p(n)?))
}

fn rational_list(s: &str) -> Result<Value> {
    let xs = s
        .split(',')
        .map(|x| parse(x.trim()).map(|r| rational_to_json(&r)))
        .collect::<syang_core::Result<Vec<_>>>()
        .with_context(|| format!("parsing rational list \"{s}\""))?;
    Ok(Value::Array(xs))
}

fn read_json(path: &Path) -> Result<Value> {
    let text = if path == Path::new("-") {
        std::io::read_to_string(std::io::stdin())?
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?
    };
    serde_json::from_str(&text).with_context(|| format!("{} is not valid JSON", path.display()))
}

fn opt_json(path: &Option<PathBuf>) -> Result<Value> {
    path.as_deref().map_or(Ok(Value::Null), read_json)
}

/// Resolves flags and file contents into a canonical manifest.
fn manifest(cli: &Cli) -> Result<JobManifest> {
    let alphas = cli.alphas.as_deref().map(rational_list).transpose()?.unwrap_or(Value::Null);
    let (command, inputs) = match &cli.command {
        Command::Straighten { element } => ("straighten", json!({"element": read_json(element)?})),
        Command::EvalRep {
            gl,
            copies,
            twist,
            weight,
        } => {
            let twist = match twist {
                Some(t) => rational_to_json(&parse(t)?),
                None => Value::Null,
            };
            let weight = weight.as_deref().map(rational_list).transpose()?.unwrap_or(Value::Null);
            ("eval-rep", json!({"gl": opt_json(gl)?, "copies": copies, "twist": twist, "weight": weight}))
        }
        Command::Tensor { modules } => {
            let ms = modules.iter().map(|p| read_json(p)).collect::<Result<Vec<_>>>()?;
            if alphas.is_null() {
                bail!("tensor needs --alphas");
            }
            ("tensor", json!({"modules": ms, "alphas": alphas}))
        }
        Command::Irrep { module } => ("irrep", json!({"module": opt_json(module)?, "alphas": alphas})),
        Command::Hw { module } => ("hw", json!({"module": read_json(module)?})),
        Command::CheckFd { weight } => ("check-fd", json!({"weight": read_json(weight)?})),
        Command::Induced { weight } => ("induced", json!({"weight": opt_json(weight)?, "cutoff": cli.cutoff})),
        Command::Verify { suite, module, samples } => {
            let name = format!("{suite:?}").to_lowercase();
            let level = cli.level_max;
            ("verify", json!({"suite": name, "module": opt_json(module)?, "samples": samples, "level_max": level}))
        }
    };
    Ok(JobManifest {
        command: command.to_string(),
        ctx: cli.ctx,
        inputs,
        seed: cli.seed,
    })
}

fn emit(cli: &Cli, output: &Value) -> Result<()> {
    let text = to_canonical_string(output);
    match &cli.out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn execute(cli: &Cli) -> Result<i32> {
    let m = manifest(cli)?;
    let cache = Cache::from_env();
    let cached = cache.get(&m);
    if let (false, Some(rec)) = (cli.no_cache, &cached) {
        emit(cli, &rec.outputs)?;
        return Ok(rec.exit_code);
    }
    let start = Instant::now();
    let Outcome { output, exit_code } = run(&m)?;
    let elapsed = start.elapsed().as_millis();
    if cli.no_cache {
        if let Some(rec) = cached {
            if rec.outputs != output || rec.exit_code != exit_code {
                emit(cli, &output)?;
                eprintln!("syang: cached record {} differs from the recomputation", m.key());
                return Ok(EXIT_FAILURE);
            }
            eprintln!("syang: recomputation matches cached record {}", m.key());
        }
    } else {
        let rec = ResultRecord {
            manifest: m.to_json(),
            outputs: output.clone(),
            exit_code,
            timings_ms: elapsed,
            kernel_version: syang_core::KERNEL_VERSION.to_string(),
        };
        if let Err(e) = cache.put(&m, &rec) {
            eprintln!("syang: warning: result not cached: {e:#}");
        }
    }
    if m.command == "induced" && output.get("stabilized") == Some(&Value::Bool(false)) {
        eprintln!("syang: warning: induced construction did not stabilize at this cutoff (experimental)");
    }
    emit(cli, &output)?;
    Ok(exit_code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("syang: error: {e:#}");
            ExitCode::from(EXIT_INPUT as u8)
        }
    }
}
