//! The `floss` command line.
//!
//! Exit codes: 0 success, 1 other failure (I/O, invalid spec, ...), 2 parse
//! or usage error, 3 enumeration cap exceeded, 4 empty domain.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::compile::{compile_theory, emit_problog};
use crate::error::Error;
use crate::forgetting::{forget_fo, ForgettingPolicy, Op};
use crate::logic::DEFAULT_CAP;
use crate::measure::decimal::render_decimal;
use crate::measure::{
    estimate_probability, exact_text, loss_measures, model_count, Mode, ProbabilitySpec,
    RNG_ALGORITHM,
};
use crate::textio::{parse_theory_file, render, TheoryFile};

pub const EXIT_OK: i32 = 0;
pub const EXIT_OTHER: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_CAPACITY: i32 = 3;
pub const EXIT_EMPTY_DOMAIN: i32 = 4;

/// Exit code for a library error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        _ if e.is_parse() => EXIT_PARSE,
        Error::Capacity { .. } => EXIT_CAPACITY,
        Error::EmptyDomain => EXIT_EMPTY_DOMAIN,
        _ => EXIT_OTHER,
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "floss",
    version,
    about = "Forgetting and loss of inferential strength"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Exact,
    Sample,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SpecArg {
    /// Every atom independent with probability 0.5.
    Uniform,
    /// The file's `prob` declarations.
    File,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum OpArg {
    Strong,
    Weak,
    Both,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Probabilities of the theory and both forgettings, and the three losses.
    Measure {
        file: PathBuf,
        /// Comma-separated symbols to forget (overrides `forget:`).
        #[arg(long)]
        policy: Option<String>,
        #[arg(long, value_enum, default_value = "exact")]
        mode: ModeArg,
        #[arg(long, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Largest vocabulary enumerated in exact mode.
        #[arg(long, default_value_t = DEFAULT_CAP as u64, value_parser = clap::value_parser!(u64).range(1..))]
        cap: u64,
        #[arg(long, value_enum, default_value = "file")]
        spec: SpecArg,
        #[arg(long)]
        json: bool,
    },
    /// Print strong and/or weak forgetting of the policy.
    Forget {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "both")]
        op: OpArg,
        #[arg(long)]
        policy: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Emit the theory as a ProbLog program querying its root atom.
    Compile {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "file")]
        spec: SpecArg,
    },
    /// Number of models over the ground vocabulary.
    Count {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_CAP as u64, value_parser = clap::value_parser!(u64).range(1..))]
        cap: u64,
        #[arg(long)]
        json: bool,
    },
    /// Monte Carlo estimate of the theory's probability.
    Sample {
        file: PathBuf,
        #[arg(long, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "file")]
        spec: SpecArg,
        #[arg(long)]
        json: bool,
    },
}

struct Input {
    name: String,
    file: TheoryFile,
}

fn load(path: &Path) -> Result<Input, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::new(EXIT_OTHER, format!("{}: {e}", path.display())))?;
    let file = parse_theory_file(&text).map_err(|e| Failure::from_error(&e, Some(path)))?;
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "theory".into());
    Ok(Input { name, file })
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn new(code: i32, message: String) -> Self {
        Failure { code, message }
    }

    fn from_error(e: &Error, path: Option<&Path>) -> Self {
        let message = match path {
            Some(p) if e.is_parse() => format!("{}:{e}", p.display()),
            _ => e.to_string(),
        };
        Failure::new(exit_code(e), message)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::from_error(&e, None)
    }
}

fn spec_of(input: &Input, which: SpecArg) -> Result<ProbabilitySpec, Failure> {
    match which {
        SpecArg::Uniform => Ok(ProbabilitySpec::uniform()),
        SpecArg::File => Ok(input.file.spec()?),
    }
}

fn policy_of(input: &Input, flag: &Option<String>) -> ForgettingPolicy {
    match flag {
        Some(list) => ForgettingPolicy::parse_list(list),
        None => ForgettingPolicy::new(input.file.policy.as_deref().unwrap_or(&[])),
    }
}

fn json_line(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn execute(cmd: Command) -> Result<String, Failure> {
    match cmd {
        Command::Measure {
            file,
            policy,
            mode,
            samples,
            seed,
            cap,
            spec,
            json,
        } => {
            let input = load(&file)?;
            let theory = input.file.theory(&input.name)?;
            let spec = spec_of(&input, spec)?;
            let mode = match mode {
                ModeArg::Exact => Mode::Exact,
                ModeArg::Sample => Mode::Sample { samples, seed },
            };
            let report = loss_measures(
                &theory,
                input.file.domain(),
                &policy_of(&input, &policy),
                &spec,
                mode,
                cap as usize,
            )?;
            Ok(if json {
                json_line(&report.to_json())
            } else {
                report.to_text()
            })
        }
        Command::Forget {
            file,
            op,
            policy,
            json,
        } => {
            let input = load(&file)?;
            let theory = input.file.theory(&input.name)?;
            let pol = policy_of(&input, &policy);
            let ops: &[Op] = match op {
                OpArg::Strong => &[Op::Strong],
                OpArg::Weak => &[Op::Weak],
                OpArg::Both => &[Op::Strong, Op::Weak],
            };
            let mut results = Vec::new();
            for &o in ops {
                results.push((o, forget_fo(&theory, input.file.domain(), &pol, o)?));
            }
            Ok(if json {
                let mut obj = serde_json::Map::new();
                for (o, f) in &results {
                    obj.insert(o.name().into(), json!(render(f)));
                }
                json_line(&serde_json::Value::Object(obj))
            } else if results.len() == 1 {
                format!("{}\n", render(&results[0].1))
            } else {
                results
                    .iter()
                    .map(|(o, f)| format!("{}: {}\n", o.name(), render(f)))
                    .collect()
            })
        }
        Command::Compile { file, spec } => {
            let input = load(&file)?;
            let theory = input.file.theory(&input.name)?;
            let spec = spec_of(&input, spec)?;
            let program = compile_theory(&theory, input.file.domain())?;
            Ok(emit_problog(
                &program,
                &spec,
                std::slice::from_ref(&program.root),
            ))
        }
        Command::Count { file, cap, json } => {
            let input = load(&file)?;
            let theory = input.file.theory(&input.name)?;
            let ground = theory.ground(input.file.domain())?;
            let n = model_count(&ground.conjunction(), &ground.vocabulary, cap as usize)?;
            Ok(if json {
                json_line(&json!({
                    "theory": input.name,
                    "models": n.to_string(),
                    "world_count": ground.vocabulary.world_count().to_string(),
                }))
            } else {
                format!("{n}\n")
            })
        }
        Command::Sample {
            file,
            samples,
            seed,
            spec,
            json,
        } => {
            let input = load(&file)?;
            let theory = input.file.theory(&input.name)?;
            let spec = spec_of(&input, spec)?;
            let ground = theory.ground(input.file.domain())?;
            let e = estimate_probability(
                &spec,
                &ground.conjunction(),
                &ground.vocabulary,
                samples,
                seed,
            )?;
            let value = e.value();
            Ok(if json {
                json_line(&json!({
                    "theory": input.name,
                    "estimate": exact_text(&value),
                    "std_error": e.std_error(),
                    "successes": e.successes,
                    "rng": { "algorithm": RNG_ALGORITHM, "seed": seed, "samples": samples },
                }))
            } else {
                format!(
                    "estimate: {}\nstd_error: {:.10}\nsamples: {samples}\nseed: {seed}\nrng: {RNG_ALGORITHM}\n",
                    render_decimal(&value, 10),
                    e.std_error()
                )
            })
        }
    }
}

/// Run with explicit arguments (including the program name) and streams.
pub fn run<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(cli.command) {
        Ok(text) => {
            if out.write_all(text.as_bytes()).is_err() {
                return EXIT_OTHER;
            }
            EXIT_OK
        }
        Err(f) => {
            let _ = writeln!(err, "floss: {}", f.message);
            f.code
        }
    }
}
