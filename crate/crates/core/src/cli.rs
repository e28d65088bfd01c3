//! Command-line front end: `solve`, `bench`, `gen`, `verify`.
//!
//! Exit codes: 0 success, 1 usage or parse error, 2 infeasible, 3 internal error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::bench::{records_to_csv, run_suite, threads_from_env, Algo, Suite};
use crate::error::Error;
use crate::model::{
    gen_3partition_instance, gen_random_instance, parse_instance, parse_schedule, serialize_instance,
    serialize_schedule, validate_schedule, RandomSpec,
};
use crate::rational::{exact, parse_rational, Rational};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INFEASIBLE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "sched", about = "Scheduling with a complete multipartite incompatibility graph")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve an instance and write the schedule.
    Solve {
        #[arg(long, value_parser = parse_algo)]
        algo: Algo,
        /// Accuracy for ptas-cmax, e.g. 1/4 or 0.25.
        #[arg(long, value_parser = parse_positive_rational)]
        epsilon: Option<Rational>,
        #[arg(short = 'i', long = "input")]
        input: PathBuf,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Run a benchmark suite and print CSV.
    Bench {
        #[arg(long, value_parser = parse_suite)]
        suite: Suite,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate an instance file.
    Gen {
        #[arg(long = "type", value_enum)]
        kind: GenKind,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, default_value_t = 3)]
        m: usize,
        #[arg(long, default_value_t = 2)]
        n_min: usize,
        #[arg(long, default_value_t = 8)]
        n_max: usize,
        #[arg(long, default_value_t = 5)]
        p_max: u64,
        #[arg(long, default_value_t = 4)]
        speed_max: u64,
        /// Unit processing times.
        #[arg(long)]
        unit: bool,
        /// 3-Partition numbers, comma separated.
        #[arg(long, value_delimiter = ',')]
        a: Vec<u64>,
        /// 3-Partition bound.
        #[arg(long)]
        b: Option<u64>,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Check a schedule against an instance.
    Verify {
        #[arg(short = 'i', long = "input")]
        input: PathBuf,
        #[arg(short = 's', long = "schedule")]
        schedule: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum GenKind {
    Random,
    #[value(name = "3partition")]
    ThreePartition,
}

fn parse_algo(s: &str) -> Result<Algo, String> {
    s.parse()
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse()
}

fn parse_positive_rational(s: &str) -> Result<Rational, String> {
    match parse_rational(s) {
        Some(x) if x > Rational::from_integer(0.into()) => Ok(x),
        _ => Err(format!("`{s}` is not a positive rational")),
    }
}

/// Exit code for a library error.
pub fn exit_code(error: &Error) -> i32 {
    match error {
        Error::Infeasible { .. } => EXIT_INFEASIBLE,
        Error::Internal(_)
        | Error::LpInfeasible
        | Error::LpUnbounded
        | Error::NoFeasibleFlow
        | Error::BadChain(_)
        | Error::NoCovering => EXIT_INTERNAL,
        _ => EXIT_USAGE,
    }
}

enum Failure {
    Usage(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn read(path: &PathBuf) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

fn write(path: &PathBuf, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))
}

/// Runs the CLI with `args` (including the program name); returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Lib(e)) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<i32, Failure> {
    match command {
        Command::Solve { algo, epsilon, input, output } => {
            if algo == Algo::PtasCmax && epsilon.is_none() {
                return Err(Failure::Usage("ptas-cmax requires --epsilon".into()));
            }
            let instance = parse_instance(&read(&input)?)?;
            let (schedule, value) = crate::bench::run_algo(algo, &instance, epsilon.as_ref())?;
            if let Some(path) = output {
                write(&path, &serialize_schedule(&schedule))?;
            }
            let _ = writeln!(out, "algo={} objective={} value={}", algo.name(), algo.objective(), exact(&value));
            Ok(EXIT_OK)
        }
        Command::Bench { suite, seed, out: path } => {
            let records = run_suite(suite, seed, threads_from_env())?;
            let csv = records_to_csv(&records);
            match path {
                Some(p) => write(&p, &csv)?,
                None => {
                    let _ = write!(out, "{csv}");
                }
            }
            Ok(EXIT_OK)
        }
        Command::Gen { kind, seed, k, m, n_min, n_max, p_max, speed_max, unit, a, b, output } => {
            let instance = match kind {
                GenKind::Random => {
                    if k == 0 || m == 0 || n_min > n_max || p_max == 0 || speed_max == 0 {
                        return Err(Failure::Usage("random instances need k, m, p-max, speed-max ≥ 1 and n-min ≤ n-max".into()));
                    }
                    gen_random_instance(&RandomSpec { seed, k, m, n: n_min..=n_max, p: 1..=p_max, speeds: 1..=speed_max, unit })
                }
                GenKind::ThreePartition => {
                    let b = b.ok_or_else(|| Failure::Usage("3partition requires --b".into()))?;
                    gen_3partition_instance(&a, b)?.0
                }
            };
            let text = serialize_instance(&instance);
            match output {
                Some(p) => write(&p, &text)?,
                None => {
                    let _ = write!(out, "{text}");
                }
            }
            Ok(EXIT_OK)
        }
        Command::Verify { input, schedule } => {
            let instance = parse_instance(&read(&input)?)?;
            let schedule = parse_schedule(&read(&schedule)?)?;
            match validate_schedule(&instance, &schedule) {
                Ok(()) => {
                    let _ = writeln!(out, "ok");
                    Ok(EXIT_OK)
                }
                Err(v) => Err(Failure::Lib(Error::InvalidSchedule(v))),
            }
        }
    }
}
