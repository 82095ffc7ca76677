//! `cmab run | optimum | bound | compare`.
//!
//! Exit codes: 0 success, 2 usage or config error, 3 runtime error.

use std::ffi::OsString;
use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use cmab_core::regret::{bound_lemma1, bound_lemma2, bound_lemma3, bound_lemma4};

use crate::config::{builtin_scenario, Experiment, PolicyName, RunConfig};
use crate::harness::{self, HarnessError};
use crate::output::{self, fmt_sig9};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RUNTIME: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "cmab",
    version,
    about = "Combinatorial semi-bandit experiments"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run an experiment; writes trace.csv and summary.csv.
    Run {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print the static optimum: strategy, normalized value, raw value.
    Optimum(OptimumArgs),
    /// Evaluate a regret bound.
    Bound(BoundArgs),
    /// Run several policies on common seeds; writes compare.csv.
    Compare {
        #[arg(long)]
        config: PathBuf,
        /// Comma-separated policy names (dfl, llr, moss).
        #[arg(long)]
        policies: String,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct OptimumArgs {
    #[arg(long)]
    pub scenario: Option<String>,
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BoundArgs {
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=4))]
    pub lemma: u8,
    #[arg(long)]
    pub n: f64,
    #[arg(long)]
    pub k: f64,
    #[arg(long = "cap-n")]
    pub cap_n: f64,
    #[arg(long)]
    pub beta: Option<f64>,
    #[arg(long)]
    pub delta: Option<f64>,
}

#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl ToString) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.to_string(),
        }
    }

    fn runtime(message: impl ToString) -> Self {
        Self {
            code: EXIT_RUNTIME,
            message: message.to_string(),
        }
    }
}

impl From<HarnessError> for Failure {
    fn from(e: HarnessError) -> Self {
        match e {
            HarnessError::Config(_) => Self::usage(e),
            _ => Self::runtime(e),
        }
    }
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn main_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = stderr.write_all(text.as_bytes());
                EXIT_USAGE
            } else {
                // --help and --version
                let _ = stdout.write_all(text.as_bytes());
                EXIT_OK
            };
        }
    };
    match execute(cli.command, stdout) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

fn execute(command: Command, stdout: &mut dyn Write) -> Result<(), Failure> {
    match command {
        Command::Run { config, out } => {
            let cfg = RunConfig::load(&config).map_err(Failure::usage)?;
            let result = harness::run(&cfg)?;
            create_dir(&out)?;
            write_file(&out.join("trace.csv"), |w| {
                output::write_trace(w, &result.traces)
            })?;
            write_file(&out.join("summary.csv"), |w| {
                output::write_summary(w, &result.summary)
            })
        }
        Command::Optimum(args) => {
            let cfg = match (args.scenario, args.config) {
                (Some(name), _) => builtin_scenario(&name).map_err(Failure::usage)?,
                (None, Some(path)) => RunConfig::load(&path).map_err(Failure::usage)?,
                (None, None) => unreachable!("clap requires one source"),
            };
            let exp = cfg.build().map_err(Failure::usage)?;
            writeln!(stdout, "{}", optimum_line(&exp)).map_err(Failure::runtime)
        }
        Command::Bound(args) => {
            let value = evaluate_bound(&args)?;
            writeln!(stdout, "{value}").map_err(Failure::runtime)
        }
        Command::Compare {
            config,
            policies,
            out,
        } => {
            let names = parse_policies(&policies).map_err(Failure::usage)?;
            let cfg = RunConfig::load(&config).map_err(Failure::usage)?;
            let comparison = harness::compare(&cfg, &names)?;
            create_dir(&out)?;
            write_file(&out.join("compare.csv"), |w| {
                output::write_comparison(w, &comparison)
            })
        }
    }
}

/// `{strategy} <normalized λ₁> <raw λ₁>`
pub fn optimum_line(exp: &Experiment) -> String {
    format!(
        "{} {} {}",
        exp.optimum,
        fmt_sig9(exp.lambda1),
        fmt_sig9(exp.lambda1 * exp.scale)
    )
}

/// Splits a comma-separated list; needs two or more known names.
pub fn parse_policies(list: &str) -> Result<Vec<PolicyName>, String> {
    let names = list
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            PolicyName::parse(s)
                .ok_or_else(|| format!("unknown policy `{s}` (expected dfl, llr or moss)"))
        })
        .collect::<Result<Vec<_>, _>>()?;
    if names.len() < 2 {
        return Err("compare needs at least two policies".into());
    }
    Ok(names)
}

fn evaluate_bound(a: &BoundArgs) -> Result<f64, Failure> {
    let need = |v: Option<f64>, flag: &str| {
        v.ok_or_else(|| Failure::usage(format!("lemma {} requires --{flag}", a.lemma)))
    };
    let value = match a.lemma {
        1 => bound_lemma1(a.n, a.k, a.cap_n),
        2 => bound_lemma2(a.n, a.k, a.cap_n, need(a.delta, "delta")?),
        3 => bound_lemma3(a.n, a.k, a.cap_n, need(a.beta, "beta")?),
        _ => bound_lemma4(
            a.n,
            a.k,
            a.cap_n,
            need(a.beta, "beta")?,
            need(a.delta, "delta")?,
        ),
    };
    value.map_err(Failure::usage)
}

fn create_dir(dir: &Path) -> Result<(), Failure> {
    fs::create_dir_all(dir)
        .map_err(|e| Failure::runtime(format!("cannot create {}: {e}", dir.display())))
}

fn write_file(
    path: &Path,
    body: impl FnOnce(&mut BufWriter<File>) -> std::io::Result<()>,
) -> Result<(), Failure> {
    let fail =
        |e: std::io::Error| Failure::runtime(format!("cannot write {}: {e}", path.display()));
    let mut w = BufWriter::new(File::create(path).map_err(fail)?);
    body(&mut w).map_err(fail)?;
    w.flush().map_err(fail)
}
