//! `ghom`: exact homology of finite groupoids from the command line.

mod commands;
mod preset;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand};
use groupoid_homology::{FinAbGroup, DEFAULT_NERVE_BUDGET};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] groupoid_homology::Error),

    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },

    #[error("cannot parse {path}: {source}")]
    Parse { path: String, source: serde_json::Error },

    #[error("{0}")]
    Usage(String),
}

impl CliError {
    fn kind(&self) -> &'static str {
        match self {
            CliError::Core(e) => e.kind(),
            CliError::Io { .. } => "io",
            CliError::Parse { .. } => "parse",
            CliError::Usage(_) => "usage",
        }
    }

    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) if e.is_verification_failure() => 1,
            _ => 2,
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "ghom", version, about = "Exact homology of finite discrete groupoids")]
struct Cli {
    /// Also write the structured report to this path (`-` for stdout, which replaces the text output)
    #[arg(long, global = true, value_name = "PATH")]
    json: Option<PathBuf>,

    /// Render groups by prime-power summands instead of invariant factors
    #[arg(long, global = true)]
    primary: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write a validated groupoid file for a preset
    Gen {
        /// `units:k`, `cyclic:m`, `pair:k`, `action:m:perm` or `union:a.json,b.json`
        preset: String,
        /// Output path (stdout when omitted)
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Homology of the Moore complex in degrees 0..N-1
    Homology {
        #[command(flatten)]
        run: RunArgs,
        /// Coefficients: `z`, `z/q`, or a sum such as `z^2+z/4+z/6`
        #[arg(long, default_value = "z", value_parser = parse_group)]
        coeff: FinAbGroup,
        /// Include the integral boundary matrices in the structured report
        #[arg(long)]
        dump_complex: bool,
    },
    /// Compare direct homology with coefficients against the universal coefficient formula
    Uct {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, default_value = "z", value_parser = parse_group)]
        coeff: FinAbGroup,
    },
    /// Mayer–Vietoris sequence for a cover by two saturated unit subsets
    Mv {
        #[command(flatten)]
        run: RunArgs,
        /// Positions in the unit list, comma separated
        #[arg(long, value_parser = parse_positions, allow_hyphen_values = true)]
        u1: Positions,
        #[arg(long, value_parser = parse_positions, allow_hyphen_values = true)]
        u2: Positions,
        /// Seed for the randomized alternative lift
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Homology of full shifts and of the family S_n ⊔ I ⊔ S_m
    Sft(SftArgs),
    /// Recover {n, m} from mod-q H_1 data and search for collisions
    Classify {
        #[arg(long, num_args = 2, value_names = ["N", "M"], required = true)]
        family: Vec<u64>,
        #[arg(long, default_value_t = 9)]
        bound: u64,
        #[arg(long, default_value_t = 2520, value_parser = clap::value_parser!(u64).range(1..))]
        qmax: u64,
    },
}

#[derive(Args, Debug)]
struct RunArgs {
    /// Groupoid file
    #[arg(short, long)]
    input: PathBuf,
    /// Number of homology degrees
    #[arg(short = 'N', long, default_value_t = 4, value_parser = clap::value_parser!(u64).range(1..64))]
    max_degree: u64,
    /// Cap on the total number of nerve tuples
    #[arg(long, env = "GH_BUDGET", default_value_t = DEFAULT_NERVE_BUDGET, value_parser = clap::value_parser!(u64).range(1..))]
    budget: u64,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("shape").required(true).args(["full_shift", "family"])))]
struct SftArgs {
    /// Full shift on n symbols
    #[arg(long, value_name = "N")]
    full_shift: Option<u64>,
    #[arg(long, num_args = 2, value_names = ["N", "M"])]
    family: Option<Vec<u64>>,
    /// Single modulus for the family table
    #[arg(long, conflicts_with = "qmax", requires = "family", value_parser = clap::value_parser!(u64).range(1..))]
    q: Option<u64>,
    /// Table for q = 1..=qmax
    #[arg(long, requires = "family", value_parser = clap::value_parser!(u64).range(1..))]
    qmax: Option<u64>,
}

#[derive(Clone, Debug)]
pub struct Positions(pub Vec<usize>);

fn parse_group(s: &str) -> Result<FinAbGroup, String> {
    s.parse().map_err(|e: groupoid_homology::Error| e.to_string())
}

fn parse_positions(s: &str) -> Result<Positions, String> {
    if s.trim().is_empty() || s.trim() == "-" {
        return Ok(Positions(Vec::new()));
    }
    s.split(',')
        .map(|x| x.trim().parse::<usize>().map_err(|_| format!("{x:?} is not a unit position")))
        .collect::<Result<_, _>>()
        .map(Positions)
}

/// Result of one subcommand: text for humans, a report for machines, and the
/// conjunction of every verification performed.
pub struct Outcome {
    pub text: String,
    pub report: serde_json::Value,
    pub passed: bool,
}

#[derive(Serialize)]
struct ErrorReport<'a> {
    error: ErrorBody<'a>,
}

#[derive(Serialize)]
struct ErrorBody<'a> {
    kind: &'a str,
    message: String,
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let style = commands::Style { primary: cli.primary };
    match &cli.command {
        Command::Gen { preset, out } => commands::gen(preset, out.as_deref()),
        Command::Homology { run, coeff, dump_complex } => {
            commands::homology(&run.input, run.max_degree as usize, coeff, run.budget, *dump_complex, style)
        }
        Command::Uct { run, coeff } => commands::uct(&run.input, run.max_degree as usize, coeff, run.budget, style),
        Command::Mv { run, u1, u2, seed } => {
            commands::mv(&run.input, run.max_degree as usize, &u1.0, &u2.0, run.budget, *seed, style)
        }
        Command::Sft(a) => match (a.full_shift, &a.family) {
            (Some(n), _) => commands::full_shift(n, style),
            (None, Some(f)) => {
                let qs: Option<Vec<u64>> = a.q.map(|q| vec![q]).or(a.qmax.map(|m| (1..=m).collect()));
                commands::family(f[0], f[1], qs.as_deref(), style)
            }
            (None, None) => Err(CliError::Usage("one of --full-shift or --family is required".into())),
        },
        Command::Classify { family, bound, qmax } => commands::classify(family[0], family[1], *bound, *qmax, style),
    }
}

fn write_json(path: &std::path::Path, value: &impl Serialize) -> Result<(), CliError> {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    if path.as_os_str() == "-" {
        print!("{s}");
        Ok(())
    } else {
        fs::write(path, s).map_err(|source| CliError::Io { path: path.display().to_string(), source })
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let to_stdout = cli.json.as_deref().is_some_and(|p| p.as_os_str() == "-");
    match run(&cli) {
        Ok(outcome) => {
            if !to_stdout {
                print!("{}", outcome.text);
            }
            if let Some(path) = &cli.json {
                if let Err(e) = write_json(path, &outcome.report) {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            }
            if outcome.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            let report = ErrorReport { error: ErrorBody { kind: e.kind(), message: e.to_string() } };
            eprintln!("{}", serde_json::to_string(&report).expect("error report serializes"));
            if let Some(path) = cli.json.as_deref().filter(|_| !to_stdout) {
                let _ = write_json(path, &report);
            }
            ExitCode::from(e.exit_code())
        }
    }
}
