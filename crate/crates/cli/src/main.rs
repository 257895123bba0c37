mod commands;
mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

use commands::Method;
use permekr::Error;
use report::Report;

const EXIT_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_DEGREE_RANGE: u8 = 3;
const EXIT_UNSUPPORTED: u8 = 4;
const EXIT_IO: u8 = 5;

#[derive(Parser)]
#[command(
    name = "permekr",
    version,
    about = "Exact checks of intersecting-family bounds for permutations"
)]
struct Cli {
    /// Print a human-readable table instead of JSON.
    #[arg(long, global = true)]
    text: bool,

    /// Write the report to this file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Number of derangements of n points.
    Derangements { n: usize },
    /// Character table of S(n).
    Chartab {
        n: usize,
        /// Emit the table as CSV.
        #[arg(long)]
        csv: bool,
    },
    /// Eigenvalues of P_t(n) by partition.
    Spectrum {
        n: usize,
        #[arg(long = "t", default_value_t = 0)]
        t: usize,
    },
    /// Clique-coclique product and ratio bound for P_t(n).
    Bounds {
        n: usize,
        #[arg(long = "t", default_value_t = 0)]
        t: usize,
    },
    /// An explicit maximum clique.
    Clique {
        n: usize,
        #[arg(long, value_enum)]
        method: Method,
    },
    /// All maximum independent sets of P_t(n).
    Search {
        n: usize,
        #[arg(long = "t", default_value_t = 0)]
        t: usize,
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
    /// Match every maximum independent set of P(n) to a point-stabilizer coset.
    Classify {
        n: usize,
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
    /// Incidence-matrix rank, kernel, module-support and basis checks.
    Lemmas { n: usize },
    /// Module dimension against the span of the families S_A with |A| = t+1.
    Conjecture {
        n: usize,
        #[arg(long = "t")]
        t: usize,
        #[arg(long)]
        depth: usize,
    },
    /// Check the projection identity on random 0/1 vectors.
    IdentityCheck {
        n: usize,
        #[arg(long, default_value_t = 20)]
        pairs: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Check that a family read from a file is independent in P_t(n).
    Validate {
        /// Newline-separated one-line permutations.
        #[arg(long, value_name = "PATH")]
        family: PathBuf,
        #[arg(long = "t", default_value_t = 0)]
        t: usize,
    },
    /// Run every check and print a scoreboard.
    VerifyAll {
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
}

enum Failure {
    Core(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Io(_) => EXIT_IO,
            Failure::Core(e) => match e {
                Error::DegreeOutOfRange { .. } | Error::RankOutOfRange { .. } => EXIT_DEGREE_RANGE,
                Error::UnsupportedDegree { .. } => EXIT_UNSUPPORTED,
                Error::InvalidPermutation(_)
                | Error::InvalidPartition(_)
                | Error::ParameterOutOfRange(_)
                | Error::ConflictingConstraints(_)
                | Error::DegreeMismatch { .. }
                | Error::LengthMismatch { .. }
                | Error::Parse(_) => EXIT_USAGE,
                Error::Validation { .. }
                | Error::NonIntegralEigenvalue { .. }
                | Error::SearchExhausted(_) => EXIT_FAILED,
            },
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Core(e) => e.to_string(),
            Failure::Io(m) => m.clone(),
        }
    }
}

enum Output {
    Report(Report),
    Raw(String, bool),
}

fn execute(command: Command) -> Result<Output, Failure> {
    let report = match command {
        Command::Derangements { n } => commands::derangements(n)?,
        Command::Chartab { n, csv } => {
            let (report, table) = commands::chartab(n)?;
            if csv {
                return Ok(Output::Raw(table.to_csv(), report.pass()));
            }
            report
        }
        Command::Spectrum { n, t } => commands::spectrum(n, t)?,
        Command::Bounds { n, t } => commands::bounds(n, t)?,
        Command::Clique { n, method } => commands::clique(n, method)?,
        Command::Search { n, t, workers } => commands::search(n, t, workers)?,
        Command::Classify { n, workers } => commands::classify(n, workers)?,
        Command::Lemmas { n } => commands::lemmas(n)?,
        Command::Conjecture { n, t, depth } => commands::conjecture(n, t, depth)?,
        Command::IdentityCheck { n, pairs, seed } => commands::identity_check(n, pairs, seed)?,
        Command::Validate { family, t } => {
            let text = std::fs::read_to_string(&family)
                .map_err(|e| Failure::Io(format!("{}: {e}", family.display())))?;
            commands::validate(&text, &family, t)?
        }
        Command::VerifyAll { workers } => commands::verify_all(workers),
    };
    Ok(Output::Report(report))
}

fn emit(body: &str, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, body).map_err(|e| Failure::Io(format!("{}: {e}", path.display()))),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let start = Instant::now();
    let outcome = execute(cli.command).and_then(|output| {
        let elapsed = start.elapsed();
        let (body, pass) = match output {
            Output::Raw(body, pass) => (body, pass),
            Output::Report(r) if cli.text => (r.render_text(elapsed), r.pass()),
            Output::Report(r) => {
                let json = serde_json::to_string_pretty(&r.to_json(elapsed)).expect("serializable");
                (json + "\n", r.pass())
            }
        };
        emit(&body, cli.out.as_deref())?;
        Ok(pass)
    });
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_FAILED),
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
