//! Argument parsing and command dispatch.

use std::io::Write;

use clap::{Args, Parser, Subcommand};

use jtable_core::equations::{equation_set, sample_point};
use jtable_core::field::{is_prime, DEFAULT_PRIME, MIN_SAMPLING_PRIME};
use jtable_core::linalg::build_matrix;
use jtable_core::table::{table_entry, TableIndex};
use jtable_core::verify::{verify_table, VerifyConfig};
use jtable_core::{full_table, Error, StableQ};

use crate::render::{self, Format};
use crate::schema::MatrixDoc;

pub const EXIT_OK: u8 = 0;
pub const EXIT_VERIFY_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

/// Jordan-type tables for nilpotent matrices commuting with a stable
/// two-part Jordan type Q = (u, u-r).
#[derive(Debug, Parser)]
#[command(name = "jtable", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: Options,
}

#[derive(Debug, Args)]
pub struct Options {
    #[arg(long, value_enum, default_value_t = Format::Pretty, global = true)]
    pub format: Format,
    /// Prime modulus for sampling; at least 2^31.
    #[arg(long, global = true)]
    pub prime: Option<u64>,
    #[arg(long, default_value_t = 5, global = true)]
    pub trials: usize,
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, Args)]
pub struct QArgs {
    pub u: usize,
    pub r: usize,
}

#[derive(Debug, Clone, Copy, Args)]
pub struct CellArgs {
    pub u: usize,
    pub r: usize,
    pub k: usize,
    pub l: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the full (r-1) x (u-r) table.
    Table(QArgs),
    /// Print one entry with its case, types, Burge word, coranks and U-chains.
    Entry(CellArgs),
    /// Print the generators cutting out the closure of one entry's locus.
    Equations(CellArgs),
    /// Check every entry against sampled matrices.
    Verify(QArgs),
    /// Dump the matrix of one sampled point on an entry's locus.
    Matrix(CellArgs),
}

/// A fully validated command, ready to run.
enum Job {
    Table(StableQ),
    Entry(StableQ, TableIndex),
    Equations(StableQ, TableIndex),
    Verify(StableQ),
    Matrix(StableQ, TableIndex),
}

struct Validated {
    job: Job,
    format: Format,
    prime: u64,
    trials: usize,
    seed: u64,
}

fn validate(cli: Cli) -> Result<Validated, Error> {
    let cell = |a: CellArgs| -> Result<(StableQ, TableIndex), Error> {
        let q = StableQ::new(a.u, a.r)?;
        let idx = TableIndex::new(a.k, a.l);
        idx.check(&q)?;
        Ok((q, idx))
    };
    let job = match cli.command {
        Command::Table(a) => Job::Table(StableQ::new(a.u, a.r)?),
        Command::Verify(a) => Job::Verify(StableQ::new(a.u, a.r)?),
        Command::Entry(a) => cell(a).map(|(q, i)| Job::Entry(q, i))?,
        Command::Equations(a) => cell(a).map(|(q, i)| Job::Equations(q, i))?,
        Command::Matrix(a) => cell(a).map(|(q, i)| Job::Matrix(q, i))?,
    };
    let prime = cli.opts.prime.unwrap_or(DEFAULT_PRIME);
    if !is_prime(prime) {
        return Err(Error::NotPrime(prime));
    }
    if prime < MIN_SAMPLING_PRIME {
        return Err(Error::PrimeTooSmall(prime));
    }
    if cli.opts.trials == 0 {
        return Err(Error::NoTrials);
    }
    Ok(Validated {
        job,
        format: cli.opts.format,
        prime,
        trials: cli.opts.trials,
        seed: cli.opts.seed,
    })
}

/// Output of one command: text for stdout and the process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub code: u8,
}

fn execute(v: &Validated) -> Result<Outcome, Error> {
    let ok = |stdout| Outcome {
        stdout,
        code: EXIT_OK,
    };
    Ok(match v.job {
        Job::Table(q) => ok(render::table(&full_table(q)?, v.format)),
        Job::Entry(q, idx) => ok(render::entry(&q, &table_entry(&q, idx)?, v.format)),
        Job::Equations(q, idx) => ok(render::equations(&equation_set(&q, idx)?, v.format)),
        Job::Matrix(q, idx) => {
            let m = build_matrix(&sample_point(&q, idx, v.seed, v.prime)?, &q)?;
            ok(match v.format {
                Format::Json => render::json(&MatrixDoc {
                    u: q.u(),
                    r: q.r(),
                    k: idx.k,
                    l: idx.l,
                    prime: v.prime,
                    seed: v.seed,
                    rows: (0..m.dim()).map(|i| m.row(i).to_vec()).collect(),
                }),
                Format::Pretty | Format::Tsv => render::matrix_tsv(&m),
            })
        }
        Job::Verify(q) => {
            let cfg = VerifyConfig {
                trials: v.trials,
                seed: v.seed,
                prime: v.prime,
                ..VerifyConfig::default()
            };
            let report = verify_table(q, &cfg)?;
            Outcome {
                stdout: render::verify(&report, v.trials, v.seed, v.prime, v.format),
                code: if report.passed() {
                    EXIT_OK
                } else {
                    EXIT_VERIFY_FAILED
                },
            }
        }
    })
}

/// Parses `args` (including the program name) and runs the command.
///
/// Errors go to `err`; the returned outcome carries stdout and the exit code.
pub fn run<I, T>(args: I, err: &mut impl Write) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = err.write_all(text.as_bytes());
                Outcome {
                    stdout: String::new(),
                    code: EXIT_USAGE,
                }
            } else {
                Outcome {
                    stdout: text,
                    code: EXIT_OK,
                }
            };
        }
    };
    let validated = match validate(cli) {
        Ok(v) => v,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return Outcome {
                stdout: String::new(),
                code: EXIT_USAGE,
            };
        }
    };
    match execute(&validated) {
        Ok(out) => out,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            // A closed form disagreeing with the corank route is a failed
            // check, not bad input.
            let code = match e {
                Error::ClosedFormMismatch { .. } => EXIT_VERIFY_FAILED,
                _ => EXIT_USAGE,
            };
            Outcome {
                stdout: String::new(),
                code,
            }
        }
    }
}
