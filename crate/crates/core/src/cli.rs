//! The `cantree` command line.
//!
//! Exit statuses: 0 on success, 1 for usage errors, 2 for data or format
//! errors. Results go to `--out` or standard output; diagnostics go to
//! standard error.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::bench::{run_bench, BenchConfig, BenchError};
use crate::miner::{frequent_items, frequent_items_csv, mine_frequent_itemsets, MineError};
use crate::recommend::{diff_versions, optimize_database, recommend_items, recommendations_csv};
use crate::tree::{snapshot_read, snapshot_write, CanTree, TreeError};
use crate::txndb::{parse_database, MinSupport, TransactionDatabase, TxnError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DATA: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Parse {
        path: PathBuf,
        #[source]
        source: TxnError,
    },
    #[error(transparent)]
    Txn(#[from] TxnError),
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error(transparent)]
    Mine(#[from] MineError),
    #[error(transparent)]
    Bench(#[from] BenchError),
}

impl CliError {
    pub fn exit_status(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            _ => EXIT_DATA,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "cantree",
    version,
    about = "Incremental frequent-pattern mining over a canonical-order tree",
    arg_required_else_help = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Output {
    /// Write results here instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build a tree from a transaction CSV and write its snapshot
    Build {
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// Apply deletions, then insertions, to a snapshot in place
    Update {
        #[arg(long)]
        snapshot: PathBuf,
        #[arg(long)]
        insert: Option<PathBuf>,
        #[arg(long)]
        delete: Option<PathBuf>,
    },
    /// Mine frequent itemsets (or items) from a CSV or a snapshot
    Mine {
        #[arg(
            long,
            required_unless_present = "snapshot",
            conflicts_with = "snapshot"
        )]
        input: Option<PathBuf>,
        #[arg(long)]
        snapshot: Option<PathBuf>,
        /// `N` transactions or `P%` of the database
        #[arg(long)]
        minsup: String,
        /// Only list frequent single items
        #[arg(long, conflicts_with = "itemsets")]
        items_only: bool,
        /// List all frequent itemsets (default)
        #[arg(long)]
        itemsets: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Keep only frequent items in every transaction
    Optimize {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        minsup: String,
        #[command(flatten)]
        output: Output,
    },
    /// Compare frequent items of two versions of a database
    Diff {
        #[arg(long)]
        old: PathBuf,
        #[arg(long)]
        new: PathBuf,
        #[arg(long)]
        minsup: String,
        #[arg(long, value_enum, default_value_t = DiffFormat::Text)]
        format: DiffFormat,
        /// Emit the top K recommended items instead of the report
        #[arg(long, value_name = "K", value_parser = clap::value_parser!(u64).range(1..))]
        recommend: Option<u64>,
        #[command(flatten)]
        output: Output,
    },
    /// Time incremental updates against rescan-and-rebuild
    Bench {
        /// `key = value` lines; defaults are used for missing keys
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum DiffFormat {
    Text,
    Csv,
}

/// Parses `args` (including the program name) and runs the subcommand.
/// Returns the process exit status.
pub fn run_cli<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = stdout.write_all(text.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = stderr.write_all(text.as_bytes());
                    EXIT_USAGE
                }
            };
        }
    };
    match execute(cli.command, stdout) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_status()
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })
}

fn load_db(path: &Path) -> Result<TransactionDatabase, CliError> {
    parse_database(&read(path)?).map_err(|source| CliError::Parse {
        path: path.to_owned(),
        source,
    })
}

fn load_snapshot(path: &Path) -> Result<CanTree, CliError> {
    Ok(snapshot_read(&read(path)?)?)
}

fn parse_minsup(text: &str) -> Result<MinSupport, CliError> {
    Ok(text.parse::<MinSupport>()?)
}

fn emit(output: &Output, text: &str, stdout: &mut dyn Write) -> Result<(), CliError> {
    match &output.out {
        Some(path) => fs::write(path, text),
        None => stdout.write_all(text.as_bytes()),
    }
    .map_err(|source| CliError::Io {
        path: output.out.clone().unwrap_or_else(|| "<stdout>".into()),
        source,
    })
}

fn execute(command: Command, stdout: &mut dyn Write) -> Result<(), CliError> {
    match command {
        Command::Build { input, output } => {
            let tree = CanTree::from_database(&load_db(&input)?)?;
            emit(&output, &snapshot_write(&tree), stdout)
        }
        Command::Update {
            snapshot,
            insert,
            delete,
        } => {
            if insert.is_none() && delete.is_none() {
                return Err(CliError::Usage(
                    "update needs at least one of --insert or --delete".into(),
                ));
            }
            let mut tree = load_snapshot(&snapshot)?;
            if let Some(path) = delete {
                for t in &load_db(&path)? {
                    tree.delete_transaction(t)?;
                }
            }
            if let Some(path) = insert {
                tree.insert_batch(&load_db(&path)?)?;
            }
            emit(
                &Output {
                    out: Some(snapshot),
                },
                &snapshot_write(&tree),
                stdout,
            )
        }
        Command::Mine {
            input,
            snapshot,
            minsup,
            items_only,
            itemsets: _,
            output,
        } => {
            let tree = match (input, snapshot) {
                (Some(path), _) => CanTree::from_database(&load_db(&path)?)?,
                (None, Some(path)) => load_snapshot(&path)?,
                (None, None) => unreachable!("clap requires one of --input/--snapshot"),
            };
            let minsup = parse_minsup(&minsup)?;
            let text = if items_only {
                frequent_items_csv(&frequent_items(&tree, minsup)?)
            } else {
                mine_frequent_itemsets(&tree, minsup)?.to_csv()
            };
            emit(&output, &text, stdout)
        }
        Command::Optimize {
            input,
            minsup,
            output,
        } => {
            let optimized = optimize_database(&load_db(&input)?, parse_minsup(&minsup)?)?;
            emit(&output, &optimized.to_csv(), stdout)
        }
        Command::Diff {
            old,
            new,
            minsup,
            format,
            recommend,
            output,
        } => {
            let report = diff_versions(&load_db(&old)?, &load_db(&new)?, parse_minsup(&minsup)?)?;
            let text = match (recommend, format) {
                (Some(k), _) => recommendations_csv(&recommend_items(&report, k as usize)),
                (None, DiffFormat::Text) => report.to_text(),
                (None, DiffFormat::Csv) => report.to_csv(),
            };
            emit(&output, &text, stdout)
        }
        Command::Bench {
            config,
            seed,
            output,
        } => {
            let mut cfg = match config {
                Some(path) => BenchConfig::parse(&read(&path)?)?,
                None => BenchConfig::default(),
            };
            if let Some(seed) = seed {
                cfg.seed = seed;
            }
            let report = run_bench(&cfg)?;
            emit(&output, &report.to_csv(), stdout)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("cantree").chain(args.iter().copied());
        let status = run_cli(argv, &mut out, &mut err);
        (
            status,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn no_arguments_is_usage() {
        let (status, out, err) = run(&[]);
        assert_eq!(status, EXIT_USAGE);
        assert!(out.is_empty());
        assert!(err.contains("Usage"));
    }

    #[test]
    fn unknown_subcommand_and_flag() {
        assert_eq!(run(&["frobnicate"]).0, EXIT_USAGE);
        assert_eq!(run(&["mine", "--bogus"]).0, EXIT_USAGE);
        assert_eq!(
            run(&["mine", "--input", "x.csv", "--minsup", "abc"]).0,
            EXIT_DATA
        );
    }

    #[test]
    fn help_is_success() {
        let (status, out, _) = run(&["--help"]);
        assert_eq!(status, EXIT_OK);
        assert!(out.contains("optimize"));
    }
}
