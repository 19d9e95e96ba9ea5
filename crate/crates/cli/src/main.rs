//! searchtopo: search-space structure over a local corpus.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 an asserted invariant
//! failed. Diagnostic counterexamples are reported on stderr and inside the
//! JSON but never change the exit code.

mod commands;
mod reports;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "searchtopo", version, about = "Set-theoretic search-space analysis over JSONL corpora")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GraphFormat {
    Json,
    Dot,
}

#[derive(Args)]
struct CorpusArg {
    /// JSON Lines corpus: per line {"id", "text"} or {"id", "words"}.
    #[arg(long)]
    corpus: std::path::PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum Side {
    B,
    F,
}

#[derive(Clone, Copy, ValueEnum)]
enum Pool {
    Union,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Ingest a corpus and report its shape.
    Ingest {
        #[command(flatten)]
        corpus: CorpusArg,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Evaluate a query: `|` composes with semantic union (result sets
    /// intersect), `&` with semantic intersection (result sets union).
    Search {
        #[command(flatten)]
        corpus: CorpusArg,
        /// Query text; bare multi-token strings are implicit `|` compositions.
        query: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Containment relation over a keyword set.
    Relate {
        #[command(flatten)]
        corpus: CorpusArg,
        /// Comma-separated keywords; multi-token phrases allowed.
        #[arg(long, value_delimiter = ',', required = true)]
        words: Vec<String>,
        /// Strict chains: proper containments, distinct spaces.
        #[arg(long)]
        strict: bool,
        /// Report the m-step neighborhoods and witnesses.
        #[arg(long)]
        m: Option<usize>,
    },
    /// Generate the neighborhood topologies of a keyword set.
    Topology {
        #[command(flatten)]
        corpus: CorpusArg,
        #[arg(long, value_delimiter = ',', required = true)]
        words: Vec<String>,
        /// Which side to report: afterneighborhood (B) or forneighborhood (F).
        /// Both are generated for the structure checks either way.
        #[arg(long, value_enum, default_value = "b", ignore_case = true)]
        side: Side,
        /// Use the m-step neighborhoods as the subbase.
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        strict: bool,
        /// Include the duality / union-identity / cover check reports.
        #[arg(long)]
        checks: bool,
    },
    /// Build the data directed graph of a keyword set.
    Graph {
        #[command(flatten)]
        corpus: CorpusArg,
        #[arg(long, value_delimiter = ',', required = true)]
        words: Vec<String>,
        /// Write DOT to this file.
        #[arg(long)]
        dot: Option<std::path::PathBuf>,
        /// Draw only covering edges in the DOT output.
        #[arg(long)]
        reduce: bool,
        /// Include the atom report.
        #[arg(long)]
        atoms: bool,
        /// Shortest covering-chain distance between two keywords.
        #[arg(long, num_args = 2, value_names = ["FROM", "TO"])]
        distance: Option<Vec<String>>,
        /// Report incomparable node pairs (the totality diagnostic).
        #[arg(long)]
        check_total: bool,
        /// `dot` prints the DOT text instead of the JSON report.
        #[arg(long, value_enum, default_value = "json")]
        format: GraphFormat,
    },
    /// Jaccard δ-similarity anomaly detection.
    Anomaly {
        #[command(flatten)]
        corpus: CorpusArg,
        #[arg(long, value_delimiter = ',', required = true)]
        keywords: Vec<String>,
        /// Initial threshold in (0, 1).
        #[arg(long)]
        delta: f64,
        #[arg(long, default_value_t = 10)]
        max_iter: usize,
        #[arg(long, default_value_t = 1e-12)]
        epsilon: f64,
        /// Candidate pool: union of the keywords' spaces, or every document.
        #[arg(long, value_enum, default_value = "union")]
        pool: Pool,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// ∨-closure of a seed and its primal family of search spaces.
    Primal {
        #[command(flatten)]
        corpus: CorpusArg,
        /// Comma-separated seed keywords.
        #[arg(long, value_delimiter = ',', required = true)]
        seed: Vec<String>,
        /// Closure size cap.
        #[arg(long, default_value_t = 4096)]
        cap: u64,
        /// Second seed: also report the union of the two families.
        #[arg(long, value_delimiter = ',')]
        union: Option<Vec<String>>,
    },
    /// Run the theorem suite over a corpus or random corpora.
    Check {
        /// Corpus to check; omit with --random.
        #[arg(long)]
        corpus: Option<std::path::PathBuf>,
        /// Generate random corpora instead of reading one.
        #[arg(long)]
        random: bool,
        /// Words per random corpus.
        #[arg(long, default_value_t = 8)]
        words: usize,
        /// Documents per random corpus.
        #[arg(long, default_value_t = 40)]
        docs: usize,
        /// Number of random corpora.
        #[arg(long, default_value_t = 1)]
        trials: usize,
        /// Seed for corpus generation and suite sampling.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run the theorem suite over the built-in corpora.
    Selftest,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // clap's own exit codes collide with the invariant-failure code;
            // usage problems are exit 1 here.
            if matches!(err.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = err.print();
                return ExitCode::SUCCESS;
            }
            let _ = err.print();
            return ExitCode::from(1);
        }
    };
    match commands::run(cli.command) {
        Ok(status) => status,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(1)
        }
    }
}
