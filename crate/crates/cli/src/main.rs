use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use otsyl::oracle::{OracleTable, DEFAULT_CAP};
use otsyl::{
    classify, counts, format_parse, run, sweep, typology, Alphabet, EvalMode, ParseStyle, Ranking, Segment,
    TypologyMode,
};

#[derive(Parser)]
#[command(name = "otsyl", version, about = "Optimality-Theoretic syllabification by candidate-grid pruning")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct InputArgs {
    /// Treat the input as a C/V pattern.
    #[arg(long)]
    pattern: bool,
    /// Alphabet config file (`vowels: ...` / `consonants: ...`).
    #[arg(long)]
    alphabet: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a word with the pruning engine.
    Parse {
        word: String,
        /// Comma-separated ranking of all six constraints, highest first.
        #[arg(long)]
        ranking: Ranking,
        #[arg(long, default_value = "oneshot")]
        mode: EvalMode,
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value = "parens")]
        format: ParseStyle,
        /// Print the grid after every step before the result.
        #[arg(long)]
        trace: bool,
    },
    /// Brute-force evaluation over every labeling.
    Oracle {
        word: String,
        #[arg(long)]
        ranking: Ranking,
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        max_len: usize,
    },
    /// Compare engine and oracle on every C/V pattern up to a length, under all rankings.
    Check {
        #[arg(long)]
        max_len: usize,
        #[arg(long, default_value = "restart")]
        mode: EvalMode,
        /// Write every divergent case to this file.
        #[arg(long)]
        log: Option<PathBuf>,
    },
    /// Candidate-set sizes for an input of n segments.
    Counts { n: u32 },
    /// Group all 720 rankings by the outputs they assign to the inputs.
    Typology {
        /// Comma-separated input words.
        #[arg(long, value_delimiter = ',', required = true)]
        inputs: Vec<String>,
        /// Evaluate with the brute-force oracle instead of the engine.
        #[arg(long)]
        oracle: bool,
        #[arg(long, default_value = "oneshot")]
        mode: EvalMode,
        #[command(flatten)]
        input: InputArgs,
    },
}

enum Failure {
    Usage(String),
    Divergence,
}

impl From<otsyl::Error> for Failure {
    fn from(e: otsyl::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn segments(word: &str, input: &InputArgs) -> Result<Vec<Segment>, Failure> {
    let alphabet = match &input.alphabet {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
            Alphabet::parse(&text)?
        }
        None => Alphabet::default(),
    };
    Ok(classify(word, &alphabet, input.pattern)?)
}

fn execute(command: Command) -> Result<String, Failure> {
    let mut out = String::new();
    match command {
        Command::Parse { word, ranking, mode, input, format, trace } => {
            let segs = segments(&word, &input)?;
            let eval = run(&segs, &ranking, mode)?;
            if trace {
                out.push_str(&eval.trace.to_string());
            }
            for result in &eval.results {
                out.push_str(&format_parse(&result.labels, &segs, format)?);
                out.push('\n');
            }
        }
        Command::Oracle { word, ranking, input, max_len } => {
            let segs = segments(&word, &input)?;
            for result in OracleTable::build(&segs, max_len)?.optimal_parses(&ranking)? {
                out.push_str(&format!("{}\t{}\n", result.labels, result.violations));
            }
        }
        Command::Check { max_len, mode, log } => {
            let summary = sweep(max_len, mode)?;
            if let Some(path) = log {
                let body: String = summary.divergences.iter().map(|r| format!("{r}\n")).collect();
                fs::write(&path, body)
                    .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?;
            }
            println!("{summary}");
            if mode == EvalMode::Restart && summary.divergent > 0 {
                return Err(Failure::Divergence);
            }
        }
        Command::Counts { n } => {
            out.push_str(&format!("{}\n", counts(n)?));
        }
        Command::Typology { inputs, oracle, mode, input } => {
            let segs = inputs
                .iter()
                .map(|w| segments(w, &input))
                .collect::<Result<Vec<_>, _>>()?;
            let mode = if oracle { TypologyMode::Oracle } else { TypologyMode::Engine(mode) };
            out.push_str(&typology(&segs, &Ranking::all(), mode)?.to_string());
        }
    }
    Ok(out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Divergence) => {
            eprintln!("error: engine diverged from the oracle");
            ExitCode::from(1)
        }
    }
}
