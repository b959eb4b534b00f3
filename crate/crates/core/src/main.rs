use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use kendall_digits::approx::Tail;
use kendall_digits::cli::{
    cmd_errata, cmd_montecarlo, cmd_oracle, cmd_score, cmd_table, digits_from_bytes, exit_code,
    model_from_flags, parse_digits, Method, MonteCarloConfig, ScoreOptions, TableOptions,
};
use kendall_digits::exact::{Limits, NullModel};
use kendall_digits::Error;

/// Kendall-score test for sequences of random digits.
#[derive(Parser, Debug)]
#[command(name = "kdigits", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct ModelArgs {
    /// Alphabet size ℓ; digits are 0..ℓ-1.
    #[arg(long, default_value_t = 2)]
    alphabet: usize,
    /// Probability of a 0 for biased binary sequences (decimal or a/b).
    #[arg(long)]
    p: Option<String>,
    /// Work cap for exact engines and enumeration.
    #[arg(long)]
    cap: Option<u128>,
}

impl ModelArgs {
    fn model(&self) -> Result<NullModel, Error> {
        model_from_flags(self.alphabet, self.p.as_deref())
    }

    fn limits(&self) -> Limits {
        self.cap.map_or_else(Limits::default, Limits::uniform)
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Score a digit sequence and report its significance.
    Score {
        /// Input file; standard input when omitted.
        input: Option<PathBuf>,
        #[command(flatten)]
        model: ModelArgs,
        /// exact, normal, edgeworth or auto.
        #[arg(long, default_value = "auto")]
        method: Method,
        /// two-sided, left or right.
        #[arg(long, default_value = "two-sided")]
        tail: Tail,
        /// Read raw bytes and map each to `byte mod ℓ`.
        #[arg(long)]
        bytes: bool,
        /// Disable the continuity correction of the approximations.
        #[arg(long)]
        no_continuity: bool,
        #[arg(long)]
        json: bool,
    },
    /// Print the exact distribution of S.
    Table {
        /// Sequence length.
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        model: ModelArgs,
        /// Also print P_n(t; counts) for every tie profile.
        #[arg(long)]
        by_counts: bool,
        /// One line of weights instead of t/weight rows.
        #[arg(long)]
        row: bool,
        /// Compare the exact CDF with the normal and Edgeworth approximations.
        #[arg(long)]
        compare: bool,
    },
    /// Simulate sequences and compare empirical moments with the closed forms.
    Montecarlo {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// List known formula inconsistencies and the conventions adopted here.
    Errata,
    /// Distribution by exhaustive enumeration (slow; for verification).
    #[command(hide = true)]
    Oracle {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        model: ModelArgs,
    },
}

fn read_input(path: Option<&PathBuf>) -> std::io::Result<Vec<u8>> {
    let mut buf = Vec::new();
    match path {
        Some(p) => buf = std::fs::read(p)?,
        None => {
            std::io::stdin().read_to_end(&mut buf)?;
        }
    }
    Ok(buf)
}

fn run(cli: Cli) -> Result<String, Error> {
    match cli.command {
        Command::Score {
            input,
            model,
            method,
            tail,
            bytes,
            no_continuity,
            json,
        } => {
            let null = model.model()?;
            let raw = read_input(input.as_ref()).map_err(|e| Error::Parse {
                offset: 0,
                token: String::new(),
                message: e.to_string(),
            })?;
            let seq = if bytes {
                digits_from_bytes(&raw, null.alphabet())?
            } else {
                let text = String::from_utf8(raw).map_err(|e| Error::Parse {
                    offset: e.utf8_error().valid_up_to(),
                    token: String::new(),
                    message: "input is not UTF-8; use --bytes for raw streams".into(),
                })?;
                parse_digits(&text, null.alphabet())?
            };
            let report = cmd_score(
                &seq,
                &ScoreOptions {
                    model: null,
                    method,
                    tail,
                    continuity: !no_continuity,
                    limits: model.limits(),
                },
            )?;
            Ok(if json {
                report.to_json() + "\n"
            } else {
                report.to_text()
            })
        }
        Command::Table {
            n,
            model,
            by_counts,
            row,
            compare,
        } => cmd_table(
            n,
            &model.model()?,
            TableOptions {
                row,
                by_counts,
                compare,
            },
            &model.limits(),
        ),
        Command::Montecarlo {
            n,
            model,
            samples,
            seed,
            json,
        } => {
            let report = cmd_montecarlo(&MonteCarloConfig {
                n,
                model: model.model()?,
                samples,
                seed,
                limits: model.limits(),
            })?;
            Ok(if json {
                report.to_json() + "\n"
            } else {
                report.to_text()
            })
        }
        Command::Errata => Ok(cmd_errata().to_string()),
        Command::Oracle { n, model } => cmd_oracle(n, &model.model()?, &model.limits()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
