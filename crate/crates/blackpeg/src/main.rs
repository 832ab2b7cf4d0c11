use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use blackpeg::bench::{bench, BenchConfig};
use blackpeg::game::{run_game, CodewordSource, GameConfig, ModeArg, Strategy, ZeroFinderArg};
use blackpeg::play::play_interactive;
use blackpeg::record::{summarize, write_records, BenchRecord, Format};
use blackpeg::transcript::write_transcript;
use blackpeg::{exit_code, RunError};
use blackpeg_core::Color;
use clap::{Parser, Subcommand};

/// Black-peg Mastermind in a linear number of queries.
#[derive(Parser)]
#[command(version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one game against a hidden codeword.
    Solve {
        /// Positions; defaults to the length of --codeword.
        #[arg(long)]
        n: Option<usize>,
        /// Colors; defaults to n.
        #[arg(long)]
        k: Option<Color>,
        #[arg(long, value_enum, default_value_t)]
        mode: ModeArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Comma-separated colors, e.g. "1,2,3". Random from --seed if absent.
        #[arg(long, value_delimiter = ',')]
        codeword: Option<Vec<Color>>,
        #[arg(long, value_enum, default_value_t)]
        zero_finder: ZeroFinderArg,
        #[arg(long, value_enum, default_value_t)]
        strategy: Strategy,
        /// Ask all k monochromatic census queries even after the counts reach n.
        #[arg(long)]
        full_census: bool,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        /// Write every query and answer as json-lines.
        #[arg(long)]
        transcript: Option<PathBuf>,
    },
    /// Run many random games and record query counts.
    Bench {
        /// Comma-separated sizes, e.g. "64,128,256".
        #[arg(long, value_delimiter = ',', required = true)]
        n_list: Vec<usize>,
        /// Colors; defaults to n for every size.
        #[arg(long)]
        k: Option<Color>,
        #[arg(long, default_value_t = 10)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t)]
        mode: ModeArg,
        #[arg(long, value_enum, default_value_t)]
        zero_finder: ZeroFinderArg,
        #[arg(long, value_enum, default_value_t)]
        strategy: Strategy,
        #[arg(long)]
        full_census: bool,
        /// Record wall time in the millis column (output is then no longer
        /// reproducible byte for byte).
        #[arg(long)]
        timing: bool,
        /// Output file; stdout if absent.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Play against a person holding the codeword; answers are read from stdin.
    Play {
        #[arg(long)]
        n: usize,
        /// Colors; defaults to n.
        #[arg(long)]
        k: Option<Color>,
        #[arg(long, value_enum, default_value_t)]
        mode: ModeArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn create(path: &Path) -> Result<BufWriter<File>, RunError> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|source| RunError::File { path: path.to_owned(), source })
}

fn run(cli: Cli) -> Result<(), RunError> {
    match cli.command {
        Command::Solve {
            n,
            k,
            mode,
            seed,
            codeword,
            zero_finder,
            strategy,
            full_census,
            format,
            transcript,
        } => {
            let n = n
                .or(codeword.as_ref().map(Vec::len))
                .ok_or_else(|| RunError::usage("give --n or --codeword"))?;
            let config = GameConfig {
                n,
                k: k.unwrap_or(n as Color),
                mode,
                seed,
                codeword: codeword.map_or(CodewordSource::Random, CodewordSource::Explicit),
                zero_finder,
                strategy,
                census_early_stop: !full_census,
                record_transcript: transcript.is_some(),
            };
            let result = run_game(&config)?;
            if let (Some(path), Some(entries)) = (&transcript, &result.transcript) {
                let mut w = create(path)?;
                write_transcript(entries, &mut w)?;
                w.flush().map_err(|source| RunError::File { path: path.clone(), source })?;
            }
            let record = BenchRecord::new(&config, &result, false);
            let stdout = io::stdout().lock();
            if format == Format::Human {
                let colors: Vec<String> = result.solution.iter().map(u32::to_string).collect();
                println!("codeword: {}", colors.join(","));
            }
            write_records(&[record], format, stdout)
        }
        Command::Bench {
            n_list,
            k,
            trials,
            seed,
            mode,
            zero_finder,
            strategy,
            full_census,
            timing,
            out,
            format,
        } => {
            let config = BenchConfig {
                n_list,
                k,
                trials,
                seed,
                mode,
                zero_finder,
                strategy,
                census_early_stop: !full_census,
                timing,
            };
            let records = bench(&config)?;
            match &out {
                Some(path) => {
                    let mut w = create(path)?;
                    write_records(&records, format, &mut w)?;
                    w.flush().map_err(|source| RunError::File { path: path.clone(), source })?;
                }
                None => write_records(&records, format, io::stdout().lock())?,
            }
            for s in summarize(&records) {
                eprintln!(
                    "n={:<6} k={:<6} trials={:<4} mean={:<10.1} max={:<8} mean/n={:.2}",
                    s.n,
                    s.k,
                    s.trials,
                    s.mean_total,
                    s.max_total,
                    s.mean_total / s.n as f64
                );
            }
            Ok(())
        }
        Command::Play { n, k, mode, seed } => {
            let mut config = GameConfig::new(n, k.unwrap_or(n as Color));
            config.mode = mode;
            config.seed = seed;
            let report = play_interactive(&config, io::stdin().lock(), io::stdout())?;
            report.result.map(drop).map_err(RunError::from)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
