use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use dldah_cli::{
    run_bench, run_encode, run_eval, run_synth, run_train, run_verify, CliError, CliResult,
};

#[derive(Parser)]
#[command(
    name = "dldah",
    version,
    about = "LDA hashing and deep LDA hashing experiments"
)]
struct Cli {
    /// Log progress to stderr (repeat for more detail).
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    verbose: u8,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write the configured dataset and its split as CSV files.
    Synth {
        #[arg(long)]
        config: PathBuf,
    },
    /// Fit the configured model on the training split.
    Train {
        #[arg(long)]
        config: PathBuf,
    },
    /// Encode a feature CSV into a binary codes file.
    Encode {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        data: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Score query codes against gallery codes.
    Eval {
        #[arg(long)]
        gallery: PathBuf,
        #[arg(long)]
        queries: PathBuf,
        /// CSV with `item_id,label` rows covering gallery and query items.
        #[arg(long)]
        labels: PathBuf,
        #[arg(long, default_value_t = dldah::eval::DEFAULT_RADIUS)]
        radius: u32,
        /// Output directory for summary.txt and per_query.csv.
        #[arg(long)]
        out: PathBuf,
    },
    /// Check the scatter, regression and gradient identities on random instances.
    Verify {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, hide = true)]
        corrupt_sb: bool,
    },
    /// Train, encode and evaluate every method at several code lengths.
    Bench {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "8,16,32,64")]
        bits: Vec<usize>,
    },
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Synth { config } => {
            let out = run_synth(&config)?;
            println!("wrote {} items to {}", out.items, out.output_dir.display());
        }
        Command::Train { config } => {
            let out = run_train(&config)?;
            println!(
                "wrote {} ({} bits)",
                out.model_path.display(),
                out.code_bits
            );
            if let Some(h) = out.history_path {
                println!("wrote {}", h.display());
            }
        }
        Command::Encode { model, data, out } => {
            let codes = run_encode(&model, &data, &out)?;
            println!(
                "wrote {} codes of {} bits to {}",
                codes.len(),
                codes.bits(),
                out.display()
            );
        }
        Command::Eval {
            gallery,
            queries,
            labels,
            radius,
            out,
        } => {
            let report = run_eval(&gallery, &queries, &labels, radius, &out)?;
            report.write_summary(std::io::stdout().lock())?;
        }
        Command::Verify {
            seed,
            trials,
            corrupt_sb,
        } => {
            let report = run_verify(seed, trials, corrupt_sb)?;
            report.write_to(std::io::stdout().lock())?;
            if !report.passed() {
                let failed: Vec<&str> = report
                    .families
                    .iter()
                    .filter(|f| !f.passed())
                    .map(|f| f.name)
                    .collect();
                return Err(CliError::VerificationFailed(failed.join(", ")));
            }
        }
        Command::Bench { config, bits } => {
            let cells = run_bench(&config, &bits)?;
            for c in cells {
                println!(
                    "{:<6} r={:<3} map={:.4} precision@{}={:.4}",
                    c.method.as_str(),
                    c.requested_bits,
                    c.report.map,
                    c.report.radius,
                    c.report.mean_precision
                );
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => log::LevelFilter::Warn,
        1 => log::LevelFilter::Info,
        _ => log::LevelFilter::Debug,
    };
    env_logger::Builder::new().filter_level(level).init();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
