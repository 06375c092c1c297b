use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use infolr_cli::config::{Config, FileConfig, Kind};
use infolr_cli::error::Result;

#[derive(Parser)]
#[command(name = "infolr", version, about = "Likelihood-ratio verification suites and simulation studies")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Randomized checks of the decision, LR and scoring invariants.
    Verify(Common),
    /// Gaussian source study.
    Toy {
        #[command(flatten)]
        common: Common,
        /// Preset source configuration.
        #[arg(long)]
        canned: Option<String>,
    },
    /// Sibling study on an allele frequency table.
    Kinship {
        #[command(flatten)]
        common: Common,
        /// Allele frequency CSV (defaults to the bundled table).
        #[arg(long)]
        freq_table: Option<PathBuf>,
    },
    /// Propriety and CLLR checks of the scoring rules.
    Scoring(Common),
}

#[derive(Args)]
struct Common {
    /// TOML file with default values for any flag.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    cases: Option<u64>,
    /// CSV output path.
    #[arg(long)]
    out: Option<PathBuf>,
    /// JSON report path.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Worker threads (all cores by default).
    #[arg(long)]
    workers: Option<usize>,
    #[arg(long, hide = true)]
    corrupt_check: Option<String>,
}

impl Common {
    fn flags(&self) -> FileConfig {
        FileConfig {
            seed: self.seed,
            cases: self.cases,
            out: self.out.clone(),
            report: self.report.clone(),
            workers: self.workers,
            ..FileConfig::default()
        }
    }
}

fn resolve(command: Command) -> Result<Config> {
    let (kind, common, flags) = match command {
        Command::Verify(c) => (Kind::Verify, c.flags(), c),
        Command::Scoring(c) => (Kind::Scoring, c.flags(), c),
        Command::Toy { common, canned } => (Kind::Toy, FileConfig { canned, ..common.flags() }, common),
        Command::Kinship { common, freq_table } => (Kind::Kinship, FileConfig { freq_table, ..common.flags() }, common),
    };
    Config::resolve(kind, flags.config.as_deref(), common, flags.corrupt_check)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = resolve(cli.command).and_then(|cfg| infolr_cli::execute(&cfg));
    match result {
        Ok(out) => {
            print!("{}", out.report.to_text());
            if out.report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
