//! `qwalk` — compute absorption probabilities of absorbing quantum walks
//! by simulation, Hadamard-product quadrature, or closed form; run the
//! cross-validation suites; sweep parameters; and emit the figure data.

mod commands;
mod config;
mod output;

use clap::{Parser, Subcommand};

use config::RunConfig;

#[derive(Parser)]
#[command(name = "qwalk", version, about)]
struct Cli {
    /// JSON config file describing a full run (replaces the subcommand).
    #[arg(long, global = true)]
    config: Option<std::path::PathBuf>,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand)]
enum Command {
    /// Compute one absorption probability by the requested method(s).
    Compute(commands::compute::ComputeArgs),
    /// Run a verification suite and emit JSON lines per assertion.
    Verify(commands::verify::VerifyArgs),
    /// Sweep one parameter and emit a CSV table.
    Sweep(commands::sweep::SweepArgs),
    /// Reproduce the figure data files (CSV + SVG).
    Figures(commands::figures::FiguresArgs),
}

fn main() {
    let cli = Cli::parse();
    init_thread_pool();

    let result = match (cli.config, cli.command) {
        (Some(path), None) => run_config(&path),
        (Some(_), Some(_)) => Err(qwalk::Error::Config(
            "--config replaces the subcommand; pass one or the other".into(),
        )),
        (None, Some(cmd)) => match cmd {
            Command::Compute(args) => commands::compute::run(&args.into_config()),
            Command::Verify(args) => commands::verify::run(&args),
            Command::Sweep(args) => commands::sweep::run(&args),
            Command::Figures(args) => commands::figures::run(&args),
        },
        (None, None) => Err(qwalk::Error::Config(
            "nothing to do: pass a subcommand or --config".into(),
        )),
    };

    match result {
        Ok(code) => std::process::exit(code),
        Err(err) => {
            eprintln!("error: {err}");
            std::process::exit(if err.is_config() { 2 } else { 3 });
        }
    }
}

fn run_config(path: &std::path::Path) -> qwalk::Result<i32> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| qwalk::Error::Config(format!("cannot read {}: {e}", path.display())))?;
    let cfg: RunConfig = serde_json::from_str(&text)
        .map_err(|e| qwalk::Error::Config(format!("invalid config: {e}")))?;
    commands::compute::run(&cfg)
}

/// `QWALK_THREADS` caps the rayon pool.
fn init_thread_pool() {
    if let Ok(v) = std::env::var("QWALK_THREADS") {
        if let Ok(n) = v.parse::<usize>() {
            if n >= 1 {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
        }
    }
}
