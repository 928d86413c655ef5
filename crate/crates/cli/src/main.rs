use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use cherednik_cli::{parse_config, run_suite, Suite};

/// Runs verification suites for Cherednik-type algebras attached to a
/// complex reflection group.
#[derive(Parser)]
#[command(name = "cherednik", version)]
struct Args {
    /// Which suite to run.
    #[arg(value_enum)]
    suite: Suite,
    /// Run configuration file.
    #[arg(long)]
    config: PathBuf,
    /// Where to write the JSON report (overrides the config).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Seed for random parameter draws (overrides the config).
    #[arg(long)]
    seed: Option<u64>,
    /// Numerical tolerance for monodromy residuals (overrides the config).
    #[arg(long)]
    tol: Option<f64>,
    /// Top degree for standard-module slices (overrides the config).
    #[arg(long)]
    degree: Option<u32>,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let text = match std::fs::read_to_string(&args.config) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", args.config.display());
            return ExitCode::from(2);
        }
    };
    let mut cfg = match parse_config(&text) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {}: {e}", args.config.display());
            return ExitCode::from(2);
        }
    };
    if let Some(s) = args.seed {
        cfg.seed = s;
    }
    if let Some(t) = args.tol {
        if t.is_nan() || t <= 0.0 {
            eprintln!("error: --tol must be positive");
            return ExitCode::from(2);
        }
        cfg.tol = t;
    }
    if let Some(d) = args.degree {
        if let Err(e) = cherednik_cli::config::check_degree(d) {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
        cfg.degree = d;
    }
    if args.out.is_some() {
        cfg.out = args.out;
    }
    let report = run_suite(&cfg, args.suite);
    print!("{}", report.summary());
    if let Some(path) = &cfg.out {
        if let Err(e) = std::fs::write(path, report.to_json()) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(2);
        }
        println!("report written to {}", path.display());
    }
    ExitCode::from(report.exit_code() as u8)
}
