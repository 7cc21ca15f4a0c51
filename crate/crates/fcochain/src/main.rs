use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use fcochain::cli::{execute_command, Options};
use fcochain::format::load_workspace;

/// Exact computations with cochain complexes over representable endofunctors
/// of module categories: validation, kernels and cokernels, two-term
/// projectives and injectives, split decompositions, the tensor/hom bridge,
/// graded and repetitive packings.
#[derive(Parser)]
#[command(name = "fcochain", version)]
struct Cli {
    /// Command: validate, kernel, cokernel, biproduct, pullback, ses-check,
    /// sigma, lift, extend, fundamental, split-decompose, bridge,
    /// bridge-inverse, graded, graded-inverse, transport, compose-functors,
    /// pack, unpack, nakayama, selftest
    command: String,

    /// Entity names and command arguments
    args: Vec<String>,

    /// Workspace files to load (repeatable)
    #[arg(short = 'f', long = "file")]
    files: Vec<PathBuf>,

    /// Seed for randomized checks, echoed in the report
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Include full matrices / serialized entities in the output
    #[arg(long)]
    emit_matrices: bool,

    /// Output format: text or structured
    #[arg(long, default_value = "text")]
    format: String,

    /// Degree window `lo..hi` for commands that take one
    #[arg(long)]
    window: Option<String>,
}

fn parse_window(s: &str) -> Result<(i64, i64), String> {
    let (lo, hi) = s.split_once("..").ok_or("window must be lo..hi")?;
    let lo: i64 = lo.trim().parse().map_err(|_| "bad window lower bound")?;
    let hi: i64 = hi.trim().parse().map_err(|_| "bad window upper bound")?;
    if hi < lo {
        return Err("window must satisfy lo <= hi".into());
    }
    Ok((lo, hi))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let window = match cli.window.as_deref().map(parse_window) {
        Some(Ok(w)) => Some(w),
        Some(Err(e)) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
        None => None,
    };
    let mut files = Vec::new();
    for path in &cli.files {
        match std::fs::read_to_string(path) {
            Ok(text) => files.push((path.display().to_string(), text)),
            Err(e) => {
                eprintln!("error: cannot read {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
    }
    let ws = match load_workspace(&files) {
        Ok(ws) => ws,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let opts = Options {
        seed: cli.seed,
        emit: cli.emit_matrices,
        window,
    };
    match execute_command(&ws, &cli.command, &cli.args, &opts) {
        Ok(report) => {
            print!("{}", report.render(&cli.format, cli.emit_matrices));
            if report.all_ok() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
