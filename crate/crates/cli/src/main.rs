use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use kirwan_cli::commands::{self, FrameOptions, IntegrateOptions, KernelMode, KernelOptions};
use kirwan_cli::report::Report;

/// Exact residue and localization checks for Hamiltonian torus actions.
#[derive(Parser)]
#[command(name = "kirwan", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Output {
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    output: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct Frame {
    /// Residue order as a permutation of the variables, innermost first.
    #[arg(long)]
    ordering: Option<String>,
    /// Orientation scalar Δ.
    #[arg(long, allow_hyphen_values = true)]
    delta: Option<String>,
}

impl Frame {
    fn options(&self) -> FrameOptions {
        FrameOptions { ordering: self.ordering.clone(), delta: self.delta.clone() }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Structural checks plus ABBV over generator products.
    Validate {
        /// Dataset path or builtin:NAME.
        dataset: String,
        #[arg(long)]
        max_degree: Option<u32>,
        #[command(flatten)]
        out: Output,
    },
    /// Res^+ of an expression file by both methods.
    Residue {
        expression: String,
        #[command(flatten)]
        out: Output,
    },
    /// Kernel subspaces and theorem verdicts.
    Kernel {
        dataset: String,
        /// Circle direction, comma-separated integers.
        #[arg(long, group = "mode", allow_hyphen_values = true)]
        circle: Option<String>,
        #[arg(long, group = "mode")]
        full: bool,
        #[arg(long, group = "mode")]
        nonabelian: bool,
        #[arg(long, default_value_t = 4)]
        max_degree: u32,
        #[command(flatten)]
        frame: Frame,
        #[arg(long, default_value_t = 8)]
        chamber_box: u32,
        /// Reference class for absolute values (default: the unit).
        #[arg(long)]
        calibrate: Option<String>,
        #[command(flatten)]
        out: Output,
    },
    /// κ_S, κ_T or κ_K of one class, e.g. `--class 'X^2*a1'`.
    Integrate {
        dataset: String,
        #[arg(long)]
        class: String,
        #[arg(long, conflicts_with = "nonabelian", allow_hyphen_values = true)]
        circle: Option<String>,
        #[arg(long)]
        nonabelian: bool,
        #[command(flatten)]
        frame: Frame,
        #[arg(long)]
        calibrate: Option<String>,
        #[command(flatten)]
        out: Output,
    },
    /// Lists bundled datasets, or prints one.
    Example { name: Option<String> },
}

fn emit(text: &str, output: Option<&str>) -> Result<(), String> {
    match output {
        Some(path) => std::fs::write(path, text).map_err(|e| format!("{path}: {e}")),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn finish(result: kirwan::Result<Report>, out: &Output) -> ExitCode {
    let report = match result {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let text = match out.format {
        Format::Json => report.to_json(),
        Format::Text => report.to_text(),
    };
    if let Err(e) = emit(&text, out.output.as_deref()) {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    if report.pass() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match cli.command {
        Command::Validate { dataset, max_degree, out } => finish(commands::validate(&dataset, max_degree), &out),
        Command::Residue { expression, out } => finish(commands::residue(&expression), &out),
        Command::Kernel { dataset, circle, full, nonabelian, max_degree, frame, chamber_box, calibrate, out } => {
            let mode = match (circle, full, nonabelian) {
                (Some(xi), _, _) => KernelMode::Circle(xi),
                (None, true, _) => KernelMode::Full,
                (None, false, true) => KernelMode::Nonabelian,
                _ => {
                    eprintln!("error: one of --circle, --full, --nonabelian is required");
                    return ExitCode::from(2);
                }
            };
            let opts = KernelOptions { mode, max_degree, frame: frame.options(), chamber_box, calibrate };
            finish(commands::kernel(&dataset, &opts), &out)
        }
        Command::Integrate { dataset, class, circle, nonabelian, frame, calibrate, out } => {
            let opts = IntegrateOptions { class, circle, nonabelian, frame: frame.options(), calibrate };
            finish(commands::integrate(&dataset, &opts), &out)
        }
        Command::Example { name } => match commands::example(name.as_deref()) {
            Ok(text) => {
                print!("{text}");
                ExitCode::SUCCESS
            }
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
        },
    }
}
