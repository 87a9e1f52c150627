mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qk_core::caps::Caps;

use report::Failure;

#[derive(Parser)]
#[command(name = "qk", version, about = "Checks and completions for finite quantaloid-enriched categories")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    caps: CapArgs,
}

#[derive(Args)]
struct CapArgs {
    /// Largest number of presheaves an enumeration may produce.
    #[arg(long, global = true, value_name = "N", default_value_t = Caps::default().max_presheaves)]
    max_presheaves: u128,
    /// Object bound for bounded initiality probes.
    #[arg(long, global = true, value_name = "K", default_value_t = Caps::default().probe_bound)]
    probe_bound: usize,
    /// Seed for sampled checks.
    #[arg(long, global = true, value_name = "S", default_value_t = Caps::default().seed)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a file and check every block.
    Validate { file: PathBuf },
    /// Decide totality or topologicity of a category.
    Check {
        file: PathBuf,
        target: String,
        #[arg(value_enum, default_value_t = Property::All)]
        property: Property,
    },
    /// Complete a poset, lattice or distributor and write the result.
    Complete {
        file: PathBuf,
        target: String,
        #[arg(value_enum)]
        mode: Mode,
        /// Where to write the completed instance (default `<target>-<mode>.qk`).
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Also write a Hasse diagram of the result.
        #[arg(long, value_name = "PATH")]
        dot: Option<PathBuf>,
    },
    /// Compute the final lift of a structured sink.
    FinalLift { file: PathBuf, sink: String },
    /// Extend `F: C -> E` along a fully faithful `G: C -> D`.
    Extend { file: PathBuf, f: String, g: String },
    /// Print a Hasse diagram in DOT, or a hom table for other enrichments.
    ExportDot { file: PathBuf, target: String },
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Property {
    Total,
    Topological,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Mode {
    Macneille,
    Isbell,
    Reconstruct,
}

impl Mode {
    fn keyword(self) -> &'static str {
        match self {
            Mode::Macneille => "macneille",
            Mode::Isbell => "isbell",
            Mode::Reconstruct => "reconstruct",
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let caps = Caps {
        max_presheaves: cli.caps.max_presheaves,
        probe_bound: cli.caps.probe_bound,
        seed: cli.caps.seed,
    };
    let (name, result) = match cli.command {
        Command::Validate { file } => ("validate", commands::validate(&file)),
        Command::Check {
            file,
            target,
            property,
        } => ("check", commands::check(&file, &target, property, &caps)),
        Command::Complete {
            file,
            target,
            mode,
            output,
            dot,
        } => {
            let output = output.unwrap_or_else(|| PathBuf::from(format!("{target}-{}.qk", mode.keyword())));
            (
                "complete",
                commands::complete(&file, &target, mode, &output, dot.as_deref(), &caps),
            )
        }
        Command::FinalLift { file, sink } => ("final-lift", commands::final_lift(&file, &sink)),
        Command::Extend { file, f, g } => ("extend", commands::extend(&file, &f, &g, &caps)),
        Command::ExportDot { file, target } => {
            return match commands::export_dot(&file, &target) {
                Ok(text) => {
                    print!("{text}");
                    ExitCode::SUCCESS
                }
                Err(f) => {
                    eprintln!("qk: {}", f.message);
                    ExitCode::from(f.code)
                }
            };
        }
    };
    match result {
        Ok(report) => {
            print!("{}", report.render(name));
            ExitCode::from(report.code())
        }
        Err(Failure { code, message }) => {
            eprintln!("qk: {message}");
            print!("{}", report::error_block(name, code, &message));
            ExitCode::from(code)
        }
    }
}
