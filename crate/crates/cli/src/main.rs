use std::io::{Read, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use sfs_fillings_cli::{run, Command, Flags, Format, EXIT_IO};

/// Symplectic filling census for dually positive star-shaped plumbings.
#[derive(Parser)]
#[command(name = "sfs-fillings", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    /// output format
    #[arg(long, value_enum, global = true, default_value = "json")]
    format: Format,
    /// keep representations that differ only by a graph automorphism
    #[arg(long, global = true)]
    no_symmetry_quotient: bool,
    /// search budget (states) for word equivalence
    #[arg(long, global = true)]
    budget: Option<usize>,
    /// compare the census with the closed-form family counts
    #[arg(long, global = true)]
    fixtures: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// enumerate filling candidates
    Census {
        /// JSON input file, `-` or absent for stdin
        input: Option<String>,
    },
    /// build the dual graph and check it
    Dual { input: Option<String> },
    /// Lefschetz words per candidate (duals with length-one arms)
    Monodromy { input: Option<String> },
    /// decide whether two twist words are related by the rewriting moves
    Verify { left: String, right: String },
}

fn read_input(path: Option<&str>) -> std::io::Result<String> {
    let mut s = String::new();
    match path {
        None | Some("-") => {
            std::io::stdin().read_to_string(&mut s)?;
        }
        Some(p) => s = std::fs::read_to_string(p)?,
    }
    Ok(s)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let flags = Flags {
        format: cli.format,
        no_symmetry_quotient: cli.no_symmetry_quotient,
        budget: cli.budget,
        fixtures: cli.fixtures,
    };
    let (cmd, path) = match cli.command {
        Cmd::Census { input } => (Command::Census, input),
        Cmd::Dual { input } => (Command::Dual, input),
        Cmd::Monodromy { input } => (Command::Monodromy, input),
        Cmd::Verify { left, right } => (Command::Verify { left, right }, None),
    };
    let text = match &cmd {
        Command::Verify { .. } => None,
        _ => match read_input(path.as_deref()) {
            Ok(t) => Some(t),
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(EXIT_IO as u8);
            }
        },
    };
    let out = run(&cmd, text.as_deref(), &flags);
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    ExitCode::from(out.code as u8)
}
