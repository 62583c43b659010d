use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use modforge::report::EXIT_INPUT;
use modforge::{run, Command, Job};
use modforge_core::Caps;

#[derive(Parser)]
#[command(
    name = "modforge",
    version,
    about = "Flattening ideals, splittings and automorphism-functor certificates over finite local rings"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,

    /// Input document; `-` reads standard input.
    #[arg(long, global = true)]
    input: Option<PathBuf>,

    /// Inline input document.
    #[arg(long, global = true, conflicts_with = "input")]
    inline: Option<String>,

    #[arg(long, global = true, conflicts_with = "human")]
    json: bool,

    /// Human-readable report (the default).
    #[arg(long, global = true)]
    human: bool,

    /// Largest ring order accepted.
    #[arg(long, global = true, env = "MODFORGE_CAP_RING")]
    cap_ring: Option<usize>,

    /// Largest number of module elements or candidate tuples enumerated.
    #[arg(long, global = true)]
    cap_enum: Option<usize>,

    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check ring axioms and presentation shape.
    Validate,
    /// Locality, flattening ideal, freeness and the universal property.
    Analyze,
    /// Reduce and split into `R^m ⊕ (R/(a))^n` with a certificate.
    Decompose,
    /// Order and generators of `GL_E(T)`.
    Gl,
    /// Free verdict or a non-representability certificate.
    Certify,
    /// Re-validate a serialized certificate.
    Recheck,
    /// Write the test corpus.
    Corpus {
        #[arg(long)]
        bound: usize,
        #[arg(long)]
        dir: PathBuf,
    },
}

fn read_input(cli: &Cli) -> std::io::Result<Option<Vec<u8>>> {
    if let Some(doc) = &cli.inline {
        return Ok(Some(doc.clone().into_bytes()));
    }
    match &cli.input {
        Some(p) if p.as_os_str() == "-" => {
            let mut buf = Vec::new();
            std::io::stdin().read_to_end(&mut buf)?;
            Ok(Some(buf))
        }
        Some(p) => std::fs::read(p).map(Some),
        None => Ok(None),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut caps = Caps::default();
    if let Some(n) = cli.cap_ring {
        caps.ring = n;
    }
    if let Some(n) = cli.cap_enum {
        caps.module_enum = n;
    }
    let input = match read_input(&cli) {
        Ok(i) => i,
        Err(e) => {
            eprintln!("modforge: cannot read input: {e}");
            return ExitCode::from(EXIT_INPUT as u8);
        }
    };
    let command = match &cli.command {
        Cmd::Validate => Command::Validate,
        Cmd::Analyze => Command::Analyze,
        Cmd::Decompose => Command::Decompose,
        Cmd::Gl => Command::Gl,
        Cmd::Certify => Command::Certify,
        Cmd::Recheck => Command::Recheck,
        Cmd::Corpus { bound, dir } => Command::Corpus { bound: *bound, dir: dir.clone() },
    };
    let report = run(&Job { command, input, caps, seed: cli.seed });
    let text = if cli.json { report.to_json() } else { report.to_human() };
    match &cli.output {
        Some(p) => {
            if let Err(e) = std::fs::write(p, text) {
                eprintln!("modforge: cannot write {}: {e}", p.display());
                return ExitCode::from(EXIT_INPUT as u8);
            }
        }
        None => print!("{text}"),
    }
    ExitCode::from(report.exit_code as u8)
}
