use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use qchu_kit::cli_io::{self, IoError, Outcome, EXIT_INPUT};
use qchu_kit::generators::Family;

#[derive(Parser)]
#[command(name = "qchu-kit", version, about = "Finite model checker for three-valued Chu spaces and state spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Domain axioms of a state space
    CheckDomain {
        file: Option<PathBuf>,
        #[arg(long)]
        exhaustive: bool,
    },
    /// Saturate a chu3 file and write its state space
    Quotient {
        file: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Property table for each scheme pair
    Properties { file: Option<PathBuf> },
    /// Apply the measurement of a property to a state
    Measure {
        file: Option<PathBuf>,
        #[arg(long)]
        sigma: String,
        #[arg(long)]
        state: String,
    },
    /// Joint-compatibility sweep over minimal properties
    Specker { file: Option<PathBuf> },
    /// Scheme validation and star laws
    Ortho { file: Option<PathBuf> },
    /// Closed-set lattice with Hilbert and Kripke checks
    Hilbert {
        file: Option<PathBuf>,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Morphism, symmetry and preservation checks for a dictionary
    Symmetry { file: Option<PathBuf> },
    /// Write a generated space, e.g. `--family mo --n 2` or `--family "product(mo:2,boolean:2)"`
    Generate {
        #[arg(long)]
        family: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

struct Input {
    text: String,
    name: String,
    dir: PathBuf,
}

fn read_input(file: Option<&Path>) -> Result<Input, IoError> {
    match file {
        Some(path) if path != Path::new("-") => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| IoError::Read { path: path.display().to_string(), message: e.to_string() })?;
            let dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
            Ok(Input { text, name: path.display().to_string(), dir })
        }
        _ => {
            let mut text = String::new();
            std::io::stdin()
                .read_to_string(&mut text)
                .map_err(|e| IoError::Read { path: "<stdin>".into(), message: e.to_string() })?;
            Ok(Input { text, name: "<stdin>".into(), dir: PathBuf::from(".") })
        }
    }
}

fn write_to(path: Option<&Path>, text: &str) -> Result<(), IoError> {
    let err = |p: &str, e: std::io::Error| IoError::Read { path: p.to_string(), message: e.to_string() };
    match path {
        Some(p) if p != Path::new("-") => std::fs::write(p, text).map_err(|e| err(&p.display().to_string(), e)),
        _ => std::io::stdout().write_all(text.as_bytes()).map_err(|e| err("<stdout>", e)),
    }
}

fn parse_family(family: &str, n: Option<usize>) -> Result<Family, IoError> {
    let text = match n {
        Some(n) => format!("{family}:{n}"),
        None => family.to_string(),
    };
    Ok(text.parse::<Family>()?)
}

fn run(cli: Cli) -> Result<u8, IoError> {
    let (outcome, output, dot): (Outcome, Option<PathBuf>, Option<PathBuf>) = match cli.command {
        Command::CheckDomain { file, exhaustive } => {
            let i = read_input(file.as_deref())?;
            (cli_io::check_domain(&i.text, &i.name, exhaustive)?, None, None)
        }
        Command::Quotient { file, output } => {
            let i = read_input(file.as_deref())?;
            (cli_io::quotient(&i.text)?, output, None)
        }
        Command::Properties { file } => {
            let i = read_input(file.as_deref())?;
            (cli_io::properties(&i.text, &i.name)?, None, None)
        }
        Command::Measure { file, sigma, state } => {
            let i = read_input(file.as_deref())?;
            (cli_io::measure(&i.text, &sigma, &state)?, None, None)
        }
        Command::Specker { file } => {
            let i = read_input(file.as_deref())?;
            (cli_io::specker(&i.text, &i.name)?, None, None)
        }
        Command::Ortho { file } => {
            let i = read_input(file.as_deref())?;
            (cli_io::ortho(&i.text, &i.name)?, None, None)
        }
        Command::Hilbert { file, dot } => {
            let i = read_input(file.as_deref())?;
            (cli_io::hilbert(&i.text, &i.name)?, None, dot)
        }
        Command::Symmetry { file } => {
            let i = read_input(file.as_deref())?;
            (cli_io::symmetry(&i.text, &i.name, &i.dir)?, None, None)
        }
        Command::Generate { family, n, output } => (cli_io::generate(&parse_family(&family, n)?)?, output, None),
    };
    if let (Some(path), Some(text)) = (dot.as_deref(), outcome.dot.as_deref()) {
        write_to(Some(path), text)?;
    }
    write_to(output.as_deref(), &outcome.text)?;
    Ok(outcome.code)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}
