//! `magnus`: invariants of homology cylinders and free-group endomorphisms
//! from presentation files.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use magnus_cli::{
    check_report, endo_report, invariants_report, parse_endomorphism, parse_presentation,
    run_ordered, serialize_presentation, witness_report, CliError, Family, Format,
};

#[derive(Parser)]
#[command(
    name = "magnus",
    version,
    about = "Magnus representations, H-torsion, and abelian-quotient invariants"
)]
struct Cli {
    /// Step budget for polynomial factorization
    #[arg(long, global = true, default_value_t = 1_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    budget: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Text,
    Machine,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::Text => Format::Text,
            FormatArg::Machine => Format::Machine,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    Cfk,
    Fm,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a presentation file and print the SNF certificate
    Check { file: PathBuf },
    /// Compute and print all invariants of one or more presentations
    Inv {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
        /// Worker threads for multi-file runs
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u64).range(1..=64))]
        jobs: u64,
    },
    /// Compose two cylinders and write the composed presentation
    Compose {
        file1: PathBuf,
        file2: PathBuf,
        /// Output file (stdout when omitted)
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Invariants of a 2-connected free-group endomorphism
    Endo {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
    },
    /// Generate a witness family and report its independence rank
    Witness {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u64).range(1..))]
        count: u64,
    },
}

fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("{}: {}", path.display(), e)))
}

fn fail(e: &CliError) -> ExitCode {
    eprintln!("error: {}", e);
    ExitCode::from(e.exit_code() as u8)
}

fn run() -> ExitCode {
    let cli = Cli::parse();
    let budget = cli.budget;
    match cli.command {
        Command::Check { file } => {
            let text = match read_file(&file) {
                Ok(t) => t,
                Err(e) => return fail(&e),
            };
            let p = match parse_presentation(&text) {
                Ok(p) => p,
                Err(e) => return fail(&e),
            };
            match check_report(&p) {
                Ok(report) => {
                    print!("{}", report);
                    ExitCode::SUCCESS
                }
                Err(e) => fail(&e),
            }
        }
        Command::Inv {
            files,
            format,
            jobs,
        } => {
            let format = Format::from(format);
            let results = run_ordered(
                files.len(),
                jobs as usize,
                |i| -> Result<String, (CliError, String)> {
                    let text = read_file(&files[i]).map_err(|e| (e, String::new()))?;
                    let p = parse_presentation(&text).map_err(|e| (e, String::new()))?;
                    invariants_report(&p, budget, format)
                },
            );
            let mut worst = 0u8;
            for (path, res) in files.iter().zip(results) {
                if files.len() > 1 {
                    println!("# {}", path.display());
                }
                match res {
                    Ok(report) => print!("{}", report),
                    Err((e, partial)) => {
                        if !partial.is_empty() {
                            print!("{}", partial);
                        }
                        eprintln!("error: {}", e);
                        worst = worst.max(e.exit_code() as u8);
                    }
                }
            }
            ExitCode::from(worst)
        }
        Command::Compose { file1, file2, out } => {
            let run = || -> Result<String, CliError> {
                let p1 = parse_presentation(&read_file(&file1)?)?;
                let p2 = parse_presentation(&read_file(&file2)?)?;
                let composed = p1
                    .compose(&p2)
                    .map_err(|e| CliError::Input(format!("{}", e)))?;
                composed
                    .validate()
                    .map_err(|e| CliError::Internal(format!("composed presentation invalid: {}", e)))?;
                Ok(serialize_presentation(&composed))
            };
            match run() {
                Ok(text) => match out {
                    Some(path) => match std::fs::write(&path, text) {
                        Ok(()) => ExitCode::SUCCESS,
                        Err(e) => fail(&CliError::Input(format!("{}: {}", path.display(), e))),
                    },
                    None => {
                        print!("{}", text);
                        ExitCode::SUCCESS
                    }
                },
                Err(e) => fail(&e),
            }
        }
        Command::Endo { file, format } => {
            let text = match read_file(&file) {
                Ok(t) => t,
                Err(e) => return fail(&e),
            };
            let phi = match parse_endomorphism(&text) {
                Ok(p) => p,
                Err(e) => return fail(&e),
            };
            match endo_report(&phi, budget, Format::from(format)) {
                Ok(report) => {
                    print!("{}", report);
                    ExitCode::SUCCESS
                }
                Err((e, partial)) => {
                    if !partial.is_empty() {
                        print!("{}", partial);
                    }
                    fail(&e)
                }
            }
        }
        Command::Witness { family, count } => {
            let family = match family {
                FamilyArg::Cfk => Family::Cfk,
                FamilyArg::Fm => Family::Fm,
            };
            match witness_report(family, count as usize, budget) {
                Ok(report) => {
                    print!("{}", report);
                    ExitCode::SUCCESS
                }
                Err(e) => fail(&e),
            }
        }
    }
}

fn main() -> ExitCode {
    run()
}
