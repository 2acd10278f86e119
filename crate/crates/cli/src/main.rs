use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};

use fountain_core::report::{self, Report, Status};
use fountain_core::{io as formats, FiniteSemigroup, RingSpec};

#[derive(Parser)]
#[command(name = "fountain", version, about = "Reduced E-Fountain semigroup analysis")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyse a semigroup given as a Cayley table or transformation generators.
    Analyze {
        input: PathBuf,
        /// Read INPUT as transformation generators instead of a Cayley table.
        #[arg(long)]
        transformations: bool,
        /// File of E indices, or `all-idempotents`.
        #[arg(long, default_value = "all-idempotents")]
        e_set: String,
        #[arg(long, default_value = "int")]
        ring: RingSpec,
        /// Structure name in the report; defaults to the input file stem.
        #[arg(long)]
        name: Option<String>,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Verify the Catalan monoid of the given degree end to end.
    Catalan {
        #[arg(long)]
        degree: usize,
        #[arg(long, default_value = "int")]
        ring: RingSpec,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Check every small semigroup and admissible E, one line per structure.
    Search {
        #[arg(long)]
        max_order: usize,
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

fn load(input: &Path, transformations: bool) -> Result<FiniteSemigroup> {
    let text = fs::read_to_string(input).with_context(|| format!("reading {}", input.display()))?;
    let semigroup = if transformations {
        FiniteSemigroup::from_transformations(&formats::parse_transformations(&text)?)?
    } else {
        formats::parse_cayley_table(&text)?
    };
    Ok(semigroup)
}

fn emit(report: &Report, path: Option<&Path>) -> Result<i32> {
    let text = report.render();
    print!("{text}");
    if let Some(path) = path {
        fs::write(path, &text).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(report.exit_code())
}

fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Analyze {
            input,
            transformations,
            e_set,
            ring,
            name,
            report,
        } => {
            let s = load(&input, transformations)?;
            let e = match e_set.as_str() {
                "all-idempotents" => None,
                path => {
                    let text = fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
                    Some(formats::parse_e_set(&text, s.size())?)
                }
            };
            let name = name.unwrap_or_else(|| {
                input
                    .file_stem()
                    .map_or_else(|| "input".into(), |s| s.to_string_lossy().into_owned())
            });
            emit(&report::analyze_report(&name, &s, e.as_deref(), ring), report.as_deref())
        }
        Command::Catalan { degree, ring, report } => emit(&report::catalan_report(degree, ring)?, report.as_deref()),
        Command::Search { max_order, report } => {
            let lines = report::search_lines(max_order)?;
            let mut file = match &report {
                Some(path) => Some(BufWriter::new(
                    File::create(path).with_context(|| format!("writing {}", path.display()))?,
                )),
                None => None,
            };
            let stdout = io::stdout();
            let mut out = stdout.lock();
            let header = format!("structure: search up to order {max_order}\n");
            out.write_all(header.as_bytes())?;
            if let Some(f) = file.as_mut() {
                f.write_all(header.as_bytes())?;
            }
            let mut failed = false;
            for line in lines {
                failed |= line.status == Status::Fail;
                writeln!(out, "{line}")?;
                if let Some(f) = file.as_mut() {
                    writeln!(f, "{line}")?;
                }
            }
            if let Some(mut f) = file {
                f.flush()?;
            }
            Ok(i32::from(failed))
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
