use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use tet10_mass::mesh::read_mesh;
use tet10_mass::report::{matrix_csv_header, matrix_csv_rows, render_tables, study_csv, TableFormat, TableSet};
use tet10_mass::study::{DEFAULT_DELTAS, DEFAULT_ELEMENTS_PER_DELTA, DEFAULT_SEED};
use tet10_mass::validate::validation_report;
use tet10_mass::{compute, run_study, ConstantTables, Error, Scheme, StudyConfig};

const EXIT_USAGE: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_INVALID: u8 = 3;

/// Consistent mass matrices of 10-node tetrahedra.
#[derive(Debug, Parser)]
#[command(name = "tet10mass", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the regenerated constant coefficient tables.
    Tables(TablesArgs),
    /// Compute element mass matrices for every element of a mesh file.
    Mass(MassArgs),
    /// Run the randomised accuracy study.
    Study(StudyArgs),
    /// Check generated tables and quadrature rules against reference data.
    Validate,
}

#[derive(Debug, Args)]
struct TablesArgs {
    /// cm (alias m0), lm, qm or exact.
    #[arg(long, default_value = "cm")]
    scheme: TableSet,
    /// text or csv.
    #[arg(long, default_value = "text")]
    format: TableFormat,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct MassArgs {
    #[arg(long)]
    mesh: PathBuf,
    /// exact, cm, lm, qm, g1, g4, g5 or g15.
    #[arg(long, default_value = "exact")]
    scheme: Scheme,
    /// Overrides every element's density; elements without one default to 1.
    #[arg(long, value_parser = positive_f64)]
    density: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct StudyArgs {
    /// Comma-separated coarseness values.
    #[arg(long, value_delimiter = ',', default_values_t = DEFAULT_DELTAS, allow_negative_numbers = true)]
    deltas: Vec<f64>,
    #[arg(long, default_value_t = DEFAULT_ELEMENTS_PER_DELTA)]
    elements: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Comma-separated subset of cm, lm, qm, g1, g4, g5, g15.
    #[arg(long, value_delimiter = ',')]
    schemes: Vec<Scheme>,
    #[arg(long, default_value_t = 1.0, value_parser = positive_f64)]
    density: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn positive_f64(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|_| format!("`{s}` is not a number"))?;
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(format!("`{s}` must be a positive finite number"))
    }
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        let code = match err {
            Error::Parse { .. } | Error::Io(_) => EXIT_INPUT,
            Error::InvalidElement { .. } => EXIT_INVALID,
            Error::UnsupportedRule(_) | Error::UnknownScheme(_) | Error::InvalidConfig(_) => EXIT_USAGE,
        };
        Failure {
            code,
            message: err.to_string(),
        }
    }
}

fn emit(out: Option<&PathBuf>, text: &str) -> Result<(), Failure> {
    let written = match out {
        Some(path) => fs::write(path, text),
        None => io::stdout().lock().write_all(text.as_bytes()),
    };
    written.map_err(|e| Failure {
        code: EXIT_INPUT,
        message: match out {
            Some(path) => format!("cannot write {}: {e}", path.display()),
            None => format!("cannot write output: {e}"),
        },
    })
}

fn tables(args: &TablesArgs) -> Result<u8, Failure> {
    emit(
        args.out.as_ref(),
        &render_tables(ConstantTables::global(), args.scheme, args.format),
    )?;
    Ok(0)
}

fn mass(args: &MassArgs) -> Result<u8, Failure> {
    let elements = read_mesh(&args.mesh).map_err(|err| {
        let mut failure = Failure::from(err);
        failure.message = format!("{}: {}", args.mesh.display(), failure.message);
        failure
    })?;
    let mut csv = matrix_csv_header(args.density);
    let mut invalid = 0;
    for element in &elements {
        let density = args.density.or(element.density).unwrap_or(1.0);
        match compute(args.scheme, &element.nodes, density) {
            Ok(m) => csv.push_str(&matrix_csv_rows(&element.id, &m)),
            Err(err) => {
                invalid += 1;
                eprintln!("element {}: {err}", element.id);
            }
        }
    }
    emit(args.out.as_ref(), &csv)?;
    if invalid > 0 {
        eprintln!("{invalid} of {} elements rejected", elements.len());
        return Ok(EXIT_INVALID);
    }
    Ok(0)
}

fn study(args: &StudyArgs) -> Result<u8, Failure> {
    let mut config = StudyConfig {
        deltas: args.deltas.clone(),
        elements_per_delta: args.elements,
        seed: args.seed,
        density: args.density,
        ..Default::default()
    };
    if !args.schemes.is_empty() {
        config.schemes = args.schemes.clone();
    }
    let result = run_study(&config).map_err(|err| {
        let mut failure = Failure::from(err);
        if failure.code == EXIT_USAGE {
            failure
                .message
                .push_str("\n\nFor more information, try 'tet10mass study --help'.");
        }
        failure
    })?;
    emit(args.out.as_ref(), &study_csv(&result))?;
    Ok(0)
}

fn validate() -> Result<u8, Failure> {
    let report = validation_report();
    let mut text = String::new();
    for check in &report {
        text.push_str(&format!("{check}\n"));
    }
    let failed = report.iter().filter(|c| !c.passed).count();
    text.push_str(&format!("{} checks, {failed} failed\n", report.len()));
    emit(None, &text)?;
    Ok(if failed == 0 { 0 } else { EXIT_INVALID })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    let outcome = match &cli.command {
        Command::Tables(args) => tables(args),
        Command::Mass(args) => mass(args),
        Command::Study(args) => study(args),
        Command::Validate => validate(),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}
