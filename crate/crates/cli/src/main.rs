//! `flp`: exact checks for n-ary brackets, connections, and their
//! fiberwise-linear multivector duals, driven by JSON scenario files.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};

use flp_cli::error::CliError;
use flp_cli::nambu_file::{load_nambu, structure_from_file, write_nambu, NambuFile};
use flp_cli::runner::{run_checks, RunReport};
use flp_cli::scenario::{load_scenario, read_text, write_text, Scenario, ScenarioFile};
use flp_cli::sections::{parse_section, parse_section_list};
use flp_core::algebroid::realize_connection;
use flp_core::nambu::{check_dufour_zung, check_fundamental_identity};
use flp_core::{dualize, eigen_check, wedge_sections, Connection, ParseContext, Section};

#[derive(Parser)]
#[command(
    name = "flp",
    version,
    about = "Exact symbolic checks for n-ary brackets and their dual multivectors"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a scenario or structure file against its schema.
    Validate {
        file: PathBuf,
    },
    /// Run identity checks on a scenario.
    Check {
        scenario: PathBuf,
        /// Comma-separated subset of condition1, bianchi, anchor_compat,
        /// leibniz, jacobi, rank.
        #[arg(long, value_delimiter = ',')]
        checks: Option<Vec<String>>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Evaluate the n-ary bracket on section arguments.
    Bracket {
        scenario: PathBuf,
        /// Comma-separated sections filling the n slots, like "e1,e2,x1*e3".
        #[arg(long)]
        args: String,
    },
    /// Evaluate the curvature R(X; W)Z.
    Curvature {
        scenario: PathBuf,
        /// Comma-separated sections filling the n-1 bracket slots.
        #[arg(long)]
        x: String,
        /// Comma-separated sections wedged into the connection slot.
        #[arg(long)]
        w: String,
        /// Section the curvature acts on.
        #[arg(long)]
        z: String,
    },
    /// Build a connection whose induced bracket reproduces the scenario's
    /// bracket table.
    Realize {
        scenario: PathBuf,
        /// Base connection: "zero" or a path to a scenario providing one.
        #[arg(long, default_value = "zero")]
        base: String,
        /// Output path for the realized scenario; stdout if omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Build the anchored bundle and connection determined by an operator
    /// pair, after verifying its eigenvalue equation.
    FromPair {
        scenario: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Write the fiberwise-linear multivector dual to the scenario bracket.
    Dualize {
        scenario: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Run decomposability checks on a structure file.
    CheckNambu {
        file: PathBuf,
        /// Also check the fundamental identity on jet arguments.
        #[arg(long)]
        fundamental: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(1)
        }
    }
}

fn run(command: Command) -> Result<ExitCode, CliError> {
    match command {
        Command::Validate { file } => validate(&file),
        Command::Check { scenario, checks, format } => {
            let scenario = load_scenario(&scenario)?;
            let report = run_checks(&scenario, checks.as_deref())?;
            print_report(&report, format);
            Ok(exit_by_status(report.passed()))
        }
        Command::Bracket { scenario, args } => {
            let scenario = load_scenario(&scenario)?;
            let sections = parse_args(&scenario, &args, scenario.bundle.arity() as usize)?;
            let value = match scenario.resolve_connection()? {
                Some(conn) => conn.bracket(&sections)?,
                None => match &scenario.bracket {
                    Some(table) => table.evaluate(&sections)?,
                    None => {
                        return Err(CliError::MissingInput {
                            what: "a connection, operator pair, or bracket table",
                        })
                    }
                },
            };
            println!("{value}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Curvature { scenario, x, w, z } => {
            let scenario = load_scenario(&scenario)?;
            let conn = scenario
                .resolve_connection()?
                .ok_or(CliError::MissingInput { what: "a connection or operator pair" })?;
            let slots = scenario.bundle.wedge_degree() as usize;
            let xs = parse_args(&scenario, &x, slots)?;
            let ws = parse_args(&scenario, &w, slots)?;
            let wedge = wedge_sections(scenario.bundle.rank(), &ws)?;
            let ctx = ParseContext::base(scenario.bundle.base_dim());
            let z = parse_section(&z, scenario.bundle.rank(), &ctx)?;
            println!("{}", conn.curvature(&xs, &wedge, &z)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Realize { scenario, base, output } => {
            let loaded = load_scenario(&scenario)?;
            let table = loaded
                .bracket
                .as_ref()
                .ok_or(CliError::MissingInput { what: "a bracket table" })?;
            let base_conn = if base == "zero" {
                Connection::new(table.bundle().clone())
            } else {
                load_scenario(Path::new(&base))?
                    .connection
                    .ok_or(CliError::MissingInput { what: "a connection in the base scenario" })?
            };
            let realized = realize_connection(table, &base_conn)?;
            let out = Scenario {
                name: loaded.name.clone(),
                bundle: table.bundle().clone(),
                connection: Some(realized),
                bracket: None,
                pair: None,
                checks: None,
                seed: None,
            };
            match output {
                Some(path) => write_text(&path, &out.to_json())?,
                None => print!("{}", out.to_json()),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::FromPair { scenario, output } => {
            let loaded = load_scenario(&scenario)?;
            let (operator, xi) = loaded
                .pair
                .as_ref()
                .ok_or(CliError::MissingInput { what: "operator pair data" })?;
            let g = eigen_check(operator, xi)?;
            let (bundle, conn) = flp_core::build_pair_structure(operator, xi)?;
            let out = Scenario {
                name: loaded.name.clone(),
                bundle,
                connection: Some(conn),
                bracket: None,
                pair: None,
                checks: None,
                seed: None,
            };
            write_text(&output, &out.to_json())?;
            println!("eigenvalue g = {g}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Dualize { scenario, output } => {
            let loaded = load_scenario(&scenario)?;
            let table = loaded
                .resolve_table()?
                .ok_or(CliError::MissingInput {
                    what: "a bracket table, connection, or operator pair",
                })?;
            let structure = dualize(&table)?;
            write_nambu(&output, &structure)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::CheckNambu { file, fundamental, format } => {
            let structure = load_nambu(&file)?;
            let mut checks = vec![check_dufour_zung(&structure)?];
            if fundamental {
                checks.push(check_fundamental_identity(&structure));
            }
            let report = RunReport {
                scenario: file
                    .file_stem()
                    .map(|stem| stem.to_string_lossy().into_owned())
                    .unwrap_or_else(|| file.display().to_string()),
                version: env!("CARGO_PKG_VERSION").to_string(),
                seed: None,
                checks,
            };
            print_report(&report, format);
            Ok(exit_by_status(report.passed()))
        }
    }
}

fn validate(file: &Path) -> Result<ExitCode, CliError> {
    let text = read_text(file)?;
    let value: serde_json::Value = serde_json::from_str(&text)
        .map_err(|source| CliError::Json { path: file.display().to_string(), source })?;
    if value.get("fiber_dim").is_some() {
        let raw: NambuFile = serde_json::from_value(value)
            .map_err(|source| CliError::Json { path: file.display().to_string(), source })?;
        let structure = structure_from_file(&raw)?;
        println!(
            "ok: order-{} structure over base dimension {}",
            structure.order(),
            structure.dims().base_dim
        );
    } else {
        let raw: ScenarioFile = serde_json::from_value(value)
            .map_err(|source| CliError::Json { path: file.display().to_string(), source })?;
        let scenario = Scenario::from_file(&raw)?;
        println!("ok: {}", scenario.name);
    }
    Ok(ExitCode::SUCCESS)
}

fn parse_args(scenario: &Scenario, input: &str, expected: usize) -> Result<Vec<Section>, CliError> {
    let ctx = ParseContext::base(scenario.bundle.base_dim());
    let sections = parse_section_list(input, scenario.bundle.rank(), &ctx)?;
    if sections.len() != expected {
        return Err(CliError::Section {
            expr: input.to_string(),
            message: format!("need {expected} sections, found {}", sections.len()),
        });
    }
    Ok(sections)
}

fn print_report(report: &RunReport, format: Format) {
    match format {
        Format::Text => print!("{}", report.to_text()),
        Format::Json => print!("{}", report.to_json()),
    }
}

fn exit_by_status(passed: bool) -> ExitCode {
    if passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    }
}
