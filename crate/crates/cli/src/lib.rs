//! Scenario and report plumbing behind the `flp` binary: JSON schemas with
//! expression-string leaves, section-expression parsing for command
//! arguments, and the check runner with its byte-stable report format.

pub mod error;
pub mod nambu_file;
pub mod runner;
pub mod scenario;
pub mod sections;

pub use error::CliError;
pub use nambu_file::{file_from_structure, load_nambu, structure_from_file, write_nambu, NambuFile};
pub use runner::{run_checks, RunReport, KNOWN_CHECKS, TABLE_CHECKS};
pub use scenario::{load_scenario, OptionsFile, PairFile, Scenario, ScenarioFile};
pub use sections::{parse_section, parse_section_list};
