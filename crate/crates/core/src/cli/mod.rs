//! Command-line front end: parsing, serialization and the `dct` commands.

mod commands;
mod json;
mod parse;
mod report;

pub use commands::{read_operator, run, Cli, Command, DenomBound, Format, Method};
pub use json::{
    certificate_from_json, certificate_from_str, certificate_to_json, certificate_to_string, operator_from_json,
    operator_from_str, operator_to_json, operator_to_string, CertificateJson, ExponentMap, FunctionJson, OperatorJson, TOOL_VERSION,
};
pub use parse::{parse_function, parse_operator};
pub use report::{Outcome, Report};
