//! Configuration ingestion, the parameter-sweep engine and report
//! emission behind the `hybridsim` binary.

pub mod config;
pub mod report;
pub mod scenario;
pub mod svg;

pub use config::{load_config, parse_config, Params, ParamValue, RunConfig, SweepScale, SweepSpec};
pub use report::{Column, Metadata, OutputFormat, Report, Value, PLUMBING};
pub use scenario::{run, run_sweep, schema, validate, RunMode, Scenario};
