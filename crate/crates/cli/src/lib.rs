//! Library side of the command-line front end: file formats, run
//! dispatch, the evaluation harness, and synthetic data generation.

pub mod bench;
pub mod io;
pub mod report;
pub mod synth;

pub use bench::{
    cli_oracle_limits, run_eval, run_mine, write_eval_table, Algorithm, BenchRecord, CliError,
    EvalConfig, EvalRow, OutputFormat, RunConfig,
};
pub use io::{load_database, parse_database, write_database, Format, LoadError};
pub use synth::{alphabet_letters, gen_synthetic, SynthError, SynthSpec};
