//! Experiment harness for the `rsane` solver: Matrix Market input, seeded
//! instance generators, CSV traces and summary tables.

pub mod error;
pub mod experiment;
pub mod generate;
pub mod mtx;
pub mod summary;
pub mod trace;

pub use error::{BenchError, Result};
pub use experiment::{run_experiment, ExperimentResult, ExperimentSpec, Problem, Run};
