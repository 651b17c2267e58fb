//! Library side of the CLI so the commands can run in-process (the
//! integration tests drive them this way).

pub mod benchmark;
pub mod commands;
pub mod config;

pub use benchmark::{run_benchmark, BenchmarkReport};
pub use commands::{run_baseline, run_enhance, run_fitness};
pub use config::{validate_hyperparams, ExperimentConfig, HyperOverrides};
