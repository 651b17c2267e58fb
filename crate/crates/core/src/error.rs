//! Error type shared across the library.

use std::path::PathBuf;

use crate::optim::VariantId;

/// Errors produced by image I/O, genome construction and the optimizers.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("file not found: {0}")]
    FileNotFound(PathBuf),

    #[error("failed to read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("failed to decode {path}: {detail}")]
    Decode { path: PathBuf, detail: String },

    #[error("unsupported image format for {path}: {detail}")]
    UnsupportedFormat { path: PathBuf, detail: String },

    #[error("invalid raster dimensions: {width}x{height} with {pixels} pixels")]
    InvalidDimensions {
        width: u32,
        height: u32,
        pixels: usize,
    },

    #[error("plane dimensions disagree: {expected:?} vs {actual:?}")]
    DimensionMismatch {
        expected: (u32, u32),
        actual: (u32, u32),
    },

    #[error("a genome needs at least 3 membership functions, got {0}")]
    GenomeTooShort(usize),

    #[error("crossover requires genomes of equal length, got {left} and {right}")]
    CrossoverLengthMismatch { left: usize, right: usize },

    #[error("variant {got} is not a {expected} variant")]
    VariantMismatch {
        expected: &'static str,
        got: VariantId,
    },

    #[error("trace holds no generation records")]
    EmptyTrace,

    #[error("invalid genome JSON: {0}")]
    GenomeJson(String),

    #[error("invalid trace CSV at line {line}: {detail}")]
    TraceCsv { line: usize, detail: String },
}

pub type Result<T> = std::result::Result<T, Error>;
