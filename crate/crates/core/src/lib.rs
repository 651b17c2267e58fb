//! Image contrast enhancement by evolving a fuzzy intensity transform per
//! image.
//!
//! A genome of fuzzy membership functions describes an intensity transfer
//! function (realized as a 256-entry LUT via weighted-average
//! defuzzification). Hill Climbing and GA variants mutate the genome to
//! maximize an objective built from Sobel edge energy, edge-pixel fraction
//! and entropy. Color images are handled by transforming only the HSV
//! value plane.

pub mod error;
pub mod fitness;
pub mod fuzzy;
pub mod optim;
pub mod raster;

pub use error::{Error, Result};
pub use fitness::{evaluate, fitness_of_genome, EntropySource, EvalParams, FitnessReport};
pub use fuzzy::{enhance, FamilySet, Genome, MembershipFunction, MfFamily, TransferLut};
pub use optim::{
    genetic_algorithm, hill_climb, improvement_rate, run_variant, HyperParams, RunTrace,
    TraceRecord, VariantId,
};
pub use raster::{
    histogram_equalize, load_image, save_image, sobel, ColorImage, DynImage, GradientField,
    GrayImage,
};
