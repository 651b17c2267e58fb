//! The five metaheuristic variants: three Hill Climbing neighborhood
//! strategies and the GA with its two join strategies, all maximizing the
//! same fitness under a wall-clock or generation budget.

mod crossover;
mod genetic;
mod hill_climb;
mod mutate;
mod rng;
mod runner;
mod trace;

pub use crossover::{tournament_select, uniform_crossover};
pub use genetic::genetic_algorithm;
pub use hill_climb::hill_climb;
pub use mutate::{ga_mutate, shape_mutate, split_mutate};
pub use rng::{derive_seed, fnv1a64, rng_for};
pub use trace::{parse_trace_csv, RunTrace, TraceRecord, TRACE_CSV_HEADER};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fitness::{EntropySource, EvalParams, DEFAULT_EDGE_THRESHOLD};
use crate::fuzzy::FamilySet;
use crate::raster::DynImage;

/// Search hyperparameters. The defaults are the benchmark values:
/// ChangeProb 0.5, MutateMu 3, MutateSigma 2, MembershipSplitProb 0.1,
/// PopSize 30, 10 neighbors per generation, 120 s per run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HyperParams {
    /// Probability that a membership function's shape is tweaked.
    pub change_prob: f64,
    /// Magnitude of the Gaussian perturbation mean (sign is random).
    pub mutate_mu: f64,
    /// Std dev of the Gaussian perturbation.
    pub mutate_sigma: f64,
    /// Probability of splitting instead of shape-tweaking (split variants).
    pub membership_split_prob: f64,
    /// GA population size.
    pub pop_size: usize,
    /// Neighbors sampled per Hill Climbing generation.
    pub neighbors_per_gen: usize,
    /// Per-position swap probability of the uniform crossover.
    pub crossover_swap_prob: f64,
    /// Gradient magnitude above which a pixel counts as an edge.
    pub edge_threshold: f64,
    /// Which image the entropy term is computed on.
    pub entropy_source: EntropySource,
    /// Wall-clock budget in seconds (ignored when `max_generations` is set).
    pub time_budget_s: f64,
    /// Generation cap; when set the run is fully reproducible and elapsed
    /// times are recorded as 0.
    pub max_generations: Option<u32>,
    /// Master RNG seed.
    pub seed: u64,
    /// Whether defuzzification targets evolve along with the shapes.
    pub mutate_defuzz: bool,
    /// Evaluate candidates on the rayon pool; traces are identical either way.
    pub parallel: bool,
}

impl Default for HyperParams {
    fn default() -> Self {
        Self {
            change_prob: 0.5,
            mutate_mu: 3.0,
            mutate_sigma: 2.0,
            membership_split_prob: 0.1,
            pop_size: 30,
            neighbors_per_gen: 10,
            crossover_swap_prob: 0.5,
            edge_threshold: DEFAULT_EDGE_THRESHOLD,
            entropy_source: EntropySource::default(),
            time_budget_s: 120.0,
            max_generations: None,
            seed: 0,
            mutate_defuzz: true,
            parallel: true,
        }
    }
}

impl HyperParams {
    pub fn eval_params(&self) -> EvalParams {
        EvalParams {
            edge_threshold: self.edge_threshold,
            entropy_source: self.entropy_source,
        }
    }
}

/// The five shipped optimizer variants.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum VariantId {
    #[serde(rename = "HC-simple")]
    HcSimple,
    #[serde(rename = "HC-split-traptri")]
    HcSplitTrapTri,
    #[serde(rename = "HC-split-gauss")]
    HcSplitGauss,
    #[serde(rename = "GA-comma")]
    GaComma,
    #[serde(rename = "GA-plus")]
    GaPlus,
}

impl VariantId {
    pub const ALL: [VariantId; 5] = [
        VariantId::HcSimple,
        VariantId::HcSplitTrapTri,
        VariantId::HcSplitGauss,
        VariantId::GaComma,
        VariantId::GaPlus,
    ];

    pub fn name(self) -> &'static str {
        match self {
            VariantId::HcSimple => "HC-simple",
            VariantId::HcSplitTrapTri => "HC-split-traptri",
            VariantId::HcSplitGauss => "HC-split-gauss",
            VariantId::GaComma => "GA-comma",
            VariantId::GaPlus => "GA-plus",
        }
    }

    pub fn is_hill_climbing(self) -> bool {
        matches!(
            self,
            VariantId::HcSimple | VariantId::HcSplitTrapTri | VariantId::HcSplitGauss
        )
    }

    /// The family mix of the variant's initial genome.
    pub fn family_set(self) -> FamilySet {
        match self {
            VariantId::HcSimple | VariantId::HcSplitTrapTri => FamilySet::TrapezoidTriangle,
            VariantId::HcSplitGauss => FamilySet::GaussianOnly,
            VariantId::GaComma | VariantId::GaPlus => FamilySet::GaussianSigmoid,
        }
    }
}

impl std::fmt::Display for VariantId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for VariantId {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = Self::ALL.iter().map(|v| v.name()).collect();
                format!("unknown variant '{s}', expected one of: {}", names.join(", "))
            })
    }
}

/// Dispatches to [`hill_climb`] or [`genetic_algorithm`].
pub fn run_variant(img: &DynImage, variant: VariantId, hp: &HyperParams) -> Result<RunTrace> {
    if variant.is_hill_climbing() {
        hill_climb(img, variant, hp)
    } else {
        genetic_algorithm(img, variant, hp)
    }
}

/// Average fitness gain per generation: (final best - initial) divided by
/// the generation count. Traces that start degenerate measure from the
/// first finite fitness; traces that never leave the sentinel rate 0.
pub fn improvement_rate(trace: &RunTrace) -> Result<f64> {
    if trace.records.is_empty() {
        return Err(Error::EmptyTrace);
    }
    let generations = trace.generations();
    if generations == 0 {
        return Ok(0.0);
    }
    let baseline = trace
        .records
        .iter()
        .map(|r| r.best_so_far)
        .find(|f| f.is_finite());
    match baseline {
        Some(base) => Ok((trace.final_fitness() - base) / generations as f64),
        None => Ok(0.0),
    }
}
