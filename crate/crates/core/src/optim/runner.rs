//! Shared machinery for the optimizer loops: the stop condition and the
//! produce-and-evaluate step with its serial/parallel twin paths.

use std::time::Instant;

use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::rng::rng_for;
use super::HyperParams;
use crate::fitness::{fitness_of_genome, EvalParams, FitnessReport};
use crate::fuzzy::Genome;
use crate::raster::DynImage;

/// Either a fixed number of generations (reproducible, used by tests) or a
/// wall-clock budget checked between generations.
pub(crate) enum Budget {
    Generations(u32),
    WallClock(f64),
}

impl Budget {
    pub fn from_params(hp: &HyperParams) -> Self {
        match hp.max_generations {
            Some(cap) => Budget::Generations(cap),
            None => Budget::WallClock(hp.time_budget_s),
        }
    }

    pub fn keep_running(&self, generations_done: u32, start: &Instant) -> bool {
        match self {
            Budget::Generations(cap) => generations_done < *cap,
            Budget::WallClock(secs) => start.elapsed().as_secs_f64() < *secs,
        }
    }

    /// Elapsed seconds for trace records: real time under a wall-clock
    /// budget, constant 0 under a generation cap so capped runs emit
    /// byte-identical traces.
    pub fn elapsed(&self, start: &Instant) -> f64 {
        match self {
            Budget::Generations(_) => 0.0,
            Budget::WallClock(_) => start.elapsed().as_secs_f64(),
        }
    }
}

/// Builds `count` candidates, each from its own (seed, generation, index)
/// RNG substream, and evaluates them against the image. The parallel path
/// yields exactly the serial result because candidates never share state.
pub(crate) fn produce_and_evaluate<F>(
    img: &DynImage,
    params: &EvalParams,
    hp: &HyperParams,
    generation: u64,
    count: usize,
    make: F,
) -> Vec<(Genome, FitnessReport)>
where
    F: Fn(usize, &mut ChaCha8Rng) -> Genome + Sync,
{
    let produce = |i: usize| {
        let mut rng = rng_for(hp.seed, generation, i as u64);
        let genome = make(i, &mut rng);
        let report = fitness_of_genome(img, &genome, params);
        (genome, report)
    };
    if hp.parallel {
        (0..count).into_par_iter().map(produce).collect()
    } else {
        (0..count).map(produce).collect()
    }
}

/// Index of the best fitness, keeping the first on ties. Assumes a
/// non-empty slice.
pub(crate) fn argmax_fitness(reports: &[(Genome, FitnessReport)]) -> usize {
    let mut best = 0;
    for (i, (_, r)) in reports.iter().enumerate().skip(1) {
        if r.f > reports[best].1.f {
            best = i;
        }
    }
    best
}
