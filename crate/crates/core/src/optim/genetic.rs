//! The GA: tournament selection, uniform crossover, shape mutation, and
//! the two join strategies — children replace the parents outright, or the
//! best of parents and children survive.

use std::time::Instant;

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::crossover::{tournament_select, uniform_crossover};
use super::mutate::{ga_mutate, shape_mutate};
use super::rng::{derive_seed, CONTROL_LANE};
use super::runner::{argmax_fitness, produce_and_evaluate, Budget};
use super::trace::{RunTrace, TraceRecord};
use super::{HyperParams, VariantId};
use crate::error::{Error, Result};
use crate::fitness::FitnessReport;
use crate::fuzzy::{FamilySet, Genome};
use crate::raster::DynImage;

/// Runs the GA with the requested join strategy until the budget expires.
///
/// The population starts as one default genome plus `pop_size - 1` shape
/// mutants of it. Each generation breeds exactly `pop_size` children;
/// selection and crossover draw from a per-generation control stream while
/// mutation uses per-child substreams, so parallel evaluation cannot
/// change the outcome. The best individual ever seen is tracked outside
/// the population and is what the trace reports.
pub fn genetic_algorithm(img: &DynImage, variant: VariantId, hp: &HyperParams) -> Result<RunTrace> {
    if variant.is_hill_climbing() {
        return Err(Error::VariantMismatch {
            expected: "GA",
            got: variant,
        });
    }

    let params = hp.eval_params();
    let budget = Budget::from_params(hp);
    let start = Instant::now();
    let pop_size = hp.pop_size.max(1);

    let base = Genome::defaults(FamilySet::GaussianSigmoid);
    let mut population = produce_and_evaluate(img, &params, hp, 0, pop_size, |i, rng| {
        if i == 0 {
            base.clone()
        } else {
            shape_mutate(&base, hp, rng)
        }
    });

    let best_idx = argmax_fitness(&population);
    let mut best: (Genome, FitnessReport) = population[best_idx].clone();

    let mut records = vec![TraceRecord {
        generation: 0,
        best_so_far: best.1.f,
        gen_best: best.1.f,
        elapsed_s: budget.elapsed(&start),
        genome_size: best.0.len(),
    }];

    let mut generation = 0u32;
    while budget.keep_running(generation, &start) {
        generation += 1;

        let mut ctrl =
            ChaCha8Rng::seed_from_u64(derive_seed(hp.seed, &[generation as u64, CONTROL_LANE]));
        let fitness: Vec<f64> = population.iter().map(|(_, r)| r.f).collect();

        let mut bred = Vec::with_capacity(pop_size + 1);
        while bred.len() < pop_size {
            let pa = tournament_select(&fitness, &mut ctrl);
            let pb = tournament_select(&fitness, &mut ctrl);
            let (c1, c2) = uniform_crossover(
                &population[pa].0,
                &population[pb].0,
                hp.crossover_swap_prob,
                &mut ctrl,
            )
            .expect("population genomes always share their length");
            bred.push(c1);
            bred.push(c2);
        }
        bred.truncate(pop_size);

        let children = produce_and_evaluate(img, &params, hp, generation as u64, pop_size, |i, rng| {
            ga_mutate(&bred[i], hp, rng)
        });

        population = match variant {
            VariantId::GaComma => children,
            _ => {
                // Elitist join: best pop_size of parents and children;
                // the stable sort keeps parents ahead on exact ties.
                let mut combined = population;
                combined.extend(children);
                combined.sort_by(|a, b| b.1.f.total_cmp(&a.1.f));
                combined.truncate(pop_size);
                combined
            }
        };

        let gen_best_idx = argmax_fitness(&population);
        let gen_best = population[gen_best_idx].1.f;
        if gen_best > best.1.f {
            best = population[gen_best_idx].clone();
        }

        records.push(TraceRecord {
            generation,
            best_so_far: best.1.f,
            gen_best,
            elapsed_s: budget.elapsed(&start),
            genome_size: best.0.len(),
        });
    }

    Ok(RunTrace {
        records,
        final_genome: best.0,
        final_report: best.1,
    })
}
