//! Hill Climbing: keep one incumbent, sample a neighborhood each
//! generation, adopt the best neighbor only on strict improvement.

use std::time::Instant;

use super::mutate::{shape_mutate, split_mutate};
use super::runner::{argmax_fitness, produce_and_evaluate, Budget};
use super::trace::{RunTrace, TraceRecord};
use super::{HyperParams, VariantId};
use crate::error::{Error, Result};
use crate::fitness::fitness_of_genome;
use crate::raster::DynImage;

/// Runs one of the three Hill Climbing variants until the budget expires.
///
/// The neighborhood operator depends on the variant: plain shape mutation
/// for the simple variant, the split-gated mutation for the two splitting
/// variants (each neighbor independently picks split vs shape change).
/// Degenerate neighbors rank as -inf and never displace the incumbent.
pub fn hill_climb(img: &DynImage, variant: VariantId, hp: &HyperParams) -> Result<RunTrace> {
    if !variant.is_hill_climbing() {
        return Err(Error::VariantMismatch {
            expected: "Hill Climbing",
            got: variant,
        });
    }

    let params = hp.eval_params();
    let budget = Budget::from_params(hp);
    let start = Instant::now();

    let mut incumbent = crate::fuzzy::Genome::defaults(variant.family_set());
    let mut best = fitness_of_genome(img, &incumbent, &params);

    let mut records = vec![TraceRecord {
        generation: 0,
        best_so_far: best.f,
        gen_best: best.f,
        elapsed_s: budget.elapsed(&start),
        genome_size: incumbent.len(),
    }];

    let mut generation = 0u32;
    while budget.keep_running(generation, &start) {
        generation += 1;

        let neighbors = produce_and_evaluate(
            img,
            &params,
            hp,
            generation as u64,
            hp.neighbors_per_gen.max(1),
            |_, rng| match variant {
                VariantId::HcSimple => shape_mutate(&incumbent, hp, rng),
                _ => split_mutate(&incumbent, hp, rng),
            },
        );

        let best_idx = argmax_fitness(&neighbors);
        let gen_best = neighbors[best_idx].1.f;
        if gen_best > best.f {
            let (genome, report) = neighbors.into_iter().nth(best_idx).expect("index in range");
            incumbent = genome;
            best = report;
        }

        records.push(TraceRecord {
            generation,
            best_so_far: best.f,
            gen_best,
            elapsed_s: budget.elapsed(&start),
            genome_size: incumbent.len(),
        });
    }

    Ok(RunTrace {
        records,
        final_genome: incumbent,
        final_report: best,
    })
}
