//! Uniform crossover and tournament selection for the GA.

use rand::Rng;

use crate::error::{Error, Result};
use crate::fuzzy::Genome;

/// Marches down the two genomes and swaps the functions at each position
/// on a coin toss with probability `p`. Children are re-sorted by center;
/// the union of their functions equals the union of the parents'.
pub fn uniform_crossover(
    a: &Genome,
    b: &Genome,
    p: f64,
    rng: &mut impl Rng,
) -> Result<(Genome, Genome)> {
    if a.len() != b.len() {
        return Err(Error::CrossoverLengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    let mut left = a.functions().to_vec();
    let mut right = b.functions().to_vec();
    for i in 0..left.len() {
        if rng.random_bool(p) {
            std::mem::swap(&mut left[i], &mut right[i]);
        }
    }
    Ok((Genome::sorted(left), Genome::sorted(right)))
}

/// Size-2 tournament over fitness values: draws two indices (with
/// replacement) and keeps the fitter; ties keep the first draw.
pub fn tournament_select(fitness: &[f64], rng: &mut impl Rng) -> usize {
    debug_assert!(!fitness.is_empty());
    let first = rng.random_range(0..fitness.len());
    let second = rng.random_range(0..fitness.len());
    if fitness[second] > fitness[first] {
        second
    } else {
        first
    }
}
