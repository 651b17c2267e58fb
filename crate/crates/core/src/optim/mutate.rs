//! Mutation operators: shape perturbation (used by every variant) and
//! membership-function splitting (the Hill Climbing split variants).

use rand::Rng;
use rand_distr::{Distribution, Normal};

use super::HyperParams;
use crate::fuzzy::{Genome, MembershipFunction, MfFamily};

/// Draws a perturbation delta: Normal(MutateMu * s, MutateSigma) with the
/// sign s chosen uniformly, so the tabled one-sided mean does not drift
/// every parameter upward.
fn perturbation(hp: &HyperParams, rng: &mut impl Rng) -> f64 {
    let sign = if rng.random_bool(0.5) { 1.0 } else { -1.0 };
    let normal = Normal::new(hp.mutate_mu * sign, hp.mutate_sigma.max(0.0))
        .expect("finite mean and non-negative std dev");
    normal.sample(rng)
}

/// Tweaks each function's shape (and defuzzification target when mutable)
/// independently with probability `change_prob`. Length is preserved and
/// every result is repaired back into the type invariants.
pub fn shape_mutate(genome: &Genome, hp: &HyperParams, rng: &mut impl Rng) -> Genome {
    let functions = genome
        .functions()
        .iter()
        .map(|f| {
            if !rng.random_bool(hp.change_prob) {
                return *f;
            }
            let mut out = *f;
            out.p1 += perturbation(hp, rng);
            out.p2 += perturbation(hp, rng);
            if hp.mutate_defuzz {
                out.v += perturbation(hp, rng);
            }
            out.repaired()
        })
        .collect();
    Genome::sorted(functions)
}

/// GA mutation: identical to [`shape_mutate`]; never changes the number of
/// membership functions.
pub fn ga_mutate(genome: &Genome, hp: &HyperParams, rng: &mut impl Rng) -> Genome {
    shape_mutate(genome, hp, rng)
}

/// Splits one membership function into two covering the halves of its
/// effective support, both inheriting the parent's defuzzification target.
fn split_function(f: &MembershipFunction) -> Option<(MembershipFunction, MembershipFunction)> {
    match f.family {
        MfFamily::Triangle => {
            let half = f.p2 / 2.0;
            Some((
                MembershipFunction::new(MfFamily::Triangle, f.p1 - half, half, f.v),
                MembershipFunction::new(MfFamily::Triangle, f.p1 + half, half, f.v),
            ))
        }
        MfFamily::Gaussian => Some((
            MembershipFunction::new(MfFamily::Gaussian, f.p1 - f.p2, f.p2 / 2.0, f.v),
            MembershipFunction::new(MfFamily::Gaussian, f.p1 + f.p2, f.p2 / 2.0, f.v),
        )),
        // A shoulder keeps its flat region plus half the ramp; a triangle
        // takes over the released ramp half.
        MfFamily::ShoulderLeft => {
            let mid = (f.p1 + f.p2) / 2.0;
            let quarter = (f.p2 - mid) / 2.0;
            Some((
                MembershipFunction::new(MfFamily::ShoulderLeft, f.p1, mid, f.v),
                MembershipFunction::new(MfFamily::Triangle, mid + quarter, quarter, f.v),
            ))
        }
        MfFamily::ShoulderRight => {
            let mid = (f.p1 + f.p2) / 2.0;
            let quarter = (mid - f.p1) / 2.0;
            Some((
                MembershipFunction::new(MfFamily::Triangle, f.p1 + quarter, quarter, f.v),
                MembershipFunction::new(MfFamily::ShoulderRight, mid, f.p2, f.v),
            ))
        }
        // No split rule for sigmoids; the variants that split never hold them.
        MfFamily::Sigmoid => None,
    }
}

/// With probability `membership_split_prob` splits one uniformly chosen
/// function (growing the genome by exactly one), otherwise delegates to
/// [`shape_mutate`].
pub fn split_mutate(genome: &Genome, hp: &HyperParams, rng: &mut impl Rng) -> Genome {
    if !rng.random_bool(hp.membership_split_prob) {
        return shape_mutate(genome, hp, rng);
    }

    let splittable: Vec<usize> = genome
        .functions()
        .iter()
        .enumerate()
        .filter(|(_, f)| f.family != MfFamily::Sigmoid)
        .map(|(i, _)| i)
        .collect();
    if splittable.is_empty() {
        return shape_mutate(genome, hp, rng);
    }

    let chosen = splittable[rng.random_range(0..splittable.len())];
    let (left, right) =
        split_function(&genome.functions()[chosen]).expect("chosen function is splittable");

    let mut functions = Vec::with_capacity(genome.len() + 1);
    for (i, f) in genome.functions().iter().enumerate() {
        if i == chosen {
            functions.push(left);
            functions.push(right);
        } else {
            functions.push(*f);
        }
    }
    Genome::sorted(functions)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fuzzy::FamilySet;
    use crate::optim::rng_for;

    fn hp() -> HyperParams {
        HyperParams::default()
    }

    #[test]
    fn zero_change_prob_is_identity() {
        let genome = Genome::defaults(FamilySet::TrapezoidTriangle);
        let hp = HyperParams {
            change_prob: 0.0,
            ..hp()
        };
        let out = shape_mutate(&genome, &hp, &mut rng_for(1, 1, 1));
        assert_eq!(out, genome);
    }

    #[test]
    fn degenerate_distribution_moves_by_exactly_mu() {
        let genome = Genome::defaults(FamilySet::GaussianOnly);
        let hp = HyperParams {
            change_prob: 1.0,
            mutate_sigma: 0.0,
            mutate_mu: 3.0,
            mutate_defuzz: true,
            ..hp()
        };
        let out = shape_mutate(&genome, &hp, &mut rng_for(2, 1, 1));
        for (a, b) in genome.functions().iter().zip(out.functions()) {
            // Every parameter moved by exactly +-3, up to clamping at the
            // domain borders.
            for (x, y) in [(a.p1, b.p1), (a.p2, b.p2), (a.v, b.v)] {
                let clamped_low = y == 0.0 && x < 3.0;
                let clamped_high = y == 255.0 && x > 252.0;
                let shrunk = y == crate::fuzzy::MembershipFunction::new(
                    a.family, a.p1, 0.0, a.v,
                )
                .p2;
                assert!(
                    (y - x).abs() == 3.0 || clamped_low || clamped_high || shrunk,
                    "moved {x} -> {y}"
                );
            }
        }
    }

    #[test]
    fn clamp_repairs_out_of_range() {
        let genome = Genome::new(vec![
            MembershipFunction::new(MfFamily::Triangle, 254.0, 5.0, 255.0),
            MembershipFunction::new(MfFamily::Triangle, 127.0, 5.0, 127.0),
            MembershipFunction::new(MfFamily::Triangle, 0.0, 5.0, 0.0),
        ])
        .unwrap();
        let hp = HyperParams {
            change_prob: 1.0,
            mutate_mu: 50.0,
            mutate_sigma: 0.0,
            ..hp()
        };
        for candidate in 0..50 {
            let out = shape_mutate(&genome, &hp, &mut rng_for(3, 1, candidate));
            assert!(out.is_valid());
            assert_eq!(out.len(), genome.len());
        }
    }

    #[test]
    fn zero_split_prob_behaves_as_shape_mutate() {
        let genome = Genome::defaults(FamilySet::TrapezoidTriangle);
        let hp = HyperParams {
            membership_split_prob: 0.0,
            ..hp()
        };
        let a = split_mutate(&genome, &hp, &mut rng_for(4, 2, 7));
        // Replay the gate draw so the shape path sees the same stream.
        let mut rng = rng_for(4, 2, 7);
        let _: bool = rand::Rng::random_bool(&mut rng, 0.5);
        let b = shape_mutate(&genome, &hp, &mut rng);
        assert_eq!(a, b);
    }

    #[test]
    fn forced_split_of_default_triangle() {
        let genome = Genome::defaults(FamilySet::TrapezoidTriangle);
        let hp = HyperParams {
            membership_split_prob: 1.0,
            ..hp()
        };
        // Find a stream whose uniform pick lands on the triangle (a
        // shoulder split also yields an extra triangle, so detect the
        // triangle split by the parent triangle disappearing).
        let mut found = false;
        for candidate in 0..40 {
            let out = split_mutate(&genome, &hp, &mut rng_for(5, 1, candidate));
            assert_eq!(out.len(), 4);
            assert!(out.is_valid());
            let parent_still_there = out
                .functions()
                .iter()
                .any(|f| f.family == MfFamily::Triangle && f.p2 == 96.0);
            if !parent_still_there {
                found = true;
                let triangles: Vec<_> = out
                    .functions()
                    .iter()
                    .filter(|f| f.family == MfFamily::Triangle)
                    .collect();
                assert_eq!(triangles.len(), 2);
                let (l, r) = (triangles[0], triangles[1]);
                assert_eq!((l.p1, l.p2, l.v), (79.0, 48.0, 127.0));
                assert_eq!((r.p1, r.p2, r.v), (175.0, 48.0, 127.0));
                // Each child peaks at its own center.
                assert_eq!(l.degree(79.0), 1.0);
                assert_eq!(r.degree(175.0), 1.0);
                // Children's support stays inside the parent's support.
                let parent = &genome.functions()[1];
                for z in 0..=255 {
                    let z = z as f64;
                    if l.degree(z) > 0.0 || r.degree(z) > 0.0 {
                        assert!(parent.degree(z) > 0.0);
                    }
                }
            }
        }
        assert!(found, "no stream picked the triangle");
    }

    #[test]
    fn shoulder_split_keeps_flat_region_and_coverage() {
        let shoulder = MembershipFunction::new(MfFamily::ShoulderLeft, 0.0, 127.0, 0.0);
        let (l, r) = split_function(&shoulder).unwrap();
        assert_eq!(l.family, MfFamily::ShoulderLeft);
        assert_eq!((l.p1, l.p2), (0.0, 63.5));
        assert_eq!(r.family, MfFamily::Triangle);
        // Triangle spans the released ramp half [63.5, 127].
        assert_eq!((r.p1, r.p2), (95.25, 31.75));
        assert_eq!(r.degree(63.5), 0.0);
        assert_eq!(r.degree(95.25), 1.0);
        assert_eq!(r.degree(127.0), 0.0);
        assert_eq!((l.v, r.v), (0.0, 0.0));

        let right = MembershipFunction::new(MfFamily::ShoulderRight, 127.0, 255.0, 255.0);
        let (l, r) = split_function(&right).unwrap();
        assert_eq!(l.family, MfFamily::Triangle);
        assert_eq!((l.p1, l.p2), (159.0, 32.0));
        assert_eq!(r.family, MfFamily::ShoulderRight);
        assert_eq!((r.p1, r.p2), (191.0, 255.0));
    }

    #[test]
    fn gaussian_split_arithmetic() {
        let g = MembershipFunction::new(MfFamily::Gaussian, 127.0, 50.0, 127.0);
        let (l, r) = split_function(&g).unwrap();
        assert_eq!((l.p1, l.p2), (77.0, 25.0));
        assert_eq!((r.p1, r.p2), (177.0, 25.0));
        assert_eq!((l.v, r.v), (127.0, 127.0));
    }

    #[test]
    fn ga_mutate_preserves_length() {
        let genome = Genome::defaults(FamilySet::GaussianSigmoid);
        for candidate in 0..20 {
            let out = ga_mutate(&genome, &hp(), &mut rng_for(6, 1, candidate));
            assert_eq!(out.len(), genome.len());
            assert!(out.is_valid());
        }
    }

    #[test]
    fn mutation_replays_under_same_stream() {
        let genome = Genome::defaults(FamilySet::GaussianSigmoid);
        let a = ga_mutate(&genome, &hp(), &mut rng_for(8, 4, 2));
        let b = ga_mutate(&genome, &hp(), &mut rng_for(8, 4, 2));
        assert_eq!(a, b);
        let c = ga_mutate(&genome, &hp(), &mut rng_for(8, 4, 3));
        assert_ne!(a, c);
    }
}
