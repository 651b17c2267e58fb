//! The genome: an ordered set of membership functions that fully
//! determines one intensity transfer function.

use serde::{Deserialize, Serialize};

use super::membership::{MembershipFunction, MfFamily};
use crate::error::{Error, Result};

/// Sum of membership degrees below this is treated as "no rule fires".
pub const MEMBERSHIP_EPSILON: f64 = 1e-9;

/// Which family mix an initial genome is built from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilySet {
    /// Two trapezoidal shoulders around a triangle.
    TrapezoidTriangle,
    /// Three Gaussians.
    GaussianOnly,
    /// Falling sigmoid, Gaussian, rising sigmoid.
    GaussianSigmoid,
}

/// An ordered list of at least three membership functions, kept sorted by
/// function center.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<MembershipFunction>", into = "Vec<MembershipFunction>")]
pub struct Genome {
    functions: Vec<MembershipFunction>,
}

impl Genome {
    /// Builds a genome from arbitrary functions: repairs each one, sorts by
    /// center, rejects lists shorter than three.
    pub fn new(functions: Vec<MembershipFunction>) -> Result<Self> {
        if functions.len() < 3 {
            return Err(Error::GenomeTooShort(functions.len()));
        }
        let functions = functions.into_iter().map(|f| f.repaired()).collect();
        Ok(Self::sorted(functions))
    }

    /// Internal constructor for operators that preserve length and
    /// validity structurally.
    pub(crate) fn sorted(mut functions: Vec<MembershipFunction>) -> Self {
        debug_assert!(functions.len() >= 3);
        functions.sort_by(|a, b| a.center().total_cmp(&b.center()));
        Self { functions }
    }

    /// The dark/gray/bright starter genome for a family set, with
    /// defuzzification targets 0 / 127 / 255.
    pub fn defaults(set: FamilySet) -> Self {
        let functions = match set {
            FamilySet::TrapezoidTriangle => vec![
                MembershipFunction::new(MfFamily::ShoulderLeft, 0.0, 127.0, 0.0),
                MembershipFunction::new(MfFamily::Triangle, 127.0, 96.0, 127.0),
                MembershipFunction::new(MfFamily::ShoulderRight, 127.0, 255.0, 255.0),
            ],
            FamilySet::GaussianOnly => vec![
                MembershipFunction::new(MfFamily::Gaussian, 0.0, 50.0, 0.0),
                MembershipFunction::new(MfFamily::Gaussian, 127.0, 50.0, 127.0),
                MembershipFunction::new(MfFamily::Gaussian, 255.0, 50.0, 255.0),
            ],
            FamilySet::GaussianSigmoid => vec![
                MembershipFunction::new(MfFamily::Sigmoid, 64.0, -0.05, 0.0),
                MembershipFunction::new(MfFamily::Gaussian, 127.0, 50.0, 127.0),
                MembershipFunction::new(MfFamily::Sigmoid, 191.0, 0.05, 255.0),
            ],
        };
        Self::sorted(functions)
    }

    pub fn functions(&self) -> &[MembershipFunction] {
        &self.functions
    }

    pub fn len(&self) -> usize {
        self.functions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.functions.is_empty()
    }

    /// Weighted-average defuzzification of the intensity `z0`, clamped to
    /// [0, 255]. When no membership fires the input passes through
    /// unchanged; the flag reports that fallback.
    pub fn defuzzify_flagged(&self, z0: f64) -> (f64, bool) {
        let mut num = 0.0;
        let mut den = 0.0;
        for f in &self.functions {
            let mu = f.degree(z0);
            num += mu * f.v;
            den += mu;
        }
        if den < MEMBERSHIP_EPSILON {
            (z0, true)
        } else {
            ((num / den).clamp(0.0, 255.0), false)
        }
    }

    /// Crisp output for the intensity `z0`.
    pub fn defuzzify(&self, z0: f64) -> f64 {
        self.defuzzify_flagged(z0).0
    }

    /// True when ordering and per-function invariants all hold.
    pub fn is_valid(&self) -> bool {
        self.functions.len() >= 3
            && self.functions.iter().all(|f| f.is_valid())
            && self
                .functions
                .windows(2)
                .all(|w| w[0].center() <= w[1].center())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("genome serialization is infallible")
    }

    pub fn from_json(json: &str) -> Result<Self> {
        serde_json::from_str(json).map_err(|e| Error::GenomeJson(e.to_string()))
    }
}

impl TryFrom<Vec<MembershipFunction>> for Genome {
    type Error = Error;

    fn try_from(functions: Vec<MembershipFunction>) -> Result<Self> {
        Genome::new(functions)
    }
}

impl From<Genome> for Vec<MembershipFunction> {
    fn from(g: Genome) -> Self {
        g.functions
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_have_three_functions() {
        for set in [
            FamilySet::TrapezoidTriangle,
            FamilySet::GaussianOnly,
            FamilySet::GaussianSigmoid,
        ] {
            let g = Genome::defaults(set);
            assert_eq!(g.len(), 3);
            assert!(g.is_valid());
        }
    }

    #[test]
    fn default_trapezoid_triangle_shape() {
        let g = Genome::defaults(FamilySet::TrapezoidTriangle);
        let f = g.functions();
        assert_eq!(f[0].family, MfFamily::ShoulderLeft);
        assert_eq!((f[0].p1, f[0].p2, f[0].v), (0.0, 127.0, 0.0));
        assert_eq!(f[1].family, MfFamily::Triangle);
        assert_eq!((f[1].p1, f[1].p2, f[1].v), (127.0, 96.0, 127.0));
        assert_eq!(f[2].family, MfFamily::ShoulderRight);
        assert_eq!((f[2].p1, f[2].p2, f[2].v), (127.0, 255.0, 255.0));
    }

    #[test]
    fn too_short_rejected() {
        let fns = vec![
            MembershipFunction::new(MfFamily::Gaussian, 0.0, 50.0, 0.0),
            MembershipFunction::new(MfFamily::Gaussian, 255.0, 50.0, 255.0),
        ];
        assert!(matches!(Genome::new(fns), Err(Error::GenomeTooShort(2))));
    }

    #[test]
    fn single_firing_function_returns_its_target() {
        let g = Genome::new(vec![
            MembershipFunction::new(MfFamily::Triangle, 100.0, 10.0, 200.0),
            MembershipFunction::new(MfFamily::Triangle, 180.0, 10.0, 50.0),
            MembershipFunction::new(MfFamily::Triangle, 220.0, 10.0, 90.0),
        ])
        .unwrap();
        // Only the first triangle fires at its own center.
        assert!((g.defuzzify(100.0) - 200.0).abs() < 1e-12);
    }

    #[test]
    fn symmetric_pair_averages() {
        // Two half-firing functions at 0 and 255 plus one silent filler.
        let g = Genome::new(vec![
            MembershipFunction::new(MfFamily::Triangle, 118.0, 20.0, 0.0),
            MembershipFunction::new(MfFamily::Triangle, 138.0, 20.0, 255.0),
            MembershipFunction::new(MfFamily::Triangle, 250.0, 3.0, 90.0),
        ])
        .unwrap();
        // At z=128 both triangles have degree 0.5.
        assert!((g.defuzzify(128.0) - 127.5).abs() < 1e-12);
    }

    #[test]
    fn default_genome_defuzzify_matches_hand_computation() {
        let g = Genome::defaults(FamilySet::TrapezoidTriangle);
        let mu_dark = 63.0 / 127.0;
        let mu_gray = 1.0 - 63.0 / 96.0;
        let expected = (mu_gray * 127.0) / (mu_dark + mu_gray);
        assert!((g.defuzzify(64.0) - expected).abs() < 1e-12);
        assert!((g.defuzzify(64.0) - 52.0).abs() < 0.05);
    }

    #[test]
    fn gap_falls_back_to_identity() {
        let g = Genome::new(vec![
            MembershipFunction::new(MfFamily::Triangle, 0.0, 5.0, 0.0),
            MembershipFunction::new(MfFamily::Triangle, 127.0, 5.0, 127.0),
            MembershipFunction::new(MfFamily::Triangle, 255.0, 5.0, 255.0),
        ])
        .unwrap();
        let (out, fell_back) = g.defuzzify_flagged(60.0);
        assert!(fell_back);
        assert_eq!(out, 60.0);
    }

    #[test]
    fn json_round_trip() {
        let g = Genome::defaults(FamilySet::GaussianSigmoid);
        let json = g.to_json();
        assert!(json.contains("\"family\": \"sigmoid\""));
        assert_eq!(Genome::from_json(&json).unwrap(), g);
        assert!(Genome::from_json("[]").is_err());
    }
}
