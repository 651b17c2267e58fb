//! Membership-function families. Every function is the same 3-tuple
//! regardless of family: two shape parameters plus the crisp value it
//! pulls the output toward.

use serde::{Deserialize, Serialize};

/// Minimum triangle half-width / Gaussian sigma after repair.
pub(crate) const MIN_SHAPE: f64 = 0.5;
/// Minimum sigmoid slope magnitude after repair.
pub(crate) const MIN_SLOPE: f64 = 1e-3;
/// Minimum distance between a shoulder's two breakpoints after repair.
pub(crate) const MIN_SHOULDER_GAP: f64 = 1.0;

/// The five supported membership-function shapes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MfFamily {
    /// Trapezoidal "dark" set: full membership up to p1, ramp down to p2.
    ShoulderLeft,
    /// Trapezoidal "bright" set: zero up to p1, ramp up to p2, then full.
    ShoulderRight,
    /// Triangle with center p1 and half-width p2.
    Triangle,
    /// Gaussian with mean p1 and sigma p2.
    Gaussian,
    /// Logistic curve with center p1 and slope p2 (negative slope = decreasing).
    Sigmoid,
}

/// One fuzzy set: a family tag, two shape parameters and the
/// defuzzification target `v`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MembershipFunction {
    pub family: MfFamily,
    pub p1: f64,
    pub p2: f64,
    pub v: f64,
}

impl MembershipFunction {
    pub fn new(family: MfFamily, p1: f64, p2: f64, v: f64) -> Self {
        Self { family, p1, p2, v }.repaired()
    }

    /// Membership degree at intensity `z`, always in [0, 1].
    pub fn degree(&self, z: f64) -> f64 {
        match self.family {
            MfFamily::ShoulderLeft => {
                if z <= self.p1 {
                    1.0
                } else if z >= self.p2 {
                    0.0
                } else {
                    (self.p2 - z) / (self.p2 - self.p1)
                }
            }
            MfFamily::ShoulderRight => {
                if z <= self.p1 {
                    0.0
                } else if z >= self.p2 {
                    1.0
                } else {
                    (z - self.p1) / (self.p2 - self.p1)
                }
            }
            MfFamily::Triangle => (1.0 - (z - self.p1).abs() / self.p2).max(0.0),
            MfFamily::Gaussian => {
                let d = z - self.p1;
                (-(d * d) / (2.0 * self.p2 * self.p2)).exp()
            }
            MfFamily::Sigmoid => 1.0 / (1.0 + (-self.p2 * (z - self.p1)).exp()),
        }
    }

    /// Position used to keep genomes ordered: p1 for point-centered
    /// families, the ramp midpoint for shoulders.
    pub fn center(&self) -> f64 {
        match self.family {
            MfFamily::ShoulderLeft | MfFamily::ShoulderRight => (self.p1 + self.p2) / 2.0,
            _ => self.p1,
        }
    }

    /// Clamps the parameters back into the family's valid region. Total:
    /// every input produces a valid function.
    pub fn repaired(mut self) -> Self {
        let clamp255 = |x: f64| {
            if x.is_finite() {
                x.clamp(0.0, 255.0)
            } else {
                127.5
            }
        };
        match self.family {
            MfFamily::Triangle | MfFamily::Gaussian => {
                self.p1 = clamp255(self.p1);
                self.p2 = if self.p2.is_finite() {
                    self.p2.max(MIN_SHAPE)
                } else {
                    MIN_SHAPE
                };
            }
            MfFamily::Sigmoid => {
                self.p1 = clamp255(self.p1);
                if !self.p2.is_finite() {
                    self.p2 = MIN_SLOPE;
                } else if self.p2.abs() < MIN_SLOPE {
                    // Preserve direction; an exactly-zero slope becomes rising.
                    self.p2 = if self.p2 < 0.0 { -MIN_SLOPE } else { MIN_SLOPE };
                }
            }
            MfFamily::ShoulderLeft | MfFamily::ShoulderRight => {
                let mut a = clamp255(self.p1);
                let mut b = clamp255(self.p2);
                if a > b {
                    std::mem::swap(&mut a, &mut b);
                }
                if b - a < MIN_SHOULDER_GAP {
                    let mid = (a + b) / 2.0;
                    a = mid - MIN_SHOULDER_GAP / 2.0;
                    b = mid + MIN_SHOULDER_GAP / 2.0;
                    if a < 0.0 {
                        b -= a;
                        a = 0.0;
                    } else if b > 255.0 {
                        a -= b - 255.0;
                        b = 255.0;
                    }
                }
                self.p1 = a;
                self.p2 = b;
            }
        }
        self.v = clamp255(self.v);
        self
    }

    /// True when the parameters already satisfy the family's invariants.
    pub fn is_valid(&self) -> bool {
        let in_range = |x: f64| x.is_finite() && (0.0..=255.0).contains(&x);
        let shape_ok = match self.family {
            MfFamily::Triangle | MfFamily::Gaussian => in_range(self.p1) && self.p2 > 0.0,
            MfFamily::Sigmoid => in_range(self.p1) && self.p2 != 0.0 && self.p2.is_finite(),
            MfFamily::ShoulderLeft | MfFamily::ShoulderRight => {
                in_range(self.p1) && in_range(self.p2) && self.p1 < self.p2
            }
        };
        shape_ok && in_range(self.v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn shoulder_left_profile() {
        let f = MembershipFunction::new(MfFamily::ShoulderLeft, 0.0, 127.0, 0.0);
        assert_eq!(f.degree(0.0), 1.0);
        assert_eq!(f.degree(127.0), 0.0);
        assert_eq!(f.degree(200.0), 0.0);
        assert!((f.degree(64.0) - 63.0 / 127.0).abs() < 1e-12);
    }

    #[test]
    fn triangle_profile() {
        let f = MembershipFunction::new(MfFamily::Triangle, 127.0, 96.0, 127.0);
        assert_eq!(f.degree(127.0), 1.0);
        assert_eq!(f.degree(31.0), 0.0);
        assert_eq!(f.degree(0.0), 0.0);
        assert!((f.degree(64.0) - (1.0 - 63.0 / 96.0)).abs() < 1e-12);
    }

    #[test]
    fn repair_clamps_into_valid_region() {
        let f = MembershipFunction::new(MfFamily::Triangle, 300.0, -4.0, 400.0);
        assert!(f.is_valid());
        assert_eq!(f.p1, 255.0);
        assert_eq!(f.p2, MIN_SHAPE);
        assert_eq!(f.v, 255.0);

        let f = MembershipFunction::new(MfFamily::ShoulderLeft, 250.0, 100.0, 0.0);
        assert!(f.is_valid());
        assert!(f.p1 < f.p2);

        let f = MembershipFunction::new(MfFamily::Sigmoid, 100.0, 0.0, 10.0);
        assert!(f.is_valid());
        assert_eq!(f.p2, MIN_SLOPE);
    }

    proptest! {
        #[test]
        fn degree_stays_in_unit_interval(
            family_idx in 0usize..5,
            p1 in -500.0f64..500.0,
            p2 in -500.0f64..500.0,
            v in -500.0f64..500.0,
            z in 0.0f64..=255.0,
        ) {
            let family = [
                MfFamily::ShoulderLeft,
                MfFamily::ShoulderRight,
                MfFamily::Triangle,
                MfFamily::Gaussian,
                MfFamily::Sigmoid,
            ][family_idx];
            let f = MembershipFunction::new(family, p1, p2, v);
            prop_assert!(f.is_valid());
            let mu = f.degree(z);
            prop_assert!((0.0..=1.0).contains(&mu), "mu={mu} for {f:?}");
        }
    }
}
