//! Fuzzy intensity transforms: membership-function families, the genome
//! under evolution, and the fuzzify/defuzzify pipeline realized as a LUT.

mod genome;
mod lut;
mod membership;

pub use genome::{FamilySet, Genome, MEMBERSHIP_EPSILON};
pub use lut::{enhance, enhance_with_lut, TransferLut};
pub use membership::{MembershipFunction, MfFamily};
