//! The optimization objective: edge energy, edge-pixel fraction and
//! entropy of the Sobel-filtered image, combined into one scalar.

use serde::{Deserialize, Serialize};

use crate::fuzzy::{Genome, TransferLut};
use crate::raster::{entropy, entropy_of_gradient, rgb_to_hsv, sobel, DynImage, GrayImage};

/// Default edge threshold on the 0-255 gradient-magnitude scale.
pub const DEFAULT_EDGE_THRESHOLD: f64 = 20.0;

/// Which image the entropy term is computed on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EntropySource {
    /// Entropy of the binned Sobel magnitudes (the formula as printed).
    #[default]
    Sobel,
    /// Entropy of the enhanced image itself.
    Enhanced,
}

/// Knobs of the fitness evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvalParams {
    pub edge_threshold: f64,
    pub entropy_source: EntropySource,
}

impl Default for EvalParams {
    fn default() -> Self {
        Self {
            edge_threshold: DEFAULT_EDGE_THRESHOLD,
            entropy_source: EntropySource::default(),
        }
    }
}

/// The scalar objective plus its components for one evaluated image.
///
/// `f` is `-inf` (serialized as JSON `null`) when the edge energy is too
/// small for the double logarithm; optimizers rank that as worst.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FitnessReport {
    #[serde(rename = "F", with = "nullable_float")]
    pub f: f64,
    #[serde(rename = "E")]
    pub e: f64,
    pub ne: u64,
    #[serde(rename = "H")]
    pub h: f64,
    #[serde(rename = "M")]
    pub width: u32,
    #[serde(rename = "N")]
    pub height: u32,
    pub degenerate: bool,
}

impl FitnessReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization is infallible")
    }
}

/// Serializes non-finite floats as `null` so reports stay valid JSON;
/// `null` reads back as -inf.
pub mod nullable_float {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &f64, ser: S) -> Result<S::Ok, S::Error> {
        if value.is_finite() {
            ser.serialize_some(value)
        } else {
            ser.serialize_none()
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<f64, D::Error> {
        Ok(Option::<f64>::deserialize(de)?.unwrap_or(f64::NEG_INFINITY))
    }
}

/// Evaluates the objective on a grayscale image (for color sources the
/// caller passes the value plane of the enhanced image).
///
/// The edge energy E is the sum of Sobel magnitudes, ne counts magnitudes
/// strictly above the threshold, H is entropy in bits, and
/// F = ln(ln(E)) * ne/(M*N) * H. E <= e makes the double logarithm
/// meaningless, so such images get the -inf sentinel instead.
pub fn evaluate(img: &GrayImage, params: &EvalParams) -> FitnessReport {
    let field = sobel(img);
    let e = field.energy();
    let ne = field.count_above(params.edge_threshold);
    let h = match params.entropy_source {
        EntropySource::Sobel => entropy_of_gradient(&field),
        EntropySource::Enhanced => entropy(img),
    };
    let pixel_count = (img.width() as f64) * (img.height() as f64);

    let degenerate = e <= std::f64::consts::E;
    let f = if degenerate {
        f64::NEG_INFINITY
    } else {
        e.ln().ln() * (ne as f64 / pixel_count) * h
    };

    FitnessReport {
        f,
        e,
        ne,
        h,
        width: img.width(),
        height: img.height(),
        degenerate,
    }
}

/// Fitness of a genome against an image: applies the transfer function and
/// evaluates the result (its value plane when the source is color).
pub fn fitness_of_genome(img: &DynImage, genome: &Genome, params: &EvalParams) -> FitnessReport {
    let lut = TransferLut::from_genome(genome);
    fitness_of_lut(img, &lut, params)
}

/// Same as [`fitness_of_genome`] with the LUT already built.
pub fn fitness_of_lut(img: &DynImage, lut: &TransferLut, params: &EvalParams) -> FitnessReport {
    let enhanced_plane = match img {
        DynImage::Gray(g) => lut.apply(g),
        DynImage::Color(c) => lut.apply(rgb_to_hsv(c).value()),
    };
    evaluate(&enhanced_plane, params)
}
