//! The 256-entry transfer LUT realized from a genome, and its application
//! to images. The intensity domain is tiny, so the transform is computed
//! once per genome instead of per pixel.

use std::path::Path;

use super::genome::Genome;
use crate::error::{Error, Result};
use crate::raster::{hsv_to_rgb, rgb_to_hsv, DynImage, GrayImage};

/// Intensity-to-intensity map with exactly 256 entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransferLut {
    map: [u8; 256],
}

impl TransferLut {
    /// Realizes the genome's transfer function: entry z is the rounded
    /// defuzzification of z.
    pub fn from_genome(genome: &Genome) -> Self {
        Self::from_genome_flagged(genome).0
    }

    /// Same as [`TransferLut::from_genome`], also reporting how many
    /// entries hit the identity fallback (no membership fired).
    pub fn from_genome_flagged(genome: &Genome) -> (Self, usize) {
        let mut map = [0u8; 256];
        let mut fallbacks = 0;
        for (z, slot) in map.iter_mut().enumerate() {
            let (value, fell_back) = genome.defuzzify_flagged(z as f64);
            *slot = value.clamp(0.0, 255.0).round() as u8;
            if fell_back {
                fallbacks += 1;
            }
        }
        (Self { map }, fallbacks)
    }

    pub fn identity() -> Self {
        let mut map = [0u8; 256];
        for (z, slot) in map.iter_mut().enumerate() {
            *slot = z as u8;
        }
        Self { map }
    }

    pub fn from_map(map: [u8; 256]) -> Self {
        Self { map }
    }

    pub fn map(&self) -> &[u8; 256] {
        &self.map
    }

    pub fn get(&self, z: u8) -> u8 {
        self.map[z as usize]
    }

    /// Per-pixel table lookup; dimensions are preserved.
    pub fn apply(&self, img: &GrayImage) -> GrayImage {
        let pixels = img.pixels().iter().map(|&p| self.map[p as usize]).collect();
        GrayImage::new(img.width(), img.height(), pixels).expect("dimensions preserved")
    }

    /// 256 lines of `index,value`, for inspection and plotting.
    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(256 * 8);
        for (i, v) in self.map.iter().enumerate() {
            out.push_str(&format!("{i},{v}\n"));
        }
        out
    }

    pub fn write_csv(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path.as_ref(), self.to_csv()).map_err(|e| Error::Io {
            path: path.as_ref().to_path_buf(),
            source: e,
        })
    }
}

/// Applies the genome's transform to an image: directly for grayscale, on
/// the HSV value plane for color.
pub fn enhance(img: &DynImage, genome: &Genome) -> DynImage {
    let lut = TransferLut::from_genome(genome);
    enhance_with_lut(img, &lut)
}

/// Applies a prebuilt LUT the same way [`enhance`] does.
pub fn enhance_with_lut(img: &DynImage, lut: &TransferLut) -> DynImage {
    match img {
        DynImage::Gray(g) => DynImage::Gray(lut.apply(g)),
        DynImage::Color(c) => {
            let planes = rgb_to_hsv(c);
            let value = lut.apply(planes.value());
            let planes = planes.with_value(value).expect("same dimensions");
            DynImage::Color(hsv_to_rgb(&planes))
        }
    }
}
