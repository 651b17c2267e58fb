//! RGB ↔ HSV conversion. Hue and saturation are kept as `f64` planes so a
//! round trip with an unmodified value plane reproduces every channel
//! within ±1; only the value plane is quantized to 8 bits, because that is
//! the plane the transfer function rewrites.

use super::{ColorImage, GrayImage};
use crate::error::{Error, Result};

/// The three HSV planes of a color image. Hue in degrees [0, 360),
/// saturation in [0, 1], value as an 8-bit raster.
#[derive(Debug, Clone)]
pub struct HsvPlanes {
    hue: Vec<f64>,
    sat: Vec<f64>,
    value: GrayImage,
}

impl HsvPlanes {
    pub fn new(hue: Vec<f64>, sat: Vec<f64>, value: GrayImage) -> Result<Self> {
        let n = (value.width() as usize) * (value.height() as usize);
        if hue.len() != n || sat.len() != n {
            return Err(Error::DimensionMismatch {
                expected: (value.width(), value.height()),
                actual: (hue.len().min(u32::MAX as usize) as u32, sat.len().min(u32::MAX as usize) as u32),
            });
        }
        Ok(Self { hue, sat, value })
    }

    pub fn width(&self) -> u32 {
        self.value.width()
    }

    pub fn height(&self) -> u32 {
        self.value.height()
    }

    pub fn hue(&self) -> &[f64] {
        &self.hue
    }

    pub fn sat(&self) -> &[f64] {
        &self.sat
    }

    pub fn value(&self) -> &GrayImage {
        &self.value
    }

    pub fn into_value(self) -> GrayImage {
        self.value
    }

    /// Replaces the value plane, keeping hue and saturation.
    pub fn with_value(self, value: GrayImage) -> Result<Self> {
        if value.width() != self.width() || value.height() != self.height() {
            return Err(Error::DimensionMismatch {
                expected: (self.width(), self.height()),
                actual: (value.width(), value.height()),
            });
        }
        Ok(Self {
            hue: self.hue,
            sat: self.sat,
            value,
        })
    }
}

/// Splits an RGB image into HSV planes. V is max(R,G,B) per pixel.
pub fn rgb_to_hsv(img: &ColorImage) -> HsvPlanes {
    let n = img.pixels().len();
    let mut hue = Vec::with_capacity(n);
    let mut sat = Vec::with_capacity(n);
    let mut value = Vec::with_capacity(n);

    for &[r, g, b] in img.pixels() {
        let max = r.max(g).max(b);
        let min = r.min(g).min(b);
        value.push(max);

        let (rf, gf, bf) = (r as f64, g as f64, b as f64);
        let delta = (max - min) as f64;
        let s = if max == 0 { 0.0 } else { delta / max as f64 };

        let h = if delta == 0.0 {
            0.0
        } else if max == r {
            60.0 * (((gf - bf) / delta).rem_euclid(6.0))
        } else if max == g {
            60.0 * ((bf - rf) / delta + 2.0)
        } else {
            60.0 * ((rf - gf) / delta + 4.0)
        };

        hue.push(h);
        sat.push(s);
    }

    HsvPlanes {
        hue,
        sat,
        value: GrayImage::new(img.width(), img.height(), value)
            .expect("source image dimensions are valid"),
    }
}

/// Recombines HSV planes into an RGB image.
pub fn hsv_to_rgb(planes: &HsvPlanes) -> ColorImage {
    let mut pixels = Vec::with_capacity(planes.hue.len());

    for i in 0..planes.hue.len() {
        let h = planes.hue[i].rem_euclid(360.0);
        let s = planes.sat[i];
        let v = planes.value.pixels()[i] as f64 / 255.0;

        let c = v * s;
        let hp = h / 60.0;
        let x = c * (1.0 - (hp.rem_euclid(2.0) - 1.0).abs());
        let (r1, g1, b1) = match hp as u32 {
            0 => (c, x, 0.0),
            1 => (x, c, 0.0),
            2 => (0.0, c, x),
            3 => (0.0, x, c),
            4 => (x, 0.0, c),
            _ => (c, 0.0, x),
        };
        let m = v - c;
        let to_u8 = |ch: f64| ((ch + m) * 255.0).round().clamp(0.0, 255.0) as u8;
        pixels.push([to_u8(r1), to_u8(g1), to_u8(b1)]);
    }

    ColorImage::new(planes.width(), planes.height(), pixels)
        .expect("plane dimensions are valid by construction")
}
