//! Pixel rasters and the low-level image operations the fitness function
//! consumes: HSV conversion, Sobel filtering, histograms and entropy.

mod hsv;
mod io;
mod ops;

pub use hsv::{hsv_to_rgb, rgb_to_hsv, HsvPlanes};
pub use io::{load_image, save_color, save_gray, save_image};
pub use ops::{entropy, entropy_from_histogram, entropy_of_gradient, histogram, histogram_equalize, sobel};

use crate::error::{Error, Result};

/// 8-bit single-channel raster, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrayImage {
    width: u32,
    height: u32,
    pixels: Vec<u8>,
}

impl GrayImage {
    pub fn new(width: u32, height: u32, pixels: Vec<u8>) -> Result<Self> {
        if width == 0 || height == 0 || pixels.len() != (width as usize) * (height as usize) {
            return Err(Error::InvalidDimensions {
                width,
                height,
                pixels: pixels.len(),
            });
        }
        Ok(Self {
            width,
            height,
            pixels,
        })
    }

    pub fn from_fn(width: u32, height: u32, mut f: impl FnMut(u32, u32) -> u8) -> Self {
        let mut pixels = Vec::with_capacity((width as usize) * (height as usize));
        for y in 0..height {
            for x in 0..width {
                pixels.push(f(x, y));
            }
        }
        Self {
            width,
            height,
            pixels,
        }
    }

    pub fn constant(width: u32, height: u32, level: u8) -> Self {
        Self::from_fn(width, height, |_, _| level)
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn pixels(&self) -> &[u8] {
        &self.pixels
    }

    pub fn get(&self, x: u32, y: u32) -> u8 {
        self.pixels[(y as usize) * (self.width as usize) + x as usize]
    }

    /// Swaps the axes; useful for symmetry checks.
    pub fn transposed(&self) -> Self {
        Self::from_fn(self.height, self.width, |x, y| self.get(y, x))
    }
}

/// 8-bit RGB raster, row-major triples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColorImage {
    width: u32,
    height: u32,
    pixels: Vec<[u8; 3]>,
}

impl ColorImage {
    pub fn new(width: u32, height: u32, pixels: Vec<[u8; 3]>) -> Result<Self> {
        if width == 0 || height == 0 || pixels.len() != (width as usize) * (height as usize) {
            return Err(Error::InvalidDimensions {
                width,
                height,
                pixels: pixels.len(),
            });
        }
        Ok(Self {
            width,
            height,
            pixels,
        })
    }

    pub fn from_fn(width: u32, height: u32, mut f: impl FnMut(u32, u32) -> [u8; 3]) -> Self {
        let mut pixels = Vec::with_capacity((width as usize) * (height as usize));
        for y in 0..height {
            for x in 0..width {
                pixels.push(f(x, y));
            }
        }
        Self {
            width,
            height,
            pixels,
        }
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn pixels(&self) -> &[[u8; 3]] {
        &self.pixels
    }

    pub fn get(&self, x: u32, y: u32) -> [u8; 3] {
        self.pixels[(y as usize) * (self.width as usize) + x as usize]
    }
}

/// Per-pixel gradient magnitudes produced by [`sobel`]. Kept as reals so the
/// edge-energy sum is not destroyed by clamping; [`GradientField::quantized`]
/// bins them for entropy.
#[derive(Debug, Clone, PartialEq)]
pub struct GradientField {
    width: u32,
    height: u32,
    magnitudes: Vec<f64>,
}

impl GradientField {
    pub(crate) fn from_parts(width: u32, height: u32, magnitudes: Vec<f64>) -> Self {
        debug_assert_eq!(magnitudes.len(), (width as usize) * (height as usize));
        Self {
            width,
            height,
            magnitudes,
        }
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn magnitudes(&self) -> &[f64] {
        &self.magnitudes
    }

    pub fn get(&self, x: u32, y: u32) -> f64 {
        self.magnitudes[(y as usize) * (self.width as usize) + x as usize]
    }

    /// Sum of all magnitudes (the edge-energy term).
    pub fn energy(&self) -> f64 {
        self.magnitudes.iter().sum()
    }

    /// Count of pixels whose magnitude strictly exceeds `threshold`.
    pub fn count_above(&self, threshold: f64) -> u64 {
        self.magnitudes.iter().filter(|&&m| m > threshold).count() as u64
    }

    /// Magnitudes rounded and clamped to [0,255], for histogramming.
    pub fn quantized(&self) -> Vec<u8> {
        self.magnitudes
            .iter()
            .map(|&m| m.round().clamp(0.0, 255.0) as u8)
            .collect()
    }
}

/// An image as loaded from disk: single-channel or RGB.
#[derive(Debug, Clone, PartialEq)]
pub enum DynImage {
    Gray(GrayImage),
    Color(ColorImage),
}

impl DynImage {
    pub fn width(&self) -> u32 {
        match self {
            DynImage::Gray(g) => g.width(),
            DynImage::Color(c) => c.width(),
        }
    }

    pub fn height(&self) -> u32 {
        match self {
            DynImage::Gray(g) => g.height(),
            DynImage::Color(c) => c.height(),
        }
    }

    /// The plane the transform and the fitness function operate on:
    /// the image itself when gray, the HSV value plane when color.
    pub fn value_plane(&self) -> GrayImage {
        match self {
            DynImage::Gray(g) => g.clone(),
            DynImage::Color(c) => rgb_to_hsv(c).into_value(),
        }
    }
}

impl From<GrayImage> for DynImage {
    fn from(g: GrayImage) -> Self {
        DynImage::Gray(g)
    }
}

impl From<ColorImage> for DynImage {
    fn from(c: ColorImage) -> Self {
        DynImage::Color(c)
    }
}
