//! Shared data builders for the benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use fuzzy_contrast::{ColorImage, DynImage, GrayImage};

/// Deterministic noisy grayscale image of the given side length.
pub fn noisy_gray(side: u32, seed: u64) -> GrayImage {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    GrayImage::from_fn(side, side, |_, _| rng.random())
}

/// Deterministic low-contrast image: blocks of nearby levels.
pub fn low_contrast_blocks(side: u32, seed: u64) -> DynImage {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let block = 8;
    let blocks_per_side = side.div_ceil(block) as usize;
    let levels: Vec<u8> = (0..blocks_per_side * blocks_per_side)
        .map(|_| 100 + 8 * rng.random_range(0..8u8))
        .collect();
    DynImage::Gray(GrayImage::from_fn(side, side, |x, y| {
        levels[(y / block) as usize * blocks_per_side + (x / block) as usize]
    }))
}

/// Deterministic color image with ramps and a few rectangles.
pub fn synthetic_color(side: u32) -> ColorImage {
    ColorImage::from_fn(side, side, |x, y| {
        let mut p = [
            (90 + x % 160) as u8,
            (80 + y % 170) as u8,
            (110 + (x + y) / 2 % 140) as u8,
        ];
        if x > side / 4 && x < side / 2 && y > side / 3 && y < side / 2 {
            p = [200, 140, 90];
        }
        p
    })
}
