//! Sobel filtering, histograms, entropy and histogram equalization.

use super::{GradientField, GrayImage};

/// Applies the 3x3 Sobel operator with replicate padding and returns the
/// per-pixel gradient magnitude sqrt(gx^2 + gy^2).
pub fn sobel(img: &GrayImage) -> GradientField {
    let w = img.width() as i64;
    let h = img.height() as i64;
    let mut magnitudes = Vec::with_capacity((w * h) as usize);

    let sample = |x: i64, y: i64| -> f64 {
        let cx = x.clamp(0, w - 1) as u32;
        let cy = y.clamp(0, h - 1) as u32;
        img.get(cx, cy) as f64
    };

    for y in 0..h {
        for x in 0..w {
            let tl = sample(x - 1, y - 1);
            let tc = sample(x, y - 1);
            let tr = sample(x + 1, y - 1);
            let ml = sample(x - 1, y);
            let mr = sample(x + 1, y);
            let bl = sample(x - 1, y + 1);
            let bc = sample(x, y + 1);
            let br = sample(x + 1, y + 1);

            let gx = (tr + 2.0 * mr + br) - (tl + 2.0 * ml + bl);
            let gy = (bl + 2.0 * bc + br) - (tl + 2.0 * tc + tr);
            magnitudes.push((gx * gx + gy * gy).sqrt());
        }
    }

    GradientField::from_parts(img.width(), img.height(), magnitudes)
}

/// 256-bin intensity histogram.
pub fn histogram(levels: &[u8]) -> [u64; 256] {
    let mut hist = [0u64; 256];
    for &v in levels {
        hist[v as usize] += 1;
    }
    hist
}

/// Shannon entropy in bits of a 256-bin histogram, with 0*log2(0) = 0.
pub fn entropy_from_histogram(hist: &[u64; 256]) -> f64 {
    let total: u64 = hist.iter().sum();
    if total == 0 {
        return 0.0;
    }
    let total = total as f64;
    hist.iter()
        .filter(|&&c| c > 0)
        .map(|&c| {
            let p = c as f64 / total;
            -p * p.log2()
        })
        .sum()
}

/// Entropy of an 8-bit image.
pub fn entropy(img: &GrayImage) -> f64 {
    entropy_from_histogram(&histogram(img.pixels()))
}

/// Entropy of a gradient field after rounding magnitudes into [0,255] bins.
pub fn entropy_of_gradient(field: &GradientField) -> f64 {
    entropy_from_histogram(&histogram(&field.quantized()))
}

/// Classic CDF-remap histogram equalization: level v maps to
/// floor(255 * cdf(v)). The mapping is monotone non-decreasing.
pub fn histogram_equalize(img: &GrayImage) -> GrayImage {
    let hist = histogram(img.pixels());
    let total = img.pixels().len() as f64;

    let mut lut = [0u8; 256];
    let mut cumulative = 0u64;
    for (level, count) in hist.iter().enumerate() {
        cumulative += count;
        lut[level] = (255.0 * cumulative as f64 / total).floor() as u8;
    }

    let pixels = img.pixels().iter().map(|&p| lut[p as usize]).collect();
    GrayImage::new(img.width(), img.height(), pixels).expect("dimensions preserved")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    // Plain nested-loop convolution used as the oracle for the sobel tests.
    fn brute_force_sobel(img: &GrayImage) -> Vec<f64> {
        const KX: [[f64; 3]; 3] = [[-1.0, 0.0, 1.0], [-2.0, 0.0, 2.0], [-1.0, 0.0, 1.0]];
        const KY: [[f64; 3]; 3] = [[-1.0, -2.0, -1.0], [0.0, 0.0, 0.0], [1.0, 2.0, 1.0]];
        let (w, h) = (img.width() as i64, img.height() as i64);
        let mut out = Vec::new();
        for y in 0..h {
            for x in 0..w {
                let mut gx = 0.0;
                let mut gy = 0.0;
                for dy in -1..=1i64 {
                    for dx in -1..=1i64 {
                        let px = (x + dx).clamp(0, w - 1) as u32;
                        let py = (y + dy).clamp(0, h - 1) as u32;
                        let v = img.get(px, py) as f64;
                        gx += v * KX[(dy + 1) as usize][(dx + 1) as usize];
                        gy += v * KY[(dy + 1) as usize][(dx + 1) as usize];
                    }
                }
                out.push(gx.hypot(gy));
            }
        }
        out
    }

    #[test]
    fn constant_image_has_zero_gradient() {
        for level in [0u8, 77, 255] {
            let field = sobel(&GrayImage::constant(6, 5, level));
            assert!(field.magnitudes().iter().all(|&m| m == 0.0));
        }
    }

    #[test]
    fn vertical_step_edge() {
        let img = GrayImage::from_fn(4, 4, |x, _| if x < 2 { 0 } else { 255 });
        let field = sobel(&img);
        let oracle = brute_force_sobel(&img);
        assert_eq!(field.magnitudes(), oracle.as_slice());
        // Magnitude on the step columns is 4*255 with replicate padding.
        for y in 0..4 {
            assert_eq!(field.get(1, y), 4.0 * 255.0);
            assert_eq!(field.get(2, y), 4.0 * 255.0);
        }
    }

    #[test]
    fn single_bright_pixel() {
        let img = GrayImage::from_fn(5, 5, |x, y| if x == 2 && y == 2 { 255 } else { 0 });
        let field = sobel(&img);
        let oracle = brute_force_sobel(&img);
        assert_eq!(field.magnitudes(), oracle.as_slice());

        let nonzero: Vec<(u32, u32)> = (0..5)
            .flat_map(|y| (0..5).map(move |x| (x, y)))
            .filter(|&(x, y)| field.get(x, y) > 0.0)
            .collect();
        assert_eq!(nonzero.len(), 8);
        assert!(nonzero
            .iter()
            .all(|&(x, y)| x.abs_diff(2) <= 1 && y.abs_diff(2) <= 1 && (x, y) != (2, 2)));
        // Symmetry: reflections carry equal magnitudes.
        assert_eq!(field.get(1, 1), field.get(3, 3));
        assert_eq!(field.get(1, 3), field.get(3, 1));
        assert_eq!(field.get(2, 1), field.get(2, 3));
        assert_eq!(field.get(1, 2), field.get(3, 2));
    }

    #[test]
    fn entropy_known_values() {
        assert_eq!(entropy(&GrayImage::constant(7, 7, 42)), 0.0);

        let img = GrayImage::from_fn(4, 4, |x, _| if x < 2 { 0 } else { 255 });
        assert!((entropy(&img) - 1.0).abs() < 1e-12);

        // 16 pixels with histogram {0:8, 100:4, 200:4} -> 1.5 bits.
        let mut pixels = vec![0u8; 8];
        pixels.extend(vec![100u8; 4]);
        pixels.extend(vec![200u8; 4]);
        let img = GrayImage::new(4, 4, pixels).unwrap();
        assert!((entropy(&img) - 1.5).abs() < 1e-12);
    }

    #[test]
    fn equalize_two_level_image() {
        // Half the pixels at 50, half at 60: cdf 0.5 and 1.0, so the
        // remap sends them to floor(127.5) = 127 and 255.
        let img = GrayImage::from_fn(8, 8, |x, _| if x < 4 { 50 } else { 60 });
        let eq = histogram_equalize(&img);
        for y in 0..8 {
            assert_eq!(eq.get(0, y), 127);
            assert_eq!(eq.get(7, y), 255);
        }
    }

    #[test]
    fn equalize_constant_image() {
        let eq = histogram_equalize(&GrayImage::constant(5, 5, 90));
        let first = eq.pixels()[0];
        assert!(eq.pixels().iter().all(|&p| p == first));
    }

    #[test]
    fn equalize_uniform_histogram_is_near_identity() {
        // One pixel per level: already equalized.
        let pixels: Vec<u8> = (0..=255).collect();
        let img = GrayImage::new(16, 16, pixels).unwrap();
        let eq = histogram_equalize(&img);
        for (a, b) in img.pixels().iter().zip(eq.pixels()) {
            assert!((*a as i16 - *b as i16).abs() <= 1);
        }
    }

    proptest! {
        #[test]
        fn entropy_is_permutation_invariant(mut pixels in proptest::collection::vec(any::<u8>(), 64)) {
            let img = GrayImage::new(8, 8, pixels.clone()).unwrap();
            let e1 = entropy(&img);
            pixels.reverse();
            pixels.rotate_left(13);
            let img2 = GrayImage::new(8, 8, pixels).unwrap();
            prop_assert!((e1 - entropy(&img2)).abs() < 1e-12);
        }

        #[test]
        fn entropy_bounded(pixels in proptest::collection::vec(any::<u8>(), 256)) {
            let img = GrayImage::new(16, 16, pixels).unwrap();
            let e = entropy(&img);
            prop_assert!((0.0..=8.0).contains(&e));
        }

        #[test]
        fn sobel_matches_brute_force(pixels in proptest::collection::vec(any::<u8>(), 48)) {
            let img = GrayImage::new(8, 6, pixels).unwrap();
            let field = sobel(&img);
            let oracle = brute_force_sobel(&img);
            for (a, b) in field.magnitudes().iter().zip(&oracle) {
                prop_assert!((a - b).abs() < 1e-9);
            }
        }

        #[test]
        fn equalize_is_idempotent_within_one(pixels in proptest::collection::vec(any::<u8>(), 64)) {
            let img = GrayImage::new(8, 8, pixels).unwrap();
            let once = histogram_equalize(&img);
            let twice = histogram_equalize(&once);
            for (a, b) in once.pixels().iter().zip(twice.pixels()) {
                prop_assert!((*a as i16 - *b as i16).abs() <= 1);
            }
        }

        #[test]
        fn equalize_mapping_is_monotone(pixels in proptest::collection::vec(any::<u8>(), 64)) {
            let img = GrayImage::new(8, 8, pixels).unwrap();
            let eq = histogram_equalize(&img);
            let mut pairs: Vec<(u8, u8)> = img.pixels().iter().copied().zip(eq.pixels().iter().copied()).collect();
            pairs.sort();
            for w in pairs.windows(2) {
                prop_assert!(w[0].1 <= w[1].1);
            }
        }
    }
}
