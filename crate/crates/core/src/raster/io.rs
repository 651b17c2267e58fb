//! Reading and writing PNG and binary PGM/PPM rasters.

use std::fs::File;
use std::io::BufWriter;
use std::path::Path;

use image::codecs::png::PngEncoder;
use image::codecs::pnm::{PnmEncoder, PnmSubtype, SampleEncoding};
use image::{DynamicImage, ExtendedColorType, ImageEncoder, ImageReader};

use super::{ColorImage, DynImage, GrayImage};
use crate::error::{Error, Result};

/// Loads a PNG or PGM/PPM file. Single-channel sources decode to
/// [`GrayImage`], three-channel sources to [`ColorImage`]. Alpha channels
/// and bit depths other than 8 are rejected.
pub fn load_image(path: impl AsRef<Path>) -> Result<DynImage> {
    let path = path.as_ref();
    let reader = ImageReader::open(path).map_err(|e| match e.kind() {
        std::io::ErrorKind::NotFound => Error::FileNotFound(path.to_path_buf()),
        _ => Error::Io {
            path: path.to_path_buf(),
            source: e,
        },
    })?;
    let decoded = reader.decode().map_err(|e| Error::Decode {
        path: path.to_path_buf(),
        detail: e.to_string(),
    })?;

    match decoded {
        DynamicImage::ImageLuma8(buf) => {
            let (w, h) = buf.dimensions();
            Ok(DynImage::Gray(GrayImage::new(w, h, buf.into_raw())?))
        }
        DynamicImage::ImageRgb8(buf) => {
            let (w, h) = buf.dimensions();
            let pixels = buf
                .into_raw()
                .chunks_exact(3)
                .map(|c| [c[0], c[1], c[2]])
                .collect();
            Ok(DynImage::Color(ColorImage::new(w, h, pixels)?))
        }
        other => Err(Error::UnsupportedFormat {
            path: path.to_path_buf(),
            detail: format!(
                "only 8-bit grayscale or RGB without alpha is supported, got {:?}",
                other.color()
            ),
        }),
    }
}

fn extension_of(path: &Path) -> String {
    path.extension()
        .map(|e| e.to_string_lossy().to_ascii_lowercase())
        .unwrap_or_default()
}

fn writer_for(path: &Path) -> Result<BufWriter<File>> {
    let file = File::create(path).map_err(|e| Error::Io {
        path: path.to_path_buf(),
        source: e,
    })?;
    Ok(BufWriter::new(file))
}

fn map_encode_err(path: &Path, e: image::ImageError) -> Error {
    Error::Decode {
        path: path.to_path_buf(),
        detail: e.to_string(),
    }
}

/// Writes a grayscale raster as PNG or binary PGM, chosen by extension.
pub fn save_gray(path: impl AsRef<Path>, img: &GrayImage) -> Result<()> {
    let path = path.as_ref();
    match extension_of(path).as_str() {
        "png" => PngEncoder::new(writer_for(path)?)
            .write_image(img.pixels(), img.width(), img.height(), ExtendedColorType::L8)
            .map_err(|e| map_encode_err(path, e)),
        "pgm" => PnmEncoder::new(writer_for(path)?)
            .with_subtype(PnmSubtype::Graymap(SampleEncoding::Binary))
            .write_image(img.pixels(), img.width(), img.height(), ExtendedColorType::L8)
            .map_err(|e| map_encode_err(path, e)),
        ext => Err(Error::UnsupportedFormat {
            path: path.to_path_buf(),
            detail: format!("cannot write grayscale data to '.{ext}' (use .png or .pgm)"),
        }),
    }
}

/// Writes an RGB raster as PNG or binary PPM, chosen by extension.
pub fn save_color(path: impl AsRef<Path>, img: &ColorImage) -> Result<()> {
    let path = path.as_ref();
    let bytes = img.pixels().as_flattened();
    match extension_of(path).as_str() {
        "png" => PngEncoder::new(writer_for(path)?)
            .write_image(bytes, img.width(), img.height(), ExtendedColorType::Rgb8)
            .map_err(|e| map_encode_err(path, e)),
        "ppm" => PnmEncoder::new(writer_for(path)?)
            .with_subtype(PnmSubtype::Pixmap(SampleEncoding::Binary))
            .write_image(bytes, img.width(), img.height(), ExtendedColorType::Rgb8)
            .map_err(|e| map_encode_err(path, e)),
        ext => Err(Error::UnsupportedFormat {
            path: path.to_path_buf(),
            detail: format!("cannot write RGB data to '.{ext}' (use .png or .ppm)"),
        }),
    }
}

/// Writes either raster kind, dispatching on the variant.
pub fn save_image(path: impl AsRef<Path>, img: &DynImage) -> Result<()> {
    match img {
        DynImage::Gray(g) => save_gray(path, g),
        DynImage::Color(c) => save_color(path, c),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    #[test]
    fn decode_hand_written_pgm() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("tiny.pgm");
        let mut f = File::create(&path).unwrap();
        f.write_all(b"P5\n2 2\n255\n").unwrap();
        f.write_all(&[0, 255, 128, 64]).unwrap();
        drop(f);

        match load_image(&path).unwrap() {
            DynImage::Gray(g) => {
                assert_eq!((g.width(), g.height()), (2, 2));
                assert_eq!(g.pixels(), &[0, 255, 128, 64]);
            }
            DynImage::Color(_) => panic!("PGM must decode as grayscale"),
        }
    }

    #[test]
    fn missing_file_reports_not_found() {
        let err = load_image("/nonexistent/nowhere.pgm").unwrap_err();
        assert!(err.to_string().contains("file not found"), "got: {err}");
    }

    #[test]
    fn decode_externally_written_png() {
        // tests/data/rgb_3x2.png was produced by an independent image
        // tool; pixels must match byte for byte.
        let path = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data/rgb_3x2.png");
        let expected: [[u8; 3]; 6] = [
            [255, 0, 0],
            [0, 255, 0],
            [0, 0, 255],
            [10, 20, 30],
            [200, 100, 50],
            [255, 255, 255],
        ];
        match load_image(path).unwrap() {
            DynImage::Color(c) => {
                assert_eq!((c.width(), c.height()), (3, 2));
                assert_eq!(c.pixels(), &expected);
            }
            DynImage::Gray(_) => panic!("RGB PNG must decode as color"),
        }
    }

    #[test]
    fn round_trip_is_bit_exact() {
        let dir = tempfile::tempdir().unwrap();
        let gray = GrayImage::from_fn(7, 5, |x, y| (x * 37 + y * 11) as u8);
        let color = ColorImage::from_fn(5, 4, |x, y| [x as u8 * 50, y as u8 * 60, 200]);

        for ext in ["pgm", "png"] {
            let p = dir.path().join(format!("g.{ext}"));
            save_gray(&p, &gray).unwrap();
            assert_eq!(load_image(&p).unwrap(), DynImage::Gray(gray.clone()));
        }
        for ext in ["ppm", "png"] {
            let p = dir.path().join(format!("c.{ext}"));
            save_color(&p, &color).unwrap();
            assert_eq!(load_image(&p).unwrap(), DynImage::Color(color.clone()));
        }
    }

    #[test]
    fn wrong_extension_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let gray = GrayImage::constant(2, 2, 9);
        assert!(save_gray(dir.path().join("g.ppm"), &gray).is_err());
        assert!(save_gray(dir.path().join("g.bmp"), &gray).is_err());
    }
}
