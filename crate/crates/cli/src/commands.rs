//! The single-image subcommands: enhance, baseline, fitness.

use std::path::{Path, PathBuf};

use anyhow::Context;
use serde::Serialize;

use fuzzy_contrast::fitness::nullable_float;
use fuzzy_contrast::raster::{hsv_to_rgb, rgb_to_hsv, save_image};
use fuzzy_contrast::{
    evaluate, histogram_equalize, load_image, run_variant, DynImage, EvalParams, FitnessReport,
    HyperParams, TransferLut, VariantId,
};

/// What `enhance` did: reports before/after plus where everything went.
#[derive(Debug, Serialize)]
pub struct EnhanceSummary {
    pub image: PathBuf,
    pub variant: VariantId,
    pub seed: u64,
    pub generations: u32,
    pub original: FitnessReport,
    pub enhanced: FitnessReport,
    /// F(enhanced) - F(original); absent when either side is the sentinel.
    pub delta_f: Option<f64>,
    pub genome_size: usize,
    /// LUT entries that fell back to identity (no membership fired).
    pub lut_fallback_entries: usize,
    pub outputs: OutputPaths,
}

#[derive(Debug, Serialize)]
pub struct OutputPaths {
    pub image: PathBuf,
    pub genome: PathBuf,
    pub lut: PathBuf,
    pub trace: PathBuf,
}

/// Output path defaulting: `photo.png` becomes `photo_enhanced.png` in the
/// current directory unless an explicit path was given.
pub fn default_output(input: &Path, suffix: &str) -> PathBuf {
    let stem = input
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "image".to_owned());
    let ext = input
        .extension()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "png".to_owned());
    PathBuf::from(format!("{stem}_{suffix}.{ext}"))
}

fn sidecar(output: &Path, kind: &str) -> PathBuf {
    let mut name = output
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "output".to_owned());
    name.push('.');
    name.push_str(kind);
    output.with_file_name(name)
}

fn delta(original: &FitnessReport, result: &FitnessReport) -> Option<f64> {
    (original.f.is_finite() && result.f.is_finite()).then_some(result.f - original.f)
}

/// Evolves a transfer function for one image and writes the enhanced
/// image, the genome JSON, the LUT CSV and the trace CSV.
pub fn run_enhance(
    input: &Path,
    output: Option<PathBuf>,
    variant: VariantId,
    hp: &HyperParams,
) -> anyhow::Result<EnhanceSummary> {
    let img = load_image(input)?;
    let original = evaluate(&img.value_plane(), &hp.eval_params());

    let trace = run_variant(&img, variant, hp)?;

    let (lut, fallbacks) = TransferLut::from_genome_flagged(&trace.final_genome);
    let enhanced_img = fuzzy_contrast::fuzzy::enhance_with_lut(&img, &lut);

    let out_image = output.unwrap_or_else(|| default_output(input, "enhanced"));
    let outputs = OutputPaths {
        genome: sidecar(&out_image, "genome.json"),
        lut: sidecar(&out_image, "lut.csv"),
        trace: sidecar(&out_image, "trace.csv"),
        image: out_image,
    };

    save_image(&outputs.image, &enhanced_img)?;
    std::fs::write(&outputs.genome, trace.final_genome.to_json())
        .with_context(|| format!("writing {}", outputs.genome.display()))?;
    lut.write_csv(&outputs.lut)?;
    trace.write_csv(&outputs.trace)?;

    Ok(EnhanceSummary {
        image: input.to_path_buf(),
        variant,
        seed: hp.seed,
        generations: trace.generations(),
        original,
        delta_f: delta(&original, &trace.final_report),
        enhanced: trace.final_report,
        genome_size: trace.final_genome.len(),
        lut_fallback_entries: fallbacks,
        outputs,
    })
}

/// What `baseline` did.
#[derive(Debug, Serialize)]
pub struct BaselineSummary {
    pub image: PathBuf,
    pub original: FitnessReport,
    pub equalized: FitnessReport,
    pub delta_f: Option<f64>,
    pub output: PathBuf,
}

/// Histogram equalization applied to the value plane, for side-by-side
/// comparison with the evolved transform.
pub fn run_baseline(
    input: &Path,
    output: Option<PathBuf>,
    params: &EvalParams,
) -> anyhow::Result<BaselineSummary> {
    let img = load_image(input)?;
    let original = evaluate(&img.value_plane(), params);

    let equalized_img = match &img {
        DynImage::Gray(g) => DynImage::Gray(histogram_equalize(g)),
        DynImage::Color(c) => {
            let planes = rgb_to_hsv(c);
            let value = histogram_equalize(planes.value());
            DynImage::Color(hsv_to_rgb(&planes.with_value(value)?))
        }
    };
    let equalized = evaluate(&equalized_img.value_plane(), params);

    let output = output.unwrap_or_else(|| default_output(input, "equalized"));
    save_image(&output, &equalized_img)?;

    Ok(BaselineSummary {
        image: input.to_path_buf(),
        delta_f: delta(&original, &equalized),
        original,
        equalized,
        output,
    })
}

/// What `fitness` measured.
#[derive(Debug, Serialize)]
pub struct FitnessSummary {
    pub image: PathBuf,
    #[serde(with = "nullable_float")]
    pub f: f64,
    pub report: FitnessReport,
}

/// Evaluate-only: the objective of the image as it is.
pub fn run_fitness(input: &Path, params: &EvalParams) -> anyhow::Result<FitnessSummary> {
    let img = load_image(input)?;
    let report = evaluate(&img.value_plane(), params);
    Ok(FitnessSummary {
        image: input.to_path_buf(),
        f: report.f,
        report,
    })
}
