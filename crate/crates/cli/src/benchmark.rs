//! The variant-selection protocol: run every (image, variant) cell
//! `num_of_test` times, average the per-generation improvement rates, rank
//! the variants, and pick the best of each algorithm family.

use std::path::{Path, PathBuf};

use anyhow::Context;
use rayon::prelude::*;
use serde::Serialize;

use fuzzy_contrast::fitness::nullable_float;
use fuzzy_contrast::optim::{derive_seed, fnv1a64};
use fuzzy_contrast::{
    evaluate, improvement_rate, load_image, run_variant, DynImage, FitnessReport, HyperParams,
    VariantId,
};

use crate::config::ExperimentConfig;

/// One optimization run inside a cell.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub run: u32,
    pub seed: u64,
    pub improvement_rate: f64,
    #[serde(with = "nullable_float")]
    pub final_f: f64,
    pub generations: u32,
    pub trace_csv: PathBuf,
}

/// All runs of one (image, variant) pair.
#[derive(Debug, Clone, Serialize)]
pub struct CellReport {
    pub image: String,
    pub variant: VariantId,
    pub runs: Vec<RunReport>,
    pub mean_improvement_rate: f64,
    #[serde(with = "nullable_float")]
    pub mean_final_f: f64,
    pub mean_generations: f64,
    pub errors: Vec<String>,
}

/// Reference numbers for one image: the objective of the untouched image
/// and of its histogram-equalized version.
#[derive(Debug, Clone, Serialize)]
pub struct ImageBaseline {
    pub image: String,
    pub original: Option<FitnessReport>,
    pub equalized: Option<FitnessReport>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct RankEntry {
    pub variant: VariantId,
    pub mean_improvement_rate: f64,
}

/// The best variant of each algorithm family.
#[derive(Debug, Clone, Serialize)]
pub struct Selection {
    pub hill_climbing: Option<VariantId>,
    pub genetic: Option<VariantId>,
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchmarkReport {
    pub config: ExperimentConfig,
    pub hyperparams: HyperParams,
    pub images: Vec<ImageBaseline>,
    pub cells: Vec<CellReport>,
    /// All variants, best mean improvement rate first.
    pub ranking: Vec<RankEntry>,
    pub selection: Selection,
}

fn image_label(index: usize, path: &Path) -> String {
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "image".to_owned());
    format!("{index:02}_{stem}")
}

fn trace_path(out_dir: &Path, label: &str, variant: VariantId, run: u32) -> PathBuf {
    out_dir
        .join("traces")
        .join(format!("{label}__{variant}__run{run}.trace.csv"))
}

fn cell_seed(master: u64, path: &Path, variant: VariantId, run: u32) -> u64 {
    let name = path
        .file_name()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    derive_seed(
        master,
        &[fnv1a64(name.as_bytes()), fnv1a64(variant.name().as_bytes()), run as u64],
    )
}

fn mean(values: &[f64]) -> f64 {
    if values.is_empty() {
        f64::NAN
    } else {
        values.iter().sum::<f64>() / values.len() as f64
    }
}

/// Runs the whole protocol and writes trace CSVs, `report.json` and
/// `report.txt` under the configured output directory.
pub fn run_benchmark(config: &ExperimentConfig) -> anyhow::Result<BenchmarkReport> {
    config.validate()?;
    let out_dir = &config.out_dir;
    std::fs::create_dir_all(out_dir.join("traces"))
        .with_context(|| format!("creating {}", out_dir.display()))?;

    let base_hp = config.effective_hyperparams();
    let eval_params = base_hp.eval_params();

    // Load every image once; a broken image fails its cells, not the batch.
    let loaded: Vec<(String, Result<DynImage, String>)> = config
        .images
        .iter()
        .enumerate()
        .map(|(i, path)| {
            let label = image_label(i, path);
            (label, load_image(path).map_err(|e| e.to_string()))
        })
        .collect();

    let images: Vec<ImageBaseline> = loaded
        .iter()
        .map(|(label, result)| match result {
            Ok(img) => {
                let original = evaluate(&img.value_plane(), &eval_params);
                let plane = img.value_plane();
                let equalized_plane = fuzzy_contrast::histogram_equalize(&plane);
                let equalized = evaluate(&equalized_plane, &eval_params);
                ImageBaseline {
                    image: label.clone(),
                    original: Some(original),
                    equalized: Some(equalized),
                    error: None,
                }
            }
            Err(e) => ImageBaseline {
                image: label.clone(),
                original: None,
                equalized: None,
                error: Some(e.clone()),
            },
        })
        .collect();

    // Every (image, variant, run) cell is independent; run them on the pool.
    struct CellJob<'a> {
        image_idx: usize,
        label: &'a str,
        img: Option<&'a DynImage>,
        load_error: Option<&'a str>,
        variant: VariantId,
        run: u32,
    }

    let mut jobs = Vec::new();
    for (image_idx, (label, result)) in loaded.iter().enumerate() {
        for &variant in &config.variants {
            for run in 0..config.num_of_test {
                jobs.push(CellJob {
                    image_idx,
                    label,
                    img: result.as_ref().ok(),
                    load_error: result.as_ref().err().map(String::as_str),
                    variant,
                    run,
                });
            }
        }
    }

    let run_one = |job: &CellJob| -> (usize, VariantId, u32, Result<RunReport, String>) {
        let outcome = match (job.img, job.load_error) {
            (Some(img), _) => {
                let seed = cell_seed(config.seed, &config.images[job.image_idx], job.variant, job.run);
                let hp = HyperParams {
                    seed,
                    ..base_hp.clone()
                };
                run_variant(img, job.variant, &hp)
                    .map_err(|e| e.to_string())
                    .and_then(|trace| {
                        let rate = improvement_rate(&trace).map_err(|e| e.to_string())?;
                        let path = trace_path(out_dir, job.label, job.variant, job.run);
                        trace.write_csv(&path).map_err(|e| e.to_string())?;
                        Ok(RunReport {
                            run: job.run,
                            seed,
                            improvement_rate: rate,
                            final_f: trace.final_fitness(),
                            generations: trace.generations(),
                            trace_csv: path,
                        })
                    })
            }
            (None, Some(e)) => Err(e.to_owned()),
            (None, None) => Err("image unavailable".to_owned()),
        };
        (job.image_idx, job.variant, job.run, outcome)
    };

    let mut results: Vec<(usize, VariantId, u32, Result<RunReport, String>)> = if config.parallel {
        jobs.par_iter().map(run_one).collect()
    } else {
        jobs.iter().map(run_one).collect()
    };
    results.sort_by_key(|(image_idx, variant, run, _)| {
        (
            *image_idx,
            VariantId::ALL.iter().position(|v| v == variant),
            *run,
        )
    });

    // Fold runs into per-cell aggregates.
    let mut cells: Vec<CellReport> = Vec::new();
    for (image_idx, (label, _)) in loaded.iter().enumerate() {
        for &variant in &config.variants {
            let mut runs = Vec::new();
            let mut errors = Vec::new();
            for (_, _, run, outcome) in results
                .iter()
                .filter(|(i, v, _, _)| *i == image_idx && *v == variant)
            {
                match outcome {
                    Ok(report) => runs.push(report.clone()),
                    Err(e) => errors.push(format!("run {run}: {e}")),
                }
            }
            let rates: Vec<f64> = runs.iter().map(|r| r.improvement_rate).collect();
            let finals: Vec<f64> = runs.iter().map(|r| r.final_f).collect();
            let gens: Vec<f64> = runs.iter().map(|r| r.generations as f64).collect();
            cells.push(CellReport {
                image: label.clone(),
                variant,
                mean_improvement_rate: mean(&rates),
                mean_final_f: mean(&finals),
                mean_generations: mean(&gens),
                runs,
                errors,
            });
        }
    }

    // Variant aggregate: mean over images of the cell means.
    let ranking = rank_variants(&config.variants, &cells);
    let selection = Selection {
        hill_climbing: ranking
            .iter()
            .find(|r| r.variant.is_hill_climbing())
            .map(|r| r.variant),
        genetic: ranking
            .iter()
            .find(|r| !r.variant.is_hill_climbing())
            .map(|r| r.variant),
    };

    let report = BenchmarkReport {
        config: config.clone(),
        hyperparams: base_hp,
        images,
        cells,
        ranking,
        selection,
    };

    let json = serde_json::to_string_pretty(&report).context("serializing report")?;
    std::fs::write(out_dir.join("report.json"), json)
        .with_context(|| format!("writing {}", out_dir.join("report.json").display()))?;
    let table = render_table(&report);
    std::fs::write(out_dir.join("report.txt"), &table)
        .with_context(|| format!("writing {}", out_dir.join("report.txt").display()))?;

    Ok(report)
}

fn rank_variants(variants: &[VariantId], cells: &[CellReport]) -> Vec<RankEntry> {
    let mut entries: Vec<RankEntry> = variants
        .iter()
        .map(|&variant| {
            let cell_means: Vec<f64> = cells
                .iter()
                .filter(|c| c.variant == variant && !c.mean_improvement_rate.is_nan())
                .map(|c| c.mean_improvement_rate)
                .collect();
            RankEntry {
                variant,
                mean_improvement_rate: mean(&cell_means),
            }
        })
        .collect();
    // Higher rate ranks first; NaN (no successful runs) sinks to the end.
    entries.sort_by(|a, b| {
        match (a.mean_improvement_rate.is_nan(), b.mean_improvement_rate.is_nan()) {
            (true, true) => std::cmp::Ordering::Equal,
            (true, false) => std::cmp::Ordering::Greater,
            (false, true) => std::cmp::Ordering::Less,
            (false, false) => b.mean_improvement_rate.total_cmp(&a.mean_improvement_rate),
        }
    });
    entries
}

/// The human-readable side of the report.
pub fn render_table(report: &BenchmarkReport) -> String {
    use std::fmt::Write;

    let hp = &report.hyperparams;
    let mut out = String::new();
    let _ = writeln!(out, "Benchmark report");
    let _ = writeln!(out, "================");
    let _ = writeln!(
        out,
        "NumofTest={}  PerRunTime={}s  MaxGenerations={}  Seed={}",
        report.config.num_of_test,
        report.config.per_run_time,
        report
            .config
            .max_generations
            .map_or("-".to_owned(), |g| g.to_string()),
        report.config.seed,
    );
    let _ = writeln!(
        out,
        "ChangeProb={}  MutateMu={}  MutateSigma={}  MembershipSplitProb={}  PopSize={}  NeighborsPerGen={}  CrossoverSwapProb={}  EdgeThreshold={}",
        hp.change_prob,
        hp.mutate_mu,
        hp.mutate_sigma,
        hp.membership_split_prob,
        hp.pop_size,
        hp.neighbors_per_gen,
        hp.crossover_swap_prob,
        hp.edge_threshold,
    );

    let _ = writeln!(out, "\nPer-image baselines (F original vs histogram-equalized):");
    for img in &report.images {
        match (&img.original, &img.equalized) {
            (Some(o), Some(e)) => {
                let _ = writeln!(
                    out,
                    "  {:<28} F={:<12.6} F_eq={:<12.6} delta={:+.6}",
                    img.image,
                    o.f,
                    e.f,
                    if o.f.is_finite() && e.f.is_finite() {
                        e.f - o.f
                    } else {
                        f64::NAN
                    }
                );
            }
            _ => {
                let _ = writeln!(
                    out,
                    "  {:<28} error: {}",
                    img.image,
                    img.error.as_deref().unwrap_or("unknown")
                );
            }
        }
    }

    let _ = writeln!(out, "\nMean improvement rate per (image, variant):");
    for cell in &report.cells {
        let _ = writeln!(
            out,
            "  {:<28} {:<18} rate={:<14.8} final_F={:<12.6} gens={:.1}  runs_ok={}/{}",
            cell.image,
            cell.variant.to_string(),
            cell.mean_improvement_rate,
            cell.mean_final_f,
            cell.mean_generations,
            cell.runs.len(),
            cell.runs.len() + cell.errors.len(),
        );
    }

    let _ = writeln!(out, "\nRanking by mean improvement rate (higher is better):");
    for (i, entry) in report.ranking.iter().enumerate() {
        let _ = writeln!(
            out,
            "  {}. {:<18} {:.8}",
            i + 1,
            entry.variant.to_string(),
            entry.mean_improvement_rate
        );
    }

    let _ = writeln!(
        out,
        "\nSelected variants: Hill Climbing -> {}   GA -> {}",
        report
            .selection
            .hill_climbing
            .map_or("-".to_owned(), |v| v.to_string()),
        report
            .selection
            .genetic
            .map_or("-".to_owned(), |v| v.to_string()),
    );
    out
}
