//! Benchmark experiment configuration: a TOML document with CLI-flag
//! overrides layered on top.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use serde::{Deserialize, Serialize};

use fuzzy_contrast::{EntropySource, HyperParams, VariantId};

/// Optional per-field hyperparameter overrides as they appear in the
/// `[hyperparams]` table of a config file.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HyperOverrides {
    pub change_prob: Option<f64>,
    pub mutate_mu: Option<f64>,
    pub mutate_sigma: Option<f64>,
    pub membership_split_prob: Option<f64>,
    pub pop_size: Option<usize>,
    pub neighbors_per_gen: Option<usize>,
    pub crossover_swap_prob: Option<f64>,
    pub edge_threshold: Option<f64>,
    pub entropy_source: Option<EntropySource>,
    pub mutate_defuzz: Option<bool>,
}

impl HyperOverrides {
    pub fn apply(&self, mut hp: HyperParams) -> HyperParams {
        if let Some(v) = self.change_prob {
            hp.change_prob = v;
        }
        if let Some(v) = self.mutate_mu {
            hp.mutate_mu = v;
        }
        if let Some(v) = self.mutate_sigma {
            hp.mutate_sigma = v;
        }
        if let Some(v) = self.membership_split_prob {
            hp.membership_split_prob = v;
        }
        if let Some(v) = self.pop_size {
            hp.pop_size = v;
        }
        if let Some(v) = self.neighbors_per_gen {
            hp.neighbors_per_gen = v;
        }
        if let Some(v) = self.crossover_swap_prob {
            hp.crossover_swap_prob = v;
        }
        if let Some(v) = self.edge_threshold {
            hp.edge_threshold = v;
        }
        if let Some(v) = self.entropy_source {
            hp.entropy_source = v;
        }
        if let Some(v) = self.mutate_defuzz {
            hp.mutate_defuzz = v;
        }
        hp
    }
}

fn default_num_of_test() -> u32 {
    5
}

fn default_per_run_time() -> f64 {
    120.0
}

fn default_out_dir() -> PathBuf {
    PathBuf::from("benchmark-out")
}

fn default_variants() -> Vec<VariantId> {
    VariantId::ALL.to_vec()
}

fn default_parallel() -> bool {
    true
}

/// One benchmark run: which images, which variants, how many repeats and
/// for how long.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub images: Vec<PathBuf>,
    #[serde(default = "default_variants")]
    pub variants: Vec<VariantId>,
    #[serde(default = "default_num_of_test")]
    pub num_of_test: u32,
    #[serde(default = "default_per_run_time")]
    pub per_run_time: f64,
    #[serde(default)]
    pub max_generations: Option<u32>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_out_dir")]
    pub out_dir: PathBuf,
    #[serde(default = "default_parallel")]
    pub parallel: bool,
    #[serde(default)]
    pub hyperparams: HyperOverrides,
}

impl ExperimentConfig {
    pub fn load(path: impl AsRef<Path>) -> anyhow::Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("cannot read config {}", path.display()))?;
        let config: Self = toml::from_str(&text)
            .with_context(|| format!("cannot parse config {}", path.display()))?;
        Ok(config)
    }

    pub fn validate(&self) -> anyhow::Result<()> {
        if self.images.is_empty() {
            bail!("no images configured");
        }
        if self.variants.is_empty() {
            bail!("nothing to benchmark: the variant list is empty");
        }
        if self.num_of_test == 0 {
            bail!("num_of_test must be at least 1");
        }
        if self.per_run_time.is_nan() || self.per_run_time <= 0.0 {
            bail!("per_run_time must be positive");
        }
        validate_hyperparams(&self.effective_hyperparams())
    }

    /// The hyperparameters every run starts from (per-run seed and budget
    /// are filled in by the harness).
    pub fn effective_hyperparams(&self) -> HyperParams {
        let mut hp = self.hyperparams.apply(HyperParams::default());
        hp.time_budget_s = self.per_run_time;
        hp.max_generations = self.max_generations;
        hp.parallel = self.parallel;
        hp
    }
}

/// Range checks shared by every subcommand.
pub fn validate_hyperparams(hp: &HyperParams) -> anyhow::Result<()> {
    for (name, p) in [
        ("change-prob", hp.change_prob),
        ("membership-split-prob", hp.membership_split_prob),
        ("crossover-swap-prob", hp.crossover_swap_prob),
    ] {
        if !(0.0..=1.0).contains(&p) {
            bail!("{name} must be a probability in [0,1], got {p}");
        }
    }
    if hp.mutate_sigma < 0.0 {
        bail!("mutate-sigma must be non-negative, got {}", hp.mutate_sigma);
    }
    if hp.edge_threshold < 0.0 {
        bail!("edge-threshold must be non-negative, got {}", hp.edge_threshold);
    }
    if hp.pop_size == 0 {
        bail!("pop-size must be at least 1");
    }
    if hp.neighbors_per_gen == 0 {
        bail!("neighbors-per-gen must be at least 1");
    }
    if hp.time_budget_s.is_nan() || hp.time_budget_s <= 0.0 {
        bail!("per-run-time must be positive, got {}", hp.time_budget_s);
    }
    Ok(())
}
