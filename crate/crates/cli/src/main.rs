use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};

use fuzzy_contrast::{EntropySource, EvalParams, HyperParams, VariantId};
use fuzzy_contrast_cli::benchmark::render_table;
use fuzzy_contrast_cli::{
    run_baseline, run_benchmark, run_enhance, run_fitness, validate_hyperparams, ExperimentConfig,
};

#[derive(Parser)]
#[command(
    name = "fuzzy-contrast",
    version,
    about = "Contrast enhancement by evolving a fuzzy intensity transform per image"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evolve a transfer function for one image and write the results
    Enhance(EnhanceArgs),
    /// Run the variant-selection benchmark from a config file
    Benchmark(BenchmarkArgs),
    /// Histogram-equalize an image and report its fitness
    Baseline(BaselineArgs),
    /// Evaluate the fitness of an image as it is
    Fitness(FitnessArgs),
}

fn parse_variant(s: &str) -> Result<VariantId, String> {
    VariantId::from_str(s)
}

fn parse_entropy_source(s: &str) -> Result<EntropySource, String> {
    match s.to_ascii_lowercase().as_str() {
        "sobel" => Ok(EntropySource::Sobel),
        "enhanced" => Ok(EntropySource::Enhanced),
        other => Err(format!("unknown entropy source '{other}', expected sobel or enhanced")),
    }
}

/// Hyperparameter flags shared by the search subcommands; unset flags keep
/// the defaults (or the config file's values for `benchmark`).
#[derive(Args, Debug, Default)]
struct HyperFlags {
    #[arg(long)]
    change_prob: Option<f64>,
    #[arg(long)]
    mutate_mu: Option<f64>,
    #[arg(long)]
    mutate_sigma: Option<f64>,
    #[arg(long)]
    membership_split_prob: Option<f64>,
    #[arg(long)]
    pop_size: Option<usize>,
    #[arg(long)]
    neighbors_per_gen: Option<usize>,
    #[arg(long)]
    crossover_swap_prob: Option<f64>,
    #[arg(long)]
    edge_threshold: Option<f64>,
    #[arg(long, value_parser = parse_entropy_source)]
    entropy_source: Option<EntropySource>,
    /// Pin the defuzzification targets instead of evolving them
    #[arg(long)]
    freeze_defuzz: bool,
    /// Evaluate candidates serially instead of on the thread pool
    #[arg(long)]
    serial: bool,
}

impl HyperFlags {
    fn apply(&self, mut hp: HyperParams) -> HyperParams {
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
        if self.freeze_defuzz {
            hp.mutate_defuzz = false;
        }
        if self.serial {
            hp.parallel = false;
        }
        hp
    }
}

#[derive(Args)]
struct EnhanceArgs {
    /// Input image (PNG, PGM or PPM)
    image: PathBuf,
    /// Enhanced image path; sidecar genome/LUT/trace files take its stem
    #[arg(short, long)]
    output: Option<PathBuf>,
    #[arg(long, default_value = "HC-simple", value_parser = parse_variant)]
    variant: VariantId,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Stop after this many generations (reproducible mode)
    #[arg(long)]
    max_generations: Option<u32>,
    /// Wall-clock budget in seconds (ignored when --max-generations is set)
    #[arg(long, default_value_t = 120.0)]
    per_run_time: f64,
    #[command(flatten)]
    hyper: HyperFlags,
}

#[derive(Args)]
struct BenchmarkArgs {
    /// TOML experiment config
    config: PathBuf,
    /// Override the config's output directory
    #[arg(long)]
    out_dir: Option<PathBuf>,
    #[arg(long)]
    num_of_test: Option<u32>,
    #[arg(long)]
    per_run_time: Option<f64>,
    #[arg(long)]
    max_generations: Option<u32>,
    #[arg(long)]
    seed: Option<u64>,
    #[command(flatten)]
    hyper: HyperFlags,
}

#[derive(Args)]
struct BaselineArgs {
    /// Input image (PNG, PGM or PPM)
    image: PathBuf,
    /// Equalized image path
    #[arg(short, long)]
    output: Option<PathBuf>,
    #[arg(long)]
    edge_threshold: Option<f64>,
    #[arg(long, value_parser = parse_entropy_source)]
    entropy_source: Option<EntropySource>,
}

#[derive(Args)]
struct FitnessArgs {
    /// Input image (PNG, PGM or PPM)
    image: PathBuf,
    #[arg(long)]
    edge_threshold: Option<f64>,
    #[arg(long, value_parser = parse_entropy_source)]
    entropy_source: Option<EntropySource>,
}

fn eval_params(edge_threshold: Option<f64>, entropy_source: Option<EntropySource>) -> EvalParams {
    let mut params = EvalParams::default();
    if let Some(t) = edge_threshold {
        params.edge_threshold = t;
    }
    if let Some(s) = entropy_source {
        params.entropy_source = s;
    }
    params
}

fn main() -> anyhow::Result<()> {
    match Cli::parse().command {
        Command::Enhance(args) => {
            let mut hp = args.hyper.apply(HyperParams::default());
            hp.seed = args.seed;
            hp.max_generations = args.max_generations;
            hp.time_budget_s = args.per_run_time;
            validate_hyperparams(&hp)?;

            let summary = run_enhance(&args.image, args.output, args.variant, &hp)?;
            if summary.enhanced.degenerate {
                eprintln!(
                    "warning: final fitness is degenerate (edge energy too small); \
                     the enhanced image was written anyway"
                );
            }
            println!("{}", serde_json::to_string_pretty(&summary)?);
        }
        Command::Benchmark(args) => {
            let mut config = ExperimentConfig::load(&args.config)?;
            if let Some(d) = args.out_dir {
                config.out_dir = d;
            }
            if let Some(n) = args.num_of_test {
                config.num_of_test = n;
            }
            if let Some(t) = args.per_run_time {
                config.per_run_time = t;
            }
            if args.max_generations.is_some() {
                config.max_generations = args.max_generations;
            }
            if let Some(s) = args.seed {
                config.seed = s;
            }
            if args.hyper.serial {
                config.parallel = false;
            }
            // Flag overrides win over the config file's [hyperparams].
            let merged = args.hyper.apply(config.effective_hyperparams());
            config.hyperparams = fuzzy_contrast_cli::HyperOverrides {
                change_prob: Some(merged.change_prob),
                mutate_mu: Some(merged.mutate_mu),
                mutate_sigma: Some(merged.mutate_sigma),
                membership_split_prob: Some(merged.membership_split_prob),
                pop_size: Some(merged.pop_size),
                neighbors_per_gen: Some(merged.neighbors_per_gen),
                crossover_swap_prob: Some(merged.crossover_swap_prob),
                edge_threshold: Some(merged.edge_threshold),
                entropy_source: Some(merged.entropy_source),
                mutate_defuzz: Some(merged.mutate_defuzz),
            };

            let report = run_benchmark(&config)?;
            print!("{}", render_table(&report));
            eprintln!(
                "report written to {} and {}",
                config.out_dir.join("report.json").display(),
                config.out_dir.join("report.txt").display()
            );
        }
        Command::Baseline(args) => {
            let params = eval_params(args.edge_threshold, args.entropy_source);
            let summary = run_baseline(&args.image, args.output, &params)?;
            println!("{}", serde_json::to_string_pretty(&summary)?);
        }
        Command::Fitness(args) => {
            let params = eval_params(args.edge_threshold, args.entropy_source);
            let summary = run_fitness(&args.image, &params)?;
            println!("{}", serde_json::to_string_pretty(&summary)?);
        }
    }
    Ok(())
}
