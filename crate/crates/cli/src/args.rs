//! Command-line definitions.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "seamkit",
    version,
    about = "Synthesize, measure and remove seam artifacts in locally edited images",
    long_about = "Synthesize, measure and remove seam artifacts in locally edited images.\n\n\
        Batch mode: pass a directory as --in (or --pred for eval). The directory must hold a \
        manifest.json array of {\"image\", \"mask\", \"gt\"?} entries with paths relative to it; \
        --out then names an output directory. Entry i uses random stream i, so results do not \
        depend on --jobs."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a random free-form mask.
    MaskGen(MaskGenArgs),
    /// Turn a clean image and mask into a (degraded, target) training pair.
    Simulate(SimulateArgs),
    /// Refine an edited image with the classical or an external refiner.
    Refine(RefineArgs),
    /// Refine several jittered variants and keep the most self-consistent output.
    Pool(PoolArgs),
    /// Poisson-blend a source into a destination inside a mask.
    Blend(BlendArgs),
    /// Fit a discriminative tone map and write it as JSON.
    TonemapFit(TonemapFitArgs),
    /// Apply a tone map JSON to an image.
    TonemapApply(TonemapApplyArgs),
    /// Compare a prediction with its ground truth and print a JSON report.
    Eval(EvalArgs),
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Base random seed.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads for batch mode.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub jobs: u64,
}

#[derive(Debug, Args)]
pub struct MaskGenArgs {
    /// Output mask PNG (a directory in batch mode).
    #[arg(long)]
    pub out: PathBuf,
    /// Image (or batch directory) whose dimensions the mask should match.
    #[arg(long = "in")]
    pub input: Option<PathBuf>,
    /// Mask height when --in is absent.
    #[arg(long, default_value_t = 256)]
    pub height: usize,
    /// Mask width when --in is absent.
    #[arg(long, default_value_t = 256)]
    pub width: usize,
    /// Smallest accepted masked fraction.
    #[arg(long, default_value_t = 0.1)]
    pub coverage_min: f64,
    /// Largest accepted masked fraction.
    #[arg(long, default_value_t = 0.5)]
    pub coverage_max: f64,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// Clean input image (or batch directory).
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Binary edit mask; ignored in batch mode.
    #[arg(long)]
    pub mask: Option<PathBuf>,
    /// Degraded output PNG (a directory in batch mode).
    #[arg(long)]
    pub out: PathBuf,
    /// Target output PNG; required outside batch mode.
    #[arg(long)]
    pub out_gt: Option<PathBuf>,
    /// Mixed-mask output PNG; required outside batch mode.
    #[arg(long)]
    pub out_mask: Option<PathBuf>,
    /// JSON sidecar with every sampled parameter; required outside batch mode.
    #[arg(long)]
    pub sidecar: Option<PathBuf>,
    /// Simulator config JSON [default: the shipped configuration].
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Externally computed codec reconstruction used instead of the stand-in.
    #[arg(long)]
    pub reconstruction: Option<PathBuf>,
    /// Pin the JPEG quality (1-100).
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..=100))]
    pub quality: Option<u32>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args)]
pub struct RefinerArgs {
    /// Polynomial degree of the per-channel quantile map.
    #[arg(long, default_value_t = 3)]
    pub degree: usize,
    /// Width of the rings sampled on each side of the mask boundary, pixels.
    #[arg(long, default_value_t = 8)]
    pub ring_width: usize,
    /// Gaussian sigma feathering the correction towards the boundary.
    #[arg(long, default_value_t = 2.0)]
    pub feather_sigma: f64,
    /// Matched quantiles per channel.
    #[arg(long, default_value_t = 64)]
    pub quantiles: usize,
    /// External refiner program, run as `PROG [ARGS..] input.png mask.png output.png`.
    #[arg(long)]
    pub external: Option<PathBuf>,
    /// Extra argument for the external refiner (repeatable).
    #[arg(long = "external-arg", allow_hyphen_values = true)]
    pub external_args: Vec<String>,
}

#[derive(Debug, Args)]
pub struct RefineArgs {
    /// Edited input image (or batch directory).
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Binary mask of the edited region; ignored in batch mode.
    #[arg(long)]
    pub mask: Option<PathBuf>,
    /// Refined output PNG (a directory in batch mode).
    #[arg(long)]
    pub out: PathBuf,
    #[command(flatten)]
    pub refiner: RefinerArgs,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct PoolArgs {
    /// Edited input image (or batch directory).
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Binary mask of the edited region; ignored in batch mode.
    #[arg(long)]
    pub mask: Option<PathBuf>,
    /// Selected output PNG (a directory in batch mode).
    #[arg(long)]
    pub out: PathBuf,
    /// Number of variants.
    #[arg(long, default_value_t = 8)]
    pub n: usize,
    /// Smallest brightness, contrast and saturation factor.
    #[arg(long, default_value_t = 0.85)]
    pub jitter_min: f64,
    /// Largest brightness, contrast and saturation factor.
    #[arg(long, default_value_t = 1.15)]
    pub jitter_max: f64,
    /// Largest absolute hue rotation, degrees.
    #[arg(long, default_value_t = 12.0)]
    pub jitter_hue: f64,
    /// Jitter every variant, including the first.
    #[arg(long)]
    pub no_original: bool,
    #[command(flatten)]
    pub refiner: RefinerArgs,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Method {
    Cg,
    GaussSeidel,
}

#[derive(Debug, Args)]
pub struct BlendArgs {
    /// Image providing the gradients inside the mask.
    #[arg(long)]
    pub src: PathBuf,
    /// Image providing the boundary values and everything outside the mask.
    #[arg(long)]
    pub dst: PathBuf,
    #[arg(long)]
    pub mask: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
    /// Relative residual at which the solver stops.
    #[arg(long, default_value_t = 1e-6)]
    pub tol: f64,
    #[arg(long, default_value_t = 10_000)]
    pub max_iter: usize,
    #[arg(long, value_enum, default_value_t = Method::Cg)]
    pub method: Method,
    /// Take the guidance gradients from --gt instead of --src. This leaks the
    /// answer and exists only to reproduce that comparison.
    #[arg(long, requires = "gt")]
    pub oracle_gradients: bool,
    /// Ground truth supplying the gradients under --oracle-gradients.
    #[arg(long)]
    pub gt: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct AmplifyArgs {
    /// Tone-map polynomial degree.
    #[arg(long, default_value_t = 5)]
    pub degree: usize,
    /// Lower end of the amplification range.
    #[arg(long, default_value_t = 20.0)]
    pub beta_min: f64,
    /// Upper end of the amplification range.
    #[arg(long, default_value_t = 40.0)]
    pub beta_max: f64,
    /// Pixels sampled from each side of the mask.
    #[arg(long, default_value_t = 4096)]
    pub samples: usize,
}

#[derive(Debug, Args)]
pub struct TonemapFitArgs {
    #[arg(long)]
    pub pred: PathBuf,
    #[arg(long)]
    pub gt: PathBuf,
    #[arg(long)]
    pub mask: PathBuf,
    /// Output tone map JSON.
    #[arg(long)]
    pub out: PathBuf,
    #[command(flatten)]
    pub amplify: AmplifyArgs,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct TonemapApplyArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Tone map JSON written by tonemap-fit.
    #[arg(long)]
    pub map: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    /// Prediction image, or a batch directory whose manifest entries name
    /// the prediction as "image".
    #[arg(long, alias = "in")]
    pub pred: PathBuf,
    /// Ground truth; ignored in batch mode.
    #[arg(long)]
    pub gt: Option<PathBuf>,
    /// Mask; ignored in batch mode.
    #[arg(long)]
    pub mask: Option<PathBuf>,
    /// Also write the report here (batch mode: a directory receiving
    /// report.json and summary.csv).
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub amplify: AmplifyArgs,
    #[command(flatten)]
    pub common: Common,
}
