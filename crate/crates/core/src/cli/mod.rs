// SPDX-License-Identifier: Apache-2.0

//! The `handswap` command line.
//!
//! Every parameter can come from a flag, an environment variable
//! `HANDSWAP_<FLAG>` (upper snake case, e.g. `HANDSWAP_MINUTE_TOLERANCE`), or
//! a flat TOML file passed with `--config` whose keys are the flag names
//! (`minute-tolerance = 3`). Flags win over environment variables, which win
//! over the file, which wins over built-in defaults.
//!
//! Exit codes: 0 on success, 1 for data and runtime errors, 2 for usage and
//! configuration errors. A failed run removes the files it wrote. Each run
//! that writes files also writes `meta.json` with the tool version, the
//! effective configuration and SHA-256 digests of its inputs; `--reproducible`
//! leaves out the timestamp so reruns are byte-identical.

mod commands;
mod config;
mod output;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

pub use config::{layered, read_config_file, serde_name};
pub use output::{digest_file, InputDigest, Outputs, RunMeta, META_FILE};

use crate::error::Error;
use crate::eval::{FullTimeRule, SwapMode};
use crate::prefs::PairMode;
use crate::render::StyleSource;
use crate::time::{DistanceKernel, ParseMode};

#[derive(Debug, Parser)]
#[command(name = "handswap", version, about = "Analog clock reading toolkit")]
pub struct Cli {
    /// Flat TOML file with default values for any flag.
    #[arg(long, global = true, env = "HANDSWAP_CONFIG")]
    pub config: Option<PathBuf>,
    /// Worker threads for per-record stages (0 = all cores). Outputs do not
    /// depend on it.
    #[arg(long, global = true, env = "HANDSWAP_JOBS")]
    pub jobs: Option<usize>,
    /// Leave the timestamp out of meta.json.
    #[arg(long, global = true, env = "HANDSWAP_REPRODUCIBLE")]
    pub reproducible: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the time read when the hour and minute hands trade roles.
    Swap {
        /// Time as HH:MM, hour 01-12.
        time: String,
    },
    /// Score model answers under baseline and swap-equivalence rules.
    Evaluate(EvaluateArgs),
    /// Build DPO preference pairs from annotations and model answers.
    GenPrefs(GenPrefsArgs),
    /// Render a synthetic clock corpus with labels.
    Render(RenderArgs),
    /// Dataset quality control.
    #[command(subcommand)]
    Qc(QcCommand),
    /// Prompt assets.
    #[command(subcommand)]
    Prompts(PromptsCommand),
}

#[derive(Debug, Subcommand)]
pub enum QcCommand {
    /// Cluster exact and near-duplicate images and write a manifest.
    Dedup(DedupArgs),
    /// Time-label statistics as CSV tables.
    Stats(StatsArgs),
    /// Keep records whose caption mentions a clock or watch.
    Filter(FilterArgs),
    /// Cap over-represented time cells.
    Rebalance(RebalanceArgs),
}

#[derive(Debug, Subcommand)]
pub enum PromptsCommand {
    /// Write the three training prompts and the inference prompt.
    Emit(PromptsArgs),
}

#[derive(Debug, Args, Serialize)]
#[serde(rename_all = "kebab-case")]
pub struct EvaluateArgs {
    /// Annotations JSONL.
    #[arg(long, env = "HANDSWAP_ANNOTATIONS")]
    pub annotations: Option<PathBuf>,
    /// Predictions JSONL with `id` and `raw_output`.
    #[arg(long, env = "HANDSWAP_PREDICTIONS")]
    pub predictions: Option<PathBuf>,
    #[arg(long, env = "HANDSWAP_OUT_DIR")]
    pub out_dir: Option<PathBuf>,
    /// Use the built-in 720-time fixture with correct answers instead of
    /// input files.
    #[arg(long, env = "HANDSWAP_SELF_TEST", num_args = 0..=1, default_missing_value = "true")]
    pub self_test: Option<bool>,
    #[arg(long, env = "HANDSWAP_MINUTE_TOLERANCE")]
    pub minute_tolerance: Option<u32>,
    /// per-metric | whole-record
    #[arg(long, env = "HANDSWAP_SWAP_MODE", value_parser = serde_name::<SwapMode>)]
    pub swap_mode: Option<SwapMode>,
    /// tolerant | exact
    #[arg(long, env = "HANDSWAP_FULL_TIME_RULE", value_parser = serde_name::<FullTimeRule>)]
    pub full_time_rule: Option<FullTimeRule>,
    /// circular | linear
    #[arg(long, env = "HANDSWAP_KERNEL", value_parser = serde_name::<DistanceKernel>)]
    pub kernel: Option<DistanceKernel>,
    /// strict | lenient
    #[arg(long, env = "HANDSWAP_PARSE_MODE", value_parser = serde_name::<ParseMode>)]
    pub parse_mode: Option<ParseMode>,
    /// Histogram bin width in minutes.
    #[arg(long, env = "HANDSWAP_BIN_WIDTH")]
    pub bin_width: Option<u32>,
}

#[derive(Debug, Args, Serialize)]
#[serde(rename_all = "kebab-case")]
pub struct GenPrefsArgs {
    #[arg(long, env = "HANDSWAP_ANNOTATIONS")]
    pub annotations: Option<PathBuf>,
    #[arg(long, env = "HANDSWAP_PREDICTIONS")]
    pub predictions: Option<PathBuf>,
    #[arg(long, env = "HANDSWAP_OUT_DIR")]
    pub out_dir: Option<PathBuf>,
    #[arg(long, env = "HANDSWAP_SELF_TEST", num_args = 0..=1, default_missing_value = "true")]
    pub self_test: Option<bool>,
    /// hybrid | random | pure-swap
    #[arg(long, env = "HANDSWAP_MODE", value_parser = serde_name::<PairMode>)]
    pub mode: Option<PairMode>,
    #[arg(long, env = "HANDSWAP_SEED")]
    pub seed: Option<u64>,
    #[arg(long, env = "HANDSWAP_MINUTE_TOLERANCE")]
    pub minute_tolerance: Option<u32>,
    /// strict | lenient
    #[arg(long, env = "HANDSWAP_PARSE_MODE", value_parser = serde_name::<ParseMode>)]
    pub parse_mode: Option<ParseMode>,
}

#[derive(Debug, Args, Serialize)]
#[serde(rename_all = "kebab-case")]
pub struct RenderArgs {
    #[arg(long, env = "HANDSWAP_OUT_DIR")]
    pub out_dir: Option<PathBuf>,
    /// Number of images.
    #[arg(long, env = "HANDSWAP_N")]
    pub n: Option<usize>,
    /// uniform | stratified (ignored when --histogram is given)
    #[arg(long, env = "HANDSWAP_DISTRIBUTION")]
    pub distribution: Option<String>,
    /// CSV of 12 rows x 60 counts to draw times from.
    #[arg(long, env = "HANDSWAP_HISTOGRAM")]
    pub histogram: Option<PathBuf>,
    #[arg(long, env = "HANDSWAP_TIME_SEED")]
    pub time_seed: Option<u64>,
    #[arg(long, env = "HANDSWAP_STYLE_SEED")]
    pub style_seed: Option<u64>,
    /// sampled | default
    #[arg(long, env = "HANDSWAP_STYLE", value_parser = serde_name::<StyleSource>)]
    pub style: Option<StyleSource>,
    #[arg(long, env = "HANDSWAP_FLIP_FRACTION")]
    pub flip_fraction: Option<f64>,
    #[arg(long, env = "HANDSWAP_OCCLUDE_FRACTION")]
    pub occlude_fraction: Option<f64>,
    /// Also write Canny edge maps.
    #[arg(long, env = "HANDSWAP_EDGES", num_args = 0..=1, default_missing_value = "true")]
    pub edges: Option<bool>,
    #[arg(long, env = "HANDSWAP_CANNY_LOW")]
    pub canny_low: Option<f64>,
    #[arg(long, env = "HANDSWAP_CANNY_HIGH")]
    pub canny_high: Option<f64>,
    #[arg(long, env = "HANDSWAP_ID_PREFIX")]
    pub id_prefix: Option<String>,
}

#[derive(Debug, Args, Serialize)]
#[serde(rename_all = "kebab-case")]
pub struct DedupArgs {
    /// JSONL of `{id, image_path, source?}`.
    #[arg(long, env = "HANDSWAP_IMAGES")]
    pub images: Option<PathBuf>,
    /// Directory the image paths are relative to (default: the JSONL's
    /// directory).
    #[arg(long, env = "HANDSWAP_BASE_DIR")]
    pub base_dir: Option<PathBuf>,
    /// Alternatively, every .png/.jpg/.jpeg file in this directory, with the
    /// file name as id.
    #[arg(long, env = "HANDSWAP_IMAGE_DIR")]
    pub image_dir: Option<PathBuf>,
    #[arg(long, env = "HANDSWAP_OUT_DIR")]
    pub out_dir: Option<PathBuf>,
    #[arg(long, env = "HANDSWAP_PHASH_THRESHOLD")]
    pub phash_threshold: Option<u32>,
    #[arg(long, env = "HANDSWAP_WHASH_THRESHOLD")]
    pub whash_threshold: Option<u32>,
    /// Restrict perceptual matches to this source pair, as `A,B`
    /// (repeatable).
    #[arg(long, env = "HANDSWAP_SOURCE_PAIR", value_delimiter = ';')]
    pub source_pair: Option<Vec<String>>,
}

#[derive(Debug, Args, Serialize)]
#[serde(rename_all = "kebab-case")]
pub struct StatsArgs {
    /// JSONL with `id` and `truth` (or `time`) per record.
    #[arg(long, env = "HANDSWAP_LABELS")]
    pub labels: Option<PathBuf>,
    #[arg(long, env = "HANDSWAP_OUT_DIR")]
    pub out_dir: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
#[serde(rename_all = "kebab-case")]
pub struct FilterArgs {
    /// JSONL with `id` and `caption` per record.
    #[arg(long, env = "HANDSWAP_CAPTIONS")]
    pub captions: Option<PathBuf>,
    #[arg(long, env = "HANDSWAP_OUT_DIR")]
    pub out_dir: Option<PathBuf>,
    /// Allowlisted tokens, comma separated.
    #[arg(long, env = "HANDSWAP_KEYWORDS", value_delimiter = ',')]
    pub keywords: Option<Vec<String>>,
}

#[derive(Debug, Args, Serialize)]
#[serde(rename_all = "kebab-case")]
pub struct RebalanceArgs {
    #[arg(long, env = "HANDSWAP_LABELS")]
    pub labels: Option<PathBuf>,
    #[arg(long, env = "HANDSWAP_OUT_DIR")]
    pub out_dir: Option<PathBuf>,
    /// Cap = max(floor(k * median nonzero cell count), 1).
    #[arg(long, env = "HANDSWAP_CAP_MULTIPLIER")]
    pub cap_multiplier: Option<f64>,
    /// Fixed per-cell cap; overrides the multiplier.
    #[arg(long, env = "HANDSWAP_CAP")]
    pub cap: Option<u64>,
}

#[derive(Debug, Args, Serialize)]
#[serde(rename_all = "kebab-case")]
pub struct PromptsArgs {
    #[arg(long, env = "HANDSWAP_OUT_DIR")]
    pub out_dir: Option<PathBuf>,
}

/// Runs the command line on the process arguments, returning the exit code.
pub fn run() -> i32 {
    run_from(
        std::env::args_os(),
        &mut std::io::stdout(),
        &mut std::io::stderr(),
    )
}

/// Runs the command line on `args` (program name first).
pub fn run_from<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // --help and --version come through here with code 0
            let code = e.exit_code();
            let _ = if code == 0 {
                write!(out, "{}", e.render())
            } else {
                write!(err, "{}", e.render())
            };
            return code;
        }
    };
    let mut stdout = String::new();
    let result = commands::dispatch(cli, &mut stdout);
    let _ = out.write_all(stdout.as_bytes());
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

/// Error for a required setting that no layer provided.
fn missing(key: &str) -> Error {
    Error::Config(format!("missing required setting {key:?} (flag --{key})"))
}
