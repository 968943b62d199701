// SPDX-License-Identifier: Apache-2.0

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use super::config::{layered, read_config_file};
use super::output::{Outputs, RunMeta, META_FILE};
use super::{missing, Cli, Command, PromptsCommand, QcCommand};
use crate::error::{Error, Result};
use crate::eval::{
    breakdown_csv, emit_error_profile, judge_corpus, report_from_judged, self_test_fixture,
    AnnotationRecord, FullTimeRule, JudgeConfig, Judgment, PredictionRecord, RawPrediction,
    SwapMode, DEFAULT_BIN_WIDTH, DEFAULT_MINUTE_TOLERANCE,
};
use crate::jsonl::{read_jsonl_file, read_jsonl_numbered_file, to_jsonl_string};
use crate::prefs::{forge_dataset, ForgeConfig, PairMode, PromptCorpus};
use crate::qc::{
    compute_stats, dedup, fingerprint_records, rebalance, CapRule, DedupConfig, ImageRecord,
    KeywordDecision, KeywordFilter, DEFAULT_CAP_MULTIPLIER, DEFAULT_HAMMING_THRESHOLD,
    DEFAULT_KEYWORDS,
};
use crate::render::{
    generate_corpus, CorpusConfig, StyleSource, TimeDistribution, DEFAULT_HIGH_THRESHOLD,
    DEFAULT_LOW_THRESHOLD,
};
use crate::time::{format_time, hands_from_time, swap_hands, ClockTime, DistanceKernel, ParseMode};

pub(super) fn dispatch(cli: Cli, out: &mut String) -> Result<()> {
    let file = cli.config.as_deref().map(read_config_file).transpose()?;
    let file_get = |k: &str| file.as_ref().and_then(|f| f.get(k)).cloned();
    let jobs = match (cli.jobs, file_get("jobs")) {
        (Some(j), _) => j,
        (None, Some(v)) => {
            serde_json::from_value(v).map_err(|e| Error::Config(format!("jobs: {e}")))?
        }
        (None, None) => 0,
    };
    let reproducible = cli.reproducible
        || match file_get("reproducible") {
            Some(v) => serde_json::from_value(v)
                .map_err(|e| Error::Config(format!("reproducible: {e}")))?,
            None => false,
        };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::Config(format!("jobs: {e}")))?;
    let ctx = Ctx {
        file: file.as_ref(),
        reproducible,
    };
    pool.install(|| match cli.command {
        Command::Swap { time } => swap(&time, out),
        Command::Evaluate(a) => evaluate(&ctx, layered(ctx.file, &a)?, out),
        Command::GenPrefs(a) => gen_prefs(&ctx, layered(ctx.file, &a)?, out),
        Command::Render(a) => render(&ctx, layered(ctx.file, &a)?, out),
        Command::Qc(QcCommand::Dedup(a)) => qc_dedup(&ctx, layered(ctx.file, &a)?, out),
        Command::Qc(QcCommand::Stats(a)) => qc_stats(&ctx, layered(ctx.file, &a)?, out),
        Command::Qc(QcCommand::Filter(a)) => qc_filter(&ctx, layered(ctx.file, &a)?, out),
        Command::Qc(QcCommand::Rebalance(a)) => qc_rebalance(&ctx, layered(ctx.file, &a)?, out),
        Command::Prompts(PromptsCommand::Emit(a)) => {
            prompts_emit(&ctx, layered(ctx.file, &a)?, out)
        }
    })
}

struct Ctx<'a> {
    file: Option<&'a Map<String, Value>>,
    reproducible: bool,
}

impl Ctx<'_> {
    /// Runs `body` against a fresh output directory, removing what it wrote
    /// if it fails.
    fn with_outputs<T>(
        &self,
        dir: &Path,
        body: impl FnOnce(&mut Outputs) -> Result<T>,
    ) -> Result<T> {
        let mut outputs = Outputs::create(dir)?;
        match body(&mut outputs) {
            Ok(v) => Ok(v),
            Err(e) => {
                outputs.discard();
                Err(e)
            }
        }
    }
}

fn emit(out: &mut String, text: impl AsRef<str>) -> Result<()> {
    out.push_str(text.as_ref());
    Ok(())
}

fn required<'a, T>(value: &'a Option<T>, key: &str) -> Result<&'a T> {
    value.as_ref().ok_or_else(|| missing(key))
}

fn swap(text: &str, out: &mut String) -> Result<()> {
    let t: ClockTime = text.trim().parse()?;
    let s = swap_hands(t);
    let (a, b) = (hands_from_time(t), hands_from_time(s));
    emit(
        out,
        format!(
            "{}\n{} hands: hour {:.1} deg, minute {:.1} deg\n{} hands: hour {:.1} deg, minute {:.1} deg\n",
            format_time(s),
            format_time(t),
            a.hour,
            a.minute,
            format_time(s),
            b.hour,
            b.minute
        ),
    )
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
struct EvaluateConfig {
    annotations: Option<PathBuf>,
    predictions: Option<PathBuf>,
    out_dir: Option<PathBuf>,
    self_test: bool,
    minute_tolerance: u32,
    swap_mode: SwapMode,
    full_time_rule: FullTimeRule,
    kernel: DistanceKernel,
    parse_mode: ParseMode,
    bin_width: u32,
}

impl Default for EvaluateConfig {
    fn default() -> Self {
        Self {
            annotations: None,
            predictions: None,
            out_dir: None,
            self_test: false,
            minute_tolerance: DEFAULT_MINUTE_TOLERANCE,
            swap_mode: SwapMode::default(),
            full_time_rule: FullTimeRule::default(),
            kernel: DistanceKernel::default(),
            parse_mode: ParseMode::default(),
            bin_width: DEFAULT_BIN_WIDTH,
        }
    }
}

type LoadedPairs = (
    Vec<AnnotationRecord>,
    Vec<PredictionRecord>,
    Vec<(&'static str, PathBuf)>,
);

/// Annotations and parsed predictions from files or the built-in fixture,
/// plus the input paths for the metadata header.
fn load_pairs(
    self_test: bool,
    annotations: &Option<PathBuf>,
    predictions: &Option<PathBuf>,
    parse_mode: ParseMode,
) -> Result<LoadedPairs> {
    let (anns, raws, inputs) = if self_test {
        if annotations.is_some() || predictions.is_some() {
            return Err(Error::Config(
                "--self-test replaces --annotations and --predictions".into(),
            ));
        }
        let (a, p) = self_test_fixture();
        (a, p, Vec::new())
    } else {
        let a_path = required(annotations, "annotations")?;
        let p_path = required(predictions, "predictions")?;
        let anns: Vec<AnnotationRecord> = read_jsonl_file(a_path)?;
        let raws: Vec<RawPrediction> = read_jsonl_file(p_path)?;
        (
            anns,
            raws,
            vec![
                ("annotations", a_path.clone()),
                ("predictions", p_path.clone()),
            ],
        )
    };
    let preds = raws
        .into_iter()
        .map(|r| PredictionRecord::parse(r, parse_mode))
        .collect();
    Ok((anns, preds, inputs))
}

fn evaluate(ctx: &Ctx, cfg: EvaluateConfig, out: &mut String) -> Result<()> {
    let out_dir = required(&cfg.out_dir, "out-dir")?;
    let judge = JudgeConfig {
        minute_tolerance: cfg.minute_tolerance,
        swap_mode: cfg.swap_mode,
        full_time_rule: cfg.full_time_rule,
        kernel: cfg.kernel,
    };
    let (anns, preds, inputs) = load_pairs(
        cfg.self_test,
        &cfg.annotations,
        &cfg.predictions,
        cfg.parse_mode,
    )?;
    if anns.is_empty() {
        return Err(Error::EmptyInput("evaluate"));
    }
    let judged = judge_corpus(&anns, &preds, &judge)?;
    let report = report_from_judged(&judged, &judge);
    let judgments: Vec<Judgment> = judged.iter().map(|j| j.judgment).collect();
    let profile = emit_error_profile(&judgments, cfg.bin_width, cfg.kernel.max_total())?;
    let mut meta = RunMeta::new("evaluate", &cfg, ctx.reproducible);
    for (name, path) in &inputs {
        meta = meta.input(name, path)?;
    }
    ctx.with_outputs(out_dir, |o| {
        o.write_json("report.json", &report)?;
        o.write("breakdown.csv", breakdown_csv(&report))?;
        o.write("error_histogram.csv", profile.histogram_csv())?;
        o.write("error_cdf.csv", profile.cdf_csv())?;
        o.write_json(META_FILE, &meta)?;
        Ok(())
    })?;
    emit(
        out,
        format!(
            "records {}  hour_acc B {:.2} S {:.2}  minute_acc B {:.2} S {:.2}  full_acc B {:.2} S {:.2}  delta_full {:.2}\n",
            report.n_records,
            report.baseline.hour_acc,
            report.swap.hour_acc,
            report.baseline.minute_acc,
            report.swap.minute_acc,
            report.baseline.full_acc,
            report.swap.full_acc,
            report.delta_full
        ),
    )
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
struct GenPrefsConfig {
    annotations: Option<PathBuf>,
    predictions: Option<PathBuf>,
    out_dir: Option<PathBuf>,
    self_test: bool,
    mode: PairMode,
    seed: u64,
    minute_tolerance: u32,
    parse_mode: ParseMode,
}

impl Default for GenPrefsConfig {
    fn default() -> Self {
        let forge = ForgeConfig::default();
        Self {
            annotations: None,
            predictions: None,
            out_dir: None,
            self_test: false,
            mode: forge.mode,
            seed: forge.seed,
            minute_tolerance: forge.minute_tolerance,
            parse_mode: ParseMode::default(),
        }
    }
}

fn gen_prefs(ctx: &Ctx, cfg: GenPrefsConfig, out: &mut String) -> Result<()> {
    let out_dir = required(&cfg.out_dir, "out-dir")?;
    let forge = ForgeConfig {
        mode: cfg.mode,
        seed: cfg.seed,
        minute_tolerance: cfg.minute_tolerance,
    };
    let (anns, preds, inputs) = load_pairs(
        cfg.self_test,
        &cfg.annotations,
        &cfg.predictions,
        cfg.parse_mode,
    )?;
    let forged = forge_dataset(&anns, &preds, &forge)?;
    let mut meta = RunMeta::new("gen-prefs", &cfg, ctx.reproducible);
    for (name, path) in &inputs {
        meta = meta.input(name, path)?;
    }
    ctx.with_outputs(out_dir, |o| {
        o.write("pairs.jsonl", to_jsonl_string(&forged.pairs))?;
        o.write_json("retention.json", &forged.report)?;
        o.write_json(META_FILE, &meta)?;
        Ok(())
    })?;
    let r = &forged.report;
    let reasons: Vec<String> = r
        .drops_by_reason
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect();
    emit(
        out,
        format!(
            "pairs {} of {} ({:.2}%)  dropped: {}\n",
            r.n_out,
            r.n_in,
            r.retention_pct,
            if reasons.is_empty() {
                "none".into()
            } else {
                reasons.join(" ")
            }
        ),
    )
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
struct RenderConfig {
    out_dir: Option<PathBuf>,
    n: usize,
    distribution: String,
    histogram: Option<PathBuf>,
    time_seed: u64,
    style_seed: u64,
    style: StyleSource,
    flip_fraction: f64,
    occlude_fraction: f64,
    edges: bool,
    canny_low: f64,
    canny_high: f64,
    id_prefix: String,
}

impl Default for RenderConfig {
    fn default() -> Self {
        let c = CorpusConfig::default();
        Self {
            out_dir: None,
            n: c.n,
            distribution: "uniform".into(),
            histogram: None,
            time_seed: c.time_seed,
            style_seed: c.style_seed,
            style: c.style_source,
            flip_fraction: c.flip_fraction,
            occlude_fraction: c.occlude_fraction,
            edges: false,
            canny_low: DEFAULT_LOW_THRESHOLD,
            canny_high: DEFAULT_HIGH_THRESHOLD,
            id_prefix: c.id_prefix,
        }
    }
}

fn render(ctx: &Ctx, cfg: RenderConfig, out: &mut String) -> Result<()> {
    let out_dir = required(&cfg.out_dir, "out-dir")?;
    let mut meta = RunMeta::new("render", &cfg, ctx.reproducible);
    let distribution = match (&cfg.histogram, cfg.distribution.as_str()) {
        (Some(path), _) => {
            meta = meta.input("histogram", path)?;
            let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
            TimeDistribution::histogram_from_csv(&text)?
        }
        (None, "uniform") => TimeDistribution::Uniform,
        (None, "stratified") => TimeDistribution::Stratified,
        (None, other) => {
            return Err(Error::Config(format!(
                "distribution {other:?} is not one of uniform, stratified"
            )))
        }
    };
    let corpus = CorpusConfig {
        n: cfg.n,
        distribution,
        time_seed: cfg.time_seed,
        style_seed: cfg.style_seed,
        style_source: cfg.style,
        flip_fraction: cfg.flip_fraction,
        occlude_fraction: cfg.occlude_fraction,
        edges: cfg.edges.then_some((cfg.canny_low, cfg.canny_high)),
        id_prefix: cfg.id_prefix.clone(),
    };
    let manifest = ctx.with_outputs(out_dir, |o| {
        let manifest = generate_corpus(&corpus, o.dir())?;
        o.adopt(manifest.images.iter().chain(&manifest.edge_maps).cloned());
        o.adopt([manifest.labels_path.clone()]);
        o.write_json(META_FILE, &meta)?;
        Ok(manifest)
    })?;
    emit(
        out,
        format!(
            "rendered {} images ({} edge maps) into {}\n",
            manifest.images.len(),
            manifest.edge_maps.len(),
            out_dir.display()
        ),
    )
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
struct DedupRunConfig {
    images: Option<PathBuf>,
    base_dir: Option<PathBuf>,
    image_dir: Option<PathBuf>,
    out_dir: Option<PathBuf>,
    phash_threshold: u32,
    whash_threshold: u32,
    source_pair: Vec<String>,
}

impl Default for DedupRunConfig {
    fn default() -> Self {
        Self {
            images: None,
            base_dir: None,
            image_dir: None,
            out_dir: None,
            phash_threshold: DEFAULT_HAMMING_THRESHOLD,
            whash_threshold: DEFAULT_HAMMING_THRESHOLD,
            source_pair: Vec::new(),
        }
    }
}

fn image_dir_records(dir: &Path) -> Result<Vec<ImageRecord>> {
    let mut names = Vec::new();
    for entry in std::fs::read_dir(dir).map_err(|e| Error::io(dir, e))? {
        let entry = entry.map_err(|e| Error::io(dir, e))?;
        let name = entry.file_name().to_string_lossy().into_owned();
        let ext = Path::new(&name)
            .extension()
            .map(|e| e.to_string_lossy().to_lowercase())
            .unwrap_or_default();
        if entry.path().is_file() && ["png", "jpg", "jpeg"].contains(&ext.as_str()) {
            names.push(name);
        }
    }
    names.sort();
    Ok(names
        .into_iter()
        .map(|name| ImageRecord {
            id: name.clone(),
            image_path: name,
            source: None,
        })
        .collect())
}

fn qc_dedup(ctx: &Ctx, cfg: DedupRunConfig, out: &mut String) -> Result<()> {
    let out_dir = required(&cfg.out_dir, "out-dir")?;
    let source_pairs = cfg
        .source_pair
        .iter()
        .map(|p| match p.split_once(',') {
            Some((a, b)) if !a.trim().is_empty() && !b.trim().is_empty() => {
                Ok((a.trim().to_string(), b.trim().to_string()))
            }
            _ => Err(Error::Config(format!(
                "source pair {p:?} must look like A,B"
            ))),
        })
        .collect::<Result<Vec<_>>>()?;
    let dcfg = DedupConfig {
        phash_threshold: cfg.phash_threshold,
        whash_threshold: cfg.whash_threshold,
        source_pairs,
    };
    dcfg.validate()?;
    let mut meta = RunMeta::new("qc dedup", &cfg, ctx.reproducible);
    let (records, base) = match (&cfg.images, &cfg.image_dir) {
        (Some(list), None) => {
            meta = meta.input("images", list)?;
            let base = cfg
                .base_dir
                .clone()
                .unwrap_or_else(|| list.parent().map(Path::to_path_buf).unwrap_or_default());
            (read_jsonl_file::<ImageRecord>(list)?, base)
        }
        (None, Some(dir)) => (image_dir_records(dir)?, dir.clone()),
        (Some(_), Some(_)) => {
            return Err(Error::Config(
                "give either --images or --image-dir, not both".into(),
            ))
        }
        (None, None) => return Err(missing("images")),
    };
    let fingerprints = fingerprint_records(&records, &base)?;
    let result = dedup(&fingerprints, &dcfg)?;
    ctx.with_outputs(out_dir, |o| {
        o.write("manifest.jsonl", to_jsonl_string(&result.entries))?;
        o.write_json(META_FILE, &meta)?;
        Ok(())
    })?;
    emit(
        out,
        format!(
            "images {}  clusters {}  removed {}\n",
            result.entries.len(),
            result.n_clusters,
            result.n_removed
        ),
    )
}

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
struct StatsConfig {
    labels: Option<PathBuf>,
    out_dir: Option<PathBuf>,
}

/// Minimal view of a labelled record; other fields pass through untouched.
#[derive(Debug, Deserialize)]
struct LabelView {
    id: String,
    #[serde(alias = "time")]
    truth: ClockTime,
}

/// Reads `path` as raw JSON objects plus their id/time view.
fn read_labels(path: &Path) -> Result<Vec<(Value, LabelView)>> {
    let origin = path.display().to_string();
    read_jsonl_numbered_file::<Value>(path)?
        .into_iter()
        .map(|(line, value)| {
            let view = LabelView::deserialize(&value).map_err(|e| Error::Schema {
                path: origin.clone(),
                line,
                message: e.to_string(),
            })?;
            Ok((value, view))
        })
        .collect()
}

fn qc_stats(ctx: &Ctx, cfg: StatsConfig, out: &mut String) -> Result<()> {
    let labels = required(&cfg.labels, "labels")?;
    let out_dir = required(&cfg.out_dir, "out-dir")?;
    let records = read_labels(labels)?;
    let stats = compute_stats(records.iter().map(|(_, v)| v.truth))?;
    let meta = RunMeta::new("qc stats", &cfg, ctx.reproducible).input("labels", labels)?;
    ctx.with_outputs(out_dir, |o| {
        o.write("counts.csv", stats.counts_csv())?;
        o.write("heat.csv", stats.heat_csv())?;
        o.write("hour_marginal.csv", stats.hour_marginal_csv())?;
        o.write("minute_marginal.csv", stats.minute_marginal_csv())?;
        o.write_json("stats.json", &stats)?;
        o.write_json(META_FILE, &meta)?;
        Ok(())
    })?;
    emit(
        out,
        format!(
            "records {}  hour min {} (hour {})  max {} (hour {})  hour_cv {:.2}%\n",
            stats.n,
            stats.min_hour_count,
            stats.argmin_hour,
            stats.max_hour_count,
            stats.argmax_hour,
            stats.hour_cv
        ),
    )
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
struct FilterConfig {
    captions: Option<PathBuf>,
    out_dir: Option<PathBuf>,
    keywords: Vec<String>,
}

impl Default for FilterConfig {
    fn default() -> Self {
        Self {
            captions: None,
            out_dir: None,
            keywords: DEFAULT_KEYWORDS.iter().map(|s| s.to_string()).collect(),
        }
    }
}

#[derive(Serialize)]
struct DroppedCaption<'a> {
    id: &'a str,
    reason: String,
}

#[derive(Serialize)]
struct FilterReport {
    n_in: usize,
    n_kept: usize,
    n_dropped: usize,
    kept_by_keyword: BTreeMap<String, usize>,
    near_misses: BTreeMap<String, usize>,
}

fn qc_filter(ctx: &Ctx, cfg: FilterConfig, out: &mut String) -> Result<()> {
    let captions = required(&cfg.captions, "captions")?;
    let out_dir = required(&cfg.out_dir, "out-dir")?;
    if cfg.keywords.iter().all(|k| k.trim().is_empty()) {
        return Err(Error::Config("keyword allowlist is empty".into()));
    }
    let filter = KeywordFilter::new(cfg.keywords.iter().map(|k| k.trim()));
    let origin = captions.display().to_string();
    let rows = read_jsonl_numbered_file::<Value>(captions)?;
    let field = |v: &Value, line: usize, key: &str| -> Result<String> {
        v.get(key)
            .and_then(Value::as_str)
            .map(str::to_string)
            .ok_or_else(|| Error::Schema {
                path: origin.clone(),
                line,
                message: format!("missing string field `{key}`"),
            })
    };
    let mut kept = Vec::new();
    let mut dropped_ids = Vec::new();
    let mut report = FilterReport {
        n_in: rows.len(),
        n_kept: 0,
        n_dropped: 0,
        kept_by_keyword: BTreeMap::new(),
        near_misses: BTreeMap::new(),
    };
    for (line, row) in &rows {
        let id = field(row, *line, "id")?;
        let caption = field(row, *line, "caption")?;
        match filter.check(&caption) {
            KeywordDecision::Keep { keyword } => {
                *report.kept_by_keyword.entry(keyword).or_default() += 1;
                kept.push(row);
            }
            KeywordDecision::Drop { reason, near_miss } => {
                if let Some(t) = near_miss {
                    *report.near_misses.entry(t).or_default() += 1;
                }
                dropped_ids.push((id, reason));
            }
        }
    }
    report.n_kept = kept.len();
    report.n_dropped = dropped_ids.len();
    let dropped: Vec<DroppedCaption> = dropped_ids
        .iter()
        .map(|(id, reason)| DroppedCaption {
            id,
            reason: reason.clone(),
        })
        .collect();
    let meta = RunMeta::new("qc filter", &cfg, ctx.reproducible).input("captions", captions)?;
    ctx.with_outputs(out_dir, |o| {
        o.write("kept.jsonl", to_jsonl_string(&kept))?;
        o.write("dropped.jsonl", to_jsonl_string(&dropped))?;
        o.write_json("filter_report.json", &report)?;
        o.write_json(META_FILE, &meta)?;
        Ok(())
    })?;
    emit(
        out,
        format!(
            "captions {}  kept {}  dropped {}\n",
            report.n_in, report.n_kept, report.n_dropped
        ),
    )
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
struct RebalanceConfig {
    labels: Option<PathBuf>,
    out_dir: Option<PathBuf>,
    cap_multiplier: f64,
    cap: Option<u64>,
}

impl Default for RebalanceConfig {
    fn default() -> Self {
        Self {
            labels: None,
            out_dir: None,
            cap_multiplier: DEFAULT_CAP_MULTIPLIER,
            cap: None,
        }
    }
}

fn qc_rebalance(ctx: &Ctx, cfg: RebalanceConfig, out: &mut String) -> Result<()> {
    let labels = required(&cfg.labels, "labels")?;
    let out_dir = required(&cfg.out_dir, "out-dir")?;
    let rule = match cfg.cap {
        Some(c) => CapRule::Fixed(c),
        None => CapRule::MedianMultiple(cfg.cap_multiplier),
    };
    let records = read_labels(labels)?;
    if let Some(dup) = duplicate_id(records.iter().map(|(_, v)| v.id.as_str())) {
        return Err(Error::DuplicateId(dup));
    }
    let keys: Vec<(&str, ClockTime)> = records
        .iter()
        .map(|(_, v)| (v.id.as_str(), v.truth))
        .collect();
    let result = rebalance(&keys, rule)?;
    let kept: Vec<&Value> = result.kept.iter().map(|&i| &records[i].0).collect();
    let meta = RunMeta::new("qc rebalance", &cfg, ctx.reproducible).input("labels", labels)?;
    ctx.with_outputs(out_dir, |o| {
        o.write("kept.jsonl", to_jsonl_string(&kept))?;
        o.write_json("rebalance.json", &result)?;
        o.write_json(META_FILE, &meta)?;
        Ok(())
    })?;
    emit(
        out,
        format!(
            "records {} -> {}  cap {}  hour_cv {:.2}% -> {:.2}%\n",
            result.before.n,
            result.after.n,
            result.cap,
            result.before.hour_cv,
            result.after.hour_cv
        ),
    )
}

fn duplicate_id<'a>(ids: impl Iterator<Item = &'a str>) -> Option<String> {
    let mut seen = std::collections::HashSet::new();
    ids.into_iter()
        .find(|id| !seen.insert(*id))
        .map(str::to_string)
}

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
struct PromptsConfig {
    out_dir: Option<PathBuf>,
}

fn prompts_emit(ctx: &Ctx, cfg: PromptsConfig, out: &mut String) -> Result<()> {
    let out_dir = required(&cfg.out_dir, "out-dir")?;
    let meta = RunMeta::new("prompts emit", &cfg, ctx.reproducible);
    let paths = ctx.with_outputs(out_dir, |o| {
        let paths = PromptCorpus::default().emit(o.dir())?;
        o.adopt(paths.iter().cloned());
        o.write_json(META_FILE, &meta)?;
        Ok(paths)
    })?;
    for p in paths {
        emit(out, format!("{}\n", p.display()))?;
    }
    Ok(())
}
