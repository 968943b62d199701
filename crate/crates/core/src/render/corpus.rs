// SPDX-License-Identifier: Apache-2.0

use std::fs;
use std::path::{Path, PathBuf};

use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::canny::canny;
use super::draw::render;
use super::style::{sample_style, ClockStyle, NumeralStyle, Occluder};
use crate::error::{Error, Result};
use crate::eval::{AnnotationRecord, ClockType, Design, Environment, Split, Transformation};
use crate::jsonl::to_jsonl_string;
use crate::keyed::{indexed_rng, keyed_rng};
use crate::time::{ClockTime, CYCLE_MINUTES};

/// How corpus labels are drawn.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TimeDistribution {
    /// Independent uniform draws.
    Uniform,
    /// Each block of 720 consecutive indices holds every time once, in a
    /// seeded order.
    Stratified,
    /// Draws proportional to a 12x60 count table (row = internal hour).
    Histogram(Vec<Vec<u64>>),
}

impl TimeDistribution {
    /// Parses a count table: 12 lines of 60 comma-separated counts, with an
    /// optional header line and an optional leading label column.
    pub fn histogram_from_csv(text: &str) -> Result<Self> {
        let bad = |line: usize, message: String| Error::Schema {
            path: "histogram".into(),
            line,
            message,
        };
        let mut rows = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let cells: Vec<&str> = line.split(',').map(str::trim).collect();
            if cells.iter().all(|c| c.is_empty()) {
                continue;
            }
            if cells.iter().any(|c| c.parse::<f64>().is_err()) && rows.is_empty() && i == 0 {
                continue; // header
            }
            let cells = match cells.len() {
                60 => &cells[..],
                61 => &cells[1..],
                n => return Err(bad(i + 1, format!("expected 60 counts, found {n} cells"))),
            };
            let row = cells
                .iter()
                .map(|c| {
                    c.parse::<u64>()
                        .map_err(|e| bad(i + 1, format!("{c:?}: {e}")))
                })
                .collect::<Result<Vec<_>>>()?;
            rows.push(row);
        }
        if rows.len() != 12 {
            return Err(bad(0, format!("expected 12 rows, found {}", rows.len())));
        }
        if rows.iter().flatten().all(|&c| c == 0) {
            return Err(bad(0, "histogram has no mass".into()));
        }
        Ok(TimeDistribution::Histogram(rows))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StyleSource {
    /// A fresh [`sample_style`] per index.
    #[default]
    Sampled,
    /// The reference style for every image.
    Default,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorpusConfig {
    pub n: usize,
    pub distribution: TimeDistribution,
    pub time_seed: u64,
    pub style_seed: u64,
    pub style_source: StyleSource,
    /// Share of images mirrored (labelled `flipped`).
    pub flip_fraction: f64,
    /// Share of images with an occluding bar (labelled `partial`).
    pub occlude_fraction: f64,
    /// Canny thresholds; when set, an edge map is written per image.
    pub edges: Option<(f64, f64)>,
    pub id_prefix: String,
}

impl Default for CorpusConfig {
    fn default() -> Self {
        Self {
            n: 100,
            distribution: TimeDistribution::Uniform,
            time_seed: 0,
            style_seed: 0,
            style_source: StyleSource::Sampled,
            flip_fraction: 0.0,
            occlude_fraction: 0.0,
            edges: None,
            id_prefix: "syn".into(),
        }
    }
}

/// One planned corpus entry, before any pixels exist.
#[derive(Clone, Debug, PartialEq)]
pub struct CorpusItem {
    pub index: usize,
    pub label: ClockTime,
    pub style: ClockStyle,
    pub record: AnnotationRecord,
}

fn draw_time(cfg: &CorpusConfig, index: usize, stratified: &[Vec<u32>]) -> ClockTime {
    let mut rng = indexed_rng(cfg.time_seed, index as u64);
    match &cfg.distribution {
        TimeDistribution::Uniform => ClockTime::from_index(rng.random_range(0..CYCLE_MINUTES)),
        TimeDistribution::Stratified => {
            let block = &stratified[index / CYCLE_MINUTES as usize];
            ClockTime::from_index(block[index % CYCLE_MINUTES as usize])
        }
        TimeDistribution::Histogram(rows) => {
            let total: u64 = rows.iter().flatten().sum();
            let mut pick = rng.random_range(0..total);
            for (i, &c) in rows.iter().flatten().enumerate() {
                if pick < c {
                    return ClockTime::from_index(i as u32);
                }
                pick -= c;
            }
            unreachable!("pick < total")
        }
    }
}

/// Deterministic plan for every index: label, style and annotation.
pub fn plan_corpus(cfg: &CorpusConfig) -> Result<Vec<CorpusItem>> {
    if cfg.n == 0 {
        return Err(Error::out_of_range("n", "corpus size must be at least 1"));
    }
    for (name, f) in [
        ("flip_fraction", cfg.flip_fraction),
        ("occlude_fraction", cfg.occlude_fraction),
    ] {
        if !(0.0..=1.0).contains(&f) {
            return Err(Error::out_of_range(name, format!("{f} is not in [0, 1]")));
        }
    }
    if cfg.flip_fraction + cfg.occlude_fraction > 1.0 {
        return Err(Error::out_of_range(
            "flip_fraction",
            "flip + occlude fractions exceed 1",
        ));
    }
    let stratified: Vec<Vec<u32>> = match cfg.distribution {
        TimeDistribution::Stratified => (0..cfg.n.div_ceil(CYCLE_MINUTES as usize))
            .map(|b| {
                let mut order: Vec<u32> = (0..CYCLE_MINUTES).collect();
                order.shuffle(&mut keyed_rng(
                    cfg.time_seed,
                    &format!("stratified-block-{b}"),
                ));
                order
            })
            .collect(),
        _ => Vec::new(),
    };

    Ok((0..cfg.n)
        .map(|index| {
            let label = draw_time(cfg, index, &stratified);
            let mut style = match cfg.style_source {
                StyleSource::Sampled => {
                    sample_style(indexed_rng(cfg.style_seed, index as u64).random())
                }
                StyleSource::Default => ClockStyle::default(),
            };
            let mut rng = keyed_rng(cfg.style_seed, &format!("transform-{index}"));
            let u: f64 = rng.random();
            let transformation = if u < cfg.flip_fraction {
                style.mirror = true;
                Transformation::Flipped
            } else if u < cfg.flip_fraction + cfg.occlude_fraction {
                style.occluder = Some(random_occluder(&style, &mut rng));
                Transformation::Partial
            } else {
                Transformation::Normal
            };
            let design = match style.numeral_style {
                NumeralStyle::Arabic => Design::Arabic,
                NumeralStyle::Roman => Design::Roman,
                NumeralStyle::None => Design::NoNumerals,
            };
            let id = format!("{}{index:06}", cfg.id_prefix);
            let record = AnnotationRecord {
                image_path: format!("images/{id}.png"),
                id,
                truth: label,
                ampm: None,
                clock_type: ClockType::Graphic,
                environment: Environment::Unknown,
                transformation,
                design: [design].into(),
                source: "synthetic".into(),
                split: Split::Train,
            };
            CorpusItem {
                index,
                label,
                style,
                record,
            }
        })
        .collect())
}

/// A bar covering part of one side of the face, clear of the centre.
fn random_occluder(style: &ClockStyle, rng: &mut impl Rng) -> Occluder {
    let size = style.image_size();
    let c = size / 2;
    let depth = rng.random_range(size / 6..c - style.face_radius_px / 8);
    let color = [rng.random(), rng.random(), rng.random()];
    let (x0, y0, x1, y1) = match rng.random_range(0..4) {
        0 => (0, 0, size, depth),
        1 => (0, size - depth, size, size),
        2 => (0, 0, depth, size),
        _ => (size - depth, 0, size, size),
    };
    Occluder {
        x0,
        y0,
        x1,
        y1,
        color,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CorpusManifest {
    pub labels_path: PathBuf,
    pub images: Vec<PathBuf>,
    pub edge_maps: Vec<PathBuf>,
    pub records: Vec<AnnotationRecord>,
}

/// Renders the whole corpus into `out_dir`: `images/<id>.png`, optional
/// `edges/<id>.png`, and `labels.jsonl` in index order. Files already written
/// are removed again if any step fails.
pub fn generate_corpus(cfg: &CorpusConfig, out_dir: &Path) -> Result<CorpusManifest> {
    let plan = plan_corpus(cfg)?;
    if let Some((lo, hi)) = cfg.edges {
        // fail on bad thresholds before anything touches the disk
        canny(&image::RgbImage::new(1, 1), lo, hi)?;
    }
    let images_dir = out_dir.join("images");
    let edges_dir = out_dir.join("edges");
    fs::create_dir_all(&images_dir).map_err(|e| Error::io(&images_dir, e))?;
    if cfg.edges.is_some() {
        fs::create_dir_all(&edges_dir).map_err(|e| Error::io(&edges_dir, e))?;
    }

    let written: Vec<Result<(PathBuf, Option<PathBuf>)>> = plan
        .par_iter()
        .map(|item| {
            let sample = render(item.label, &item.style, item.index as u64)?;
            let image_path = out_dir.join(&item.record.image_path);
            fs::write(&image_path, sample.to_png()).map_err(|e| Error::io(&image_path, e))?;
            let edge_path = match cfg.edges {
                Some((lo, hi)) => {
                    let path = edges_dir.join(format!("{}.png", item.record.id));
                    let edges = canny(&sample.image, lo, hi)?;
                    fs::write(&path, super::encode_gray_png(&edges))
                        .map_err(|e| Error::io(&path, e))?;
                    Some(path)
                }
                None => None,
            };
            Ok((image_path, edge_path))
        })
        .collect();

    let mut images = Vec::new();
    let mut edge_maps = Vec::new();
    let mut first_error = None;
    for w in written {
        match w {
            Ok((img, edge)) => {
                images.push(img);
                edge_maps.extend(edge);
            }
            Err(e) => {
                first_error.get_or_insert(e);
            }
        }
    }
    let records: Vec<AnnotationRecord> = plan.into_iter().map(|i| i.record).collect();
    let labels_path = out_dir.join("labels.jsonl");
    let result = match first_error {
        Some(e) => Err(e),
        None => fs::write(&labels_path, to_jsonl_string(&records))
            .map_err(|e| Error::io(&labels_path, e)),
    };
    if let Err(e) = result {
        for p in images.iter().chain(&edge_maps) {
            let _ = fs::remove_file(p);
        }
        return Err(e);
    }
    Ok(CorpusManifest {
        labels_path,
        images,
        edge_maps,
        records,
    })
}
