// SPDX-License-Identifier: Apache-2.0

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::fingerprint::{fingerprint_file, Hash64, ImageFingerprint};
use crate::error::{Error, Result};

pub const DEFAULT_HAMMING_THRESHOLD: u32 = 8;

/// One image to deduplicate. `source` names the originating collection.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImageRecord {
    pub id: String,
    pub image_path: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, rename_all = "kebab-case")]
pub struct DedupConfig {
    pub phash_threshold: u32,
    pub whash_threshold: u32,
    /// When non-empty, perceptual matches only count between records whose
    /// sources form one of these unordered pairs. Byte-identical files are
    /// always merged.
    pub source_pairs: Vec<(String, String)>,
}

impl Default for DedupConfig {
    fn default() -> Self {
        Self {
            phash_threshold: DEFAULT_HAMMING_THRESHOLD,
            whash_threshold: DEFAULT_HAMMING_THRESHOLD,
            source_pairs: Vec::new(),
        }
    }
}

impl DedupConfig {
    pub fn validate(&self) -> Result<()> {
        for (name, t) in [
            ("phash_threshold", self.phash_threshold),
            ("whash_threshold", self.whash_threshold),
        ] {
            if t > 64 {
                return Err(Error::out_of_range(name, format!("{t} is not in [0, 64]")));
            }
        }
        Ok(())
    }

    fn sources_may_match(&self, a: Option<&str>, b: Option<&str>) -> bool {
        if self.source_pairs.is_empty() {
            return true;
        }
        let (Some(a), Some(b)) = (a, b) else {
            return false;
        };
        self.source_pairs
            .iter()
            .any(|(x, y)| (x == a && y == b) || (x == b && y == a))
    }
}

/// One manifest row.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DedupEntry {
    pub id: String,
    pub sha1: String,
    pub phash: Hash64,
    pub whash: Hash64,
    pub cluster_id: usize,
    pub kept: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DedupResult {
    /// Sorted by id.
    pub entries: Vec<DedupEntry>,
    pub n_clusters: usize,
    pub n_removed: usize,
}

impl DedupResult {
    pub fn kept_ids(&self) -> BTreeSet<&str> {
        self.entries
            .iter()
            .filter(|e| e.kept)
            .map(|e| e.id.as_str())
            .collect()
    }

    /// Members of every cluster with more than one record, keyed by cluster id.
    pub fn duplicate_clusters(&self) -> BTreeMap<usize, Vec<&str>> {
        let mut all: BTreeMap<usize, Vec<&str>> = BTreeMap::new();
        for e in &self.entries {
            all.entry(e.cluster_id).or_default().push(&e.id);
        }
        all.retain(|_, v| v.len() > 1);
        all
    }
}

/// Fingerprints every record's image (paths relative to `base`) in parallel.
pub fn fingerprint_records(
    records: &[ImageRecord],
    base: &Path,
) -> Result<Vec<(ImageRecord, ImageFingerprint)>> {
    records
        .par_iter()
        .map(|r| Ok((r.clone(), fingerprint_file(&base.join(&r.image_path))?)))
        .collect()
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, mut i: usize) -> usize {
        while self.0[i] != i {
            self.0[i] = self.0[self.0[i]];
            i = self.0[i];
        }
        i
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        // the smaller index (smaller id) becomes the root
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Clusters records by identical SHA-1 or by pHash / wHash Hamming distance
/// within the thresholds, closed transitively. Each cluster keeps its
/// lexicographically smallest id; cluster ids count up in keeper order.
pub fn dedup(items: &[(ImageRecord, ImageFingerprint)], cfg: &DedupConfig) -> Result<DedupResult> {
    cfg.validate()?;
    let mut sorted: Vec<&(ImageRecord, ImageFingerprint)> = items.iter().collect();
    sorted.sort_by(|a, b| a.0.id.cmp(&b.0.id));
    if let Some(w) = sorted.windows(2).find(|w| w[0].0.id == w[1].0.id) {
        return Err(Error::DuplicateId(w[0].0.id.clone()));
    }
    let n = sorted.len();
    let mut uf = UnionFind((0..n).collect());

    let mut by_sha: HashMap<&str, usize> = HashMap::new();
    for (i, (_, fp)) in sorted.iter().enumerate() {
        if let Some(&j) = by_sha.get(fp.sha1.as_str()) {
            uf.union(i, j);
        } else {
            by_sha.insert(&fp.sha1, i);
        }
    }

    let edges: Vec<(usize, usize)> = (0..n)
        .into_par_iter()
        .flat_map_iter(|i| {
            let (ri, fi) = sorted[i];
            sorted[i + 1..]
                .iter()
                .enumerate()
                .filter_map(move |(d, (rj, fj))| {
                    let near = fi.phash.hamming(fj.phash) <= cfg.phash_threshold
                        || fi.whash.hamming(fj.whash) <= cfg.whash_threshold;
                    (near && cfg.sources_may_match(ri.source.as_deref(), rj.source.as_deref()))
                        .then_some((i, i + 1 + d))
                })
        })
        .collect();
    for (a, b) in edges {
        uf.union(a, b);
    }

    // roots are the smallest member, so ascending root order is keeper order
    let roots: Vec<usize> = (0..n).map(|i| uf.find(i)).collect();
    let mut cluster_of_root = HashMap::new();
    for &r in &roots {
        let next = cluster_of_root.len();
        cluster_of_root.entry(r).or_insert(next);
    }
    let entries: Vec<DedupEntry> = sorted
        .iter()
        .zip(&roots)
        .enumerate()
        .map(|(i, ((rec, fp), &root))| DedupEntry {
            id: rec.id.clone(),
            sha1: fp.sha1.clone(),
            phash: fp.phash,
            whash: fp.whash,
            cluster_id: cluster_of_root[&root],
            kept: i == root,
        })
        .collect();
    let n_clusters = cluster_of_root.len();
    Ok(DedupResult {
        n_removed: n - n_clusters,
        n_clusters,
        entries,
    })
}
