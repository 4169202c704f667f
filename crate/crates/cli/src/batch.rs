//! Manifest-driven batch processing.

use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Deserialize;

use crate::failure::{Failure, Outcome};

pub const MANIFEST: &str = "manifest.json";

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Entry {
    pub image: PathBuf,
    pub mask: Option<PathBuf>,
    pub gt: Option<PathBuf>,
}

/// One manifest entry with paths resolved against the batch directory.
#[derive(Debug, Clone)]
pub struct Item {
    pub index: usize,
    /// The paths exactly as written in the manifest, for reports.
    pub raw: Entry,
    pub image: PathBuf,
    pub mask: Option<PathBuf>,
    pub gt: Option<PathBuf>,
}

impl Item {
    pub fn mask(&self) -> Outcome<&Path> {
        self.mask
            .as_deref()
            .ok_or_else(|| Failure::usage("manifest entry has no \"mask\""))
    }

    pub fn gt(&self) -> Outcome<&Path> {
        self.gt
            .as_deref()
            .ok_or_else(|| Failure::usage("manifest entry has no \"gt\""))
    }

    /// `dir/NNNN<suffix>`.
    pub fn output(&self, dir: &Path, suffix: &str) -> PathBuf {
        dir.join(format!("{:04}{suffix}", self.index))
    }
}

pub fn load_manifest(dir: &Path) -> Outcome<Vec<Item>> {
    let path = dir.join(MANIFEST);
    let text = std::fs::read_to_string(&path).map_err(|e| Failure::io(format!("{}: {e}", path.display())))?;
    let entries: Vec<Entry> = serde_json::from_str(&text)
        .map_err(|e| Failure::usage(format!("{}: invalid manifest: {e}", path.display())))?;
    Ok(entries
        .into_iter()
        .enumerate()
        .map(|(index, raw)| Item {
            index,
            image: dir.join(&raw.image),
            mask: raw.mask.as_ref().map(|p| dir.join(p)),
            gt: raw.gt.as_ref().map(|p| dir.join(p)),
            raw,
        })
        .collect())
}

pub fn ensure_dir(dir: &Path) -> Outcome<()> {
    std::fs::create_dir_all(dir).map_err(|e| Failure::io(format!("{}: {e}", dir.display())))
}

/// Runs `f` on every item with `jobs` workers and returns the results in
/// manifest order, or the failure of the lowest failing index.
pub fn run<T, F>(items: &[Item], jobs: u64, f: F) -> Outcome<Vec<T>>
where
    T: Send,
    F: Fn(&Item) -> Outcome<T> + Sync,
{
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs as usize)
        .build()
        .map_err(|e| Failure::usage(format!("cannot start {jobs} workers: {e}")))?;
    let results: Vec<Outcome<T>> = pool.install(|| {
        items
            .par_iter()
            .map(|item| f(item).map_err(|e| e.within(format!("manifest entry {}", item.index))))
            .collect()
    });
    results.into_iter().collect()
}
