//! The `eval` subcommand: pair predictions with ground truth by image id,
//! compute per-image metrics, and write report.csv / summary.csv.
//!
//! Both CSVs are deterministic functions of the mask files (rows sorted by
//! id, fixed-point formatting, no wall-clock content), so repeated runs over
//! the same inputs are byte-identical.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use log::{info, warn};
use sdi_core::metrics::{
    aggregate_report, confusion, prediction_id, render_report_csv, render_summary_csv, truth_id,
    EvalRecord,
};
use sdi_core::raster::{load_image, BinaryMask};

use crate::manifest::RunManifest;

pub struct EvalOutcome {
    pub evaluated: usize,
    pub failed: usize,
    pub mean_jaccard: f64,
    pub report_path: PathBuf,
}

fn list_pngs(dir: &Path) -> anyhow::Result<Vec<PathBuf>> {
    if !dir.is_dir() {
        bail!("directory {} does not exist", dir.display());
    }
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
        .with_context(|| format!("cannot list {}", dir.display()))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.is_file())
        .collect();
    files.sort();
    Ok(files)
}

/// Loads a stored mask: any sample >= 128 counts as foreground. Challenge
/// masks are 0/255 but some tools emit anti-aliased edges.
fn load_stored_mask(path: &Path) -> anyhow::Result<BinaryMask> {
    let img = load_image(path)?;
    Ok(BinaryMask::from_fn(img.width(), img.height(), |x, y| {
        img.pixel(x, y)[0] >= 128
    }))
}

pub fn run(
    pred_dir: &Path,
    truth_dir: &Path,
    report_path: &Path,
    manifest: Option<&RunManifest>,
) -> anyhow::Result<EvalOutcome> {
    let mut predictions = BTreeMap::new();
    for path in list_pngs(pred_dir)? {
        let name = path
            .file_name()
            .unwrap_or_default()
            .to_string_lossy()
            .into_owned();
        if let Some(id) = prediction_id(&name) {
            predictions.insert(id.to_string(), path.clone());
        }
    }
    let mut truths = BTreeMap::new();
    for path in list_pngs(truth_dir)? {
        let name = path
            .file_name()
            .unwrap_or_default()
            .to_string_lossy()
            .into_owned();
        if let Some(id) = truth_id(&name) {
            truths.insert(id.to_string(), path.clone());
        }
    }

    // Read the manifest left by a previous segment run, unless the caller
    // already holds one; it carries the selected band per image.
    let stored_manifest = match manifest {
        Some(_) => None,
        None => RunManifest::read(&pred_dir.join("manifest.json")).ok(),
    };
    let manifest = manifest.or(stored_manifest.as_ref());

    for id in predictions.keys().filter(|id| !truths.contains_key(*id)) {
        warn!("prediction {id} has no ground truth; skipped");
    }
    for id in truths.keys().filter(|id| !predictions.contains_key(*id)) {
        warn!("ground truth {id} has no prediction; skipped");
    }

    let mut records: Vec<EvalRecord> = Vec::new();
    let mut failed = 0usize;
    for (id, pred_path) in &predictions {
        let Some(truth_path) = truths.get(id) else {
            continue;
        };
        match evaluate_pair(id, pred_path, truth_path, manifest) {
            Ok(record) => records.push(record),
            Err(err) => {
                warn!("{id}: {err:#}");
                failed += 1;
            }
        }
    }
    if records.is_empty() {
        bail!(
            "no prediction/truth pairs evaluated between {} and {}",
            pred_dir.display(),
            truth_dir.display()
        );
    }

    let report = aggregate_report(&records).expect("records are nonempty");
    if let Some(parent) = report_path.parent().filter(|p| !p.as_os_str().is_empty()) {
        std::fs::create_dir_all(parent)?;
    }
    std::fs::write(report_path, render_report_csv(&records))
        .with_context(|| format!("cannot write {}", report_path.display()))?;
    let summary_path = report_path.with_file_name("summary.csv");
    std::fs::write(&summary_path, render_summary_csv(&report))
        .with_context(|| format!("cannot write {}", summary_path.display()))?;
    info!(
        "evaluated {} pairs, mean jaccard {:.4}, report at {}",
        records.len(),
        report.mean.jaccard,
        report_path.display()
    );

    Ok(EvalOutcome {
        evaluated: records.len(),
        failed,
        mean_jaccard: report.mean.jaccard,
        report_path: report_path.to_path_buf(),
    })
}

fn evaluate_pair(
    id: &str,
    pred_path: &Path,
    truth_path: &Path,
    manifest: Option<&RunManifest>,
) -> anyhow::Result<EvalRecord> {
    let pred = load_stored_mask(pred_path)?;
    let truth = load_stored_mask(truth_path)?;
    let counts = confusion(&pred, &truth)?;
    let mut record = EvalRecord::new(id, counts);
    record.band_selected = manifest.and_then(|m| m.band_for(id));
    Ok(record)
}
