//! Pixelwise evaluation of predicted masks against ground truth, and the CSV
//! report formats.
//!
//! Metrics with an empty denominator are defined as 1: when both parties
//! agree there is nothing to find, that is a perfect answer. Libraries
//! disagree on this convention, so it is stated here once and tested.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::raster::BinaryMask;
use crate::segment::Band;

/// Per-pixel 2x2 contingency counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ConfusionCounts {
    pub tp: u64,
    pub fp: u64,
    pub fn_: u64,
    pub tn: u64,
}

impl ConfusionCounts {
    pub fn total(&self) -> u64 {
        self.tp + self.fp + self.fn_ + self.tn
    }
}

/// The five reported metrics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Metrics {
    pub jaccard: f64,
    pub dice: f64,
    pub accuracy: f64,
    pub sensitivity: f64,
    pub specificity: f64,
}

/// One evaluated image.
#[derive(Debug, Clone, PartialEq)]
pub struct EvalRecord {
    pub image_id: String,
    pub counts: ConfusionCounts,
    pub metrics: Metrics,
    /// Band chosen during segmentation, when known; standalone evaluation of
    /// bare prediction files has no band information.
    pub band_selected: Option<Band>,
    /// Informational only; reported CSVs are deterministic, so wall-clock
    /// times belong in the run manifest rather than here.
    pub runtime_ms: f64,
}

impl EvalRecord {
    pub fn new(image_id: impl Into<String>, counts: ConfusionCounts) -> Self {
        Self {
            image_id: image_id.into(),
            counts,
            metrics: compute_metrics(&counts),
            band_selected: None,
            runtime_ms: 0.0,
        }
    }
}

/// Aggregate over a set of evaluated images.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub count: usize,
    pub mean: Metrics,
    pub median: Metrics,
    pub mean_runtime_ms: f64,
    pub median_runtime_ms: f64,
    /// (record count, mean jaccard) for images where normalized red won.
    pub rnorm_breakdown: (usize, f64),
    /// (record count, mean jaccard) for images where the value band won.
    pub value_breakdown: (usize, f64),
    /// Records with no band information (standalone evaluation).
    pub unknown_band_count: usize,
}

/// Header of `report.csv`.
pub const REPORT_CSV_HEADER: &str =
    "image_id,jaccard,dice,accuracy,sensitivity,specificity,band_selected,runtime_ms";

/// Compares two masks of identical dimensions pixel by pixel.
pub fn confusion(pred: &BinaryMask, truth: &BinaryMask) -> Result<ConfusionCounts> {
    if !pred.same_dims(truth) {
        return Err(Error::DimensionMismatch {
            left_w: pred.width(),
            left_h: pred.height(),
            right_w: truth.width(),
            right_h: truth.height(),
        });
    }
    let mut counts = ConfusionCounts::default();
    for (&p, &t) in pred.data().iter().zip(truth.data()) {
        match (p, t) {
            (true, true) => counts.tp += 1,
            (true, false) => counts.fp += 1,
            (false, true) => counts.fn_ += 1,
            (false, false) => counts.tn += 1,
        }
    }
    Ok(counts)
}

fn ratio(num: u64, den: u64) -> f64 {
    if den == 0 {
        1.0
    } else {
        num as f64 / den as f64
    }
}

/// Derives the five metrics from confusion counts. The total must be
/// positive.
pub fn compute_metrics(counts: &ConfusionCounts) -> Metrics {
    assert!(
        counts.total() > 0,
        "confusion counts must cover at least one pixel"
    );
    Metrics {
        jaccard: ratio(counts.tp, counts.tp + counts.fp + counts.fn_),
        dice: ratio(2 * counts.tp, 2 * counts.tp + counts.fp + counts.fn_),
        accuracy: (counts.tp + counts.tn) as f64 / counts.total() as f64,
        sensitivity: ratio(counts.tp, counts.tp + counts.fn_),
        specificity: ratio(counts.tn, counts.tn + counts.fp),
    }
}

fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

fn median(values: &[f64]) -> f64 {
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("metrics are finite"));
    let n = sorted.len();
    if n % 2 == 1 {
        sorted[n / 2]
    } else {
        (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0
    }
}

/// Aggregates per-image records into means, medians, and the per-band
/// breakdown. At least one record is required.
pub fn aggregate_report(records: &[EvalRecord]) -> Result<Report> {
    if records.is_empty() {
        return Err(Error::InvalidArgument(
            "cannot aggregate zero records".into(),
        ));
    }
    let pick =
        |f: fn(&Metrics) -> f64| -> Vec<f64> { records.iter().map(|r| f(&r.metrics)).collect() };
    let agg = |f: fn(&Metrics) -> f64| -> (f64, f64) {
        let values = pick(f);
        (mean(&values), median(&values))
    };
    let (jaccard_mean, jaccard_median) = agg(|m| m.jaccard);
    let (dice_mean, dice_median) = agg(|m| m.dice);
    let (accuracy_mean, accuracy_median) = agg(|m| m.accuracy);
    let (sensitivity_mean, sensitivity_median) = agg(|m| m.sensitivity);
    let (specificity_mean, specificity_median) = agg(|m| m.specificity);
    let runtimes: Vec<f64> = records.iter().map(|r| r.runtime_ms).collect();

    let band_stats = |band: Band| -> (usize, f64) {
        let jaccards: Vec<f64> = records
            .iter()
            .filter(|r| r.band_selected == Some(band))
            .map(|r| r.metrics.jaccard)
            .collect();
        if jaccards.is_empty() {
            (0, 0.0)
        } else {
            (jaccards.len(), mean(&jaccards))
        }
    };

    Ok(Report {
        count: records.len(),
        mean: Metrics {
            jaccard: jaccard_mean,
            dice: dice_mean,
            accuracy: accuracy_mean,
            sensitivity: sensitivity_mean,
            specificity: specificity_mean,
        },
        median: Metrics {
            jaccard: jaccard_median,
            dice: dice_median,
            accuracy: accuracy_median,
            sensitivity: sensitivity_median,
            specificity: specificity_median,
        },
        mean_runtime_ms: mean(&runtimes),
        median_runtime_ms: median(&runtimes),
        rnorm_breakdown: band_stats(Band::Rnorm),
        value_breakdown: band_stats(Band::Value),
        unknown_band_count: records.iter().filter(|r| r.band_selected.is_none()).count(),
    })
}

/// Renders `report.csv`: one row per image, sorted by id, metrics with six
/// decimals.
pub fn render_report_csv(records: &[EvalRecord]) -> String {
    let mut sorted: Vec<&EvalRecord> = records.iter().collect();
    sorted.sort_by(|a, b| a.image_id.cmp(&b.image_id));
    let mut out = String::new();
    out.push_str(REPORT_CSV_HEADER);
    out.push('\n');
    for r in sorted {
        let band = match r.band_selected {
            Some(b) => b.to_string(),
            None => "unknown".to_string(),
        };
        let m = &r.metrics;
        writeln!(
            out,
            "{},{:.6},{:.6},{:.6},{:.6},{:.6},{},{:.3}",
            r.image_id,
            m.jaccard,
            m.dice,
            m.accuracy,
            m.sensitivity,
            m.specificity,
            band,
            r.runtime_ms
        )
        .expect("string write");
    }
    out
}

/// Renders `summary.csv`: one `statistic,value` row per aggregate.
pub fn render_summary_csv(report: &Report) -> String {
    let mut out = String::from("statistic,value\n");
    let mut row = |name: &str, value: String| {
        out.push_str(name);
        out.push(',');
        out.push_str(&value);
        out.push('\n');
    };
    let pairs = [
        ("jaccard", report.mean.jaccard, report.median.jaccard),
        ("dice", report.mean.dice, report.median.dice),
        ("accuracy", report.mean.accuracy, report.median.accuracy),
        (
            "sensitivity",
            report.mean.sensitivity,
            report.median.sensitivity,
        ),
        (
            "specificity",
            report.mean.specificity,
            report.median.specificity,
        ),
    ];
    for (name, mean, median) in pairs {
        row(&format!("mean_{name}"), format!("{mean:.6}"));
        row(&format!("median_{name}"), format!("{median:.6}"));
    }
    row("mean_runtime_ms", format!("{:.3}", report.mean_runtime_ms));
    row(
        "median_runtime_ms",
        format!("{:.3}", report.median_runtime_ms),
    );
    row("images_evaluated", report.count.to_string());
    row("band_rnorm_count", report.rnorm_breakdown.0.to_string());
    row(
        "band_rnorm_mean_jaccard",
        format!("{:.6}", report.rnorm_breakdown.1),
    );
    row("band_value_count", report.value_breakdown.0.to_string());
    row(
        "band_value_mean_jaccard",
        format!("{:.6}", report.value_breakdown.1),
    );
    row("band_unknown_count", report.unknown_band_count.to_string());
    out
}

/// Image id of a prediction file: the file stem (`ISIC_0000122.png` ->
/// `ISIC_0000122`).
pub fn prediction_id(file_name: &str) -> Option<&str> {
    let stem = file_name
        .strip_suffix(".png")
        .or_else(|| file_name.strip_suffix(".PNG"))?;
    if stem.is_empty() {
        None
    } else {
        Some(stem)
    }
}

/// Image id of a ground-truth file under the challenge convention:
/// `ISIC_<id>_segmentation.png` pairs with prediction `ISIC_<id>.png`.
pub fn truth_id(file_name: &str) -> Option<&str> {
    let stem = prediction_id(file_name)?;
    let id = stem.strip_suffix("_segmentation")?;
    if id.is_empty() {
        None
    } else {
        Some(id)
    }
}
