//! Histogram accumulation and Otsu threshold selection.
//!
//! The threshold search compares between-class variances as exact integer
//! fractions, so tie-breaking (smallest maximizing threshold) is
//! deterministic and independent of floating-point rounding.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::raster::{BinaryMask, Gray8Plane};

/// Totals above this would overflow the exact integer variance comparison.
/// 2^29 pixels is far beyond any supported input.
const MAX_TOTAL: u64 = 1 << 29;

/// 256-bin intensity histogram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Histogram256 {
    counts: [u64; 256],
    total: u64,
}

impl Histogram256 {
    pub fn from_counts(counts: [u64; 256]) -> Self {
        let total = counts.iter().sum();
        Self { counts, total }
    }

    pub fn counts(&self) -> &[u64; 256] {
        &self.counts
    }

    pub fn total(&self) -> u64 {
        self.total
    }
}

/// Histogram of `plane` values over the true pixels of `roi`.
pub fn histogram(plane: &Gray8Plane, roi: &BinaryMask) -> Result<Histogram256> {
    if plane.width() != roi.width() || plane.height() != roi.height() {
        return Err(Error::DimensionMismatch {
            left_w: plane.width(),
            left_h: plane.height(),
            right_w: roi.width(),
            right_h: roi.height(),
        });
    }
    let mut counts = [0u64; 256];
    for (&v, &inside) in plane.data().iter().zip(roi.data()) {
        if inside {
            counts[v as usize] += 1;
        }
    }
    let hist = Histogram256::from_counts(counts);
    if hist.total == 0 {
        return Err(Error::EmptyRoi);
    }
    Ok(hist)
}

/// Compares `a * b` with `c * d` without overflow (192-bit intermediate).
fn cmp_widening(a: u128, b: u64, c: u128, d: u64) -> Ordering {
    fn split_mul(x: u128, m: u64) -> (u128, u128) {
        let lo = (x & u128::from(u64::MAX)) * u128::from(m);
        let hi = (x >> 64) * u128::from(m) + (lo >> 64);
        (hi, lo & u128::from(u64::MAX))
    }
    let (ah, al) = split_mul(a, b);
    let (ch, cl) = split_mul(c, d);
    ah.cmp(&ch).then(al.cmp(&cl))
}

/// The threshold `t` maximizing the between-class variance
/// `w0 * w1 * (mu0 - mu1)^2`, with class 0 holding values `<= t` and class 1
/// values `> t`. Among maximizers the smallest `t` wins; a histogram whose
/// mass sits in a single bin yields that bin's value.
pub fn otsu_threshold(hist: &Histogram256) -> Result<u8> {
    if hist.total == 0 {
        return Err(Error::InvalidArgument(
            "histogram total must be positive".into(),
        ));
    }
    if hist.total > MAX_TOTAL {
        return Err(Error::InvalidArgument(format!(
            "histogram total {} exceeds supported maximum {MAX_TOTAL}",
            hist.total
        )));
    }
    let nonzero: Vec<usize> = hist
        .counts
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(v, _)| v)
        .collect();
    if nonzero.len() == 1 {
        return Ok(nonzero[0] as u8);
    }

    let w: u128 = u128::from(hist.total);
    let s: u128 = hist
        .counts
        .iter()
        .enumerate()
        .map(|(v, &c)| v as u128 * u128::from(c))
        .sum();

    // Between-class variance at t is (s0*w - w0*s)^2 / (w0*w1), up to the
    // constant factor w^2; fractions are compared by cross-multiplication.
    let mut best_t = 0u8;
    let mut best_num: u128 = 0; // (s0*w - w0*s)^2
    let mut best_den: u64 = 1; // w0*w1
    let mut have_best = false;
    let mut w0: u128 = 0;
    let mut s0: u128 = 0;
    for t in 0..=255usize {
        w0 += u128::from(hist.counts[t]);
        s0 += t as u128 * u128::from(hist.counts[t]);
        let w1 = w - w0;
        if w0 == 0 || w1 == 0 {
            continue;
        }
        let diff = (s0 * w).abs_diff(w0 * s);
        let num = diff * diff;
        let den = (w0 * w1) as u64;
        if !have_best || cmp_widening(num, best_den, best_num, den) == Ordering::Greater {
            have_best = true;
            best_t = t as u8;
            best_num = num;
            best_den = den;
        }
    }
    debug_assert!(have_best);
    Ok(best_t)
}

/// Between-class variance at threshold `t`, in intensity-squared units.
/// Exposed for assertions and diagnostics; the selector itself compares
/// exact integer fractions.
pub fn between_class_variance(hist: &Histogram256, t: u8) -> f64 {
    let mut w0 = 0u64;
    let mut s0 = 0u64;
    for v in 0..=t as usize {
        w0 += hist.counts[v];
        s0 += v as u64 * hist.counts[v];
    }
    let w1 = hist.total - w0;
    if w0 == 0 || w1 == 0 {
        return 0.0;
    }
    let s: u64 = hist
        .counts
        .iter()
        .enumerate()
        .map(|(v, &c)| v as u64 * c)
        .sum();
    let mu0 = s0 as f64 / w0 as f64;
    let mu1 = (s - s0) as f64 / w1 as f64;
    let total = hist.total as f64;
    (w0 as f64 / total) * (w1 as f64 / total) * (mu0 - mu1) * (mu0 - mu1)
}
