//! Candidate binarization, automatic band selection, and the full
//! segmentation pipeline: build the ROI, binarize the normalized-red and
//! inverted value bands with an ROI-restricted Otsu threshold, keep each
//! band's largest connected component, score the two candidates, and adopt
//! the convex hull of the winner as the final mask.

mod components;
mod hull;
mod otsu;

pub use components::{label_components, largest_component, ComponentLabels};
pub use hull::convex_hull_mask;
pub use otsu::{between_class_variance, histogram, otsu_threshold, Histogram256};

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::config::PipelineConfig;
use crate::error::{Error, Result};
use crate::morphology::{close_mask, dilate_mask, disk_se};
use crate::raster::{
    downscale, extract_normalized_red, extract_value_band, invert, quantize_band, upscale_mask,
    BinaryMask, Gray8Plane, GrayPlane, RgbImage,
};
use crate::roi::{build_roi, dark_mask, RoiMask};

/// The two candidate segmentation bands.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Band {
    /// Red band of normalized RGB.
    Rnorm,
    /// HSV value band (inverted before binarization).
    Value,
}

impl std::fmt::Display for Band {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Band::Rnorm => f.write_str("rnorm"),
            Band::Value => f.write_str("value"),
        }
    }
}

/// Outcome of comparing the two candidate segmentations.
///
/// `selected` is `Rnorm` exactly when `score_rnorm >= score_value`; the
/// normalized-red band wins ties.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BandChoice {
    pub selected: Band,
    pub score_rnorm: f64,
    pub score_value: f64,
}

/// Wall-clock stage durations, in milliseconds.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Timings {
    pub downscale_ms: f64,
    pub roi_ms: f64,
    pub bands_ms: f64,
    pub binarize_ms: f64,
    pub components_ms: f64,
    pub select_ms: f64,
    pub upscale_ms: f64,
    pub hull_ms: f64,
    pub total_ms: f64,
}

/// Final product of the pipeline.
///
/// `initial_mask` (the winning band's largest component) and `final_mask`
/// (its convex hull) are at the original image dimensions and satisfy
/// `initial_mask ⊆ final_mask`; `final_mask` equals its own hull and is
/// nonempty. `roi` is kept at the working resolution for diagnostics.
#[derive(Debug, Clone)]
pub struct SegmentationResult {
    pub final_mask: BinaryMask,
    pub initial_mask: BinaryMask,
    pub band: BandChoice,
    pub roi: RoiMask,
    pub otsu_threshold_used: u8,
    pub timings: Timings,
}

/// Working-resolution intermediates, captured for debug-stage dumps.
#[derive(Debug, Clone)]
pub struct StageArtifacts {
    pub band_rnorm: Gray8Plane,
    pub band_value_inverted: Gray8Plane,
    pub binarization_rnorm: BinaryMask,
    pub binarization_value: BinaryMask,
    pub component_rnorm: Option<BinaryMask>,
    pub component_value: Option<BinaryMask>,
}

/// Binarizes one band inside the ROI.
///
/// The band is quantized to 256 levels and thresholded with Otsu computed
/// over ROI pixels only. The foreground is the Otsu class with fewer ROI
/// pixels (the lesion covers less than half the ROI in any sane framing);
/// non-ROI pixels are forced to background. A binary closing with
/// `gap_close_radius` then bridges hair-induced gaps; the closing may spill
/// only into pixels within that radius of the ROI, so excluded borders stay
/// excluded.
pub fn binarize_band(
    band: &GrayPlane,
    roi: &BinaryMask,
    cfg: &PipelineConfig,
) -> Result<(BinaryMask, u8)> {
    let quantized = quantize_band(band);
    binarize_quantized(&quantized, roi, cfg)
}

fn binarize_quantized(
    quantized: &Gray8Plane,
    roi: &BinaryMask,
    cfg: &PipelineConfig,
) -> Result<(BinaryMask, u8)> {
    let hist = histogram(quantized, roi)?;
    let threshold = otsu_threshold(&hist)?;

    let low_count: u64 = hist.counts()[..=threshold as usize].iter().sum();
    let high_count = hist.total() - low_count;
    let minority_is_low = low_count < high_count;

    let data: Vec<bool> = quantized
        .data()
        .iter()
        .zip(roi.data())
        .map(|(&v, &inside)| {
            inside
                && (if minority_is_low {
                    v <= threshold
                } else {
                    v > threshold
                })
        })
        .collect();
    let foreground = BinaryMask::new(quantized.width(), quantized.height(), data);
    if foreground.is_empty() {
        return Ok((foreground, threshold));
    }

    let se = disk_se(cfg.gap_close_radius).expect("config radius >= 1");
    let domain = dilate_mask(roi, &se);
    let closed = close_mask(&foreground, &se).and(&domain);
    Ok((closed, threshold))
}

/// Plausibility score of a candidate mask: solidity (area over hull area)
/// times a penalty for hugging the ROI boundary times an area-plausibility
/// factor. Empty masks score 0.
pub fn score_mask(mask: &BinaryMask, roi: &BinaryMask, cfg: &PipelineConfig) -> f64 {
    let area = mask.count_true();
    if area == 0 {
        return 0.0;
    }
    let hull_area = convex_hull_mask(mask)
        .expect("mask is nonempty")
        .count_true();
    let solidity = area as f64 / hull_area as f64;

    let ring = roi.inner_boundary();
    let on_ring = mask.and(&ring).count_true();
    let border_penalty = 1.0 - on_ring as f64 / area as f64;

    let roi_area = roi.count_true();
    let area_frac = if roi_area == 0 {
        0.0
    } else {
        area as f64 / roi_area as f64
    };
    let plausible = area_frac >= cfg.area_frac_min && area_frac <= cfg.area_frac_max;
    let area_plausibility = if plausible { 1.0 } else { cfg.area_penalty };

    solidity * border_penalty * area_plausibility
}

/// Scores both candidate masks and picks the band; ties go to normalized red.
pub fn select_band(
    mask_rnorm: &BinaryMask,
    mask_value: &BinaryMask,
    roi: &BinaryMask,
    cfg: &PipelineConfig,
) -> BandChoice {
    let score_rnorm = score_mask(mask_rnorm, roi, cfg);
    let score_value = score_mask(mask_value, roi, cfg);
    let selected = if score_rnorm >= score_value {
        Band::Rnorm
    } else {
        Band::Value
    };
    BandChoice {
        selected,
        score_rnorm,
        score_value,
    }
}

/// Runs the full pipeline on one image.
pub fn segment_image(img: &RgbImage, cfg: &PipelineConfig) -> Result<SegmentationResult> {
    run_pipeline(img, cfg).map(|(result, _)| result)
}

/// Like [`segment_image`] but also returns the working-resolution
/// intermediates for debug dumps.
pub fn segment_image_traced(
    img: &RgbImage,
    cfg: &PipelineConfig,
) -> Result<(SegmentationResult, StageArtifacts)> {
    run_pipeline(img, cfg)
}

fn run_pipeline(
    img: &RgbImage,
    cfg: &PipelineConfig,
) -> Result<(SegmentationResult, StageArtifacts)> {
    cfg.validate()?;
    if img.width() < 16 || img.height() < 16 {
        return Err(Error::InvalidArgument(format!(
            "image must be at least 16x16, got {}x{}",
            img.width(),
            img.height()
        )));
    }

    let start = Instant::now();
    let mut timings = Timings::default();

    let stage = Instant::now();
    let working = if cfg.max_side == 0 {
        img.clone()
    } else {
        downscale(img, cfg.max_side)
    };
    timings.downscale_ms = ms(stage);

    let stage = Instant::now();
    let roi = build_roi(&working, cfg)?;
    timings.roi_ms = ms(stage);

    let stage = Instant::now();
    let rnorm = extract_normalized_red(&working);
    let value_inverted = invert(&extract_value_band(&working));
    let band_rnorm = quantize_band(&rnorm);
    let band_value_inverted = quantize_band(&value_inverted);
    timings.bands_ms = ms(stage);

    let stage = Instant::now();
    let (bin_rnorm, threshold_rnorm) = binarize_quantized(&band_rnorm, &roi.roi, cfg)?;
    let (bin_value, threshold_value) = binarize_quantized(&band_value_inverted, &roi.roi, cfg)?;
    timings.binarize_ms = ms(stage);

    let stage = Instant::now();
    let component_rnorm = largest_component(&label_components(&bin_rnorm)).ok();
    let component_value = largest_component(&label_components(&bin_value)).ok();
    timings.components_ms = ms(stage);

    let empty = BinaryMask::filled(working.width(), working.height(), false);
    let stage = Instant::now();
    let band = select_band(
        component_rnorm.as_ref().unwrap_or(&empty),
        component_value.as_ref().unwrap_or(&empty),
        &roi.roi,
        cfg,
    );
    timings.select_ms = ms(stage);

    // Fallback chain; the result must always be nonempty. The ROI itself is
    // nonempty by construction, so the chain terminates at its largest
    // component in the worst case.
    let (selected_component, other_component, selected_threshold, other_threshold) =
        match band.selected {
            Band::Rnorm => (
                &component_rnorm,
                &component_value,
                threshold_rnorm,
                threshold_value,
            ),
            Band::Value => (
                &component_value,
                &component_rnorm,
                threshold_value,
                threshold_rnorm,
            ),
        };
    let (initial_working, threshold_used) = if let Some(mask) = selected_component {
        (mask.clone(), selected_threshold)
    } else if let Some(mask) = other_component {
        (mask.clone(), other_threshold)
    } else if !roi.roi.is_empty() {
        let roi_largest = largest_component(&label_components(&roi.roi)).expect("roi is nonempty");
        (roi_largest, selected_threshold)
    } else {
        let vband = extract_value_band(&working);
        let dark = dark_mask(&vband, cfg.dark_threshold)?;
        let mask = if dark.is_empty() {
            BinaryMask::filled(working.width(), working.height(), true)
        } else {
            dark
        };
        (mask, selected_threshold)
    };

    let stage = Instant::now();
    let initial_mask = upscale_mask(&initial_working, img.width(), img.height());
    timings.upscale_ms = ms(stage);

    // The hull runs at native resolution so the final mask equals its own
    // hull at the dimensions it is evaluated at.
    let stage = Instant::now();
    let final_mask = convex_hull_mask(&initial_mask)?;
    timings.hull_ms = ms(stage);

    timings.total_ms = ms(start);

    let result = SegmentationResult {
        final_mask,
        initial_mask,
        band,
        roi,
        otsu_threshold_used: threshold_used,
        timings,
    };
    let artifacts = StageArtifacts {
        band_rnorm,
        band_value_inverted,
        binarization_rnorm: bin_rnorm,
        binarization_value: bin_value,
        component_rnorm,
        component_value,
    };
    Ok((result, artifacts))
}

fn ms(since: Instant) -> f64 {
    since.elapsed().as_secs_f64() * 1e3
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> PipelineConfig {
        PipelineConfig::default()
    }

    fn disc_mask(w: u32, h: u32, cx: f64, cy: f64, r: f64) -> BinaryMask {
        BinaryMask::from_fn(w, h, |x, y| {
            let (dx, dy) = (x as f64 - cx, y as f64 - cy);
            dx * dx + dy * dy <= r * r
        })
    }

    fn jaccard(a: &BinaryMask, b: &BinaryMask) -> f64 {
        let inter = a.and(b).count_true() as f64;
        let union = a.or(b).count_true() as f64;
        if union == 0.0 {
            1.0
        } else {
            inter / union
        }
    }

    #[test]
    fn binarize_recovers_dark_disc() {
        // Dark disc (V ~ 0.2) on a bright field (V ~ 0.9), inverted V band:
        // foreground is the minority class and matches the disc.
        let w = 100;
        let truth = disc_mask(w, w, 50.0, 50.0, 25.0);
        let band = GrayPlane::from_fn(w, w, |x, y| {
            if truth.get(x, y) {
                1.0 - 0.2
            } else {
                1.0 - 0.9
            }
        });
        let roi = BinaryMask::filled(w, w, true);
        let (mask, _) = binarize_band(&band, &roi, &cfg()).unwrap();
        assert!(jaccard(&mask, &truth) >= 0.95);
    }

    #[test]
    fn gap_closing_bridges_hair_slice() {
        // A lesion split by a 3-px vertical gap that is also excluded from
        // the ROI, as hair exclusion would do.
        let w = 80;
        let lesion = BinaryMask::from_fn(w, w, |x, y| {
            let (dx, dy) = (x as f64 - 40.0, y as f64 - 40.0);
            dx * dx + dy * dy <= 22.0 * 22.0
        });
        let gap = |x: u32| (39..=41).contains(&x);
        let band = GrayPlane::from_fn(w, w, |x, y| {
            if lesion.get(x, y) && !gap(x) {
                0.8
            } else {
                0.1
            }
        });
        let roi = BinaryMask::from_fn(w, w, |x, _| !gap(x));
        let (mask, _) = binarize_band(&band, &roi, &cfg()).unwrap();
        let labels = label_components(&mask);
        assert_eq!(labels.count(), 1, "gap must be bridged into one component");
        assert!(mask.get(40, 40), "bridged pixels inside the gap");
    }

    #[test]
    fn constant_band_yields_empty_mask() {
        let band = GrayPlane::constant(32, 32, 0.5);
        let roi = BinaryMask::filled(32, 32, true);
        let (mask, _) = binarize_band(&band, &roi, &cfg()).unwrap();
        assert!(mask.is_empty());
    }

    #[test]
    fn score_of_centered_disc_is_near_one() {
        let w = 120;
        let roi = BinaryMask::filled(w, w, true);
        let disc = disc_mask(w, w, 60.0, 60.0, 30.0);
        let score = score_mask(&disc, &roi, &cfg());
        assert!((score - 1.0).abs() <= 0.05, "score {score}");
    }

    #[test]
    fn disc_on_roi_edge_scores_lower() {
        let w = 120;
        let roi = BinaryMask::filled(w, w, true);
        let centered = disc_mask(w, w, 60.0, 60.0, 30.0);
        let touching = disc_mask(w, w, 0.0, 60.0, 30.0);
        let s_centered = score_mask(&centered, &roi, &cfg());
        let s_touching = score_mask(&touching, &roi, &cfg());
        assert!(s_touching < s_centered);
    }

    #[test]
    fn empty_mask_scores_zero() {
        let roi = BinaryMask::filled(16, 16, true);
        let empty = BinaryMask::filled(16, 16, false);
        assert_eq!(score_mask(&empty, &roi, &cfg()), 0.0);
    }

    #[test]
    fn select_band_prefers_plausible_mask() {
        let w = 100;
        let roi = BinaryMask::filled(w, w, true);
        let good = disc_mask(w, w, 50.0, 50.0, 25.0);
        let mut degenerate = BinaryMask::filled(w, w, false);
        degenerate.set(3, 3, true);
        let choice = select_band(&good, &degenerate, &roi, &cfg());
        assert_eq!(choice.selected, Band::Rnorm);
        let choice = select_band(&degenerate, &good, &roi, &cfg());
        assert_eq!(choice.selected, Band::Value);
    }

    #[test]
    fn tie_selects_rnorm() {
        let w = 50;
        let roi = BinaryMask::filled(w, w, true);
        let disc = disc_mask(w, w, 25.0, 25.0, 12.0);
        let choice = select_band(&disc, &disc, &roi, &cfg());
        assert_eq!(choice.selected, Band::Rnorm);
        assert_eq!(choice.score_rnorm, choice.score_value);
    }

    #[test]
    fn tiny_image_is_rejected() {
        let img = RgbImage::from_fn(8, 8, |_, _| [100, 100, 100]);
        assert!(matches!(
            segment_image(&img, &cfg()),
            Err(Error::InvalidArgument(_))
        ));
    }
}
