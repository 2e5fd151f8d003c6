//! Region-of-interest construction: exclude dark border/corner artifacts and
//! hair so they play no part in the segmentation itself.
//!
//! Dark pixels are found on the HSV value band and kept as artifacts only
//! when their connected component sits on the image border or in a corner; a
//! dark lesion in the middle of the frame is left alone. Hair is detected as
//! the thresholded response of a bottom-hat filter on the red band.

use crate::config::PipelineConfig;
use crate::error::{Error, Result};
use crate::morphology::{bottom_hat, dilate_mask, disk_se};
use crate::raster::{
    extract_red_band, extract_value_band, quantize_band, BinaryMask, GrayPlane, RgbImage,
};
use crate::segment::{histogram, label_components, otsu_threshold};

/// The ROI and the two exclusion masks it was built from.
///
/// Invariant: `roi = NOT(dark_artifact OR hair)` pixelwise. When a coverage
/// fallback discards an exclusion, the corresponding mask is cleared so the
/// invariant keeps holding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoiMask {
    /// True where the pixel participates in segmentation.
    pub roi: BinaryMask,
    /// Dark border/corner artifact pixels.
    pub dark_artifact: BinaryMask,
    /// Hair pixels.
    pub hair: BinaryMask,
}

impl RoiMask {
    fn compose(dark_artifact: BinaryMask, hair: BinaryMask) -> Self {
        let roi = dark_artifact.or(&hair).not();
        Self {
            roi,
            dark_artifact,
            hair,
        }
    }
}

/// True where the value band is strictly below `dark_threshold`.
pub fn dark_mask(vband: &GrayPlane, dark_threshold: f64) -> Result<BinaryMask> {
    if !(dark_threshold > 0.0 && dark_threshold < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "dark_threshold must lie in (0,1), got {dark_threshold}"
        )));
    }
    let data = vband.data().iter().map(|&v| v < dark_threshold).collect();
    Ok(BinaryMask::new(vband.width(), vband.height(), data))
}

/// Keeps the 8-connected components of `dark` that qualify as border or
/// corner artifacts; interior dark components (such as the lesion itself)
/// are dropped.
///
/// A component is an artifact iff any of:
/// (a) at least `border_member_frac` of its pixels lie in the border band,
/// (b) it covers at least `corner_cover_frac` of one of the four corner
///     windows, or
/// (c) it touches two or more distinct image edges.
pub fn border_artifact_mask(dark: &BinaryMask, cfg: &PipelineConfig) -> BinaryMask {
    let (w, h) = (dark.width(), dark.height());
    let labels = label_components(dark);
    if labels.count() == 0 {
        return BinaryMask::filled(w, h, false);
    }

    let band = cfg.border_band_px(w, h);
    let corner_w = ((cfg.corner_window_frac * w as f64).round() as u32).clamp(1, w);
    let corner_h = ((cfg.corner_window_frac * h as f64).round() as u32).clamp(1, h);

    let n = labels.count() as usize;
    let mut in_band = vec![0u64; n + 1];
    // Corner order: NW, NE, SW, SE.
    let mut in_corner = vec![[0u64; 4]; n + 1];
    let mut edges = vec![[false; 4]; n + 1];

    for y in 0..h {
        for x in 0..w {
            let label = labels.labels()[(y * w + x) as usize] as usize;
            if label == 0 {
                continue;
            }
            let dist_to_edge = x.min(y).min(w - 1 - x).min(h - 1 - y);
            if dist_to_edge < band {
                in_band[label] += 1;
            }
            let west = x < corner_w;
            let east = x >= w - corner_w;
            let north = y < corner_h;
            let south = y >= h - corner_h;
            if north && west {
                in_corner[label][0] += 1;
            }
            if north && east {
                in_corner[label][1] += 1;
            }
            if south && west {
                in_corner[label][2] += 1;
            }
            if south && east {
                in_corner[label][3] += 1;
            }
            if x == 0 {
                edges[label][0] = true;
            }
            if x == w - 1 {
                edges[label][1] = true;
            }
            if y == 0 {
                edges[label][2] = true;
            }
            if y == h - 1 {
                edges[label][3] = true;
            }
        }
    }

    let corner_area = corner_w as u64 * corner_h as u64;
    let mut is_artifact = vec![false; n + 1];
    for label in 1..=n {
        let area = labels.areas()[label];
        let band_frac = in_band[label] as f64 / area as f64;
        let corner_hit = in_corner[label]
            .iter()
            .any(|&c| c as f64 / corner_area as f64 >= cfg.corner_cover_frac);
        let edge_count = edges[label].iter().filter(|&&e| e).count();
        is_artifact[label] = band_frac >= cfg.border_member_frac || corner_hit || edge_count >= 2;
    }

    let data = labels
        .labels()
        .iter()
        .map(|&l| is_artifact[l as usize])
        .collect();
    BinaryMask::new(w, h, data)
}

/// Hair mask: bottom-hat response on the red band, thresholded by Otsu over
/// its own histogram, then dilated by one pixel. A response covering more
/// than `hair_abort_frac` of the image is texture rather than hair and the
/// mask is discarded.
pub fn hair_mask(red: &GrayPlane, cfg: &PipelineConfig) -> BinaryMask {
    let (w, h) = (red.width(), red.height());
    let se = disk_se(cfg.hair_se_radius(w, h)).expect("config radius >= 1");
    let response = quantize_band(&bottom_hat(red, &se));

    let full = BinaryMask::filled(w, h, true);
    let hist = histogram(&response, &full).expect("full roi is nonempty");
    let threshold = otsu_threshold(&hist).expect("histogram total > 0");

    let data: Vec<bool> = response.data().iter().map(|&v| v > threshold).collect();
    let fg = BinaryMask::new(w, h, data);
    let coverage = fg.count_true() as f64 / (w as u64 * h as u64) as f64;
    if fg.is_empty() || coverage > cfg.hair_abort_frac {
        return BinaryMask::filled(w, h, false);
    }
    dilate_mask(&fg, &disk_se(1).expect("radius 1"))
}

/// Builds the ROI for an image: dark border/corner artifacts and hair are
/// excluded. If the surviving ROI covers less than `roi_fallback_frac` of the
/// image the dark-artifact exclusion is dropped, and if that still is not
/// enough the ROI becomes the whole image.
pub fn build_roi(img: &RgbImage, cfg: &PipelineConfig) -> Result<RoiMask> {
    let vband = extract_value_band(img);
    let dark = dark_mask(&vband, cfg.dark_threshold)?;
    let artifact = border_artifact_mask(&dark, cfg);
    let hair = hair_mask(&extract_red_band(img), cfg);

    let total = img.pixel_count() as f64;
    let min_coverage = cfg.roi_fallback_frac * total;

    let first = RoiMask::compose(artifact, hair);
    if first.roi.count_true() as f64 >= min_coverage {
        return Ok(first);
    }

    let empty = BinaryMask::filled(img.width(), img.height(), false);
    let second = RoiMask::compose(empty.clone(), first.hair);
    if second.roi.count_true() as f64 >= min_coverage {
        return Ok(second);
    }

    Ok(RoiMask::compose(empty.clone(), empty))
}
