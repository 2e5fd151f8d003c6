//! Color-band extraction and sample-level transforms.
//!
//! The pipeline consumes two chromatic views of the input: the red
//! chromaticity coordinate `R/(R+G+B)` of normalized RGB, which is invariant
//! to uniform intensity scaling, and the HSV value coordinate
//! `max(R,G,B)/255`. Only those single bands are needed, so no full color
//! space conversion is performed.

use super::{Gray8Plane, GrayPlane, RgbImage};

/// HSV value band: per pixel, `max(R,G,B) / 255`.
pub fn extract_value_band(img: &RgbImage) -> GrayPlane {
    let data = img
        .data()
        .chunks_exact(3)
        .map(|p| p[0].max(p[1]).max(p[2]) as f64 / 255.0)
        .collect();
    GrayPlane::new(img.width(), img.height(), data)
}

/// Red band of normalized RGB: per pixel, `R / (R+G+B)`.
///
/// Black pixels have no defined chromaticity; they map to the neutral 1/3 so
/// dark borders do not produce spurious extremes.
pub fn extract_normalized_red(img: &RgbImage) -> GrayPlane {
    let data = img
        .data()
        .chunks_exact(3)
        .map(|p| {
            let sum = p[0] as u32 + p[1] as u32 + p[2] as u32;
            if sum == 0 {
                1.0 / 3.0
            } else {
                p[0] as f64 / sum as f64
            }
        })
        .collect();
    GrayPlane::new(img.width(), img.height(), data)
}

/// Plain red band: per pixel, `R / 255`.
pub fn extract_red_band(img: &RgbImage) -> GrayPlane {
    let data = img
        .data()
        .chunks_exact(3)
        .map(|p| p[0] as f64 / 255.0)
        .collect();
    GrayPlane::new(img.width(), img.height(), data)
}

/// Per sample `s -> 1 - s`.
pub fn invert(plane: &GrayPlane) -> GrayPlane {
    let data = plane.data().iter().map(|&s| 1.0 - s).collect();
    GrayPlane::new(plane.width(), plane.height(), data)
}

/// Per sample `s -> round(s * 255)`, half away from zero.
///
/// Composing with [`extract_value_band`] or [`extract_red_band`] is lossless
/// on 8-bit sources.
pub fn quantize_band(plane: &GrayPlane) -> Gray8Plane {
    // f64::round is half-away-from-zero; samples are in [0,1] so the result
    // cannot exceed 255.
    let data = plane
        .data()
        .iter()
        .map(|&s| (s * 255.0).round() as u8)
        .collect();
    Gray8Plane::new(plane.width(), plane.height(), data)
}
