//! Grayscale and binary mathematical morphology with disk structuring
//! elements.
//!
//! Border handling is restriction to the image domain: out-of-bounds
//! neighbors are skipped rather than padded, so no artificial bright or dark
//! frame leaks into the ROI step.

use crate::error::{Error, Result};
use crate::raster::{BinaryMask, GrayPlane};

/// Neighborhood over which morphological min/max is taken.
///
/// The offset set always contains `(0, 0)` and is symmetric under negation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructuringElement {
    radius: u32,
    offsets: Vec<(i32, i32)>,
}

impl StructuringElement {
    pub fn radius(&self) -> u32 {
        self.radius
    }

    /// The `(dx, dy)` offsets, in row-major order.
    pub fn offsets(&self) -> &[(i32, i32)] {
        &self.offsets
    }
}

/// Disk of the given radius: all offsets with `dx^2 + dy^2 <= radius^2`.
pub fn disk_se(radius: u32) -> Result<StructuringElement> {
    if radius < 1 {
        return Err(Error::InvalidArgument(format!(
            "structuring element radius must be >= 1, got {radius}"
        )));
    }
    let r = radius as i64;
    let mut offsets = Vec::new();
    for dy in -r..=r {
        for dx in -r..=r {
            if dx * dx + dy * dy <= r * r {
                offsets.push((dx as i32, dy as i32));
            }
        }
    }
    Ok(StructuringElement { radius, offsets })
}

fn morph(plane: &GrayPlane, se: &StructuringElement, pick: impl Fn(f64, f64) -> f64) -> GrayPlane {
    let (w, h) = (plane.width() as i64, plane.height() as i64);
    let src = plane.data();
    let mut out = Vec::with_capacity(src.len());
    for y in 0..h {
        for x in 0..w {
            let mut acc = src[(y * w + x) as usize];
            for &(dx, dy) in se.offsets() {
                let (nx, ny) = (x + dx as i64, y + dy as i64);
                if nx < 0 || ny < 0 || nx >= w || ny >= h {
                    continue;
                }
                acc = pick(acc, src[(ny * w + nx) as usize]);
            }
            out.push(acc);
        }
    }
    GrayPlane::new(plane.width(), plane.height(), out)
}

/// Per-pixel minimum over the in-bounds structuring-element neighborhood.
pub fn erode(plane: &GrayPlane, se: &StructuringElement) -> GrayPlane {
    morph(plane, se, f64::min)
}

/// Per-pixel maximum over the in-bounds structuring-element neighborhood.
pub fn dilate(plane: &GrayPlane, se: &StructuringElement) -> GrayPlane {
    morph(plane, se, f64::max)
}

/// Morphological closing: dilation followed by erosion.
pub fn close(plane: &GrayPlane, se: &StructuringElement) -> GrayPlane {
    erode(&dilate(plane, se), se)
}

/// Closing minus the input; highlights thin dark structures such as hair.
/// Closing is extensive, so the difference is clamped at 0 only to absorb
/// floating-point dust.
pub fn bottom_hat(plane: &GrayPlane, se: &StructuringElement) -> GrayPlane {
    let closed = close(plane, se);
    let data = closed
        .data()
        .iter()
        .zip(plane.data())
        .map(|(&c, &s)| (c - s).max(0.0))
        .collect();
    GrayPlane::new(plane.width(), plane.height(), data)
}

/// Binary closing, performed as grayscale closing of a {0,1} plane followed
/// by thresholding at 0.5.
pub fn close_mask(mask: &BinaryMask, se: &StructuringElement) -> BinaryMask {
    let plane = mask_to_plane(mask);
    let closed = close(&plane, se);
    plane_to_mask(&closed)
}

/// Binary dilation via the same grayscale route as [`close_mask`].
pub fn dilate_mask(mask: &BinaryMask, se: &StructuringElement) -> BinaryMask {
    let plane = mask_to_plane(mask);
    let dilated = dilate(&plane, se);
    plane_to_mask(&dilated)
}

fn mask_to_plane(mask: &BinaryMask) -> GrayPlane {
    let data = mask
        .data()
        .iter()
        .map(|&b| if b { 1.0 } else { 0.0 })
        .collect();
    GrayPlane::new(mask.width(), mask.height(), data)
}

fn plane_to_mask(plane: &GrayPlane) -> BinaryMask {
    let data = plane.data().iter().map(|&s| s > 0.5).collect();
    BinaryMask::new(plane.width(), plane.height(), data)
}
