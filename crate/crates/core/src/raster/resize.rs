//! Area-averaged downscaling and nearest-neighbor mask upsampling.
//!
//! Inputs can exceed 4000 px on a side; the pipeline processes a bounded
//! working copy and upsamples the final mask back to native resolution, so
//! evaluation always happens at the original dimensions.

use super::{BinaryMask, RgbImage};

/// Downscales so that `max(width, height) == max_side`, preserving aspect
/// ratio to within one pixel, using exact box (area) averaging. Images already
/// within the bound are returned unchanged.
pub fn downscale(img: &RgbImage, max_side: u32) -> RgbImage {
    assert!(max_side >= 16, "max_side must be at least 16");
    let (w, h) = (img.width(), img.height());
    let longest = w.max(h);
    if longest <= max_side {
        return img.clone();
    }
    let scale = max_side as f64 / longest as f64;
    let out_w = ((w as f64 * scale).round() as u32).max(1);
    let out_h = ((h as f64 * scale).round() as u32).max(1);

    let mut data = Vec::with_capacity(out_w as usize * out_h as usize * 3);
    let src = img.data();
    let sw = w as usize;
    for oy in 0..out_h {
        let y0 = oy as f64 * h as f64 / out_h as f64;
        let y1 = (oy + 1) as f64 * h as f64 / out_h as f64;
        for ox in 0..out_w {
            let x0 = ox as f64 * w as f64 / out_w as f64;
            let x1 = (ox + 1) as f64 * w as f64 / out_w as f64;
            let mut acc = [0.0f64; 3];
            let mut area = 0.0f64;
            let mut sy = y0.floor() as usize;
            while (sy as f64) < y1 {
                let wy = (y1.min(sy as f64 + 1.0) - y0.max(sy as f64)).max(0.0);
                if wy > 0.0 {
                    let mut sx = x0.floor() as usize;
                    while (sx as f64) < x1 {
                        let wx = (x1.min(sx as f64 + 1.0) - x0.max(sx as f64)).max(0.0);
                        if wx > 0.0 {
                            let wgt = wx * wy;
                            let i = (sy * sw + sx) * 3;
                            acc[0] += wgt * src[i] as f64;
                            acc[1] += wgt * src[i + 1] as f64;
                            acc[2] += wgt * src[i + 2] as f64;
                            area += wgt;
                        }
                        sx += 1;
                    }
                }
                sy += 1;
            }
            for c in acc {
                data.push((c / area).round().clamp(0.0, 255.0) as u8);
            }
        }
    }
    RgbImage::new(out_w, out_h, data)
}

/// Nearest-neighbor upsampling of a mask to `target_w x target_h`.
/// Target dimensions must not be smaller than the mask's.
pub fn upscale_mask(mask: &BinaryMask, target_w: u32, target_h: u32) -> BinaryMask {
    assert!(
        target_w >= mask.width() && target_h >= mask.height(),
        "target dimensions must be >= mask dimensions"
    );
    if target_w == mask.width() && target_h == mask.height() {
        return mask.clone();
    }
    let (sw, sh) = (mask.width() as u64, mask.height() as u64);
    BinaryMask::from_fn(target_w, target_h, |x, y| {
        let sx = (x as u64 * sw / target_w as u64) as u32;
        let sy = (y as u64 * sh / target_h as u64) as u32;
        mask.get(sx, sy)
    })
}
