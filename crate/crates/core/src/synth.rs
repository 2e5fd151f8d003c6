//! Deterministic synthetic dermoscopy-like scenes.
//!
//! Tests, benchmarks, and fixtures need images with known ground truth:
//! an elliptical lesion on a skin-toned field, optionally decorated with
//! dark corner/border artifacts, hair strokes, illumination ramps, and a
//! ruler tab. Everything is driven by a tiny splitmix generator so a seed
//! fully determines the scene on every platform.

use crate::raster::{BinaryMask, RgbImage};

/// Base skin tone.
pub const SKIN: [u8; 3] = [205, 160, 135];
/// Lesion tone: darker and redder-chromatic than skin.
pub const LESION: [u8; 3] = [95, 62, 48];
/// Hair tone.
pub const HAIR: [u8; 3] = [45, 32, 28];
/// Dark border/corner artifact tone (below the default dark threshold).
pub const DARK_ARTIFACT: [u8; 3] = [28, 26, 30];
/// Ruler-tab tone: dark in both candidate bands but above the dark
/// threshold, so it survives into the binarizations.
pub const RULER: [u8; 3] = [100, 62, 50];

/// splitmix64; deterministic and dependency-free.
#[derive(Debug, Clone)]
pub struct Rng(u64);

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform in `[0, 1)`.
    pub fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    /// Uniform in `[lo, hi)`.
    pub fn range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.unit()
    }

    /// Uniform integer in `[-amp, amp]`.
    pub fn jitter(&mut self, amp: i32) -> i32 {
        (self.next_u64() % (2 * amp as u64 + 1)) as i32 - amp
    }
}

/// A generated image plus the ground truth of everything planted in it.
#[derive(Debug, Clone)]
pub struct Scene {
    pub image: RgbImage,
    /// Lesion pixels (excluding the ruler tab, if any).
    pub lesion: BinaryMask,
    /// Stamped hair-stroke pixels.
    pub hair: BinaryMask,
    /// Planted dark border/corner pixels.
    pub dark_region: BinaryMask,
}

/// Builder for synthetic scenes. Order matters: decorations paint over
/// whatever is already there.
pub struct SceneBuilder {
    width: u32,
    height: u32,
    rng: Rng,
    image: RgbImage,
    lesion: BinaryMask,
    hair: BinaryMask,
    dark_region: BinaryMask,
}

impl SceneBuilder {
    /// Noisy skin-toned field.
    pub fn new(width: u32, height: u32, seed: u64) -> Self {
        let mut rng = Rng::new(seed);
        let image = RgbImage::from_fn(width, height, |_, _| noisy(SKIN, &mut rng, 8));
        Self {
            width,
            height,
            rng,
            image,
            lesion: BinaryMask::filled(width, height, false),
            hair: BinaryMask::filled(width, height, false),
            dark_region: BinaryMask::filled(width, height, false),
        }
    }

    /// Paints an elliptical lesion. Fractions are relative to the image
    /// dimensions; `angle` is in radians.
    pub fn lesion(self, cx: f64, cy: f64, rx: f64, ry: f64, angle: f64) -> Self {
        self.lesion_with_color(cx, cy, rx, ry, angle, LESION)
    }

    /// Like [`SceneBuilder::lesion`] with an explicit tone, e.g. one that
    /// differs from skin in brightness but not chromaticity.
    pub fn lesion_with_color(
        mut self,
        cx: f64,
        cy: f64,
        rx: f64,
        ry: f64,
        angle: f64,
        color: [u8; 3],
    ) -> Self {
        let (w, h) = (self.width as f64, self.height as f64);
        let (cx, cy) = (cx * w, cy * h);
        let (rx, ry) = (rx * w, ry * h);
        let (sin, cos) = angle.sin_cos();
        for y in 0..self.height {
            for x in 0..self.width {
                let dx = x as f64 - cx;
                let dy = y as f64 - cy;
                let u = (cos * dx + sin * dy) / rx;
                let v = (-sin * dx + cos * dy) / ry;
                if u * u + v * v <= 1.0 {
                    self.image.set_pixel(x, y, noisy(color, &mut self.rng, 6));
                    self.lesion.set(x, y, true);
                }
            }
        }
        self
    }

    /// Convenience: a randomly placed, sized, and rotated lesion that stays
    /// well inside the frame.
    pub fn random_lesion(mut self) -> Self {
        let cx = self.rng.range(0.40, 0.60);
        let cy = self.rng.range(0.40, 0.60);
        let rx = self.rng.range(0.16, 0.26);
        let ry = self.rng.range(0.14, 0.24);
        let angle = self.rng.range(0.0, std::f64::consts::PI);
        self.lesion(cx, cy, rx, ry, angle)
    }

    /// Dark quarter-disc in the top-left corner, radius as a fraction of
    /// `min(w, h)`.
    pub fn corner_disc(mut self, radius: f64) -> Self {
        let r = radius * self.width.min(self.height) as f64;
        for y in 0..self.height {
            for x in 0..self.width {
                if (x as f64).hypot(y as f64) <= r {
                    self.image
                        .set_pixel(x, y, noisy(DARK_ARTIFACT, &mut self.rng, 3));
                    self.dark_region.set(x, y, true);
                    self.lesion.set(x, y, false);
                }
            }
        }
        self
    }

    /// Dark frame of the given pixel width around the whole image.
    pub fn border_frame(mut self, band: u32) -> Self {
        for y in 0..self.height {
            for x in 0..self.width {
                let d = x.min(y).min(self.width - 1 - x).min(self.height - 1 - y);
                if d < band {
                    self.image
                        .set_pixel(x, y, noisy(DARK_ARTIFACT, &mut self.rng, 3));
                    self.dark_region.set(x, y, true);
                    self.lesion.set(x, y, false);
                }
            }
        }
        self
    }

    /// Stamps `count` dark two-pixel-wide strokes. Strokes stay a few pixels
    /// away from the image edges and never enter a planted dark region.
    pub fn hair_strokes(self, count: u32) -> Self {
        self.walk_strokes(count, 0)
    }

    /// Like [`SceneBuilder::hair_strokes`] but strokes also keep a Chebyshev
    /// clearance from the lesion, so gap closing cannot pull any stroke pixel
    /// back into the segmentation.
    pub fn hair_strokes_avoiding_lesion(self, count: u32, clearance: u32) -> Self {
        self.walk_strokes(count, clearance)
    }

    fn walk_strokes(mut self, count: u32, lesion_clearance: u32) -> Self {
        let margin = 6i64;
        let (w, h) = (self.width as i64, self.height as i64);
        let blocked = |s: &Self, px: i64, py: i64| -> bool {
            if s.dark_region.get(px as u32, py as u32) {
                return true;
            }
            let c = lesion_clearance as i64;
            if c > 0 {
                for ny in (py - c).max(0)..=(py + c).min(h - 1) {
                    for nx in (px - c).max(0)..=(px + c).min(w - 1) {
                        if s.lesion.get(nx as u32, ny as u32) {
                            return true;
                        }
                    }
                }
            }
            false
        };
        for _ in 0..count {
            let mut x = self.rng.range(0.25 * w as f64, 0.80 * w as f64);
            let mut y = self.rng.range(0.25 * h as f64, 0.80 * h as f64);
            let mut angle = self.rng.range(0.0, std::f64::consts::TAU);
            let len = self.rng.range(0.25, 0.45) * w.min(h) as f64;
            let mut travelled = 0.0;
            while travelled < len {
                let (ix, iy) = (x.round() as i64, y.round() as i64);
                if ix < margin || iy < margin || ix + 1 >= w - margin || iy + 1 >= h - margin {
                    break;
                }
                // 2x2 stamp = two-pixel-wide stroke.
                if [(0, 0), (1, 0), (0, 1), (1, 1)]
                    .iter()
                    .any(|&(dx, dy)| blocked(&self, ix + dx, iy + dy))
                {
                    break;
                }
                for (dx, dy) in [(0, 0), (1, 0), (0, 1), (1, 1)] {
                    let (px, py) = ((ix + dx) as u32, (iy + dy) as u32);
                    self.image.set_pixel(px, py, noisy(HAIR, &mut self.rng, 4));
                    self.hair.set(px, py, true);
                }
                // Gentle curvature.
                angle += self.rng.range(-0.05, 0.05);
                x += angle.cos();
                y += angle.sin();
                travelled += 1.0;
            }
        }
        self
    }

    /// Multiplies every pixel by a per-row factor interpolated linearly from
    /// `top` to `bottom`; clamped to 255.
    pub fn vertical_ramp(mut self, top: f64, bottom: f64) -> Self {
        let h = self.height;
        let mut image = self.image.clone();
        for y in 0..h {
            let t = if h > 1 {
                y as f64 / (h - 1) as f64
            } else {
                0.0
            };
            let factor = top + (bottom - top) * t;
            for x in 0..self.width {
                let p = self.image.pixel(x, y);
                image.set_pixel(
                    x,
                    y,
                    p.map(|c| (c as f64 * factor).round().clamp(0.0, 255.0) as u8),
                );
            }
        }
        self.image = image;
        self
    }

    /// Attaches a horizontal ruler-like tab to the lesion's right extremity:
    /// a `width_px`-tall bar extending `length_px` to the right, overlapping
    /// the lesion by a pixel so the binarized components are 8-connected.
    /// The tab is painted but deliberately not added to the lesion truth.
    pub fn ruler_tab(mut self, length_px: u32, width_px: u32) -> Self {
        let mut best: Option<(u32, u32)> = None;
        for y in 0..self.height {
            for x in 0..self.width {
                if self.lesion.get(x, y) && best.is_none_or(|(bx, _)| x > bx) {
                    best = Some((x, y));
                }
            }
        }
        let (x0, y0) = best.expect("ruler_tab requires a lesion");
        let half = width_px / 2;
        let y_lo = y0.saturating_sub(half);
        let y_hi = (y0 + half).min(self.height - 1);
        let x_hi = (x0 + length_px).min(self.width - 1);
        for y in y_lo..=y_hi {
            for x in x0..=x_hi {
                self.image.set_pixel(x, y, noisy(RULER, &mut self.rng, 4));
            }
        }
        self
    }

    pub fn build(self) -> Scene {
        Scene {
            image: self.image,
            lesion: self.lesion,
            hair: self.hair,
            dark_region: self.dark_region,
        }
    }
}

/// A clean lesion-on-skin scene with randomized geometry.
pub fn clean_lesion_scene(width: u32, height: u32, seed: u64) -> Scene {
    SceneBuilder::new(width, height, seed)
        .random_lesion()
        .build()
}

fn noisy(base: [u8; 3], rng: &mut Rng, amp: i32) -> [u8; 3] {
    base.map(|c| (c as i32 + rng.jitter(amp)).clamp(0, 255) as u8)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_scene() {
        let a = clean_lesion_scene(64, 48, 7);
        let b = clean_lesion_scene(64, 48, 7);
        assert_eq!(a.image, b.image);
        assert_eq!(a.lesion, b.lesion);
    }

    #[test]
    fn different_seeds_differ() {
        let a = clean_lesion_scene(64, 48, 7);
        let b = clean_lesion_scene(64, 48, 8);
        assert_ne!(a.image, b.image);
    }

    #[test]
    fn lesion_area_is_plausible() {
        for seed in 0..5 {
            let scene = clean_lesion_scene(128, 128, seed);
            let frac = scene.lesion.count_true() as f64 / (128.0 * 128.0);
            assert!(frac > 0.05 && frac < 0.6, "lesion fraction {frac}");
        }
    }

    #[test]
    fn decorations_populate_their_masks() {
        let scene = SceneBuilder::new(96, 96, 3)
            .lesion(0.5, 0.5, 0.2, 0.15, 0.3)
            .corner_disc(0.25)
            .hair_strokes(4)
            .build();
        assert!(!scene.lesion.is_empty());
        assert!(!scene.hair.is_empty());
        assert!(!scene.dark_region.is_empty());
        // Planted regions do not overlap the lesion truth.
        assert!(scene.lesion.and(&scene.dark_region).is_empty());
    }
}
