//! Shared fixtures for the benchmark targets.

use sdi_core::raster::{BinaryMask, GrayPlane};
use sdi_core::synth::{clean_lesion_scene, Rng, Scene};

/// Scene used by the end-to-end benchmarks.
pub fn bench_scene(side: u32) -> Scene {
    clean_lesion_scene(side, side, 0xbe7c)
}

/// Deterministic plane with smooth structure plus speckle, resembling a
/// dermoscopy band.
pub fn bench_plane(side: u32) -> GrayPlane {
    let mut rng = Rng::new(0x91a7e);
    GrayPlane::from_fn(side, side, |x, y| {
        let fx = x as f64 / side as f64;
        let fy = y as f64 / side as f64;
        let smooth = 0.5 + 0.3 * (6.0 * fx).sin() * (5.0 * fy).cos();
        (smooth + 0.15 * (rng.unit() - 0.5)).clamp(0.0, 1.0)
    })
}

/// Deterministic speckle mask at roughly the given foreground density.
pub fn bench_mask(side: u32, density: f64) -> BinaryMask {
    let mut rng = Rng::new(0x3a5c);
    BinaryMask::from_fn(side, side, |_, _| rng.unit() < density)
}
