//! Debug-stage dumps and contour overlays.

use std::path::Path;

use sdi_core::raster::{save_gray8, save_mask, save_rgb, BinaryMask, RgbImage};
use sdi_core::{SegmentationResult, StageArtifacts};

/// Writes the per-stage PNGs for one image as
/// `<id>_stage_<NN>_<name>.png`.
pub fn write_stage_dumps(
    dir: &Path,
    id: &str,
    result: &SegmentationResult,
    stages: &StageArtifacts,
) -> anyhow::Result<()> {
    let mask = |name: &str, m: &BinaryMask| -> anyhow::Result<()> {
        save_mask(m, dir.join(format!("{id}_stage_{name}.png")))?;
        Ok(())
    };
    mask("01_dark_artifact", &result.roi.dark_artifact)?;
    mask("02_hair", &result.roi.hair)?;
    mask("03_roi", &result.roi.roi)?;
    save_gray8(
        &stages.band_rnorm,
        dir.join(format!("{id}_stage_04_band_rnorm.png")),
    )?;
    save_gray8(
        &stages.band_value_inverted,
        dir.join(format!("{id}_stage_05_band_value_inverted.png")),
    )?;
    mask("06_binarization_rnorm", &stages.binarization_rnorm)?;
    mask("07_binarization_value", &stages.binarization_value)?;
    let empty = BinaryMask::filled(result.roi.roi.width(), result.roi.roi.height(), false);
    mask(
        "08_component_rnorm",
        stages.component_rnorm.as_ref().unwrap_or(&empty),
    )?;
    mask(
        "09_component_value",
        stages.component_value.as_ref().unwrap_or(&empty),
    )?;
    mask("10_initial_mask", &result.initial_mask)?;
    mask("11_final_hull", &result.final_mask)?;
    Ok(())
}

/// Burns the initial-mask contour (green) and final-hull contour (red) into
/// a copy of the input image.
pub fn write_overlay(
    dir: &Path,
    id: &str,
    image: &RgbImage,
    result: &SegmentationResult,
) -> anyhow::Result<()> {
    let mut canvas = image.clone();
    paint_contour(&mut canvas, &result.final_mask, [255, 0, 0]);
    paint_contour(&mut canvas, &result.initial_mask, [0, 255, 0]);
    save_rgb(&canvas, dir.join(format!("{id}_overlay.png")))?;
    Ok(())
}

fn paint_contour(canvas: &mut RgbImage, mask: &BinaryMask, color: [u8; 3]) {
    let contour = mask.inner_boundary();
    for y in 0..contour.height() {
        for x in 0..contour.width() {
            if contour.get(x, y) {
                canvas.set_pixel(x, y, color);
            }
        }
    }
}
