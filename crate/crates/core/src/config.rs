//! Tunable pipeline parameters.
//!
//! Every heuristic constant in the pipeline lives here so alternates can be
//! tested without touching the algorithms. Defaults are the values the rest
//! of the crate is validated against.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Parameters of the segmentation pipeline.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PipelineConfig {
    /// Pixels with HSV value below this are candidate dark artifacts.
    pub dark_threshold: f64,
    /// Width of the border band, as a fraction of `min(w, h)` (at least 2 px).
    pub border_band_frac: f64,
    /// Corner window size, as a fraction of each image side.
    pub corner_window_frac: f64,
    /// A dark component covering at least this fraction of a corner window is
    /// an artifact.
    pub corner_cover_frac: f64,
    /// A dark component with at least this fraction of its pixels inside the
    /// border band is an artifact.
    pub border_member_frac: f64,
    /// Hair structuring-element radius as a fraction of `min(w, h)`.
    pub hair_se_frac: f64,
    /// Lower bound on the hair structuring-element radius, in pixels.
    pub hair_se_min_radius: u32,
    /// If the thresholded hair response covers more than this fraction of the
    /// image it is texture, not hair, and the hair mask is discarded.
    pub hair_abort_frac: f64,
    /// Disk radius of the binary closing that bridges hair-induced gaps in
    /// the candidate binarizations.
    pub gap_close_radius: u32,
    /// Plausible lesion area, as a fraction of the ROI (inclusive bounds).
    pub area_frac_min: f64,
    pub area_frac_max: f64,
    /// Score multiplier applied to masks outside the plausible area range.
    pub area_penalty: f64,
    /// Working-copy bound on the longest image side; 0 keeps native
    /// resolution.
    pub max_side: u32,
    /// Minimum acceptable ROI coverage before the degenerate-input fallbacks
    /// kick in.
    pub roi_fallback_frac: f64,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        Self {
            dark_threshold: 0.25,
            border_band_frac: 0.02,
            corner_window_frac: 0.15,
            corner_cover_frac: 0.20,
            border_member_frac: 0.60,
            hair_se_frac: 0.01,
            hair_se_min_radius: 5,
            hair_abort_frac: 0.15,
            gap_close_radius: 5,
            area_frac_min: 0.02,
            area_frac_max: 0.80,
            area_penalty: 0.25,
            max_side: 1024,
            roi_fallback_frac: 0.10,
        }
    }
}

impl PipelineConfig {
    /// Checks the documented parameter domains: fractions in (0,1), radii at
    /// least 1, `max_side` either 0 (native) or at least 16.
    pub fn validate(&self) -> Result<()> {
        let fractions = [
            ("dark_threshold", self.dark_threshold),
            ("border_band_frac", self.border_band_frac),
            ("corner_window_frac", self.corner_window_frac),
            ("corner_cover_frac", self.corner_cover_frac),
            ("border_member_frac", self.border_member_frac),
            ("hair_se_frac", self.hair_se_frac),
            ("hair_abort_frac", self.hair_abort_frac),
            ("area_frac_min", self.area_frac_min),
            ("area_frac_max", self.area_frac_max),
            ("area_penalty", self.area_penalty),
            ("roi_fallback_frac", self.roi_fallback_frac),
        ];
        for (name, value) in fractions {
            if !(value > 0.0 && value < 1.0) {
                return Err(Error::InvalidArgument(format!(
                    "{name} must lie in (0,1), got {value}"
                )));
            }
        }
        if self.area_frac_min >= self.area_frac_max {
            return Err(Error::InvalidArgument(format!(
                "area_frac_min ({}) must be below area_frac_max ({})",
                self.area_frac_min, self.area_frac_max
            )));
        }
        if self.hair_se_min_radius < 1 {
            return Err(Error::InvalidArgument(
                "hair_se_min_radius must be >= 1".into(),
            ));
        }
        if self.gap_close_radius < 1 {
            return Err(Error::InvalidArgument(
                "gap_close_radius must be >= 1".into(),
            ));
        }
        if self.max_side != 0 && self.max_side < 16 {
            return Err(Error::InvalidArgument(format!(
                "max_side must be 0 (native) or >= 16, got {}",
                self.max_side
            )));
        }
        Ok(())
    }

    /// Sets one field by its name, parsing `value` as that field's type.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        fn float(key: &str, value: &str) -> Result<f64> {
            value.parse().map_err(|_| {
                Error::InvalidArgument(format!("{key}: expected a number, got {value:?}"))
            })
        }
        fn int(key: &str, value: &str) -> Result<u32> {
            value.parse().map_err(|_| {
                Error::InvalidArgument(format!("{key}: expected an integer, got {value:?}"))
            })
        }
        match key {
            "dark_threshold" => self.dark_threshold = float(key, value)?,
            "border_band_frac" => self.border_band_frac = float(key, value)?,
            "corner_window_frac" => self.corner_window_frac = float(key, value)?,
            "corner_cover_frac" => self.corner_cover_frac = float(key, value)?,
            "border_member_frac" => self.border_member_frac = float(key, value)?,
            "hair_se_frac" => self.hair_se_frac = float(key, value)?,
            "hair_se_min_radius" => self.hair_se_min_radius = int(key, value)?,
            "hair_abort_frac" => self.hair_abort_frac = float(key, value)?,
            "gap_close_radius" => self.gap_close_radius = int(key, value)?,
            "area_frac_min" => self.area_frac_min = float(key, value)?,
            "area_frac_max" => self.area_frac_max = float(key, value)?,
            "area_penalty" => self.area_penalty = float(key, value)?,
            "max_side" => self.max_side = int(key, value)?,
            "roi_fallback_frac" => self.roi_fallback_frac = float(key, value)?,
            other => {
                return Err(Error::InvalidArgument(format!(
                    "unknown config key {other:?}"
                )));
            }
        }
        Ok(())
    }

    /// Applies a flat `key = value` override file on top of `self`.
    /// Blank lines and `#` comments are ignored. The result is validated.
    pub fn apply_kv_text(&mut self, text: &str) -> Result<()> {
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::InvalidArgument(format!(
                    "config line {}: expected key=value, got {raw:?}",
                    lineno + 1
                ))
            })?;
            self.set(key.trim(), value.trim())?;
        }
        self.validate()
    }

    /// Hair structuring-element radius for an image of the given dimensions.
    pub fn hair_se_radius(&self, width: u32, height: u32) -> u32 {
        let by_size = (self.hair_se_frac * width.min(height) as f64).round() as u32;
        by_size.max(self.hair_se_min_radius)
    }

    /// Border band width for an image of the given dimensions.
    pub fn border_band_px(&self, width: u32, height: u32) -> u32 {
        let by_size = (self.border_band_frac * width.min(height) as f64).round() as u32;
        by_size.max(2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_validate() {
        PipelineConfig::default().validate().unwrap();
    }

    #[test]
    fn kv_overrides_apply_in_order() {
        let mut cfg = PipelineConfig::default();
        cfg.apply_kv_text("# comment\n\ndark_threshold = 0.3\nmax_side=512\n")
            .unwrap();
        assert_eq!(cfg.dark_threshold, 0.3);
        assert_eq!(cfg.max_side, 512);
        assert_eq!(cfg.gap_close_radius, 5);
    }

    #[test]
    fn unknown_key_rejected() {
        let mut cfg = PipelineConfig::default();
        assert!(cfg.apply_kv_text("dark_treshold = 0.3").is_err());
    }

    #[test]
    fn out_of_range_fraction_rejected() {
        let mut cfg = PipelineConfig::default();
        assert!(cfg.apply_kv_text("dark_threshold = 1.5").is_err());
        let mut cfg = PipelineConfig::default();
        assert!(cfg.apply_kv_text("max_side = 8").is_err());
    }

    #[test]
    fn derived_radii() {
        let cfg = PipelineConfig::default();
        assert_eq!(cfg.hair_se_radius(512, 512), 5);
        assert_eq!(cfg.hair_se_radius(2000, 1500), 15);
        assert_eq!(cfg.border_band_px(100, 100), 2);
        assert_eq!(cfg.border_band_px(1000, 800), 16);
    }
}
