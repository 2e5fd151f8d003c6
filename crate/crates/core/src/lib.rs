//! Automatic skin-lesion segmentation for dermoscopic images.
//!
//! The pipeline has three stages: build a region of interest that excludes
//! dark border/corner artifacts and hair, binarize two candidate color bands
//! (normalized red and inverted HSV value) with an ROI-restricted Otsu
//! threshold, and adopt the convex hull of the better candidate's largest
//! connected component as the final mask. [`segment_image`] runs the whole
//! thing; the stages are public for reuse and inspection.
//!
//! ```
//! use sdi_core::{segment_image, PipelineConfig};
//!
//! let scene = sdi_core::synth::clean_lesion_scene(128, 128, 42);
//! let result = segment_image(&scene.image, &PipelineConfig::default()).unwrap();
//! assert!(!result.final_mask.is_empty());
//! ```

pub mod config;
pub mod error;
pub mod metrics;
pub mod morphology;
pub mod raster;
pub mod roi;
pub mod segment;
pub mod synth;

pub use config::PipelineConfig;
pub use error::{Error, Result};
pub use raster::{BinaryMask, Gray8Plane, GrayPlane, RgbImage};
pub use roi::RoiMask;
pub use segment::{
    segment_image, segment_image_traced, Band, BandChoice, SegmentationResult, StageArtifacts,
};
