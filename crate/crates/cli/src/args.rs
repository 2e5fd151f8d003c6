//! Command-line surface.

use std::path::PathBuf;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use sdi_core::PipelineConfig;

#[derive(Debug, Parser)]
#[command(
    name = "sdi",
    version,
    about = "Automatic skin-lesion segmentation for dermoscopic images"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Segment an image file or a directory of images into lesion masks.
    Segment(SegmentArgs),
    /// Evaluate predicted masks against ground-truth masks.
    Eval(EvalArgs),
    /// Segment and evaluate in one invocation, sharing the manifest.
    Run(RunArgs),
}

#[derive(Debug, Args)]
pub struct SegmentArgs {
    /// Input image file or directory (*.png, *.jpg, *.jpeg; non-recursive).
    #[arg(long)]
    pub input: PathBuf,
    /// Output directory for masks and manifest.json.
    #[arg(long)]
    pub output: PathBuf,
    /// Worker threads (default: logical CPUs).
    #[arg(long)]
    pub workers: Option<usize>,
    /// Write per-stage PNGs under <output>/debug/.
    #[arg(long)]
    pub debug_stages: bool,
    /// Write <output>/debug/<id>_overlay.png with the initial-mask contour
    /// (green) and hull contour (red) burned in.
    #[arg(long)]
    pub overlay: bool,
    #[command(flatten)]
    pub config: ConfigArgs,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    /// Directory of predicted masks (ISIC_<id>.png).
    #[arg(long)]
    pub input: PathBuf,
    /// Directory of ground-truth masks (ISIC_<id>_segmentation.png).
    #[arg(long)]
    pub truth: PathBuf,
    /// Directory for report.csv and summary.csv (default: prediction dir).
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Explicit report path; summary.csv is written next to it.
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[command(flatten)]
    pub segment: SegmentArgs,
    /// Directory of ground-truth masks (ISIC_<id>_segmentation.png).
    #[arg(long)]
    pub truth: PathBuf,
    /// Explicit report path (default: <output>/report.csv).
    #[arg(long)]
    pub report: Option<PathBuf>,
}

/// Pipeline-parameter overrides. Precedence: flags > config file > defaults.
#[derive(Debug, Args)]
pub struct ConfigArgs {
    /// Flat key=value file overriding pipeline defaults.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Value-band threshold below which pixels count as dark.
    #[arg(long)]
    pub dark_threshold: Option<f64>,
    /// Disk radius of the gap-bridging binary closing.
    #[arg(long)]
    pub gap_close_radius: Option<u32>,
    /// Longest working side in pixels; 0 processes at native resolution.
    #[arg(long)]
    pub max_side: Option<u32>,
}

impl ConfigArgs {
    pub fn resolve(&self) -> anyhow::Result<PipelineConfig> {
        let mut cfg = PipelineConfig::default();
        if let Some(path) = &self.config {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("cannot read config file {}", path.display()))?;
            cfg.apply_kv_text(&text)
                .with_context(|| format!("invalid config file {}", path.display()))?;
        }
        if let Some(v) = self.dark_threshold {
            cfg.dark_threshold = v;
        }
        if let Some(v) = self.gap_close_radius {
            cfg.gap_close_radius = v;
        }
        if let Some(v) = self.max_side {
            cfg.max_side = v;
        }
        cfg.validate().context("invalid pipeline configuration")?;
        Ok(cfg)
    }
}
