//! The `segment` subcommand: discover inputs, run the pipeline over a worker
//! pool, write masks and the manifest.
//!
//! Images are independent, so the pool may schedule them in any order;
//! results are sorted by id before anything derived from the batch is
//! written, and every output file depends only on its own image. Masks are
//! therefore byte-identical whatever `--workers` says.

use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{bail, Context};
use log::{error, info, warn};
use rayon::prelude::*;
use sdi_core::raster::{load_image, save_mask};
use sdi_core::{segment_image_traced, Band, PipelineConfig};

use crate::args::SegmentArgs;
use crate::manifest::{ImageResult, RunManifest, Status};
use crate::render;

const IMAGE_EXTENSIONS: [&str; 3] = ["png", "jpg", "jpeg"];

pub struct SegmentOutcome {
    pub manifest: RunManifest,
    pub failed: usize,
}

/// Lists the images to process: the file itself, or the directory's image
/// files in name order (non-recursive; flat challenge layouts keep pairing
/// honest).
pub fn discover_inputs(input: &Path) -> anyhow::Result<Vec<PathBuf>> {
    if input.is_file() {
        return Ok(vec![input.to_path_buf()]);
    }
    if !input.is_dir() {
        bail!("input path {} does not exist", input.display());
    }
    let mut files: Vec<PathBuf> = std::fs::read_dir(input)
        .with_context(|| format!("cannot list {}", input.display()))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| {
            p.is_file()
                && p.extension()
                    .and_then(|e| e.to_str())
                    .is_some_and(|e| IMAGE_EXTENSIONS.contains(&e.to_ascii_lowercase().as_str()))
        })
        .collect();
    files.sort();
    Ok(files)
}

pub fn run(args: &SegmentArgs, cfg: &PipelineConfig) -> anyhow::Result<SegmentOutcome> {
    let inputs = discover_inputs(&args.input)?;
    if inputs.is_empty() {
        bail!("no input images found in {}", args.input.display());
    }
    std::fs::create_dir_all(&args.output)
        .with_context(|| format!("cannot create output directory {}", args.output.display()))?;
    let debug_dir = args.output.join("debug");
    if args.debug_stages || args.overlay {
        std::fs::create_dir_all(&debug_dir)?;
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.workers.unwrap_or(0))
        .build()
        .context("cannot build worker pool")?;

    let started = Instant::now();
    let mut results: Vec<ImageResult> = pool.install(|| {
        inputs
            .par_iter()
            .map(|path| process_one(path, args, cfg, &debug_dir))
            .collect()
    });
    results.sort_by(|a, b| a.id.cmp(&b.id));

    let failed = results.iter().filter(|r| r.status == Status::Error).count();
    for r in results.iter().filter(|r| r.status == Status::Error) {
        warn!(
            "{}: {}",
            r.id,
            r.message.as_deref().unwrap_or("unknown error")
        );
    }

    let manifest = RunManifest {
        inputs: inputs.iter().map(|p| p.display().to_string()).collect(),
        config: cfg.clone(),
        results,
        total_ms: started.elapsed().as_secs_f64() * 1e3,
    };
    manifest.write(&args.output.join("manifest.json"))?;
    Ok(SegmentOutcome { manifest, failed })
}

fn process_one(
    path: &Path,
    args: &SegmentArgs,
    cfg: &PipelineConfig,
    debug_dir: &Path,
) -> ImageResult {
    let id = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let started = Instant::now();
    match segment_one(path, &id, args, cfg, debug_dir) {
        Ok(band) => {
            let runtime_ms = started.elapsed().as_secs_f64() * 1e3;
            info!("{id}: ok in {runtime_ms:.1} ms (band {band})");
            ImageResult {
                id,
                status: Status::Ok,
                message: None,
                runtime_ms,
                band_selected: Some(band),
            }
        }
        Err(err) => {
            error!("{id}: {err:#}");
            ImageResult {
                id,
                status: Status::Error,
                message: Some(format!("{err:#}")),
                runtime_ms: started.elapsed().as_secs_f64() * 1e3,
                band_selected: None,
            }
        }
    }
}

fn segment_one(
    path: &Path,
    id: &str,
    args: &SegmentArgs,
    cfg: &PipelineConfig,
    debug_dir: &Path,
) -> anyhow::Result<Band> {
    let image = load_image(path)?;
    let (result, stages) = segment_image_traced(&image, cfg)?;
    save_mask(&result.final_mask, args.output.join(format!("{id}.png")))?;
    if args.debug_stages {
        render::write_stage_dumps(debug_dir, id, &result, &stages)?;
    }
    if args.overlay {
        render::write_overlay(debug_dir, id, &image, &result)?;
    }
    Ok(result.band.selected)
}
