//! End-to-end pipeline benchmarks at typical working resolutions.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, SamplingMode};
use sdi_bench::bench_scene;
use sdi_core::roi::build_roi;
use sdi_core::{segment_image, PipelineConfig};

fn roi(c: &mut Criterion) {
    let scene = bench_scene(512);
    let cfg = PipelineConfig {
        max_side: 0,
        ..PipelineConfig::default()
    };
    c.bench_function("build_roi_512", |b| {
        b.iter(|| build_roi(black_box(&scene.image), &cfg).unwrap())
    });
}

fn full_pipeline(c: &mut Criterion) {
    let mut group = c.benchmark_group("segment_image");
    group.sample_size(10).sampling_mode(SamplingMode::Flat);
    for side in [256u32, 512] {
        let scene = bench_scene(side);
        let cfg = PipelineConfig {
            max_side: 0,
            ..PipelineConfig::default()
        };
        group.bench_with_input(BenchmarkId::from_parameter(side), &scene, |b, scene| {
            b.iter(|| segment_image(black_box(&scene.image), &cfg).unwrap())
        });
    }
    // The shipping default: large input downscaled to the working bound.
    let scene = bench_scene(2048);
    let cfg = PipelineConfig::default();
    group.bench_function("2048_downscaled_to_1024", |b| {
        b.iter(|| segment_image(black_box(&scene.image), &cfg).unwrap())
    });
    group.finish();
}

criterion_group!(benches, roi, full_pipeline);
criterion_main!(benches);
