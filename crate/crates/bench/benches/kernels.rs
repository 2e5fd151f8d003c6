//! Per-pixel kernel benchmarks: morphology, Otsu, components, hull.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use sdi_bench::{bench_mask, bench_plane};
use sdi_core::morphology::{bottom_hat, close, dilate, disk_se, erode};
use sdi_core::raster::quantize_band;
use sdi_core::raster::BinaryMask;
use sdi_core::segment::{
    convex_hull_mask, histogram, label_components, largest_component, otsu_threshold,
};

fn morphology(c: &mut Criterion) {
    let mut group = c.benchmark_group("morphology");
    let plane = bench_plane(256);
    group.throughput(Throughput::Elements(plane.data().len() as u64));
    for radius in [1u32, 3, 5, 8] {
        let se = disk_se(radius).unwrap();
        group.bench_with_input(BenchmarkId::new("erode", radius), &se, |b, se| {
            b.iter(|| erode(black_box(&plane), se))
        });
        group.bench_with_input(BenchmarkId::new("dilate", radius), &se, |b, se| {
            b.iter(|| dilate(black_box(&plane), se))
        });
    }
    let se = disk_se(5).unwrap();
    group.bench_function("close_r5", |b| b.iter(|| close(black_box(&plane), &se)));
    group.bench_function("bottom_hat_r5", |b| {
        b.iter(|| bottom_hat(black_box(&plane), &se))
    });
    group.finish();
}

fn otsu(c: &mut Criterion) {
    let mut group = c.benchmark_group("otsu");
    let plane = quantize_band(&bench_plane(512));
    let roi = BinaryMask::filled(512, 512, true);
    group.bench_function("histogram_512", |b| {
        b.iter(|| histogram(black_box(&plane), black_box(&roi)).unwrap())
    });
    let hist = histogram(&plane, &roi).unwrap();
    group.bench_function("threshold", |b| {
        b.iter(|| otsu_threshold(black_box(&hist)).unwrap())
    });
    group.finish();
}

fn components(c: &mut Criterion) {
    let mut group = c.benchmark_group("components");
    for density in [0.2f64, 0.5] {
        let mask = bench_mask(512, density);
        group.throughput(Throughput::Elements(mask.data().len() as u64));
        group.bench_with_input(
            BenchmarkId::new("label_512", format!("density_{density}")),
            &mask,
            |b, mask| b.iter(|| label_components(black_box(mask))),
        );
    }
    let mask = bench_mask(512, 0.4);
    let labels = label_components(&mask);
    group.bench_function("largest", |b| {
        b.iter(|| largest_component(black_box(&labels)).unwrap())
    });
    group.finish();
}

fn hull(c: &mut Criterion) {
    let mut group = c.benchmark_group("hull");
    let blob = BinaryMask::from_fn(512, 512, |x, y| {
        let (dx, dy) = (x as f64 - 256.0, y as f64 - 230.0);
        (dx / 170.0).powi(2) + (dy / 120.0).powi(2) <= 1.0
    });
    group.bench_function("ellipse_512", |b| {
        b.iter(|| convex_hull_mask(black_box(&blob)).unwrap())
    });
    group.finish();
}

criterion_group!(benches, morphology, otsu, components, hull);
criterion_main!(benches);
