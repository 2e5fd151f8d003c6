//! Convex hull of a pixel set, rasterized back to a mask.
//!
//! The hull polygon is built with the monotone-chain algorithm over exact
//! integer coordinates; rasterization marks a pixel iff its center lies
//! inside or on the polygon, computed per row as an exact integer interval.

use crate::error::{Error, Result};
use crate::raster::BinaryMask;

type Pt = (i64, i64);

fn cross(o: Pt, a: Pt, b: Pt) -> i64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

/// Monotone chain. Input must be sorted and deduplicated; output is in
/// counterclockwise order (algebraic orientation) with collinear points
/// dropped.
fn monotone_chain(points: &[Pt]) -> Vec<Pt> {
    let n = points.len();
    if n <= 1 {
        return points.to_vec();
    }
    let mut hull: Vec<Pt> = Vec::with_capacity(2 * n);
    for &p in points {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0 {
            hull.pop();
        }
        hull.push(p);
    }
    let lower_len = hull.len() + 1;
    for &p in points.iter().rev() {
        while hull.len() >= lower_len && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0 {
            hull.pop();
        }
        hull.push(p);
    }
    hull.pop();
    hull
}

fn floor_div(a: i64, b: i64) -> i64 {
    debug_assert!(b > 0);
    a.div_euclid(b)
}

fn ceil_div(a: i64, b: i64) -> i64 {
    debug_assert!(b > 0);
    (a + b - 1).div_euclid(b)
}

/// Rasterized convex hull of the true pixels of `component`.
///
/// Output pixel centers exactly on a hull edge are included. The result is a
/// fixed point: taking the hull of the output returns it unchanged.
pub fn convex_hull_mask(component: &BinaryMask) -> Result<BinaryMask> {
    let (w, h) = (component.width(), component.height());

    // Row extremes carry the whole hull: interior pixels of a row are convex
    // combinations of its endpoints.
    let mut points: Vec<Pt> = Vec::new();
    for y in 0..h {
        let mut first: Option<u32> = None;
        let mut last = 0u32;
        for x in 0..w {
            if component.get(x, y) {
                if first.is_none() {
                    first = Some(x);
                }
                last = x;
            }
        }
        if let Some(first) = first {
            points.push((first as i64, y as i64));
            if last != first {
                points.push((last as i64, y as i64));
            }
        }
    }
    if points.is_empty() {
        return Err(Error::InvalidArgument(
            "convex hull of an empty mask".into(),
        ));
    }
    points.sort_unstable();

    let hull = monotone_chain(&points);
    let mut out = BinaryMask::filled(w, h, false);
    if hull.len() == 1 {
        out.set(hull[0].0 as u32, hull[0].1 as u32, true);
        return Ok(out);
    }

    let x_min = hull.iter().map(|p| p.0).min().unwrap();
    let x_max = hull.iter().map(|p| p.0).max().unwrap();
    let y_min = hull.iter().map(|p| p.1).min().unwrap();
    let y_max = hull.iter().map(|p| p.1).max().unwrap();

    for y in y_min..=y_max {
        let mut lo = x_min;
        let mut hi = x_max;
        let mut row_empty = false;
        for i in 0..hull.len() {
            let p = hull[i];
            let q = hull[(i + 1) % hull.len()];
            let dx = q.0 - p.0;
            let dy = q.1 - p.1;
            // Interior of a CCW polygon satisfies cross(p, q, (x,y)) >= 0,
            // i.e. dy*x <= dx*(y - p.y) + dy*p.x.
            let k = dx * (y - p.1) + dy * p.0;
            if dy > 0 {
                hi = hi.min(floor_div(k, dy));
            } else if dy < 0 {
                lo = lo.max(ceil_div(-k, -dy));
            } else if dx * (y - p.1) < 0 {
                row_empty = true;
                break;
            }
        }
        if row_empty {
            continue;
        }
        for x in lo..=hi {
            out.set(x as u32, y as u32, true);
        }
    }
    Ok(out)
}
