//! 8-connected component labeling and largest-component extraction.

use crate::error::{Error, Result};
use crate::raster::BinaryMask;

/// Result of labeling: `labels` is row-major with 0 = background, and
/// `areas[k]` is the pixel count of component `k` for `k >= 1` (`areas[0]` is
/// unused and zero). Labels are assigned in raster-scan order of each
/// component's first pixel.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentLabels {
    width: u32,
    height: u32,
    labels: Vec<u32>,
    count: u32,
    areas: Vec<u64>,
}

impl ComponentLabels {
    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    /// Number of components (labels run `1..=count`).
    pub fn count(&self) -> u32 {
        self.count
    }

    pub fn areas(&self) -> &[u64] {
        &self.areas
    }

    /// Mask of the component with the given label.
    pub fn component_mask(&self, label: u32) -> BinaryMask {
        assert!(label >= 1 && label <= self.count, "label out of range");
        let data = self.labels.iter().map(|&l| l == label).collect();
        BinaryMask::new(self.width, self.height, data)
    }
}

fn find(parent: &mut [u32], mut i: u32) -> u32 {
    while parent[i as usize] != i {
        parent[i as usize] = parent[parent[i as usize] as usize];
        i = parent[i as usize];
    }
    i
}

fn union(parent: &mut [u32], a: u32, b: u32) {
    let ra = find(parent, a);
    let rb = find(parent, b);
    if ra != rb {
        // Root at the smaller provisional id so path structure stays shallow.
        if ra < rb {
            parent[rb as usize] = ra;
        } else {
            parent[ra as usize] = rb;
        }
    }
}

/// Union-find labeling with 8-connectivity.
pub fn label_components(mask: &BinaryMask) -> ComponentLabels {
    let (w, h) = (mask.width() as usize, mask.height() as usize);
    let data = mask.data();
    let mut provisional = vec![0u32; w * h]; // 0 = background, ids start at 1
    let mut parent: Vec<u32> = vec![0]; // parent[0] reserved for background

    for y in 0..h {
        for x in 0..w {
            let i = y * w + x;
            if !data[i] {
                continue;
            }
            // Prior neighbors under raster order: W, NW, N, NE.
            let mut neighbor_ids = [0u32; 4];
            let mut n = 0;
            if x > 0 && data[i - 1] {
                neighbor_ids[n] = provisional[i - 1];
                n += 1;
            }
            if y > 0 {
                let up = i - w;
                if x > 0 && data[up - 1] {
                    neighbor_ids[n] = provisional[up - 1];
                    n += 1;
                }
                if data[up] {
                    neighbor_ids[n] = provisional[up];
                    n += 1;
                }
                if x + 1 < w && data[up + 1] {
                    neighbor_ids[n] = provisional[up + 1];
                    n += 1;
                }
            }
            if n == 0 {
                let id = parent.len() as u32;
                parent.push(id);
                provisional[i] = id;
            } else {
                let mut min_id = neighbor_ids[0];
                for &id in &neighbor_ids[1..n] {
                    min_id = min_id.min(id);
                }
                provisional[i] = min_id;
                for &id in &neighbor_ids[..n] {
                    union(&mut parent, min_id, id);
                }
            }
        }
    }

    // Compact labels in raster-scan order of each component's first pixel.
    let mut compact: Vec<u32> = vec![0; parent.len()];
    let mut labels = vec![0u32; w * h];
    let mut areas: Vec<u64> = vec![0];
    let mut count = 0u32;
    for i in 0..w * h {
        if provisional[i] == 0 {
            continue;
        }
        let root = find(&mut parent, provisional[i]);
        if compact[root as usize] == 0 {
            count += 1;
            compact[root as usize] = count;
            areas.push(0);
        }
        let label = compact[root as usize];
        labels[i] = label;
        areas[label as usize] += 1;
    }

    ComponentLabels {
        width: mask.width(),
        height: mask.height(),
        labels,
        count,
        areas,
    }
}

/// Mask of the single component with maximum area; ties go to the smallest
/// label, i.e. the component whose first pixel comes first in raster order.
pub fn largest_component(labels: &ComponentLabels) -> Result<BinaryMask> {
    if labels.count == 0 {
        return Err(Error::EmptySegmentation);
    }
    let mut best = 1u32;
    for label in 2..=labels.count {
        if labels.areas[label as usize] > labels.areas[best as usize] {
            best = label;
        }
    }
    Ok(labels.component_mask(best))
}
