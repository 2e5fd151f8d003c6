//! Raster data types and the pixel-level plumbing built on them: color-band
//! extraction, quantization, resizing, and PNG/JPEG input/output.
//!
//! All rasters are row-major. Values are immutable after construction as far
//! as the pipeline is concerned, so they can be shared freely across worker
//! threads.

mod bands;
mod io;
mod resize;

pub use bands::{
    extract_normalized_red, extract_red_band, extract_value_band, invert, quantize_band,
};
pub use io::{load_image, save_gray8, save_mask, save_rgb};
pub use resize::{downscale, upscale_mask};

/// 8-bit interleaved RGB raster.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RgbImage {
    width: u32,
    height: u32,
    data: Vec<u8>,
}

impl RgbImage {
    /// Wraps raw interleaved R,G,B samples. `data.len()` must equal
    /// `width * height * 3`.
    pub fn new(width: u32, height: u32, data: Vec<u8>) -> Self {
        assert!(width > 0 && height > 0, "image dimensions must be positive");
        assert_eq!(
            data.len(),
            width as usize * height as usize * 3,
            "rgb data length must be width*height*3"
        );
        Self {
            width,
            height,
            data,
        }
    }

    /// Builds an image by evaluating `f(x, y) -> [r, g, b]` at every pixel.
    pub fn from_fn(width: u32, height: u32, mut f: impl FnMut(u32, u32) -> [u8; 3]) -> Self {
        let mut data = Vec::with_capacity(width as usize * height as usize * 3);
        for y in 0..height {
            for x in 0..width {
                data.extend_from_slice(&f(x, y));
            }
        }
        Self::new(width, height, data)
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    /// Interleaved samples, row-major.
    pub fn data(&self) -> &[u8] {
        &self.data
    }

    pub fn pixel(&self, x: u32, y: u32) -> [u8; 3] {
        let i = (y as usize * self.width as usize + x as usize) * 3;
        [self.data[i], self.data[i + 1], self.data[i + 2]]
    }

    pub fn set_pixel(&mut self, x: u32, y: u32, rgb: [u8; 3]) {
        let i = (y as usize * self.width as usize + x as usize) * 3;
        self.data[i..i + 3].copy_from_slice(&rgb);
    }

    pub fn pixel_count(&self) -> usize {
        self.width as usize * self.height as usize
    }
}

/// Single-band raster of real samples in `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct GrayPlane {
    width: u32,
    height: u32,
    data: Vec<f64>,
}

impl GrayPlane {
    /// Wraps unit-interval samples. Panics if a sample is outside `[0, 1]`
    /// (checked in debug builds) or the length does not match.
    pub fn new(width: u32, height: u32, data: Vec<f64>) -> Self {
        assert!(width > 0 && height > 0, "plane dimensions must be positive");
        assert_eq!(
            data.len(),
            width as usize * height as usize,
            "plane data length must be width*height"
        );
        debug_assert!(
            data.iter().all(|&s| (0.0..=1.0).contains(&s)),
            "plane samples must lie in [0,1]"
        );
        Self {
            width,
            height,
            data,
        }
    }

    pub fn from_fn(width: u32, height: u32, mut f: impl FnMut(u32, u32) -> f64) -> Self {
        let mut data = Vec::with_capacity(width as usize * height as usize);
        for y in 0..height {
            for x in 0..width {
                data.push(f(x, y));
            }
        }
        Self::new(width, height, data)
    }

    pub fn constant(width: u32, height: u32, value: f64) -> Self {
        Self::new(width, height, vec![value; width as usize * height as usize])
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    #[inline]
    pub fn get(&self, x: u32, y: u32) -> f64 {
        self.data[y as usize * self.width as usize + x as usize]
    }
}

/// Single-band raster of integer samples in `[0, 255]`; the histogram domain
/// for Otsu thresholding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gray8Plane {
    width: u32,
    height: u32,
    data: Vec<u8>,
}

impl Gray8Plane {
    pub fn new(width: u32, height: u32, data: Vec<u8>) -> Self {
        assert!(width > 0 && height > 0, "plane dimensions must be positive");
        assert_eq!(
            data.len(),
            width as usize * height as usize,
            "plane data length must be width*height"
        );
        Self {
            width,
            height,
            data,
        }
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn data(&self) -> &[u8] {
        &self.data
    }

    #[inline]
    pub fn get(&self, x: u32, y: u32) -> u8 {
        self.data[y as usize * self.width as usize + x as usize]
    }
}

/// Per-pixel boolean raster. Used for the ROI, hair and artifact masks,
/// candidate binarizations, and the final segmentation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryMask {
    width: u32,
    height: u32,
    data: Vec<bool>,
}

impl BinaryMask {
    pub fn new(width: u32, height: u32, data: Vec<bool>) -> Self {
        assert!(width > 0 && height > 0, "mask dimensions must be positive");
        assert_eq!(
            data.len(),
            width as usize * height as usize,
            "mask data length must be width*height"
        );
        Self {
            width,
            height,
            data,
        }
    }

    /// All-`value` mask.
    pub fn filled(width: u32, height: u32, value: bool) -> Self {
        Self::new(width, height, vec![value; width as usize * height as usize])
    }

    pub fn from_fn(width: u32, height: u32, mut f: impl FnMut(u32, u32) -> bool) -> Self {
        let mut data = Vec::with_capacity(width as usize * height as usize);
        for y in 0..height {
            for x in 0..width {
                data.push(f(x, y));
            }
        }
        Self::new(width, height, data)
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn data(&self) -> &[bool] {
        &self.data
    }

    #[inline]
    pub fn get(&self, x: u32, y: u32) -> bool {
        self.data[y as usize * self.width as usize + x as usize]
    }

    #[inline]
    pub fn set(&mut self, x: u32, y: u32, value: bool) {
        self.data[y as usize * self.width as usize + x as usize] = value;
    }

    pub fn count_true(&self) -> usize {
        self.data.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        !self.data.iter().any(|&b| b)
    }

    pub fn same_dims(&self, other: &BinaryMask) -> bool {
        self.width == other.width && self.height == other.height
    }

    /// Pixelwise OR. Panics on dimension mismatch.
    pub fn or(&self, other: &BinaryMask) -> BinaryMask {
        assert!(self.same_dims(other), "mask dimensions must match");
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| a || b)
            .collect();
        BinaryMask::new(self.width, self.height, data)
    }

    /// Pixelwise AND. Panics on dimension mismatch.
    pub fn and(&self, other: &BinaryMask) -> BinaryMask {
        assert!(self.same_dims(other), "mask dimensions must match");
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| a && b)
            .collect();
        BinaryMask::new(self.width, self.height, data)
    }

    /// Pixelwise NOT.
    pub fn not(&self) -> BinaryMask {
        let data = self.data.iter().map(|&a| !a).collect();
        BinaryMask::new(self.width, self.height, data)
    }

    /// True pixels of `self` that touch the image border or have at least one
    /// false 8-neighbor; the one-pixel inner boundary ring.
    pub fn inner_boundary(&self) -> BinaryMask {
        let (w, h) = (self.width as i64, self.height as i64);
        BinaryMask::from_fn(self.width, self.height, |x, y| {
            if !self.get(x, y) {
                return false;
            }
            let (x, y) = (x as i64, y as i64);
            for dy in -1..=1i64 {
                for dx in -1..=1i64 {
                    if dx == 0 && dy == 0 {
                        continue;
                    }
                    let (nx, ny) = (x + dx, y + dy);
                    if nx < 0 || ny < 0 || nx >= w || ny >= h {
                        return true;
                    }
                    if !self.get(nx as u32, ny as u32) {
                        return true;
                    }
                }
            }
            false
        })
    }
}
