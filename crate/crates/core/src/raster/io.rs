//! PNG/JPEG decode and mask/band PNG encode.

use std::path::Path;

use image::ImageError;

use super::{BinaryMask, Gray8Plane, RgbImage};
use crate::error::{Error, Result};

/// Decodes a PNG or JPEG file into an [`RgbImage`].
///
/// Grayscale sources are replicated to three channels; an alpha channel, if
/// present, is discarded.
pub fn load_image(path: impl AsRef<Path>) -> Result<RgbImage> {
    let path = path.as_ref();
    let dynamic = image::open(path).map_err(|e| match e {
        ImageError::IoError(source) => Error::Io {
            path: path.to_path_buf(),
            source,
        },
        source => Error::Decode {
            path: path.to_path_buf(),
            source,
        },
    })?;
    let rgb = dynamic.into_rgb8();
    Ok(RgbImage::new(rgb.width(), rgb.height(), rgb.into_raw()))
}

/// Writes a mask as an 8-bit single-channel PNG, true -> 255, false -> 0.
pub fn save_mask(mask: &BinaryMask, path: impl AsRef<Path>) -> Result<()> {
    let data: Vec<u8> = mask
        .data()
        .iter()
        .map(|&b| if b { 255 } else { 0 })
        .collect();
    save_gray8_raw(mask.width(), mask.height(), data, path.as_ref())
}

/// Writes an 8-bit plane as a single-channel PNG; used by the debug-stage
/// dumps.
pub fn save_gray8(plane: &Gray8Plane, path: impl AsRef<Path>) -> Result<()> {
    save_gray8_raw(
        plane.width(),
        plane.height(),
        plane.data().to_vec(),
        path.as_ref(),
    )
}

/// Writes a color image as an RGB PNG; used by overlays and fixture
/// generation.
pub fn save_rgb(img: &RgbImage, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let buf: image::RgbImage =
        image::ImageBuffer::from_raw(img.width(), img.height(), img.data().to_vec())
            .expect("buffer length matches dims");
    buf.save_with_format(path, image::ImageFormat::Png)
        .map_err(|e| match e {
            ImageError::IoError(source) => Error::Io {
                path: path.to_path_buf(),
                source,
            },
            source => Error::Encode {
                path: path.to_path_buf(),
                source,
            },
        })
}

fn save_gray8_raw(width: u32, height: u32, data: Vec<u8>, path: &Path) -> Result<()> {
    let buf: image::GrayImage =
        image::ImageBuffer::from_raw(width, height, data).expect("buffer length matches dims");
    buf.save_with_format(path, image::ImageFormat::Png)
        .map_err(|e| match e {
            ImageError::IoError(source) => Error::Io {
                path: path.to_path_buf(),
                source,
            },
            source => Error::Encode {
                path: path.to_path_buf(),
                source,
            },
        })
}
