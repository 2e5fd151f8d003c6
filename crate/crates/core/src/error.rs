//! Error type shared across the crate.

use std::path::PathBuf;

/// Errors produced by the segmentation library.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// The file could not be read or written.
    #[error("i/o error on {path}: {source}")]
    Io {
        /// Path that failed.
        path: PathBuf,
        /// Underlying error.
        #[source]
        source: std::io::Error,
    },

    /// The file exists but is not a decodable PNG or JPEG.
    #[error("cannot decode {path}: {source}")]
    Decode {
        /// Path that failed.
        path: PathBuf,
        /// Underlying error.
        #[source]
        source: image::ImageError,
    },

    /// The image could not be encoded to the requested path.
    #[error("cannot encode {path}: {source}")]
    Encode {
        /// Path that failed.
        path: PathBuf,
        /// Underlying error.
        #[source]
        source: image::ImageError,
    },

    /// A parameter was outside its documented domain.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Two rasters that must share dimensions do not.
    #[error("dimension mismatch: {left_w}x{left_h} vs {right_w}x{right_h}")]
    DimensionMismatch {
        /// Width of the first operand.
        left_w: u32,
        /// Height of the first operand.
        left_h: u32,
        /// Width of the second operand.
        right_w: u32,
        /// Height of the second operand.
        right_h: u32,
    },

    /// An operation that needs at least one region-of-interest pixel got none.
    #[error("region of interest is empty")]
    EmptyRoi,

    /// A mask that must contain at least one component is empty.
    #[error("segmentation contains no connected component")]
    EmptySegmentation,
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
