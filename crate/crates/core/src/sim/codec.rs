//! Stand-in for lossy latent-codec reconstruction: JPEG followed by blur.

use crate::error::{Error, Result};
use crate::ops::gaussian_blur;
use crate::raster::{check_same, Image};
use crate::sim::jpeg::jpeg_simulate;

/// JPEG quality used at `strength` (90 at 0, 30 at 1).
pub fn codec_quality(strength: f64) -> u8 {
    (90.0 - 60.0 * strength).round() as u8
}

/// Blur sigma used at `strength` (0 at 0, 1.5 at 1).
pub fn codec_sigma(strength: f64) -> f64 {
    1.5 * strength
}

pub fn codec_stand_in(img: &Image, strength: f64) -> Result<Image> {
    if !(0.0..=1.0).contains(&strength) {
        return Err(Error::Config(format!("codec strength must be in [0, 1], got {strength}")));
    }
    let jpeg = jpeg_simulate(img, codec_quality(strength))?;
    gaussian_blur(&jpeg, codec_sigma(strength))
}

/// Uses an externally computed reconstruction of `img` instead of the stand-in.
pub fn codec_from_reconstruction(img: &Image, reconstruction: &Image) -> Result<Image> {
    check_same(img.dims(), reconstruction.dims(), "codec reconstruction")?;
    Ok(reconstruction.clone())
}
