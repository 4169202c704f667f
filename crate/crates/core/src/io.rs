//! 8-bit PNG loading and saving.
//!
//! Images load as `v / 255` (alpha dropped) and save as `round(v * 255)` after
//! clamping. Masks load from grayscale with `>= 128` mapped to 1 and save as
//! `round(v * 255)`.

use std::path::Path;

use image::{GrayImage, ImageError, RgbImage};

use crate::error::{Error, Result};
use crate::raster::{clamp01, Image, Mask};

fn map_err(path: &Path, err: ImageError) -> Error {
    match err {
        ImageError::IoError(source) => Error::Io {
            path: path.to_path_buf(),
            source,
        },
        other => Error::Decode {
            path: path.to_path_buf(),
            message: other.to_string(),
        },
    }
}

#[inline]
fn to_u8(v: f64) -> u8 {
    (clamp01(v) * 255.0).round() as u8
}

pub fn load_image(path: impl AsRef<Path>) -> Result<Image> {
    let path = path.as_ref();
    let rgb = image::open(path).map_err(|e| map_err(path, e))?.to_rgb8();
    let (w, h) = rgb.dimensions();
    let data = rgb.into_raw().into_iter().map(|v| v as f64 / 255.0).collect();
    Image::from_vec(h as usize, w as usize, data)
}

pub fn save_image(img: &Image, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let raw: Vec<u8> = img.data().iter().map(|&v| to_u8(v)).collect();
    let buf = RgbImage::from_raw(img.width() as u32, img.height() as u32, raw)
        .expect("buffer length matches dimensions");
    buf.save_with_format(path, image::ImageFormat::Png)
        .map_err(|e| map_err(path, e))
}

pub fn load_mask(path: impl AsRef<Path>) -> Result<Mask> {
    let path = path.as_ref();
    let gray = image::open(path).map_err(|e| map_err(path, e))?.to_luma8();
    let (w, h) = gray.dimensions();
    let data = gray
        .into_raw()
        .into_iter()
        .map(|v| if v >= 128 { 1.0 } else { 0.0 })
        .collect();
    Mask::from_vec(h as usize, w as usize, data)
}

pub fn save_mask(mask: &Mask, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let raw: Vec<u8> = mask.data().iter().map(|&v| to_u8(v)).collect();
    let buf = GrayImage::from_raw(mask.width() as u32, mask.height() as u32, raw)
        .expect("buffer length matches dimensions");
    buf.save_with_format(path, image::ImageFormat::Png)
        .map_err(|e| map_err(path, e))
}

/// Quantizes an image to the 8-bit grid it would have after a save/load cycle.
pub fn quantize8(img: &Image) -> Image {
    img.map(|v| to_u8(v) as f64 / 255.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_is_8bit_exact() {
        let dir = tempfile::tempdir().unwrap();
        let img = Image::from_fn(5, 7, |y, x| [y as f64 / 4.0, x as f64 / 6.0, 0.333]).unwrap();
        let p = dir.path().join("a.png");
        save_image(&img, &p).unwrap();
        let back = load_image(&p).unwrap();
        assert_eq!(back, quantize8(&img));
        for (a, b) in back.data().iter().zip(img.data()) {
            assert!((a - b).abs() <= 0.5 / 255.0 + 1e-12);
        }
    }

    #[test]
    fn mask_threshold() {
        let dir = tempfile::tempdir().unwrap();
        let soft = Mask::from_vec(1, 4, vec![0.0, 0.4, 0.51, 1.0]).unwrap();
        let p = dir.path().join("m.png");
        save_mask(&soft, &p).unwrap();
        // 0.4 -> 102, 0.51 -> 130
        assert_eq!(load_mask(&p).unwrap().data(), &[0.0, 0.0, 1.0, 1.0]);
    }

    #[test]
    fn missing_file_is_io_error() {
        let err = load_image("/nonexistent/x.png").unwrap_err();
        assert_eq!(err.kind(), crate::ErrorKind::Io);
    }

    #[test]
    fn corrupt_file_is_decode_error() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("bad.png");
        std::fs::write(&p, b"not a png").unwrap();
        let err = load_image(&p).unwrap_err();
        assert_eq!(err.kind(), crate::ErrorKind::Io);
    }
}
