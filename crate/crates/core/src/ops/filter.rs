//! Separable Gaussian smoothing and additive Gaussian noise.

use crate::error::{Error, Result};
use crate::raster::{check_same, clamp01, Image, Mask, CHANNELS};
use crate::rng::Rng;

/// Normalized 1-D Gaussian weights for offsets `-r..=r`, `r = ceil(3 sigma)`.
pub fn gaussian_kernel(sigma: f64) -> Vec<f64> {
    if sigma <= 0.0 {
        return vec![1.0];
    }
    let radius = (3.0 * sigma).ceil() as isize;
    let denom = 2.0 * sigma * sigma;
    let mut k: Vec<f64> = (-radius..=radius)
        .map(|i| (-((i * i) as f64) / denom).exp())
        .collect();
    let sum: f64 = k.iter().sum();
    k.iter_mut().for_each(|w| *w /= sum);
    k
}

/// Mirrors an out-of-range index back into `0..n`, repeating the edge sample
/// (`cba|abcd|dcb`).
#[inline]
pub(crate) fn reflect(i: isize, n: usize) -> usize {
    let n = n as isize;
    let period = 2 * n;
    let mut j = i.rem_euclid(period);
    if j >= n {
        j = period - 1 - j;
    }
    j as usize
}

/// Blurs a single row-major plane.
pub(crate) fn blur_plane(plane: &[f64], height: usize, width: usize, sigma: f64) -> Vec<f64> {
    if sigma <= 0.0 {
        return plane.to_vec();
    }
    let k = gaussian_kernel(sigma);
    let r = (k.len() / 2) as isize;

    let mut tmp = vec![0.0; plane.len()];
    for y in 0..height {
        let row = &plane[y * width..(y + 1) * width];
        for x in 0..width {
            let mut acc = 0.0;
            for (t, &w) in k.iter().enumerate() {
                acc += w * row[reflect(x as isize + t as isize - r, width)];
            }
            tmp[y * width + x] = acc;
        }
    }

    let mut out = vec![0.0; plane.len()];
    for y in 0..height {
        for (t, &w) in k.iter().enumerate() {
            let sy = reflect(y as isize + t as isize - r, height);
            let src = &tmp[sy * width..(sy + 1) * width];
            let dst = &mut out[y * width..(y + 1) * width];
            for (d, &s) in dst.iter_mut().zip(src) {
                *d += w * s;
            }
        }
    }
    out
}

/// Gaussian blur with reflect padding, each channel independently.
pub fn gaussian_blur(img: &Image, sigma: f64) -> Result<Image> {
    check_sigma(sigma)?;
    if sigma == 0.0 {
        return Ok(img.clone());
    }
    let (h, w) = img.dims();
    let mut out = img.clone();
    for c in 0..CHANNELS {
        let blurred = blur_plane(&img.channel(c), h, w, sigma);
        out.set_channel(c, &blurred);
    }
    Ok(out)
}

/// Adds `region * N(0, sigma^2)` noise and clamps.
///
/// One normal draw is consumed per sample regardless of the region so the
/// noise field does not depend on the mask.
pub fn gaussian_noise(img: &Image, sigma: f64, region: &Mask, rng: &mut Rng) -> Result<Image> {
    check_same(img.dims(), region.dims(), "gaussian_noise region")?;
    check_sigma(sigma)?;
    if sigma == 0.0 {
        return Ok(img.clone());
    }
    let mut out = img.clone();
    for (px, &w) in out.pixels_mut().zip(region.data()) {
        for v in px.iter_mut() {
            let n = rng.standard_normal();
            if w != 0.0 {
                *v = clamp01(*v + w * sigma * n);
            }
        }
    }
    Ok(out)
}

/// Gaussian-blurred copy of a mask, kept in `[0, 1]`.
pub fn soften_mask(mask: &Mask, sigma: f64) -> Result<Mask> {
    check_sigma(sigma)?;
    if sigma == 0.0 {
        return Ok(mask.clone());
    }
    let (h, w) = mask.dims();
    let data = blur_plane(mask.data(), h, w, sigma)
        .into_iter()
        .map(clamp01)
        .collect();
    Ok(Mask::from_vec_unchecked(h, w, data))
}

fn check_sigma(sigma: f64) -> Result<()> {
    if !(sigma >= 0.0 && sigma.is_finite()) {
        return Err(Error::Config(format!("sigma must be finite and >= 0, got {sigma}")));
    }
    Ok(())
}
