//! Pixel-space and discriminative-space L1 losses.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metrics::l1;
use crate::raster::{Image, Mask};
use crate::rng::Rng;
use crate::tonemap::fit::{apply_tonemap, fit_tonemap, AmplifyParams, ToneMap};

/// Loss weights. `w3` (adversarial) is carried for configuration parity and
/// never contributes, since no discriminator is available here.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LossConfig {
    pub w1: f64,
    pub w2: f64,
    pub w3: f64,
}

impl Default for LossConfig {
    fn default() -> Self {
        Self {
            w1: 64.0,
            w2: 5.0,
            w3: 1.0,
        }
    }
}

impl LossConfig {
    pub fn validate(&self) -> Result<()> {
        for (name, w) in [("w1", self.w1), ("w2", self.w2), ("w3", self.w3)] {
            if !(w >= 0.0 && w.is_finite()) {
                return Err(Error::Config(format!("{name} must be finite and >= 0, got {w}")));
            }
        }
        Ok(())
    }
}

/// Pluggable feature extractor for the perceptual term.
pub trait FeatureExtractor {
    fn extract(&self, img: &Image) -> Result<Vec<f64>>;
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LossReport {
    pub pixel_space_l1: f64,
    pub disc_space_l1: f64,
    /// Feature L1 summed over both spaces; `None` without an extractor.
    pub perceptual: Option<f64>,
    pub combined: f64,
}

/// Both images pushed through one freshly fitted tone map.
#[derive(Debug, Clone)]
pub struct DiscProjection {
    pub tonemap: ToneMap,
    pub y_pred: Image,
    pub y_gt: Image,
}

pub fn project_disc_space(
    x_pred: &Image,
    x_gt: &Image,
    mask: &Mask,
    params: &AmplifyParams,
    rng: &mut Rng,
) -> Result<DiscProjection> {
    let tonemap = fit_tonemap(x_pred, x_gt, mask, params, rng)?;
    Ok(DiscProjection {
        y_pred: apply_tonemap(&tonemap, x_pred),
        y_gt: apply_tonemap(&tonemap, x_gt),
        tonemap,
    })
}

/// Mean `|f(x_pred) - f(x_gt)|` over every pixel and channel.
pub fn disc_l1(x_pred: &Image, x_gt: &Image, mask: &Mask, params: &AmplifyParams, rng: &mut Rng) -> Result<f64> {
    let p = project_disc_space(x_pred, x_gt, mask, params, rng)?;
    l1(&p.y_pred, &p.y_gt, None)
}

/// Like [`disc_l1`] but averaged over the mask support only.
pub fn disc_l1_masked(
    x_pred: &Image,
    x_gt: &Image,
    mask: &Mask,
    params: &AmplifyParams,
    rng: &mut Rng,
) -> Result<f64> {
    let p = project_disc_space(x_pred, x_gt, mask, params, rng)?;
    l1(&p.y_pred, &p.y_gt, Some(mask))
}

fn feature_l1(fx: &dyn FeatureExtractor, a: &Image, b: &Image) -> Result<f64> {
    let fa = fx.extract(a)?;
    let fb = fx.extract(b)?;
    if fa.len() != fb.len() {
        return Err(Error::Shape(format!(
            "feature lengths differ: {} vs {}",
            fa.len(),
            fb.len()
        )));
    }
    if fa.is_empty() {
        return Ok(0.0);
    }
    Ok(fa.iter().zip(&fb).map(|(x, y)| (x - y).abs()).sum::<f64>() / fa.len() as f64)
}

/// `w1 * (pixel L1 + disc L1) + w2 * (feature L1 in both spaces)`.
pub fn combined_loss(
    x_pred: &Image,
    x_gt: &Image,
    mask: &Mask,
    cfg: &LossConfig,
    params: &AmplifyParams,
    rng: &mut Rng,
    features: Option<&dyn FeatureExtractor>,
) -> Result<LossReport> {
    cfg.validate()?;
    let pixel = l1(x_pred, x_gt, None)?;
    let proj = project_disc_space(x_pred, x_gt, mask, params, rng)?;
    let disc = l1(&proj.y_pred, &proj.y_gt, None)?;
    let perceptual = match features {
        Some(fx) => Some(feature_l1(fx, x_pred, x_gt)? + feature_l1(fx, &proj.y_pred, &proj.y_gt)?),
        None => None,
    };
    let combined = cfg.w1 * (pixel + disc) + cfg.w2 * perceptual.unwrap_or(0.0);
    Ok(LossReport {
        pixel_space_l1: pixel,
        disc_space_l1: disc,
        perceptual,
        combined,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::raster::CHANNELS;

    fn smooth(n: usize) -> Image {
        Image::from_fn(n, n, |y, x| {
            let (fy, fx) = (y as f64 / n as f64, x as f64 / n as f64);
            [0.3 + 0.3 * fx, 0.4 + 0.2 * fy, 0.5 + 0.1 * (fx + fy)]
        })
        .unwrap()
    }

    fn square(n: usize) -> Mask {
        Mask::from_fn(n, n, |y, x| {
            if (n / 4..3 * n / 4).contains(&y) && (n / 4..3 * n / 4).contains(&x) {
                1.0
            } else {
                0.0
            }
        })
        .unwrap()
    }

    fn shift_inside(img: &Image, mask: &Mask, delta: f64) -> Image {
        let mut out = img.clone();
        for (px, &m) in out.pixels_mut().zip(mask.data()) {
            if m == 1.0 {
                for v in px.iter_mut() {
                    *v += delta;
                }
            }
        }
        out
    }

    struct MeanColor;
    impl FeatureExtractor for MeanColor {
        fn extract(&self, img: &Image) -> Result<Vec<f64>> {
            Ok((0..CHANNELS)
                .map(|c| img.channel(c).iter().sum::<f64>() / img.pixel_count() as f64)
                .collect())
        }
    }

    #[test]
    fn identity_gives_zero() {
        let img = smooth(32);
        let m = square(32);
        for seed in 0..4 {
            let d = disc_l1(&img, &img, &m, &AmplifyParams::default(), &mut Rng::new(seed, 0)).unwrap();
            assert!(d.abs() < 1e-6);
        }
        let r = combined_loss(&img, &img, &m, &LossConfig::default(), &AmplifyParams::default(), &mut Rng::new(0, 0), Some(&MeanColor)).unwrap();
        assert!(r.pixel_space_l1 == 0.0 && r.disc_space_l1 < 1e-6 && r.perceptual.unwrap() < 1e-6 && r.combined < 1e-4);
    }

    /// Gentle background whose spread stays below the in-mask offsets used
    /// here, so inside and outside intensities remain separable.
    fn gentle(n: usize) -> Image {
        Image::from_fn(n, n, |y, x| {
            let (fy, fx) = (y as f64 / n as f64, x as f64 / n as f64);
            [0.45 + 0.004 * fx, 0.5 + 0.004 * fy, 0.55 + 0.002 * (fx + fy)]
        })
        .unwrap()
    }

    #[test]
    fn amplifies_a_uniform_shift() {
        let gt = gentle(48);
        let m = square(48);
        let pred = shift_inside(&gt, &m, 0.02);
        let pixel = l1(&pred, &gt, Some(&m)).unwrap();
        let disc = disc_l1_masked(&pred, &gt, &m, &AmplifyParams::pinned(20.0), &mut Rng::new(3, 0)).unwrap();
        assert!(disc >= 10.0 * pixel, "disc {disc} vs pixel {pixel}");
        let full = disc_l1(&pred, &gt, &m, &AmplifyParams::pinned(20.0), &mut Rng::new(3, 0)).unwrap();
        assert!(full >= l1(&pred, &gt, None).unwrap());
    }

    #[test]
    fn overlapping_intensities_still_amplify() {
        let gt = smooth(48);
        let m = square(48);
        let pred = shift_inside(&gt, &m, 0.02);
        let disc = disc_l1(&pred, &gt, &m, &AmplifyParams::pinned(20.0), &mut Rng::new(3, 0)).unwrap();
        assert!(disc >= l1(&pred, &gt, None).unwrap());
    }

    #[test]
    fn monotone_in_shift() {
        let gt = gentle(48);
        let m = square(48);
        let vals: Vec<f64> = [0.005, 0.01, 0.02]
            .iter()
            .map(|&d| {
                let pred = shift_inside(&gt, &m, d);
                disc_l1(&pred, &gt, &m, &AmplifyParams::pinned(20.0), &mut Rng::new(5, 0)).unwrap()
            })
            .collect();
        assert!(vals[0] < vals[1] && vals[1] < vals[2], "{vals:?}");
    }

    #[test]
    fn weights_default_and_linearity() {
        let cfg = LossConfig::default();
        assert_eq!((cfg.w1, cfg.w2, cfg.w3), (64.0, 5.0, 1.0));

        let gt = smooth(32);
        let m = square(32);
        let pred = shift_inside(&gt, &m, 0.03);
        let params = AmplifyParams::default();
        let a = combined_loss(&pred, &gt, &m, &cfg, &params, &mut Rng::new(1, 0), None).unwrap();
        let doubled = LossConfig { w1: 128.0, ..cfg };
        let b = combined_loss(&pred, &gt, &m, &doubled, &params, &mut Rng::new(1, 0), None).unwrap();
        assert!(a.perceptual.is_none());
        assert!((b.combined - 2.0 * a.combined).abs() < 1e-12 * a.combined.max(1.0));
    }

    #[test]
    fn negative_weight_rejected() {
        let bad = LossConfig { w2: -1.0, ..Default::default() };
        assert!(bad.validate().is_err());
    }
}
