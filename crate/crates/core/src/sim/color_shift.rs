//! Spatially varying colour shifts: linear gradient, soft blobs and uniform.
//!
//! Every scheme builds an alpha map, blends a jittered copy of the image in by
//! that alpha (`alpha * jittered + (1 - alpha) * img`) and then restricts the
//! result to a region.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::ops::{alpha_blend, paste_back, JitterFactors};
use crate::raster::{check_same, Image, Mask};
use crate::rng::Rng;
use crate::sim::config::ColorShiftConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ShiftKind {
    Gradient,
    Blobs,
    Uniform,
}

impl ShiftKind {
    pub const ALL: [ShiftKind; 3] = [ShiftKind::Gradient, ShiftKind::Blobs, ShiftKind::Uniform];
}

/// Alpha ramps linearly along `direction` over normalized coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GradientShift {
    /// Unit vector `(dx, dy)`.
    pub direction: [f64; 2],
    pub factors: JitterFactors,
}

/// Soft ellipse in pixel coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Ellipse {
    pub cy: f64,
    pub cx: f64,
    pub semi_y: f64,
    pub semi_x: f64,
    /// Rotation of the x semi-axis, radians.
    pub angle: f64,
}

impl Ellipse {
    /// `(1 - rho^2)^2` inside the ellipse, 0 outside, where `rho` is the
    /// normalized elliptical radius. Equals 1 at the centre.
    pub fn alpha(&self, y: f64, x: f64) -> f64 {
        if !(self.semi_x > 0.0 && self.semi_y > 0.0) {
            return 0.0;
        }
        let (s, c) = self.angle.sin_cos();
        let (dy, dx) = (y - self.cy, x - self.cx);
        let u = (dx * c + dy * s) / self.semi_x;
        let v = (-dx * s + dy * c) / self.semi_y;
        let rho2 = u * u + v * v;
        if rho2 >= 1.0 {
            0.0
        } else {
            (1.0 - rho2) * (1.0 - rho2)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlobShift {
    pub blobs: Vec<Ellipse>,
    pub factors: JitterFactors,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UniformShift {
    pub ratio: f64,
    pub factors: JitterFactors,
}

/// One fully specified colour shift.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "scheme", rename_all = "snake_case")]
pub enum ColorShift {
    Gradient(GradientShift),
    Blobs(BlobShift),
    Uniform(UniformShift),
}

impl ColorShift {
    pub fn sample(kind: ShiftKind, height: usize, width: usize, cfg: &ColorShiftConfig, rng: &mut Rng) -> Result<Self> {
        cfg.validate()?;
        let factors = cfg.jitter.sample(rng)?;
        Ok(match kind {
            ShiftKind::Gradient => {
                let theta = rng.uniform(0.0, std::f64::consts::TAU);
                ColorShift::Gradient(GradientShift {
                    direction: [theta.cos(), theta.sin()],
                    factors,
                })
            }
            ShiftKind::Blobs => {
                let n = cfg.blob_count.sample(rng);
                let (h, w) = (height as f64, width as f64);
                let blobs = (0..n)
                    .map(|_| Ellipse {
                        cy: rng.uniform(0.0, h - 1.0),
                        cx: rng.uniform(0.0, w - 1.0),
                        semi_y: cfg.blob_semi_axis.sample(rng) * h,
                        semi_x: cfg.blob_semi_axis.sample(rng) * w,
                        angle: rng.uniform(0.0, std::f64::consts::PI),
                    })
                    .collect();
                ColorShift::Blobs(BlobShift { blobs, factors })
            }
            ShiftKind::Uniform => ColorShift::Uniform(UniformShift {
                ratio: cfg.uniform_ratio,
                factors,
            }),
        })
    }

    pub fn kind(&self) -> ShiftKind {
        match self {
            ColorShift::Gradient(_) => ShiftKind::Gradient,
            ColorShift::Blobs(_) => ShiftKind::Blobs,
            ColorShift::Uniform(_) => ShiftKind::Uniform,
        }
    }

    pub fn factors(&self) -> &JitterFactors {
        match self {
            ColorShift::Gradient(g) => &g.factors,
            ColorShift::Blobs(b) => &b.factors,
            ColorShift::Uniform(u) => &u.factors,
        }
    }

    pub fn alpha_map(&self, height: usize, width: usize) -> Result<Mask> {
        match self {
            ColorShift::Gradient(g) => gradient_alpha(height, width, g.direction),
            ColorShift::Blobs(b) => Mask::from_fn(height, width, |y, x| {
                b.blobs
                    .iter()
                    .map(|e| e.alpha(y as f64, x as f64))
                    .fold(0.0, f64::max)
            }),
            ColorShift::Uniform(u) => Mask::filled(height, width, u.ratio),
        }
    }

    /// Applies the shift where `region > 0`; other pixels are returned as is.
    pub fn apply(&self, img: &Image, region: &Mask) -> Result<Image> {
        check_same(img.dims(), region.dims(), "color shift region")?;
        if *self.factors() == JitterFactors::IDENTITY {
            return Ok(img.clone());
        }
        let (h, w) = img.dims();
        let jittered = self.factors().apply(img);
        let shifted = alpha_blend(&jittered, img, &self.alpha_map(h, w)?)?;
        paste_back(&shifted, img, region)
    }
}

fn gradient_alpha(height: usize, width: usize, direction: [f64; 2]) -> Result<Mask> {
    let norm = |n: usize, i: usize| if n > 1 { i as f64 / (n - 1) as f64 } else { 0.0 };
    let t: Vec<f64> = (0..height)
        .flat_map(|y| (0..width).map(move |x| direction[0] * norm(width, x) + direction[1] * norm(height, y)))
        .collect();
    let lo = t.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = t.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let span = hi - lo;
    Mask::from_fn(height, width, |y, x| {
        if span > 0.0 {
            ((t[y * width + x] - lo) / span).clamp(0.0, 1.0)
        } else {
            0.0
        }
    })
}

pub fn color_shift_linear_gradient(img: &Image, mask: &Mask, cfg: &ColorShiftConfig, rng: &mut Rng) -> Result<Image> {
    let (h, w) = img.dims();
    ColorShift::sample(ShiftKind::Gradient, h, w, cfg, rng)?.apply(img, mask)
}

pub fn color_shift_blobs(img: &Image, mask: &Mask, cfg: &ColorShiftConfig, rng: &mut Rng) -> Result<Image> {
    let (h, w) = img.dims();
    ColorShift::sample(ShiftKind::Blobs, h, w, cfg, rng)?.apply(img, mask)
}

pub fn color_shift_uniform(img: &Image, mask: &Mask, cfg: &ColorShiftConfig, rng: &mut Rng) -> Result<Image> {
    let (h, w) = img.dims();
    ColorShift::sample(ShiftKind::Uniform, h, w, cfg, rng)?.apply(img, mask)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::synth::photo;

    fn gray(h: usize, w: usize) -> Image {
        Image::filled(h, w, [0.5; 3]).unwrap()
    }

    fn bright() -> JitterFactors {
        JitterFactors::brightness(1.2)
    }

    #[test]
    fn gradient_along_x() {
        let shift = ColorShift::Gradient(GradientShift {
            direction: [1.0, 0.0],
            factors: bright(),
        });
        let out = shift.apply(&gray(5, 11), &Mask::ones(5, 11).unwrap()).unwrap();
        for y in 0..5 {
            for x in 0..11 {
                let expect = 0.5 + 0.1 * x as f64 / 10.0;
                assert!((out.get(y, x)[0] - expect).abs() < 1e-12);
            }
        }
        assert_eq!(out.get(2, 0), [0.5; 3]);
    }

    #[test]
    fn identity_factors_and_empty_mask_are_noops() {
        let img = photo(24, 24, 2);
        let mut rng = Rng::new(0, 0);
        let cfg = ColorShiftConfig {
            jitter: crate::ops::JitterParams::identity(),
            ..Default::default()
        };
        for kind in ShiftKind::ALL {
            let s = ColorShift::sample(kind, 24, 24, &cfg, &mut rng).unwrap();
            assert_eq!(s.apply(&img, &Mask::ones(24, 24).unwrap()).unwrap(), img);
            let s = ColorShift::sample(kind, 24, 24, &ColorShiftConfig::default(), &mut rng).unwrap();
            assert_eq!(s.apply(&img, &Mask::zeros(24, 24).unwrap()).unwrap(), img);
        }
    }

    #[test]
    fn region_restriction_is_exact() {
        let img = photo(20, 20, 5);
        let m = Mask::from_fn(20, 20, |y, _| if y < 10 { 1.0 } else { 0.0 }).unwrap();
        let out = color_shift_blobs(&img, &m, &ColorShiftConfig::default(), &mut Rng::new(3, 1)).unwrap();
        for (i, (a, b)) in out.pixels().zip(img.pixels()).enumerate() {
            if i / 20 >= 10 {
                assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn ellipse_falloff() {
        let e = Ellipse {
            cy: 10.0,
            cx: 10.0,
            semi_y: 4.0,
            semi_x: 6.0,
            angle: 0.0,
        };
        assert_eq!(e.alpha(10.0, 10.0), 1.0);
        assert_eq!(e.alpha(10.0, 16.5), 0.0);
        assert_eq!(e.alpha(14.5, 10.0), 0.0);
        // Halfway along the x axis: rho^2 = 0.25.
        assert!((e.alpha(10.0, 13.0) - 0.5625).abs() < 1e-12);
        let zero = Ellipse { semi_x: 0.0, ..e };
        assert_eq!(zero.alpha(10.0, 10.0), 0.0);
    }

    #[test]
    fn blobs_merge_by_max() {
        let a = Ellipse {
            cy: 8.0,
            cx: 8.0,
            semi_y: 6.0,
            semi_x: 6.0,
            angle: 0.3,
        };
        let b = Ellipse { cx: 12.0, ..a };
        let shift = ColorShift::Blobs(BlobShift {
            blobs: vec![a, b],
            factors: bright(),
        });
        let alpha = shift.alpha_map(16, 20).unwrap();
        for y in 0..16 {
            for x in 0..20 {
                let expect = a.alpha(y as f64, x as f64).max(b.alpha(y as f64, x as f64));
                assert_eq!(alpha.get(y, x), expect);
            }
        }
    }

    #[test]
    fn uniform_ratio_arithmetic() {
        let m = Mask::ones(4, 4).unwrap();
        let mk = |ratio| ColorShift::Uniform(UniformShift { ratio, factors: bright() });
        let half = mk(0.5).apply(&gray(4, 4), &m).unwrap();
        assert!(half.data().iter().all(|v| (v - 0.55).abs() < 1e-12));
        assert_eq!(mk(0.0).apply(&gray(4, 4), &m).unwrap(), gray(4, 4));
        let full = mk(1.0).apply(&gray(4, 4), &m).unwrap();
        assert!(full.data().iter().all(|v| (v - 0.6).abs() < 1e-12));
    }

    #[test]
    fn deterministic_sampling() {
        let cfg = ColorShiftConfig::default();
        for kind in ShiftKind::ALL {
            let a = ColorShift::sample(kind, 32, 32, &cfg, &mut Rng::new(9, 2)).unwrap();
            let b = ColorShift::sample(kind, 32, 32, &cfg, &mut Rng::new(9, 2)).unwrap();
            assert_eq!(a, b);
            assert_eq!(a.kind(), kind);
        }
    }
}
