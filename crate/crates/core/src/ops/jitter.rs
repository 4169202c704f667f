//! Color jitter: brightness gain, contrast, saturation and hue rotation.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::raster::{check_same, clamp01, Image, Mask, CHANNELS};
use crate::rng::Rng;

const LUMA: [f64; 3] = [0.299, 0.587, 0.114];

/// Closed sampling interval `[min, max]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Range {
    pub min: f64,
    pub max: f64,
}

impl Range {
    pub const fn new(min: f64, max: f64) -> Self {
        Self { min, max }
    }

    pub const fn point(v: f64) -> Self {
        Self { min: v, max: v }
    }

    pub fn validate(&self, name: &str) -> Result<()> {
        if !(self.min.is_finite() && self.max.is_finite()) || self.min > self.max {
            return Err(Error::Config(format!(
                "{name}: empty range [{}, {}]",
                self.min, self.max
            )));
        }
        Ok(())
    }

    pub fn contains(&self, v: f64) -> bool {
        (self.min..=self.max).contains(&v)
    }

    pub fn sample(&self, rng: &mut Rng) -> f64 {
        rng.uniform(self.min, self.max)
    }
}

/// Sampling ranges for [`JitterFactors`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JitterParams {
    pub brightness: Range,
    pub contrast: Range,
    pub saturation: Range,
    pub hue_degrees: Range,
}

impl Default for JitterParams {
    fn default() -> Self {
        Self {
            brightness: Range::new(0.85, 1.15),
            contrast: Range::new(0.85, 1.15),
            saturation: Range::new(0.85, 1.15),
            hue_degrees: Range::new(-12.0, 12.0),
        }
    }
}

impl JitterParams {
    pub fn identity() -> Self {
        Self {
            brightness: Range::point(1.0),
            contrast: Range::point(1.0),
            saturation: Range::point(1.0),
            hue_degrees: Range::point(0.0),
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.brightness.validate("brightness")?;
        self.contrast.validate("contrast")?;
        self.saturation.validate("saturation")?;
        self.hue_degrees.validate("hue_degrees")
    }

    pub fn sample(&self, rng: &mut Rng) -> Result<JitterFactors> {
        self.validate()?;
        Ok(JitterFactors {
            brightness: self.brightness.sample(rng),
            contrast: self.contrast.sample(rng),
            saturation: self.saturation.sample(rng),
            hue_degrees: self.hue_degrees.sample(rng),
        })
    }
}

/// One concrete draw of jitter factors.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JitterFactors {
    pub brightness: f64,
    pub contrast: f64,
    pub saturation: f64,
    pub hue_degrees: f64,
}

impl JitterFactors {
    pub const IDENTITY: JitterFactors = JitterFactors {
        brightness: 1.0,
        contrast: 1.0,
        saturation: 1.0,
        hue_degrees: 0.0,
    };

    pub fn brightness(gain: f64) -> Self {
        Self {
            brightness: gain,
            ..Self::IDENTITY
        }
    }

    /// Applies the factors to the whole image; each stage is clamped.
    ///
    /// Stages whose factor is exactly the identity are skipped, so identity
    /// factors reproduce the (clamped) input bit-exactly.
    pub fn apply(&self, img: &Image) -> Image {
        let mut out = img.clamp01();
        if self.brightness != 1.0 {
            for v in out.data_mut() {
                *v = clamp01(*v * self.brightness);
            }
        }
        if self.contrast != 1.0 {
            let mean = out.pixels().map(luma).sum::<f64>() / out.pixel_count() as f64;
            for v in out.data_mut() {
                *v = clamp01(mean + self.contrast * (*v - mean));
            }
        }
        if self.saturation != 1.0 {
            for px in out.pixels_mut() {
                let l = luma(px);
                for v in px.iter_mut() {
                    *v = clamp01(l + self.saturation * (*v - l));
                }
            }
        }
        if self.hue_degrees != 0.0 {
            let m = hue_matrix(self.hue_degrees);
            for px in out.pixels_mut() {
                let p = [px[0], px[1], px[2]];
                for (c, row) in m.iter().enumerate() {
                    px[c] = clamp01(row[0] * p[0] + row[1] * p[1] + row[2] * p[2]);
                }
            }
        }
        out
    }
}

/// Jitters `img` where `region > 0`, blending by region weight.
///
/// Pixels with zero region weight are returned bit-exactly.
pub fn color_jitter(img: &Image, region: &Mask, params: &JitterParams, rng: &mut Rng) -> Result<Image> {
    check_same(img.dims(), region.dims(), "color_jitter region")?;
    let factors = params.sample(rng)?;
    Ok(jitter_region(img, region, &factors))
}

pub fn jitter_region(img: &Image, region: &Mask, factors: &JitterFactors) -> Image {
    let jittered = factors.apply(img);
    let mut out = img.clone();
    for ((o, j), &w) in out.pixels_mut().zip(jittered.pixels()).zip(region.data()) {
        if w == 0.0 {
            continue;
        }
        for c in 0..CHANNELS {
            o[c] = clamp01(w * j[c] + (1.0 - w) * o[c]);
        }
    }
    out
}

#[inline]
pub(crate) fn luma(px: &[f64]) -> f64 {
    LUMA[0] * px[0] + LUMA[1] * px[1] + LUMA[2] * px[2]
}

/// Rotation about the gray axis of RGB space.
fn hue_matrix(degrees: f64) -> [[f64; 3]; 3] {
    let (s, c) = degrees.to_radians().sin_cos();
    let k = (1.0 - c) / 3.0;
    let r = (1.0f64 / 3.0).sqrt() * s;
    [
        [c + k, k - r, k + r],
        [k + r, c + k, k - r],
        [k - r, k + r, c + k],
    ]
}
