//! Probabilities and parameter ranges for the artifact simulator.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ops::{JitterParams, Range};
use crate::rng::Rng;

pub const CONFIG_VERSION: u32 = 1;

/// The shipped default configuration, byte for byte.
pub const DEFAULT_CONFIG_JSON: &str = include_str!("../../config/default_sim.json");

/// Closed integer interval `[min, max]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntRange {
    pub min: u32,
    pub max: u32,
}

impl IntRange {
    pub const fn new(min: u32, max: u32) -> Self {
        Self { min, max }
    }

    pub fn validate(&self, name: &str) -> Result<()> {
        if self.min > self.max {
            return Err(Error::Config(format!("{name}: empty range [{}, {}]", self.min, self.max)));
        }
        Ok(())
    }

    pub fn sample(&self, rng: &mut Rng) -> u32 {
        rng.int_inclusive(self.min as i64, self.max as i64) as u32
    }
}

/// Per-family application probabilities.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FamilyProbabilities {
    pub content_discontinuity: f64,
    pub background_color_aug: f64,
    pub foreground_color_aug: f64,
    pub boundary_mixing: f64,
    pub noise_jpeg_blur: f64,
    pub codec_artifacts: f64,
}

impl Default for FamilyProbabilities {
    fn default() -> Self {
        Self {
            content_discontinuity: 0.5,
            background_color_aug: 0.8,
            foreground_color_aug: 0.8,
            boundary_mixing: 1.0,
            noise_jpeg_blur: 0.5,
            codec_artifacts: 0.5,
        }
    }
}

impl FamilyProbabilities {
    pub fn zero() -> Self {
        Self {
            content_discontinuity: 0.0,
            background_color_aug: 0.0,
            foreground_color_aug: 0.0,
            boundary_mixing: 0.0,
            noise_jpeg_blur: 0.0,
            codec_artifacts: 0.0,
        }
    }

    pub fn entries(&self) -> [(&'static str, f64); 6] {
        [
            ("content_discontinuity", self.content_discontinuity),
            ("background_color_aug", self.background_color_aug),
            ("foreground_color_aug", self.foreground_color_aug),
            ("boundary_mixing", self.boundary_mixing),
            ("noise_jpeg_blur", self.noise_jpeg_blur),
            ("codec_artifacts", self.codec_artifacts),
        ]
    }
}

/// Shape parameters of the three colour-shift schemes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ColorShiftConfig {
    pub jitter: JitterParams,
    pub blob_count: IntRange,
    /// Ellipse semi-axes as a fraction of the matching image side.
    pub blob_semi_axis: Range,
    /// Constant blend weight of the jittered copy in the uniform scheme.
    pub uniform_ratio: f64,
}

impl Default for ColorShiftConfig {
    fn default() -> Self {
        Self {
            jitter: JitterParams::default(),
            blob_count: IntRange::new(1, 3),
            blob_semi_axis: Range::new(0.1, 0.4),
            uniform_ratio: 0.75,
        }
    }
}

impl ColorShiftConfig {
    pub fn validate(&self) -> Result<()> {
        self.jitter.validate()?;
        self.blob_count.validate("blob_count")?;
        if self.blob_count.min == 0 {
            return Err(Error::Config("blob_count must be at least 1".into()));
        }
        self.blob_semi_axis.validate("blob_semi_axis")?;
        if self.blob_semi_axis.min < 0.0 {
            return Err(Error::Config("blob_semi_axis must be >= 0".into()));
        }
        check_probability("uniform_ratio", self.uniform_ratio)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    pub version: u32,
    pub probabilities: FamilyProbabilities,
    /// Within the noise/JPEG/blur family each sub-operation fires with this
    /// probability; if none fires, one is picked uniformly.
    pub noise_jpeg_blur_sub_probability: f64,
    pub background_shift: ColorShiftConfig,
    pub foreground_shift: ColorShiftConfig,
    pub jpeg_quality: IntRange,
    pub blur_sigma: Range,
    pub noise_sigma: Range,
    pub codec_strength: Range,
    pub band_width: IntRange,
    pub morph_radius: IntRange,
    pub mask_blur_sigma: Range,
    /// Probability that a mixed boundary stays hard (no blur).
    pub hard_boundary_probability: f64,
}

impl Default for SimConfig {
    fn default() -> Self {
        Self {
            version: CONFIG_VERSION,
            probabilities: FamilyProbabilities::default(),
            noise_jpeg_blur_sub_probability: 0.5,
            background_shift: ColorShiftConfig::default(),
            foreground_shift: ColorShiftConfig::default(),
            jpeg_quality: IntRange::new(30, 90),
            blur_sigma: Range::new(0.5, 2.0),
            noise_sigma: Range::new(0.005, 0.03),
            codec_strength: Range::new(0.0, 1.0),
            band_width: IntRange::new(2, 6),
            morph_radius: IntRange::new(1, 8),
            mask_blur_sigma: Range::new(0.0, 4.0),
            hard_boundary_probability: 0.5,
        }
    }
}

fn check_probability(name: &str, p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Config(format!("{name} must be in [0, 1], got {p}")));
    }
    Ok(())
}

impl SimConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: SimConfig =
            serde_json::from_str(text).map_err(|e| Error::Config(format!("invalid simulator config: {e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub fn validate(&self) -> Result<()> {
        if self.version != CONFIG_VERSION {
            return Err(Error::Config(format!(
                "unsupported config version {} (expected {CONFIG_VERSION})",
                self.version
            )));
        }
        for (name, p) in self.probabilities.entries() {
            check_probability(name, p)?;
        }
        check_probability("noise_jpeg_blur_sub_probability", self.noise_jpeg_blur_sub_probability)?;
        check_probability("hard_boundary_probability", self.hard_boundary_probability)?;
        self.background_shift.validate()?;
        self.foreground_shift.validate()?;
        self.jpeg_quality.validate("jpeg_quality")?;
        if self.jpeg_quality.min < 1 || self.jpeg_quality.max > 100 {
            return Err(Error::Config("jpeg_quality must lie in 1..=100".into()));
        }
        for (name, r) in [
            ("blur_sigma", self.blur_sigma),
            ("noise_sigma", self.noise_sigma),
            ("mask_blur_sigma", self.mask_blur_sigma),
        ] {
            r.validate(name)?;
            if r.min < 0.0 {
                return Err(Error::Config(format!("{name} must be >= 0")));
            }
        }
        self.codec_strength.validate("codec_strength")?;
        if self.codec_strength.min < 0.0 || self.codec_strength.max > 1.0 {
            return Err(Error::Config("codec_strength must lie in [0, 1]".into()));
        }
        self.band_width.validate("band_width")?;
        if self.band_width.min < 1 {
            return Err(Error::Config("band_width must be >= 1".into()));
        }
        self.morph_radius.validate("morph_radius")
    }

    /// Distance beyond the input mask that the simulator may touch.
    pub fn guard_radius(&self) -> usize {
        self.morph_radius.max as usize + (3.0 * self.mask_blur_sigma.max).ceil() as usize
    }
}
