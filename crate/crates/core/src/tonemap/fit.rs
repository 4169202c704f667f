//! Per-sample discriminative tone map.
//!
//! A tone map is fitted so that the prediction maps onto an *amplified* copy of
//! itself, `y_amp = x_gt + beta * (x_pred - x_gt)`. Inside the edited region the
//! fit therefore learns to blow up whatever separates prediction from ground
//! truth, while outside (where the two agree) it stays close to identity. Both
//! images pushed through the same map then differ by roughly `beta` times
//! their original mismatch.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::raster::{check_same, clamp01, Image, Mask, CHANNELS};
use crate::rng::Rng;
use crate::tonemap::poly::{eval_polynomial, fit_polynomial};

/// Inputs are shifted by this before exponentiation.
pub const CENTERING: f64 = 0.5;

/// Per-channel polynomial `y_c = sum_d p[c][d] * (x_c - centering)^d`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ToneMap {
    pub degree: usize,
    pub centering: f64,
    pub coefficients: [Vec<f64>; CHANNELS],
}

impl ToneMap {
    pub fn identity(degree: usize) -> Self {
        let mut row = vec![0.0; degree + 1];
        row[0] = CENTERING;
        if degree >= 1 {
            row[1] = 1.0;
        }
        Self {
            degree,
            centering: CENTERING,
            coefficients: [row.clone(), row.clone(), row],
        }
    }

    pub fn constant(value: f64, degree: usize) -> Self {
        let mut row = vec![0.0; degree + 1];
        row[0] = value;
        Self {
            degree,
            centering: CENTERING,
            coefficients: [row.clone(), row.clone(), row],
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.degree < 1 {
            return Err(Error::Config("tone map degree must be >= 1".into()));
        }
        for row in &self.coefficients {
            if row.len() != self.degree + 1 {
                return Err(Error::Config(format!(
                    "tone map of degree {} needs {} coefficients per channel, got {}",
                    self.degree,
                    self.degree + 1,
                    row.len()
                )));
            }
            if row.iter().any(|c| !c.is_finite()) {
                return Err(Error::Config("non-finite tone map coefficient".into()));
            }
        }
        if !self.centering.is_finite() {
            return Err(Error::Config("non-finite centering".into()));
        }
        Ok(())
    }

    /// Unclamped polynomial value for channel `c`.
    #[inline]
    pub fn eval(&self, c: usize, x: f64) -> f64 {
        eval_polynomial(&self.coefficients[c], self.centering, x)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("tone map serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let tm: ToneMap =
            serde_json::from_str(text).map_err(|e| Error::Config(format!("tone map JSON: {e}")))?;
        tm.validate()?;
        Ok(tm)
    }
}

/// Amplification and sampling controls for tone-map fitting.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AmplifyParams {
    pub beta_min: f64,
    pub beta_max: f64,
    /// Pixel locations drawn from each side of the mask.
    pub samples_per_side: usize,
    pub degree: usize,
}

impl Default for AmplifyParams {
    fn default() -> Self {
        Self {
            beta_min: 20.0,
            beta_max: 40.0,
            samples_per_side: 4096,
            degree: 5,
        }
    }
}

impl AmplifyParams {
    /// Fixes beta to a single value.
    pub fn pinned(beta: f64) -> Self {
        Self {
            beta_min: beta,
            beta_max: beta,
            ..Self::default()
        }
    }

    pub fn with_degree(self, degree: usize) -> Self {
        Self { degree, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.beta_min > 1.0) || !self.beta_max.is_finite() {
            return Err(Error::Config(format!(
                "beta must exceed 1, got [{}, {}]",
                self.beta_min, self.beta_max
            )));
        }
        if self.beta_min > self.beta_max {
            return Err(Error::Config(format!(
                "empty beta range [{}, {}]",
                self.beta_min, self.beta_max
            )));
        }
        if self.degree < 1 {
            return Err(Error::Config("degree must be >= 1".into()));
        }
        if self.samples_per_side < self.degree + 1 {
            return Err(Error::Config(format!(
                "need at least {} samples per side for degree {}",
                self.degree + 1,
                self.degree
            )));
        }
        Ok(())
    }
}

/// `x_gt + beta * (x_pred - x_gt)`, left unclamped.
pub fn amplify_target(x_gt: &Image, x_pred: &Image, beta: f64) -> Result<Image> {
    check_same(x_gt.dims(), x_pred.dims(), "amplify_target")?;
    if !(beta > 1.0) || !beta.is_finite() {
        return Err(Error::Precondition(format!("beta must exceed 1, got {beta}")));
    }
    let data = x_gt
        .data()
        .iter()
        .zip(x_pred.data())
        .map(|(&g, &p)| g + beta * (p - g))
        .collect();
    Image::from_vec(x_gt.height(), x_gt.width(), data)
}

/// Pixel indices inside (`mask >= 0.5`) and outside the mask.
pub(crate) fn split_mask(mask: &Mask) -> (Vec<usize>, Vec<usize>) {
    let mut inside = Vec::new();
    let mut outside = Vec::new();
    for (i, &v) in mask.data().iter().enumerate() {
        if v >= 0.5 {
            inside.push(i);
        } else {
            outside.push(i);
        }
    }
    (inside, outside)
}

/// `k` draws from `pool`: without replacement when the pool is large enough.
fn balanced_draw(pool: &[usize], k: usize, rng: &mut Rng) -> Vec<usize> {
    if pool.len() >= k {
        rng.sample_without_replacement(pool.len(), k)
            .into_iter()
            .map(|i| pool[i])
            .collect()
    } else {
        (0..k).map(|_| pool[rng.index(pool.len())]).collect()
    }
}

/// Fits a tone map with beta drawn uniformly from the configured range.
pub fn fit_tonemap(
    x_pred: &Image,
    x_gt: &Image,
    mask: &Mask,
    params: &AmplifyParams,
    rng: &mut Rng,
) -> Result<ToneMap> {
    params.validate()?;
    let beta = rng.uniform(params.beta_min, params.beta_max);
    fit_tonemap_with_beta(x_pred, x_gt, mask, params, beta, rng)
}

/// Fits a tone map for an explicit beta; `params.beta_*` are ignored.
pub fn fit_tonemap_with_beta(
    x_pred: &Image,
    x_gt: &Image,
    mask: &Mask,
    params: &AmplifyParams,
    beta: f64,
    rng: &mut Rng,
) -> Result<ToneMap> {
    check_same(x_pred.dims(), x_gt.dims(), "fit_tonemap images")?;
    check_same(x_pred.dims(), mask.dims(), "fit_tonemap mask")?;
    let (inside, outside) = split_mask(mask);
    if inside.is_empty() || outside.is_empty() {
        return Err(Error::Precondition(
            "tone-map fit needs pixels both inside and outside the mask".into(),
        ));
    }
    let target = amplify_target(x_gt, x_pred, beta)?;

    let k = params.samples_per_side;
    let mut picks = balanced_draw(&inside, k, rng);
    picks.extend(balanced_draw(&outside, k, rng));

    let mut coefficients: [Vec<f64>; CHANNELS] = Default::default();
    let mut xs = vec![0.0; picks.len()];
    let mut ys = vec![0.0; picks.len()];
    for (c, coeffs) in coefficients.iter_mut().enumerate() {
        for (j, &p) in picks.iter().enumerate() {
            xs[j] = x_pred.data()[p * CHANNELS + c];
            ys[j] = target.data()[p * CHANNELS + c];
        }
        *coeffs = fit_polynomial(&xs, &ys, params.degree, CENTERING)?;
    }
    Ok(ToneMap {
        degree: params.degree,
        centering: CENTERING,
        coefficients,
    })
}

/// Evaluates the tone map per channel and clamps to `[0, 1]`.
pub fn apply_tonemap(tm: &ToneMap, img: &Image) -> Image {
    let mut out = img.clone();
    for px in out.pixels_mut() {
        for (c, v) in px.iter_mut().enumerate() {
            *v = clamp01(tm.eval(c, *v));
        }
    }
    out
}
