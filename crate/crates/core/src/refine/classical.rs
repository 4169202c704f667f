//! Classical refiner: match the edited region's ring statistics to the
//! surrounding background with a per-channel polynomial.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ops::morph::{dilate_bits, erode_bits};
use crate::ops::{paste_back, soften_mask};
use crate::raster::{check_same, clamp01, Image, Mask, CHANNELS};
use crate::refine::Refiner;
use crate::tonemap::{eval_polynomial, fit_polynomial, CENTERING};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClassicalRefiner {
    pub degree: usize,
    /// Width of the inner and outer rings, pixels.
    pub ring_width: usize,
    pub feather_sigma: f64,
    /// Number of matched quantiles per channel.
    pub quantiles: usize,
}

impl Default for ClassicalRefiner {
    fn default() -> Self {
        Self {
            degree: 3,
            ring_width: 8,
            feather_sigma: 2.0,
            quantiles: 64,
        }
    }
}

/// Ring pixel indices of a binary mask: `(inner, outer)`.
pub fn mask_rings(mask: &Mask, width: usize) -> Result<(Vec<usize>, Vec<usize>)> {
    mask.ensure_binary("refine mask")?;
    let (h, w) = mask.dims();
    let bits = mask.support();
    let eroded = erode_bits(&bits, h, w, width);
    let dilated = dilate_bits(&bits, h, w, width);
    let inner = (0..bits.len()).filter(|&i| bits[i] && !eroded[i]).collect::<Vec<_>>();
    let outer = (0..bits.len()).filter(|&i| dilated[i] && !bits[i]).collect::<Vec<_>>();
    if inner.is_empty() {
        return Err(Error::Precondition("refine mask has no inside ring".into()));
    }
    if outer.is_empty() {
        return Err(Error::Precondition("refine mask has no outside ring".into()));
    }
    Ok((inner, outer))
}

/// Values at probabilities `(k + 0.5) / count`, linearly interpolated.
pub fn quantiles(values: &mut [f64], count: usize) -> Vec<f64> {
    values.sort_by(|a, b| a.total_cmp(b));
    let n = values.len();
    (0..count)
        .map(|k| {
            let pos = (k as f64 + 0.5) / count as f64 * (n - 1) as f64;
            let lo = pos.floor() as usize;
            let hi = (lo + 1).min(n - 1);
            let t = pos - lo as f64;
            values[lo] + t * (values[hi] - values[lo])
        })
        .collect()
}

/// A fitted polynomial plus the input range it was fitted on.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct QuantileMap {
    /// Centered-basis coefficients.
    pub coefficients: Vec<f64>,
    pub lo: f64,
    pub hi: f64,
}

impl QuantileMap {
    /// Polynomial inside `[lo, hi]`; outside, the offset at the nearest end
    /// is carried with unit slope instead of extrapolating the polynomial.
    pub fn eval(&self, x: f64) -> f64 {
        let inside = x.clamp(self.lo, self.hi);
        eval_polynomial(&self.coefficients, CENTERING, inside) + (x - inside)
    }
}

impl ClassicalRefiner {
    pub fn validate(&self) -> Result<()> {
        if self.degree == 0 {
            return Err(Error::Config("degree must be >= 1".into()));
        }
        if self.ring_width == 0 {
            return Err(Error::Config("ring_width must be >= 1".into()));
        }
        if self.quantiles <= self.degree {
            return Err(Error::Config(format!(
                "need more quantiles ({}) than the degree ({})",
                self.quantiles, self.degree
            )));
        }
        if !(self.feather_sigma >= 0.0 && self.feather_sigma.is_finite()) {
            return Err(Error::Config("feather_sigma must be finite and >= 0".into()));
        }
        Ok(())
    }

    /// Per-channel maps taking inner-ring quantiles to outer-ring quantiles.
    pub fn fit(&self, x_gen: &Image, mask: &Mask) -> Result<[QuantileMap; CHANNELS]> {
        self.validate()?;
        check_same(x_gen.dims(), mask.dims(), "refine mask")?;
        let (inner, outer) = mask_rings(mask, self.ring_width)?;
        let data = x_gen.data();
        let mut out: [QuantileMap; CHANNELS] = Default::default();
        for (c, map) in out.iter_mut().enumerate() {
            let mut a: Vec<f64> = inner.iter().map(|&p| data[p * CHANNELS + c]).collect();
            let mut b: Vec<f64> = outer.iter().map(|&p| data[p * CHANNELS + c]).collect();
            let qa = quantiles(&mut a, self.quantiles);
            let qb = quantiles(&mut b, self.quantiles);
            *map = QuantileMap {
                coefficients: fit_polynomial(&qa, &qb, self.degree, CENTERING)
                    .map_err(|e| e.context(format_args!("channel {c}")))?,
                lo: qa[0],
                hi: qa[qa.len() - 1],
            };
        }
        Ok(out)
    }
}

impl Refiner for ClassicalRefiner {
    fn refine(&self, x_gen: &Image, mask: &Mask) -> Result<Image> {
        let maps = self.fit(x_gen, mask)?;
        let mut corrected = x_gen.clone();
        for (px, &w) in corrected.pixels_mut().zip(mask.data()) {
            if w == 1.0 {
                for (c, v) in px.iter_mut().enumerate() {
                    *v = clamp01(maps[c].eval(*v));
                }
            }
        }
        let feather = soften_mask(mask, self.feather_sigma)?;
        let blended = paste_back(&corrected, x_gen, &feather)?;
        paste_back(&blended, x_gen, mask)
    }
}

pub fn classical_refine(
    x_gen: &Image,
    mask: &Mask,
    degree: usize,
    ring_width: usize,
    feather_sigma: f64,
) -> Result<Image> {
    ClassicalRefiner {
        degree,
        ring_width,
        feather_sigma,
        ..Default::default()
    }
    .refine(x_gen, mask)
}
