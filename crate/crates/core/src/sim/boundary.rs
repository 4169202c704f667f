//! Soft/hard boundary mixing: grow or shrink the mask, then optionally blur it.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::ops::morph::{dilate_bits, erode_bits};
use crate::ops::soften_mask;
use crate::raster::Mask;
use crate::rng::Rng;
use crate::sim::config::SimConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MorphOp {
    Dilate,
    Erode,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundaryMix {
    pub op: MorphOp,
    pub radius: usize,
    /// 0 keeps the boundary hard.
    pub sigma: f64,
}

impl BoundaryMix {
    pub const IDENTITY: BoundaryMix = BoundaryMix {
        op: MorphOp::Dilate,
        radius: 0,
        sigma: 0.0,
    };

    pub fn sample(cfg: &SimConfig, rng: &mut Rng) -> Self {
        let op = if rng.bernoulli(0.5) { MorphOp::Dilate } else { MorphOp::Erode };
        let radius = cfg.morph_radius.sample(rng) as usize;
        let hard = rng.bernoulli(cfg.hard_boundary_probability);
        let sigma = cfg.mask_blur_sigma.sample(rng);
        Self {
            op,
            radius,
            sigma: if hard { 0.0 } else { sigma },
        }
    }

    /// The binary mask after morphology. An erosion that would empty the mask
    /// is replaced by a dilation of the same radius.
    pub fn region(&self, mask: &Mask) -> Result<Mask> {
        mask.ensure_binary("boundary mix mask")?;
        let (h, w) = mask.dims();
        let bits = mask.support();
        let out = match self.op {
            MorphOp::Dilate => dilate_bits(&bits, h, w, self.radius),
            MorphOp::Erode => {
                let e = erode_bits(&bits, h, w, self.radius);
                if e.iter().any(|&b| b) {
                    e
                } else {
                    dilate_bits(&bits, h, w, self.radius)
                }
            }
        };
        Mask::from_bools(h, w, &out)
    }

    /// The mixed (possibly soft) mask. Blur tails are cut at distance
    /// `ceil(3 sigma)` from the morphed region, matching the kernel radius
    /// along the axes.
    pub fn apply(&self, mask: &Mask) -> Result<Mask> {
        let region = self.region(mask)?;
        if self.sigma <= 0.0 {
            return Ok(region);
        }
        let (h, w) = region.dims();
        let reach = dilate_bits(&region.support(), h, w, (3.0 * self.sigma).ceil() as usize);
        let soft = soften_mask(&region, self.sigma)?;
        let data = soft
            .data()
            .iter()
            .zip(&reach)
            .map(|(&v, &keep)| if keep { v } else { 0.0 })
            .collect();
        Mask::from_vec(h, w, data)
    }
}

pub fn boundary_mix(mask: &Mask, cfg: &SimConfig, rng: &mut Rng) -> Result<Mask> {
    cfg.validate()?;
    BoundaryMix::sample(cfg, rng).apply(mask)
}
