//! Inference-time pooling: refine several jittered copies of the input and
//! keep the output whose refiner changed its input least.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metrics::l1;
use crate::ops::{color_jitter, paste_back, JitterParams};
use crate::raster::{check_same, Image, Mask};
use crate::refine::Refiner;
use crate::rng::Rng;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PoolParams {
    pub n: usize,
    pub jitter: JitterParams,
    /// Variant 0 is the unjittered input.
    pub include_original: bool,
}

impl Default for PoolParams {
    fn default() -> Self {
        Self {
            n: 8,
            jitter: JitterParams::default(),
            include_original: true,
        }
    }
}

impl PoolParams {
    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::Config("pool size must be >= 1".into()));
        }
        self.jitter.validate()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PoolOutcome {
    pub image: Image,
    pub selected: usize,
    /// Mean in-mask L1 between each variant and its refinement.
    pub scores: Vec<f64>,
}

/// The pooling variants, in index order.
pub fn pool_variants(x_gen: &Image, mask: &Mask, params: &PoolParams, rng: &mut Rng) -> Result<Vec<Image>> {
    params.validate()?;
    check_same(x_gen.dims(), mask.dims(), "pool mask")?;
    (0..params.n)
        .map(|i| {
            if i == 0 && params.include_original {
                Ok(x_gen.clone())
            } else {
                color_jitter(x_gen, mask, &params.jitter, rng)
            }
        })
        .collect()
}

/// Index of the smallest score; the lowest index wins ties.
pub fn select_min(scores: &[f64]) -> usize {
    let mut best = 0;
    for (i, &s) in scores.iter().enumerate() {
        if s < scores[best] {
            best = i;
        }
    }
    best
}

pub fn pool_refine(
    refiner: &dyn Refiner,
    x_gen: &Image,
    mask: &Mask,
    params: &PoolParams,
    rng: &mut Rng,
) -> Result<PoolOutcome> {
    let variants = pool_variants(x_gen, mask, params, rng)?;
    let mut outputs = Vec::with_capacity(variants.len());
    let mut scores = Vec::with_capacity(variants.len());
    for (i, v) in variants.iter().enumerate() {
        let out = refiner.refine(v, mask).map_err(|e| e.context(format_args!("variant {i}")))?;
        check_same(v.dims(), out.dims(), "refiner output")?;
        scores.push(l1(v, &out, Some(mask))?);
        outputs.push(out);
    }
    let selected = select_min(&scores);
    let image = paste_back(&outputs.swap_remove(selected), x_gen, mask)?;
    Ok(PoolOutcome {
        image,
        selected,
        scores,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::refine::{ClassicalRefiner, IdentityRefiner};
    use crate::synth::photo;

    fn disk(n: usize, r: f64) -> Mask {
        let c = (n as f64 - 1.0) / 2.0;
        Mask::from_fn(n, n, |y, x| ((y as f64 - c).hypot(x as f64 - c) <= r) as u8 as f64).unwrap()
    }

    #[test]
    fn identity_refiner_keeps_variant_zero() {
        let img = photo(32, 32, 1);
        let m = disk(32, 8.0);
        let out = pool_refine(&IdentityRefiner, &img, &m, &PoolParams::default(), &mut Rng::new(0, 0)).unwrap();
        assert_eq!(out.selected, 0);
        assert!(out.scores.iter().all(|&s| s == 0.0));
        assert_eq!(out.image, img);
    }

    #[test]
    fn fixed_target_matches_brute_force() {
        let img = photo(32, 32, 2);
        let target = photo(32, 32, 3);
        let m = disk(32, 9.0);
        let oracle = |x: &Image, mk: &Mask| paste_back(&target, x, mk);
        for seed in 0..5 {
            let params = PoolParams { n: 6, ..Default::default() };
            let out = pool_refine(&oracle, &img, &m, &params, &mut Rng::new(seed, 0)).unwrap();
            let variants = pool_variants(&img, &m, &params, &mut Rng::new(seed, 0)).unwrap();
            let brute: Vec<f64> = variants.iter().map(|v| l1(v, &target, Some(&m)).unwrap()).collect();
            let mut best = 0;
            for i in 1..brute.len() {
                if brute[i] < brute[best] {
                    best = i;
                }
            }
            assert_eq!(out.selected, best);
            for (a, b) in out.scores.iter().zip(&brute) {
                assert!((a - b).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn single_variant_equals_direct_refinement() {
        let img = photo(48, 48, 5);
        let m = disk(48, 12.0);
        let r = ClassicalRefiner::default();
        let params = PoolParams { n: 1, ..Default::default() };
        let pooled = pool_refine(&r, &img, &m, &params, &mut Rng::new(4, 0)).unwrap();
        assert_eq!(pooled.image, r.refine(&img, &m).unwrap());
    }

    #[test]
    fn ties_and_scaling() {
        assert_eq!(select_min(&[0.3, 0.1, 0.1, 0.2]), 1);
        let s = [0.5, 0.25, 0.75];
        let scaled: Vec<f64> = s.iter().map(|v| v * 17.0).collect();
        assert_eq!(select_min(&s), select_min(&scaled));
    }

    #[test]
    fn refiner_errors_carry_the_variant() {
        let img = photo(16, 16, 1);
        let m = disk(16, 4.0);
        let failing = |_: &Image, _: &Mask| -> Result<Image> { Err(Error::numeric("boom")) };
        let err = pool_refine(&failing, &img, &m, &PoolParams::default(), &mut Rng::new(0, 0)).unwrap_err();
        assert!(err.to_string().contains("variant 0"));
        let zero = PoolParams { n: 0, ..Default::default() };
        assert!(pool_refine(&IdentityRefiner, &img, &m, &zero, &mut Rng::new(0, 0)).is_err());
    }
}
