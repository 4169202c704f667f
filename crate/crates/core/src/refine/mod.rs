//! The refiner contract, a classical implementation and inference-time pooling.

pub mod classical;
pub mod external;
pub mod pool;

use crate::error::Result;
use crate::ops::gaussian_noise;
use crate::raster::{Image, Mask};
use crate::rng::Rng;

pub use classical::{classical_refine, mask_rings, quantiles, ClassicalRefiner};
pub use external::SubprocessRefiner;
pub use pool::{pool_refine, pool_variants, select_min, PoolOutcome, PoolParams};

/// Maps an edited image and its mask to a refined image.
///
/// Implementations must be deterministic, keep the input dimensions, clamp
/// to `[0, 1]` and leave pixels with mask 0 untouched.
pub trait Refiner: Send + Sync {
    fn refine(&self, x_gen: &Image, mask: &Mask) -> Result<Image>;
}

impl<F> Refiner for F
where
    F: Fn(&Image, &Mask) -> Result<Image> + Send + Sync,
{
    fn refine(&self, x_gen: &Image, mask: &Mask) -> Result<Image> {
        self(x_gen, mask)
    }
}

/// Returns its input.
#[derive(Debug, Clone, Copy, Default)]
pub struct IdentityRefiner;

impl Refiner for IdentityRefiner {
    fn refine(&self, x_gen: &Image, _mask: &Mask) -> Result<Image> {
        Ok(x_gen.clone())
    }
}

/// Full-image Gaussian noise, as used to augment refiner inputs.
pub fn add_input_noise(img: &Image, sigma: f64, rng: &mut Rng) -> Result<Image> {
    let (h, w) = img.dims();
    gaussian_noise(img, sigma, &Mask::ones(h, w)?, rng)
}
