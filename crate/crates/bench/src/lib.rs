//! Shared fixtures for the benchmarks.

use seamkit_core::ops::{generate_mask, MaskGenParams};
use seamkit_core::synth::photo;
use seamkit_core::{Image, Mask, Rng};

/// A seeded photo and free-form mask of the given square size.
pub fn instance(size: usize, seed: u64) -> (Image, Mask) {
    let mask = generate_mask(size, size, &MaskGenParams::default(), &mut Rng::new(seed, 0)).expect("mask generation");
    (photo(size, size, seed), mask)
}

/// `img` with a colour cast inside the mask.
pub fn with_cast(img: &Image, mask: &Mask) -> Image {
    let mut out = img.clone();
    for (px, &w) in out.pixels_mut().zip(mask.data()) {
        if w > 0.0 {
            px[0] = (px[0] * 1.08).min(1.0);
            px[2] *= 0.93;
        }
    }
    out
}
