//! Seeded synthetic "photos" and (image, mask) corpora.
//!
//! The images are smooth mixtures of a colour gradient, low-frequency waves
//! and soft colour blobs. They stand in for natural photographs in tests,
//! benchmarks and the acceptance suite.

use std::f64::consts::TAU;

use crate::error::Result;
use crate::ops::{generate_mask, MaskGenParams};
use crate::raster::{clamp01, Image, Mask};
use crate::rng::Rng;

const PHOTO_STREAM: u64 = 0x9407_0000;
const MASK_STREAM: u64 = 0x3a5c_0000;

struct Wave {
    kx: f64,
    ky: f64,
    phase: f64,
    color: [f64; 3],
}

struct Blob {
    cy: f64,
    cx: f64,
    inv_two_var: f64,
    color: [f64; 3],
}

fn color(rng: &mut Rng, amp: f64) -> [f64; 3] {
    [rng.uniform(-amp, amp), rng.uniform(-amp, amp), rng.uniform(-amp, amp)]
}

/// A smooth colour image in roughly `[0.05, 0.95]`, fully determined by `seed`.
pub fn photo(height: usize, width: usize, seed: u64) -> Image {
    let mut rng = Rng::new(seed, PHOTO_STREAM);
    let base = [rng.uniform(0.3, 0.7), rng.uniform(0.3, 0.7), rng.uniform(0.3, 0.7)];
    let angle = rng.uniform(0.0, TAU);
    let (gy, gx) = angle.sin_cos();
    let ramp = color(&mut rng, 0.15);
    let waves: Vec<Wave> = (0..4)
        .map(|_| {
            let freq = rng.uniform(0.3, 1.5);
            let theta = rng.uniform(0.0, TAU);
            Wave {
                kx: TAU * freq * theta.cos(),
                ky: TAU * freq * theta.sin(),
                phase: rng.uniform(0.0, TAU),
                color: color(&mut rng, 0.04),
            }
        })
        .collect();
    let blobs: Vec<Blob> = (0..3)
        .map(|_| {
            let r = rng.uniform(0.15, 0.4);
            Blob {
                cy: rng.uniform(0.0, 1.0),
                cx: rng.uniform(0.0, 1.0),
                inv_two_var: 1.0 / (2.0 * r * r),
                color: color(&mut rng, 0.12),
            }
        })
        .collect();
    let (fh, fw) = (height.max(2) as f64 - 1.0, width.max(2) as f64 - 1.0);
    Image::from_fn(height, width, |y, x| {
        let (v, u) = (y as f64 / fh, x as f64 / fw);
        let t = gx * (u - 0.5) + gy * (v - 0.5);
        let mut px = [0.0; 3];
        for c in 0..3 {
            px[c] = base[c] + ramp[c] * t;
        }
        for wv in &waves {
            let s = (wv.kx * u + wv.ky * v + wv.phase).sin();
            for c in 0..3 {
                px[c] += wv.color[c] * s;
            }
        }
        for b in &blobs {
            let d2 = (v - b.cy).powi(2) + (u - b.cx).powi(2);
            let g = (-d2 * b.inv_two_var).exp();
            for c in 0..3 {
                px[c] += b.color[c] * g;
            }
        }
        px.map(|p| clamp01(p).clamp(0.05, 0.95))
    })
    .expect("positive dimensions")
}

/// `n` seeded (photo, mask) pairs; item `i` uses stream `i` for its mask.
pub fn corpus(
    n: usize,
    height: usize,
    width: usize,
    seed: u64,
    masks: &MaskGenParams,
) -> Result<Vec<(Image, Mask)>> {
    (0..n)
        .map(|i| {
            let img = photo(height, width, seed.wrapping_mul(1_000_003).wrapping_add(i as u64));
            let mut rng = Rng::new(seed, MASK_STREAM + i as u64);
            Ok((img, generate_mask(height, width, masks, &mut rng)?))
        })
        .collect()
}
