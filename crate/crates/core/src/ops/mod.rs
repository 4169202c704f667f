//! Pixel-level primitives shared by the simulation, refinement and metrics code.

pub mod blend;
pub mod filter;
pub mod jitter;
pub mod maskgen;
pub mod morph;

pub use blend::{alpha_blend, paste_back};
pub use filter::{gaussian_blur, gaussian_kernel, gaussian_noise, soften_mask};
pub use jitter::{color_jitter, jitter_region, JitterFactors, JitterParams, Range};
pub use maskgen::{generate_mask, MaskGenParams};
pub use morph::{dilate, erode};
