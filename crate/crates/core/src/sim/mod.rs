//! Artifact simulation: turns a clean image and a binary mask into a
//! `(degraded, target)` pair carrying realistic local-editing seams.
//!
//! Families, in application order:
//!
//! 1. background colour shift, applied to the whole image on both sides;
//! 2. foreground colour shift (gradient, blobs or uniform) inside the edit region;
//! 3. noise / JPEG / blur: JPEG hits the target and the degraded background,
//!    blur and noise only the degraded edit region;
//! 4. codec stand-in inside the edit region;
//! 5. content discontinuity along the region boundary;
//! 6. boundary mixing, which grows or shrinks the mask and may soften it.
//!
//! The mask emitted with the pair is the mixed one, and the degraded image
//! differs from the target only on its support.

pub mod boundary;
pub mod codec;
pub mod color_shift;
pub mod config;
pub mod discontinuity;
pub mod jpeg;
pub mod pipeline;

pub use boundary::{boundary_mix, BoundaryMix, MorphOp};
pub use codec::{codec_from_reconstruction, codec_quality, codec_sigma, codec_stand_in};
pub use color_shift::{
    color_shift_blobs, color_shift_linear_gradient, color_shift_uniform, BlobShift, ColorShift, Ellipse,
    GradientShift, ShiftKind, UniformShift,
};
pub use config::{ColorShiftConfig, FamilyProbabilities, IntRange, SimConfig, DEFAULT_CONFIG_JSON};
pub use discontinuity::{content_discontinuity, discontinuity_band};
pub use jpeg::jpeg_simulate;
pub use pipeline::{simulate, simulate_with_reconstruction, Family, NoiseJpegBlur, SimPair, SimRecord};
