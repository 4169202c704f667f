//! Classical machinery for seam artifacts in locally edited images.
//!
//! The crate covers four jobs:
//!
//! * **Measuring** seams: a per-sample polynomial tone map ([`tonemap`]) that
//!   amplifies foreground/background mismatches, plus plain reference metrics
//!   ([`metrics`]).
//! * **Synthesizing** them: an artifact simulator ([`sim`]) that turns a clean
//!   image and a mask into a `(degraded, target)` training pair.
//! * **Removing** them: a refiner contract with a classical quantile-matching
//!   implementation and inference-time pooling ([`refine`]).
//! * **Baselines**: Poisson blending and harmonic fill ([`pblend`]).
//!
//! All pixel data is `f64` RGB in `[0, 1]`; every stochastic operation takes an
//! explicit [`Rng`].

pub mod error;
pub mod io;
pub mod metrics;
pub mod ops;
pub mod pblend;
pub mod raster;
pub mod refine;
pub mod rng;
pub mod sim;
pub mod synth;
pub mod tonemap;

pub use error::{Error, ErrorKind, Result};
pub use raster::{Image, Mask, CHANNELS};
pub use rng::Rng;
