//! The discriminative pixel space.
//!
//! A per-sample polynomial tone map is fitted by pseudoinverse regression so
//! that mismatches between an edited region and its surroundings are
//! magnified. Losses measured after the mapping react strongly to seams that
//! plain pixel L1 barely registers.

pub mod fit;
pub mod haar;
pub mod loss;
pub mod poly;

pub use fit::{
    amplify_target, apply_tonemap, fit_tonemap, fit_tonemap_with_beta, AmplifyParams, ToneMap, CENTERING,
};
pub use haar::{haar_forward, haar_inverse, haar_weighted_l1, HaarBands, HaarPyramid};
pub use loss::{
    combined_loss, disc_l1, disc_l1_masked, project_disc_space, DiscProjection, FeatureExtractor, LossConfig,
    LossReport,
};
pub use poly::{eval_polynomial, fit_polynomial};
