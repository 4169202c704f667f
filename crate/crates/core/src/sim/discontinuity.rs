//! Boundary discontinuities: re-synthesize a band around the mask edge, then
//! restore the original background.

use crate::error::{Error, Result};
use crate::ops::morph::{dilate_bits, erode_bits};
use crate::ops::paste_back;
use crate::pblend::{harmonic_fill, SolverParams};
use crate::raster::{check_same, Image, Mask};

/// `dilate(mask, w) AND NOT erode(mask, w)`.
pub fn discontinuity_band(mask: &Mask, band_width: usize) -> Result<Mask> {
    mask.ensure_binary("discontinuity mask")?;
    let (h, w) = mask.dims();
    let bits = mask.support();
    let outer = dilate_bits(&bits, h, w, band_width);
    let inner = erode_bits(&bits, h, w, band_width);
    let band: Vec<bool> = outer.iter().zip(&inner).map(|(&o, &i)| o && !i).collect();
    Mask::from_bools(h, w, &band)
}

/// Harmonic fill over the band, pasted back so only in-mask pixels change.
///
/// An empty band, or one covering the whole image (nothing to anchor the
/// fill), returns the input unchanged.
pub fn content_discontinuity(img: &Image, mask: &Mask, band_width: usize, solver: &SolverParams) -> Result<Image> {
    check_same(img.dims(), mask.dims(), "content_discontinuity mask")?;
    if band_width == 0 {
        return Err(Error::Config("band_width must be >= 1".into()));
    }
    let band = discontinuity_band(mask, band_width)?;
    let count = band.support_count();
    if count == 0 || count == band.data().len() {
        return Ok(img.clone());
    }
    let filled = harmonic_fill(img, &band, solver)?;
    paste_back(&filled, img, mask)
}
