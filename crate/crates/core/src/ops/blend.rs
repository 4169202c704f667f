use crate::error::Result;
use crate::raster::{check_same, Image, Mask, CHANNELS};

/// Per-pixel convex combination `alpha * a + (1 - alpha) * b`.
pub fn alpha_blend(a: &Image, b: &Image, alpha: &Mask) -> Result<Image> {
    check_same(a.dims(), b.dims(), "alpha_blend operands")?;
    check_same(a.dims(), alpha.dims(), "alpha_blend alpha")?;
    let mut out = b.clone();
    for ((o, pa), &w) in out
        .pixels_mut()
        .zip(a.pixels())
        .zip(alpha.data())
    {
        for c in 0..CHANNELS {
            o[c] = w * pa[c] + (1.0 - w) * o[c];
        }
    }
    Ok(out)
}

/// Composites generated pixels inside the mask onto the original.
///
/// Pixels with weight exactly 0 or 1 are copied, never recomputed, so the
/// untouched background survives bit-exactly.
pub fn paste_back(gen: &Image, ori: &Image, mask: &Mask) -> Result<Image> {
    check_same(gen.dims(), ori.dims(), "paste_back images")?;
    check_same(gen.dims(), mask.dims(), "paste_back mask")?;
    let mut out = ori.clone();
    for ((o, g), &w) in out.pixels_mut().zip(gen.pixels()).zip(mask.data()) {
        if w == 0.0 {
            continue;
        }
        if w == 1.0 {
            o.copy_from_slice(g);
            continue;
        }
        for c in 0..CHANNELS {
            o[c] = w * g[c] + (1.0 - w) * o[c];
        }
    }
    Ok(out)
}
