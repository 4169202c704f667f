//! Orthonormal 2-D Haar pyramid and the band-reweighted L1 built on it.

use crate::error::{Error, Result};
use crate::raster::{check_same, Image, CHANNELS};

/// Detail bands of one decomposition level.
#[derive(Debug, Clone, PartialEq)]
pub struct HaarBands {
    /// Horizontal differences (varies along x).
    pub hl: Image,
    /// Vertical differences (varies along y).
    pub lh: Image,
    pub hh: Image,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HaarPyramid {
    /// Coarsest approximation band.
    pub approx: Image,
    /// Detail bands, finest level first.
    pub details: Vec<HaarBands>,
}

impl HaarPyramid {
    pub fn levels(&self) -> usize {
        self.details.len()
    }

    pub fn approx_coefficients(&self) -> &[f64] {
        self.approx.data()
    }

    pub fn detail_coefficients(&self) -> impl Iterator<Item = f64> + '_ {
        self.details
            .iter()
            .flat_map(|b| b.hl.data().iter().chain(b.lh.data()).chain(b.hh.data()))
            .copied()
    }

    pub fn coefficient_count(&self) -> usize {
        self.approx.data().len()
            + self
                .details
                .iter()
                .map(|b| 3 * b.hl.data().len())
                .sum::<usize>()
    }
}

fn split_level(img: &Image) -> (Image, HaarBands) {
    let (h, w) = (img.height() / 2, img.width() / 2);
    let mut ll = vec![0.0; h * w * CHANNELS];
    let mut hl = vec![0.0; h * w * CHANNELS];
    let mut lh = vec![0.0; h * w * CHANNELS];
    let mut hh = vec![0.0; h * w * CHANNELS];
    for y in 0..h {
        for x in 0..w {
            let a = img.get(2 * y, 2 * x);
            let b = img.get(2 * y, 2 * x + 1);
            let c = img.get(2 * y + 1, 2 * x);
            let d = img.get(2 * y + 1, 2 * x + 1);
            let i = (y * w + x) * CHANNELS;
            for k in 0..CHANNELS {
                ll[i + k] = (a[k] + b[k] + c[k] + d[k]) * 0.5;
                hl[i + k] = (a[k] - b[k] + c[k] - d[k]) * 0.5;
                lh[i + k] = (a[k] + b[k] - c[k] - d[k]) * 0.5;
                hh[i + k] = (a[k] - b[k] - c[k] + d[k]) * 0.5;
            }
        }
    }
    let mk = |v| Image::from_vec(h, w, v).expect("half-size band");
    (
        mk(ll),
        HaarBands {
            hl: mk(hl),
            lh: mk(lh),
            hh: mk(hh),
        },
    )
}

fn merge_level(ll: &Image, bands: &HaarBands) -> Image {
    let (h, w) = ll.dims();
    let mut out = Image::new(2 * h, 2 * w).expect("non-empty");
    for y in 0..h {
        for x in 0..w {
            let s = ll.get(y, x);
            let p = bands.hl.get(y, x);
            let q = bands.lh.get(y, x);
            let r = bands.hh.get(y, x);
            let mut a = [0.0; CHANNELS];
            let mut b = [0.0; CHANNELS];
            let mut c = [0.0; CHANNELS];
            let mut d = [0.0; CHANNELS];
            for k in 0..CHANNELS {
                a[k] = (s[k] + p[k] + q[k] + r[k]) * 0.5;
                b[k] = (s[k] - p[k] + q[k] - r[k]) * 0.5;
                c[k] = (s[k] + p[k] - q[k] - r[k]) * 0.5;
                d[k] = (s[k] - p[k] - q[k] + r[k]) * 0.5;
            }
            out.set(2 * y, 2 * x, a);
            out.set(2 * y, 2 * x + 1, b);
            out.set(2 * y + 1, 2 * x, c);
            out.set(2 * y + 1, 2 * x + 1, d);
        }
    }
    out
}

pub fn haar_forward(img: &Image, levels: usize) -> Result<HaarPyramid> {
    let block = 1usize
        .checked_shl(levels as u32)
        .ok_or_else(|| Error::Shape(format!("{levels} levels is too many")))?;
    if img.height() % block != 0 || img.width() % block != 0 {
        return Err(Error::Shape(format!(
            "{}x{} is not divisible by 2^{levels}",
            img.height(),
            img.width()
        )));
    }
    let mut approx = img.clone();
    let mut details = Vec::with_capacity(levels);
    for _ in 0..levels {
        let (ll, bands) = split_level(&approx);
        details.push(bands);
        approx = ll;
    }
    Ok(HaarPyramid { approx, details })
}

pub fn haar_inverse(pyramid: &HaarPyramid) -> Result<Image> {
    let mut img = pyramid.approx.clone();
    for bands in pyramid.details.iter().rev() {
        for band in [&bands.hl, &bands.lh, &bands.hh] {
            check_same(img.dims(), band.dims(), "haar_inverse band")?;
        }
        img = merge_level(&img, bands);
    }
    Ok(img)
}

/// `low_weight * L1(approx) + high_weight * L1(details)`, with both sums
/// normalized by the total coefficient count. Equal unit weights therefore
/// give the mean absolute difference over the full pyramids.
pub fn haar_weighted_l1(
    x_pred: &Image,
    x_gt: &Image,
    low_weight: f64,
    high_weight: f64,
    levels: usize,
) -> Result<f64> {
    check_same(x_pred.dims(), x_gt.dims(), "haar_weighted_l1")?;
    if !(high_weight >= 0.0 && low_weight >= high_weight) {
        return Err(Error::Config(format!(
            "need low_weight >= high_weight >= 0, got {low_weight}, {high_weight}"
        )));
    }
    let p = haar_forward(x_pred, levels)?;
    let g = haar_forward(x_gt, levels)?;
    let n = p.coefficient_count() as f64;
    let low: f64 = p
        .approx_coefficients()
        .iter()
        .zip(g.approx_coefficients())
        .map(|(a, b)| (a - b).abs())
        .sum();
    let high: f64 = p
        .detail_coefficients()
        .zip(g.detail_coefficients())
        .map(|(a, b)| (a - b).abs())
        .sum();
    Ok((low_weight * low + high_weight * high) / n)
}
