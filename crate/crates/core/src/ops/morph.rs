//! Binary dilation and erosion with a Euclidean disk structuring element.

use crate::error::Result;
use crate::raster::Mask;

/// Half-widths of the disk `dx^2 + dy^2 <= r^2`, indexed by `dy + r`.
fn disk_rows(radius: usize) -> Vec<usize> {
    let r = radius as i64;
    (-r..=r)
        .map(|dy| {
            let rem = r * r - dy * dy;
            // integer sqrt, exact for the small radii used here
            let mut hw = (rem as f64).sqrt() as i64;
            while hw * hw > rem {
                hw -= 1;
            }
            while (hw + 1) * (hw + 1) <= rem {
                hw += 1;
            }
            hw as usize
        })
        .collect()
}

/// Dilation of a boolean plane; out-of-image pixels count as unset.
pub(crate) fn dilate_bits(bits: &[bool], height: usize, width: usize, radius: usize) -> Vec<bool> {
    if radius == 0 {
        return bits.to_vec();
    }
    // prefix[y][x] = number of set pixels in row y strictly before column x
    let mut prefix = vec![0u32; height * (width + 1)];
    for y in 0..height {
        let row = &mut prefix[y * (width + 1)..(y + 1) * (width + 1)];
        for x in 0..width {
            row[x + 1] = row[x] + bits[y * width + x] as u32;
        }
    }
    let rows = disk_rows(radius);
    let r = radius as isize;
    let mut out = vec![false; bits.len()];
    for y in 0..height {
        for (k, &hw) in rows.iter().enumerate() {
            let sy = y as isize + k as isize - r;
            if sy < 0 || sy >= height as isize {
                continue;
            }
            let p = &prefix[sy as usize * (width + 1)..(sy as usize + 1) * (width + 1)];
            for x in 0..width {
                let idx = y * width + x;
                if out[idx] {
                    continue;
                }
                let lo = x.saturating_sub(hw);
                let hi = (x + hw + 1).min(width);
                if p[hi] > p[lo] {
                    out[idx] = true;
                }
            }
        }
    }
    out
}

/// Erosion as the dual of dilation: `erode(m) = !dilate(!m)`.
pub(crate) fn erode_bits(bits: &[bool], height: usize, width: usize, radius: usize) -> Vec<bool> {
    let inv: Vec<bool> = bits.iter().map(|b| !b).collect();
    dilate_bits(&inv, height, width, radius)
        .into_iter()
        .map(|b| !b)
        .collect()
}

fn to_bits(mask: &Mask) -> Vec<bool> {
    mask.data().iter().map(|&v| v == 1.0).collect()
}

pub fn dilate(mask: &Mask, radius: usize) -> Result<Mask> {
    mask.ensure_binary("dilate")?;
    let (h, w) = mask.dims();
    Mask::from_bools(h, w, &dilate_bits(&to_bits(mask), h, w, radius))
}

pub fn erode(mask: &Mask, radius: usize) -> Result<Mask> {
    mask.ensure_binary("erode")?;
    let (h, w) = mask.dims();
    Mask::from_bools(h, w, &erode_bits(&to_bits(mask), h, w, radius))
}
