//! Baseline JPEG round trip: YCbCr, 8x8 DCT-II, table quantization, inverse.
//!
//! Only the lossy part of the codec is simulated. Entropy coding is lossless
//! and therefore skipped; chroma is kept at full resolution (4:4:4).

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::raster::{clamp01, Image, CHANNELS};

/// Standard luminance quantization table, natural (row-major) order.
const LUMA_TABLE: [u16; 64] = [
    16, 11, 10, 16, 24, 40, 51, 61, //
    12, 12, 14, 19, 26, 58, 60, 55, //
    14, 13, 16, 24, 40, 57, 69, 56, //
    14, 17, 22, 29, 51, 87, 80, 62, //
    18, 22, 37, 56, 68, 109, 103, 77, //
    24, 35, 55, 64, 81, 104, 113, 92, //
    49, 64, 78, 87, 103, 121, 120, 101, //
    72, 92, 95, 98, 112, 100, 103, 99,
];

const CHROMA_TABLE: [u16; 64] = [
    17, 18, 24, 47, 99, 99, 99, 99, //
    18, 21, 26, 66, 99, 99, 99, 99, //
    24, 26, 56, 99, 99, 99, 99, 99, //
    47, 66, 99, 99, 99, 99, 99, 99, //
    99, 99, 99, 99, 99, 99, 99, 99, //
    99, 99, 99, 99, 99, 99, 99, 99, //
    99, 99, 99, 99, 99, 99, 99, 99, //
    99, 99, 99, 99, 99, 99, 99, 99,
];

/// Scales a base table with the usual quality mapping.
pub fn quant_table(base: &[u16; 64], quality: u8) -> [f64; 64] {
    let q = quality.clamp(1, 100) as u32;
    let scale = if q < 50 { 5000 / q } else { 200 - 2 * q };
    let mut out = [0.0; 64];
    for (o, &b) in out.iter_mut().zip(base) {
        *o = ((b as u32 * scale + 50) / 100).max(1) as f64;
    }
    out
}

pub fn luma_table(quality: u8) -> [f64; 64] {
    quant_table(&LUMA_TABLE, quality)
}

pub fn chroma_table(quality: u8) -> [f64; 64] {
    quant_table(&CHROMA_TABLE, quality)
}

/// Orthonormal DCT-II basis, `BASIS[u][x]`.
fn basis() -> &'static [[f64; 8]; 8] {
    static BASIS: OnceLock<[[f64; 8]; 8]> = OnceLock::new();
    BASIS.get_or_init(|| {
        let mut m = [[0.0; 8]; 8];
        for (u, row) in m.iter_mut().enumerate() {
            let a = if u == 0 { (1.0f64 / 8.0).sqrt() } else { 0.25f64.sqrt() };
            for (x, v) in row.iter_mut().enumerate() {
                *v = a * ((2 * x + 1) as f64 * u as f64 * std::f64::consts::PI / 16.0).cos();
            }
        }
        m
    })
}

/// 2-D forward DCT of an 8x8 block in place.
pub fn dct8x8(block: &mut [f64; 64]) {
    let b = basis();
    let mut tmp = [0.0; 64];
    for y in 0..8 {
        for u in 0..8 {
            tmp[y * 8 + u] = (0..8).map(|x| b[u][x] * block[y * 8 + x]).sum();
        }
    }
    for u in 0..8 {
        for v in 0..8 {
            block[v * 8 + u] = (0..8).map(|y| b[v][y] * tmp[y * 8 + u]).sum();
        }
    }
}

pub fn idct8x8(block: &mut [f64; 64]) {
    let b = basis();
    let mut tmp = [0.0; 64];
    for v in 0..8 {
        for x in 0..8 {
            tmp[v * 8 + x] = (0..8).map(|u| b[u][x] * block[v * 8 + u]).sum();
        }
    }
    for y in 0..8 {
        for x in 0..8 {
            block[y * 8 + x] = (0..8).map(|v| b[v][y] * tmp[v * 8 + x]).sum();
        }
    }
}

fn to_ycbcr(px: &[f64]) -> [f64; 3] {
    let (r, g, b) = (px[0] * 255.0, px[1] * 255.0, px[2] * 255.0);
    [
        0.299 * r + 0.587 * g + 0.114 * b,
        -0.168_735_892 * r - 0.331_264_108 * g + 0.5 * b + 128.0,
        0.5 * r - 0.418_687_589 * g - 0.081_312_411 * b + 128.0,
    ]
}

fn to_rgb(ycc: [f64; 3]) -> [f64; 3] {
    let (y, cb, cr) = (ycc[0], ycc[1] - 128.0, ycc[2] - 128.0);
    [
        clamp01((y + 1.402 * cr) / 255.0),
        clamp01((y - 0.344_136_286 * cb - 0.714_136_286 * cr) / 255.0),
        clamp01((y + 1.772 * cb) / 255.0),
    ]
}

/// Compresses and decompresses `img` at `quality` (1..=100); output clamped.
pub fn jpeg_simulate(img: &Image, quality: u8) -> Result<Image> {
    if !(1..=100).contains(&quality) {
        return Err(Error::Config(format!("JPEG quality must be in 1..=100, got {quality}")));
    }
    let (h, w) = img.dims();
    let tables = [luma_table(quality), chroma_table(quality), chroma_table(quality)];
    let planes: Vec<Vec<f64>> = {
        let ycc: Vec<[f64; 3]> = img.pixels().map(to_ycbcr).collect();
        (0..CHANNELS).map(|c| ycc.iter().map(|p| p[c]).collect()).collect()
    };
    let mut decoded = vec![vec![0.0; h * w]; CHANNELS];
    let mut block = [0.0; 64];
    for by in (0..h).step_by(8) {
        for bx in (0..w).step_by(8) {
            for (c, plane) in planes.iter().enumerate() {
                for y in 0..8 {
                    let sy = (by + y).min(h - 1);
                    for x in 0..8 {
                        let sx = (bx + x).min(w - 1);
                        block[y * 8 + x] = plane[sy * w + sx] - 128.0;
                    }
                }
                dct8x8(&mut block);
                for (v, q) in block.iter_mut().zip(&tables[c]) {
                    *v = (*v / q).round() * q;
                }
                idct8x8(&mut block);
                for y in 0..8.min(h - by) {
                    for x in 0..8.min(w - bx) {
                        decoded[c][(by + y) * w + bx + x] = block[y * 8 + x] + 128.0;
                    }
                }
            }
        }
    }
    let mut out = Image::new(h, w)?;
    for (i, px) in out.pixels_mut().enumerate() {
        px.copy_from_slice(&to_rgb([decoded[0][i], decoded[1][i], decoded[2][i]]));
    }
    Ok(out)
}
