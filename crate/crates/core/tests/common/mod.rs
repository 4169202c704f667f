//! Independent reference implementations used as test oracles.
//!
//! Everything here is deliberately naive: dense matrices, textbook
//! factorizations, and no code shared with the library under test.

#![allow(dead_code)]

use seamkit_core::{Image, Mask, Rng};

/// Least squares by ridge-regularized normal equations and a hand-rolled
/// Cholesky factorization. Powers are taken of `x - center`.
pub fn ridge_polyfit(xs: &[f64], ys: &[f64], degree: usize, center: f64, ridge: f64) -> Vec<f64> {
    let d = degree + 1;
    let mut ata = vec![vec![0.0; d]; d];
    let mut aty = vec![0.0; d];
    for (&x, &y) in xs.iter().zip(ys) {
        let t = x - center;
        let row: Vec<f64> = (0..d).map(|k| t.powi(k as i32)).collect();
        for i in 0..d {
            aty[i] += row[i] * y;
            for j in 0..d {
                ata[i][j] += row[i] * row[j];
            }
        }
    }
    for (i, r) in ata.iter_mut().enumerate() {
        r[i] += ridge;
    }
    // A = L L^T
    let mut l = vec![vec![0.0; d]; d];
    for i in 0..d {
        for j in 0..=i {
            let s: f64 = (0..j).map(|k| l[i][k] * l[j][k]).sum();
            if i == j {
                l[i][i] = (ata[i][i] - s).sqrt();
            } else {
                l[i][j] = (ata[i][j] - s) / l[j][j];
            }
        }
    }
    let mut z = vec![0.0; d];
    for i in 0..d {
        let s: f64 = (0..i).map(|k| l[i][k] * z[k]).sum();
        z[i] = (aty[i] - s) / l[i][i];
    }
    let mut c = vec![0.0; d];
    for i in (0..d).rev() {
        let s: f64 = (i + 1..d).map(|k| l[k][i] * c[k]).sum();
        c[i] = (z[i] - s) / l[i][i];
    }
    c
}

pub fn horner(coeffs: &[f64], center: f64, x: f64) -> f64 {
    let t = x - center;
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * t + c)
}

/// Solves a dense system by Gaussian elimination with partial pivoting.
pub fn dense_solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Vec<f64> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .unwrap();
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in col + 1..n {
            let f = a[row][col] / a[col][col];
            if f != 0.0 {
                for k in col..n {
                    a[row][k] -= f * a[col][k];
                }
                b[row] -= f * b[col];
            }
        }
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let s: f64 = (i + 1..n).map(|k| a[i][k] * x[k]).sum();
        x[i] = (b[i] - s) / a[i][i];
    }
    x
}

/// In-image 4-neighbours of `(y, x)`.
pub fn neighbours4(y: usize, x: usize, h: usize, w: usize) -> Vec<(usize, usize)> {
    let mut v = Vec::with_capacity(4);
    if y > 0 {
        v.push((y - 1, x));
    }
    if y + 1 < h {
        v.push((y + 1, x));
    }
    if x > 0 {
        v.push((y, x - 1));
    }
    if x + 1 < w {
        v.push((y, x + 1));
    }
    v
}

/// Dense gradient-domain solve: inside the region, the discrete Laplacian of
/// the result matches that of `guide` (zero when `None`), with `base` fixed
/// outside. Returns the solved image, unclamped.
pub fn dense_poisson(base: &Image, guide: Option<&Image>, region: &Mask) -> Image {
    let (h, w) = base.dims();
    let unknowns: Vec<(usize, usize)> = (0..h)
        .flat_map(|y| (0..w).map(move |x| (y, x)))
        .filter(|&(y, x)| region.get(y, x) > 0.0)
        .collect();
    let index = |y: usize, x: usize| unknowns.iter().position(|&p| p == (y, x));
    let n = unknowns.len();
    let mut out = base.clone();
    for c in 0..3 {
        let mut a = vec![vec![0.0; n]; n];
        let mut b = vec![0.0; n];
        for (k, &(y, x)) in unknowns.iter().enumerate() {
            for (qy, qx) in neighbours4(y, x, h, w) {
                a[k][k] += 1.0;
                match index(qy, qx) {
                    Some(j) => a[k][j] -= 1.0,
                    None => b[k] += base.get(qy, qx)[c],
                }
                if let Some(g) = guide {
                    b[k] += g.get(y, x)[c] - g.get(qy, qx)[c];
                }
            }
        }
        let sol = dense_solve(a, b);
        for (&(y, x), v) in unknowns.iter().zip(sol) {
            let mut px = out.get(y, x);
            px[c] = v;
            out.set(y, x, px);
        }
    }
    out
}

/// One orthonormal 2-D Haar level written out per 2x2 block:
/// `(approx, [hl, lh, hh])`.
pub fn haar_level(img: &Image) -> (Image, [Image; 3]) {
    let (h, w) = (img.height() / 2, img.width() / 2);
    let at = |y: usize, x: usize, dy: usize, dx: usize| img.get(2 * y + dy, 2 * x + dx);
    let band = |s: [f64; 4]| {
        Image::from_fn(h, w, |y, x| {
            let (a, b, c, d) = (at(y, x, 0, 0), at(y, x, 0, 1), at(y, x, 1, 0), at(y, x, 1, 1));
            let mut px = [0.0; 3];
            for k in 0..3 {
                px[k] = 0.5 * (s[0] * a[k] + s[1] * b[k] + s[2] * c[k] + s[3] * d[k]);
            }
            px
        })
        .unwrap()
    };
    (
        band([1.0, 1.0, 1.0, 1.0]),
        [band([1.0, -1.0, 1.0, -1.0]), band([1.0, 1.0, -1.0, -1.0]), band([1.0, -1.0, -1.0, 1.0])],
    )
}

pub fn random_image(h: usize, w: usize, rng: &mut Rng) -> Image {
    Image::from_fn(h, w, |_, _| [rng.uniform(0.0, 1.0), rng.uniform(0.0, 1.0), rng.uniform(0.0, 1.0)]).unwrap()
}

/// Centered disk of radius `r`.
pub fn disk(h: usize, w: usize, r: f64) -> Mask {
    let (cy, cx) = ((h as f64 - 1.0) / 2.0, (w as f64 - 1.0) / 2.0);
    Mask::from_fn(h, w, |y, x| ((y as f64 - cy).hypot(x as f64 - cx) <= r) as u8 as f64).unwrap()
}

/// An image that depends only on the angle around the image centre, so
/// every ring around a centered disk sees the same colour distribution.
pub fn angular_image(n: usize, seed: u64) -> Image {
    let mut rng = Rng::new(seed, 0xa9);
    let base: [f64; 3] = [rng.uniform(0.3, 0.7), rng.uniform(0.3, 0.7), rng.uniform(0.3, 0.7)];
    let amp: [f64; 3] = [rng.uniform(0.05, 0.2), rng.uniform(0.05, 0.2), rng.uniform(0.05, 0.2)];
    let phase: [f64; 3] = [rng.uniform(0.0, 6.3), rng.uniform(0.0, 6.3), rng.uniform(0.0, 6.3)];
    let k = rng.int_inclusive(1, 4) as f64;
    let c = (n as f64 - 1.0) / 2.0;
    Image::from_fn(n, n, |y, x| {
        let theta = (y as f64 - c).atan2(x as f64 - c);
        let mut px = [0.0; 3];
        for i in 0..3 {
            px[i] = base[i] + amp[i] * (k * theta + phase[i]).sin();
        }
        px
    })
    .unwrap()
}

/// A random connected-ish region of at most `max_unknowns` pixels made of a
/// few rectangles; may touch the image border.
pub fn random_region(h: usize, w: usize, max_unknowns: usize, rng: &mut Rng) -> Mask {
    loop {
        let mut bits = vec![false; h * w];
        for _ in 0..rng.int_inclusive(1, 3) {
            let rh = rng.int_inclusive(2, (h / 2) as i64) as usize;
            let rw = rng.int_inclusive(2, (w / 2) as i64) as usize;
            let y0 = rng.index(h - rh + 1);
            let x0 = rng.index(w - rw + 1);
            for y in y0..y0 + rh {
                for x in x0..x0 + rw {
                    bits[y * w + x] = true;
                }
            }
        }
        let count = bits.iter().filter(|&&b| b).count();
        if count > 0 && count <= max_unknowns && count < h * w {
            return Mask::from_bools(h, w, &bits).unwrap();
        }
    }
}
