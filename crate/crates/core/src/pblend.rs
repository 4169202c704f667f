//! Gradient-domain compositing: Poisson blending and harmonic (Laplace) fill.
//!
//! Both reduce, per channel, to the 5-point system
//!
//! ```text
//! |N_p| u_p - sum_{q in N_p, q in region} u_q
//!     = sum_{q in N_p, q outside} f*_q + sum_{q in N_p} (g_p - g_q)
//! ```
//!
//! where `N_p` are the in-image 4-neighbours of `p`, `f*` supplies Dirichlet
//! values on the region boundary and `g` is the guidance image (absent for
//! harmonic fill). Neighbours beyond the image border are dropped, which
//! amounts to a zero-flux condition there. The matrix is symmetric positive
//! definite as long as every connected component of the region touches at
//! least one outside pixel.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::raster::{check_same, clamp01, Image, Mask, CHANNELS};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum SolverMethod {
    #[default]
    ConjugateGradient,
    GaussSeidel,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolverParams {
    /// Stop once `||A u - b|| / ||b||` falls to this value.
    pub tolerance: f64,
    pub max_iterations: usize,
    pub method: SolverMethod,
}

impl Default for SolverParams {
    fn default() -> Self {
        Self {
            tolerance: 1e-6,
            max_iterations: 10_000,
            method: SolverMethod::ConjugateGradient,
        }
    }
}

impl SolverParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.tolerance > 0.0) {
            return Err(Error::Config(format!(
                "tolerance must be positive, got {}",
                self.tolerance
            )));
        }
        if self.max_iterations == 0 {
            return Err(Error::Config("max_iterations must be >= 1".into()));
        }
        Ok(())
    }
}

const NONE: u32 = u32::MAX;

/// The unknowns of a region and their stencil.
#[derive(Debug, Clone)]
pub struct Domain {
    height: usize,
    width: usize,
    /// Pixel index of each unknown.
    pixels: Vec<usize>,
    /// Unknown index of each pixel, `NONE` outside the region.
    slot: Vec<u32>,
}

impl Domain {
    /// Indexes the region and checks every component has a Dirichlet boundary.
    pub fn new(region: &[bool], height: usize, width: usize) -> Result<Self> {
        if region.len() != height * width {
            return Err(Error::Shape("region length does not match dimensions".into()));
        }
        let mut slot = vec![NONE; region.len()];
        let mut pixels = Vec::new();
        for (i, &inside) in region.iter().enumerate() {
            if inside {
                slot[i] = pixels.len() as u32;
                pixels.push(i);
            }
        }
        let domain = Self {
            height,
            width,
            pixels,
            slot,
        };
        domain.check_components()?;
        Ok(domain)
    }

    pub fn len(&self) -> usize {
        self.pixels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pixels.is_empty()
    }

    pub fn pixels(&self) -> &[usize] {
        &self.pixels
    }

    #[inline]
    fn neighbours(&self, p: usize) -> impl Iterator<Item = usize> {
        let (y, x) = (p / self.width, p % self.width);
        let (h, w) = (self.height, self.width);
        [
            (y > 0).then(|| p - w),
            (y + 1 < h).then(|| p + w),
            (x > 0).then(|| p - 1),
            (x + 1 < w).then(|| p + 1),
        ]
        .into_iter()
        .flatten()
    }

    fn check_components(&self) -> Result<()> {
        let mut seen = vec![false; self.pixels.len()];
        let mut queue = VecDeque::new();
        for start in 0..self.pixels.len() {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            queue.push_back(start);
            let mut anchored = false;
            while let Some(k) = queue.pop_front() {
                for q in self.neighbours(self.pixels[k]) {
                    match self.slot[q] {
                        NONE => anchored = true,
                        j => {
                            let j = j as usize;
                            if !seen[j] {
                                seen[j] = true;
                                queue.push_back(j);
                            }
                        }
                    }
                }
            }
            if !anchored {
                let p = self.pixels[start];
                return Err(Error::Precondition(format!(
                    "region component containing ({}, {}) has no outside neighbour",
                    p / self.width,
                    p % self.width
                )));
            }
        }
        Ok(())
    }

    /// Right-hand side for one channel plane.
    pub fn rhs(&self, boundary: &[f64], guidance: Option<&[f64]>) -> Vec<f64> {
        self.pixels
            .iter()
            .map(|&p| {
                let mut b = 0.0;
                for q in self.neighbours(p) {
                    if self.slot[q] == NONE {
                        b += boundary[q];
                    }
                    if let Some(g) = guidance {
                        b += g[p] - g[q];
                    }
                }
                b
            })
            .collect()
    }

    /// `out = A x`.
    pub fn apply(&self, x: &[f64], out: &mut [f64]) {
        for (k, &p) in self.pixels.iter().enumerate() {
            let mut acc = 0.0;
            let mut degree = 0.0;
            for q in self.neighbours(p) {
                degree += 1.0;
                let j = self.slot[q];
                if j != NONE {
                    acc -= x[j as usize];
                }
            }
            out[k] = degree * x[k] + acc;
        }
    }

    /// `||A x - b|| / ||b||`, or `||A x||` when `b = 0`.
    pub fn relative_residual(&self, x: &[f64], b: &[f64]) -> f64 {
        let mut ax = vec![0.0; x.len()];
        self.apply(x, &mut ax);
        let r = norm(ax.iter().zip(b).map(|(a, b)| a - b));
        let nb = norm(b.iter().copied());
        if nb == 0.0 {
            r
        } else {
            r / nb
        }
    }
}

fn norm(it: impl Iterator<Item = f64>) -> f64 {
    it.map(|v| v * v).sum::<f64>().sqrt()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    pub values: Vec<f64>,
    pub iterations: usize,
    pub residual: f64,
}

/// Solves `A u = b` from the initial guess `x0`.
pub fn solve(domain: &Domain, b: &[f64], x0: Vec<f64>, params: &SolverParams) -> Result<Solution> {
    params.validate()?;
    if domain.is_empty() {
        return Ok(Solution {
            values: Vec::new(),
            iterations: 0,
            residual: 0.0,
        });
    }
    if b.iter().all(|&v| v == 0.0) {
        return Ok(Solution {
            values: vec![0.0; b.len()],
            iterations: 0,
            residual: 0.0,
        });
    }
    match params.method {
        SolverMethod::ConjugateGradient => conjugate_gradient(domain, b, x0, params),
        SolverMethod::GaussSeidel => gauss_seidel(domain, b, x0, params),
    }
}

fn conjugate_gradient(domain: &Domain, b: &[f64], mut x: Vec<f64>, params: &SolverParams) -> Result<Solution> {
    let n = b.len();
    let nb = norm(b.iter().copied());
    let mut ap = vec![0.0; n];
    let mut iterations = 0;
    // Restart from the true residual whenever the recurrence claims
    // convergence, so the reported residual is the real one.
    loop {
        domain.apply(&x, &mut ap);
        let mut r: Vec<f64> = b.iter().zip(&ap).map(|(b, a)| b - a).collect();
        let mut rs = dot(&r, &r);
        if rs.sqrt() / nb <= params.tolerance {
            return Ok(Solution {
                values: x,
                iterations,
                residual: rs.sqrt() / nb,
            });
        }
        if iterations >= params.max_iterations {
            return Err(Error::Numeric {
                message: format!("conjugate gradient did not converge in {iterations} iterations"),
                residual: Some(rs.sqrt() / nb),
            });
        }
        let mut p = r.clone();
        while iterations < params.max_iterations {
            iterations += 1;
            domain.apply(&p, &mut ap);
            let pap = dot(&p, &ap);
            if !(pap > 0.0) {
                return Err(Error::Numeric {
                    message: "system is not positive definite".into(),
                    residual: Some(rs.sqrt() / nb),
                });
            }
            let alpha = rs / pap;
            for i in 0..n {
                x[i] += alpha * p[i];
                r[i] -= alpha * ap[i];
            }
            let rs_new = dot(&r, &r);
            if rs_new.sqrt() / nb <= params.tolerance {
                break;
            }
            let beta = rs_new / rs;
            for i in 0..n {
                p[i] = r[i] + beta * p[i];
            }
            rs = rs_new;
        }
    }
}

fn gauss_seidel(domain: &Domain, b: &[f64], mut x: Vec<f64>, params: &SolverParams) -> Result<Solution> {
    let mut residual = domain.relative_residual(&x, b);
    let mut iterations = 0;
    while residual > params.tolerance {
        if iterations >= params.max_iterations {
            return Err(Error::Numeric {
                message: format!("Gauss-Seidel did not converge in {iterations} sweeps"),
                residual: Some(residual),
            });
        }
        for (k, &p) in domain.pixels.iter().enumerate() {
            let mut acc = b[k];
            let mut degree = 0.0;
            for q in domain.neighbours(p) {
                degree += 1.0;
                let j = domain.slot[q];
                if j != NONE {
                    acc += x[j as usize];
                }
            }
            x[k] = acc / degree;
        }
        iterations += 1;
        residual = domain.relative_residual(&x, b);
    }
    Ok(Solution {
        values: x,
        iterations,
        residual,
    })
}

fn solve_image(
    base: &Image,
    guidance: Option<&Image>,
    region: &Mask,
    params: &SolverParams,
    clamp: bool,
) -> Result<Image> {
    params.validate()?;
    region.ensure_binary("gradient-domain region")?;
    let (h, w) = base.dims();
    let domain = Domain::new(&region.support(), h, w)?;
    if domain.is_empty() {
        return Ok(base.clone());
    }
    let mut out = base.clone();
    for c in 0..CHANNELS {
        let plane = base.channel(c);
        let guide = guidance.map(|g| g.channel(c));
        let b = domain.rhs(&plane, guide.as_deref());
        let x0: Vec<f64> = domain.pixels().iter().map(|&p| plane[p]).collect();
        let sol = solve(&domain, &b, x0, params).map_err(|e| e.context(format_args!("channel {c}")))?;
        let data = out.data_mut();
        for (&p, &v) in domain.pixels().iter().zip(&sol.values) {
            data[p * CHANNELS + c] = if clamp { clamp01(v) } else { v };
        }
    }
    Ok(out)
}

/// Seamless cloning: the gradients of `src` inside the mask, with `dst` on the
/// boundary. Pixels outside the mask are returned from `dst` unchanged.
pub fn poisson_blend(src: &Image, dst: &Image, mask: &Mask, params: &SolverParams) -> Result<Image> {
    check_same(src.dims(), dst.dims(), "poisson_blend images")?;
    check_same(src.dims(), mask.dims(), "poisson_blend mask")?;
    solve_image(dst, Some(src), mask, params, true)
}

/// Replaces the region by the harmonic interpolation of its surroundings.
pub fn harmonic_fill(img: &Image, region: &Mask, params: &SolverParams) -> Result<Image> {
    check_same(img.dims(), region.dims(), "harmonic_fill region")?;
    solve_image(img, None, region, params, false)
}
