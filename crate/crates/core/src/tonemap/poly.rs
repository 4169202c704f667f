//! Least-squares polynomial fitting through the Moore–Penrose pseudoinverse.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// Singular values below `RCOND * sigma_max` are treated as zero.
pub const RCOND: f64 = 1e-10;

/// Design matrix with columns `(x - center)^d`, `d = 0..=degree`.
pub fn vandermonde(xs: &[f64], degree: usize, center: f64) -> DMatrix<f64> {
    DMatrix::from_fn(xs.len(), degree + 1, |i, d| (xs[i] - center).powi(d as i32))
}

/// Minimal-norm least-squares coefficients of a degree-`degree` polynomial in
/// the centered variable `x - center`.
pub fn fit_polynomial(xs: &[f64], ys: &[f64], degree: usize, center: f64) -> Result<Vec<f64>> {
    if xs.len() != ys.len() {
        return Err(Error::Shape(format!(
            "{} inputs vs {} targets",
            xs.len(),
            ys.len()
        )));
    }
    if xs.is_empty() {
        return Err(Error::Precondition("no samples to fit".into()));
    }
    let a = vandermonde(xs, degree, center);
    let b = DVector::from_column_slice(ys);
    let svd = a.svd(true, true);
    let sigma_max = svd.singular_values.max();
    if !sigma_max.is_finite() {
        return Err(Error::numeric("non-finite singular values in polynomial fit"));
    }
    let coeffs = svd
        .solve(&b, RCOND * sigma_max)
        .map_err(|e| Error::numeric(format!("pseudoinverse solve failed: {e}")))?;
    if coeffs.iter().any(|c| !c.is_finite()) {
        return Err(Error::numeric("non-finite polynomial coefficients"));
    }
    Ok(coeffs.iter().copied().collect())
}

/// Horner evaluation of `sum_d coeffs[d] * (x - center)^d`.
#[inline]
pub fn eval_polynomial(coeffs: &[f64], center: f64, x: f64) -> f64 {
    let t = x - center;
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * t + c)
}
