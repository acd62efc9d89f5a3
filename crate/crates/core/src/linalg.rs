//! Dense complex matrix helpers: exponentials, principal logarithms,
//! Kronecker products and comparisons.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type CMatrix = DMatrix<Complex64>;

const SCHUR_EPS: f64 = 1e-15;
const SCHUR_MAX_ITER: usize = 10_000;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Builds a matrix from row-major entries.
pub fn from_rows(n: usize, entries: &[Complex64]) -> CMatrix {
    DMatrix::from_row_slice(n, n, entries)
}

pub fn identity(n: usize) -> CMatrix {
    DMatrix::identity(n, n)
}

pub fn max_abs(a: &CMatrix) -> f64 {
    a.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    assert_eq!(a.shape(), b.shape(), "shape mismatch in max_abs_diff");
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

pub fn commutator(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a * b - b * a
}

pub fn trace(a: &CMatrix) -> Complex64 {
    a.diagonal().iter().sum()
}

/// Tr(AB) without forming the product.
pub fn trace_product(a: &CMatrix, b: &CMatrix) -> Complex64 {
    let n = a.nrows();
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..n {
        for k in 0..n {
            acc += a[(i, k)] * b[(k, i)];
        }
    }
    acc
}

pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

fn one_norm(a: &CMatrix) -> f64 {
    (0..a.ncols())
        .map(|j| a.column(j).iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

pub fn is_normal(a: &CMatrix) -> bool {
    let ah = a.adjoint();
    let scale = max_abs(a).max(1.0);
    max_abs_diff(&(a * &ah), &(&ah * a)) <= 1e-12 * scale * scale
}

fn schur(a: &CMatrix) -> Result<(CMatrix, CMatrix)> {
    nalgebra::linalg::Schur::try_new(a.clone(), SCHUR_EPS, SCHUR_MAX_ITER)
        .map(|s| s.unpack())
        .ok_or_else(|| Error::Numerical("Schur decomposition did not converge".into()))
}

/// Matrix exponential. Normal inputs go through the unitary Schur
/// (eigen)decomposition; everything else through scaling and squaring.
pub fn expm(a: &CMatrix) -> CMatrix {
    if a.nrows() == 0 {
        return a.clone();
    }
    if is_normal(a) {
        if let Ok(m) = expm_normal(a) {
            return m;
        }
    }
    expm_taylor(a)
}

/// Exponential of a normal matrix through its Schur form, which is diagonal.
pub fn expm_normal(a: &CMatrix) -> Result<CMatrix> {
    let (q, t) = schur(a)?;
    let d: Vec<Complex64> = (0..t.nrows()).map(|i| t[(i, i)].exp()).collect();
    Ok(&q * CMatrix::from_diagonal(&nalgebra::DVector::from_vec(d)) * q.adjoint())
}

/// Scaling-and-squaring Taylor exponential, valid for any square input.
pub fn expm_taylor(a: &CMatrix) -> CMatrix {
    let n = a.nrows();
    let norm = one_norm(a);
    let s = if norm > 0.5 { (norm / 0.5).log2().ceil() as i32 } else { 0 };
    let b = a / Complex64::new(2f64.powi(s), 0.0);
    let mut sum = identity(n);
    let mut term = identity(n);
    for k in 1..=40 {
        term = &term * &b / Complex64::new(k as f64, 0.0);
        sum += &term;
        if max_abs(&term) < 1e-18 * max_abs(&sum) {
            break;
        }
    }
    for _ in 0..s {
        sum = &sum * &sum;
    }
    sum
}

/// Principal matrix logarithm.
///
/// Fails with [`Error::BranchAmbiguity`] when an eigenvalue sits within
/// `1e-8` of the negative real axis (or at the origin).
pub fn logm(a: &CMatrix) -> Result<CMatrix> {
    let n = a.nrows();
    let (q, t) = schur(a)?;
    for i in 0..n {
        let z = t[(i, i)];
        if z.norm() < 1e-14 || (z.arg().abs() > std::f64::consts::PI - 1e-8) {
            return Err(Error::BranchAmbiguity { re: z.re, im: z.im });
        }
    }
    if is_normal(a) {
        let d: Vec<Complex64> = (0..n).map(|i| t[(i, i)].ln()).collect();
        return Ok(&q * CMatrix::from_diagonal(&nalgebra::DVector::from_vec(d)) * q.adjoint());
    }
    log_inverse_scaling(a)
}

fn sqrtm_db(a: &CMatrix) -> Result<CMatrix> {
    let n = a.nrows();
    let mut y = a.clone();
    let mut z = identity(n);
    for _ in 0..100 {
        let yi = y.clone().try_inverse().ok_or_else(|| Error::Numerical("singular iterate in square root".into()))?;
        let zi = z.clone().try_inverse().ok_or_else(|| Error::Numerical("singular iterate in square root".into()))?;
        let y_next = (&y + &zi) * Complex64::new(0.5, 0.0);
        let z_next = (&z + &yi) * Complex64::new(0.5, 0.0);
        let delta = max_abs_diff(&y_next, &y);
        y = y_next;
        z = z_next;
        if delta < 1e-15 * max_abs(&y).max(1.0) {
            return Ok(y);
        }
    }
    Err(Error::NonConvergence(100))
}

fn log_inverse_scaling(a: &CMatrix) -> Result<CMatrix> {
    let n = a.nrows();
    let id = identity(n);
    let mut m = a.clone();
    let mut k = 0;
    while max_abs(&(&m - &id)) > 0.25 {
        m = sqrtm_db(&m)?;
        k += 1;
        if k > 60 {
            return Err(Error::NonConvergence(60));
        }
    }
    let x = &m - &id;
    let mut power = x.clone();
    let mut sum = x.clone();
    for j in 2..=200 {
        power = &power * &x;
        let sign = if j % 2 == 0 { -1.0 } else { 1.0 };
        let term = &power * Complex64::new(sign / j as f64, 0.0);
        sum += &term;
        if max_abs(&term) < 1e-18 {
            break;
        }
    }
    Ok(sum * Complex64::new(2f64.powi(k), 0.0))
}
