use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::{BasisRole, LieAlgebraSpec};
use crate::error::{Error, Result};

/// Classical coordinates `ξ = (u, v, λ)`: raising, lowering and abelian
/// coefficients in the order the algebra declares them.
///
/// The algebra coefficient vector is `c[raising[k]] = u[k]`,
/// `c[lowering[k]] = −v[k]`, `c[abelian[j]] = λ[j]`, and
/// `Π(ξ) = exp(i Σ c_k T_k)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhasePoint<T = f64> {
    pub u: Vec<T>,
    pub v: Vec<T>,
    pub lambda: Vec<T>,
}

impl<T: Copy + Into<Complex64>> PhasePoint<T> {
    pub fn new(u: Vec<T>, v: Vec<T>, lambda: Vec<T>) -> Self {
        PhasePoint { u, v, lambda }
    }

    pub fn check(&self, alg: &LieAlgebraSpec) -> Result<()> {
        for (have, want) in [
            (self.u.len(), alg.raising.len()),
            (self.v.len(), alg.lowering.len()),
            (self.lambda.len(), alg.abelian.len()),
        ] {
            if have != want {
                return Err(Error::DimensionMismatch { expected: want, found: have });
            }
        }
        Ok(())
    }

    pub fn coefficients(&self, alg: &LieAlgebraSpec) -> Result<Vec<Complex64>> {
        self.check(alg)?;
        let mut c = vec![Complex64::new(0.0, 0.0); alg.dim()];
        for (k, &idx) in alg.raising.iter().enumerate() {
            c[idx] = self.u[k].into();
        }
        for (k, &idx) in alg.lowering.iter().enumerate() {
            c[idx] = -self.v[k].into();
        }
        for (k, &idx) in alg.abelian.iter().enumerate() {
            c[idx] = self.lambda[k].into();
        }
        Ok(c)
    }

    pub fn to_complex(&self) -> PhasePoint<Complex64> {
        let conv = |v: &[T]| v.iter().map(|&x| x.into()).collect();
        PhasePoint { u: conv(&self.u), v: conv(&self.v), lambda: conv(&self.lambda) }
    }
}

impl PhasePoint<f64> {
    pub fn zero(alg: &LieAlgebraSpec) -> Self {
        PhasePoint {
            u: vec![0.0; alg.raising.len()],
            v: vec![0.0; alg.lowering.len()],
            lambda: vec![0.0; alg.abelian.len()],
        }
    }

    pub fn norm(&self) -> f64 {
        self.u.iter().chain(&self.v).chain(&self.lambda).map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn scaled(&self, s: f64) -> Self {
        let f = |v: &[f64]| v.iter().map(|x| x * s).collect();
        PhasePoint { u: f(&self.u), v: f(&self.v), lambda: f(&self.lambda) }
    }

    /// The point `−ξ`, for which `Π(−ξ) = Π(ξ)^{-1}`.
    pub fn negated(&self) -> Self {
        self.scaled(-1.0)
    }
}

impl PhasePoint<Complex64> {
    /// Inverse of [`PhasePoint::coefficients`].
    pub fn from_coefficients(alg: &LieAlgebraSpec, c: &[Complex64]) -> Result<Self> {
        if c.len() != alg.dim() {
            return Err(Error::DimensionMismatch { expected: alg.dim(), found: c.len() });
        }
        let zero = Complex64::new(0.0, 0.0);
        let mut p = PhasePoint {
            u: vec![zero; alg.raising.len()],
            v: vec![zero; alg.lowering.len()],
            lambda: vec![zero; alg.abelian.len()],
        };
        for (k, &ck) in c.iter().enumerate() {
            match alg.role(k) {
                Some(BasisRole::Raising(i)) => p.u[i] = ck,
                Some(BasisRole::Lowering(i)) => p.v[i] = -ck,
                Some(BasisRole::Abelian(i)) => p.lambda[i] = ck,
                None => return Err(Error::InvalidAlgebra(format!("basis index {k} has no declared role"))),
            }
        }
        Ok(p)
    }

    pub fn max_imag(&self) -> f64 {
        self.u.iter().chain(&self.v).chain(&self.lambda).map(|z| z.im.abs()).fold(0.0, f64::max)
    }

    pub fn re(&self) -> PhasePoint<f64> {
        let f = |v: &[Complex64]| v.iter().map(|z| z.re).collect();
        PhasePoint { u: f(&self.u), v: f(&self.v), lambda: f(&self.lambda) }
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.u
            .iter()
            .zip(&other.u)
            .chain(self.v.iter().zip(&other.v))
            .chain(self.lambda.iter().zip(&other.lambda))
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}
