use num_complex::Complex64;

use super::LieAlgebraSpec;
use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};

/// Matrices `M_k` realizing the basis `T_k` of an algebra.
#[derive(Clone, Debug)]
pub struct Representation {
    pub label: String,
    pub matrices: Vec<CMatrix>,
    /// Whether `[M_i, M_j] = Σ c M_k` is promised.
    pub faithful: bool,
    /// Whether real phase-space coordinates give a unitary `Π`.
    pub unitary: bool,
}

impl Representation {
    pub fn new(label: impl Into<String>, matrices: Vec<CMatrix>) -> Result<Self> {
        let d = matrices.first().map(|m| m.nrows()).unwrap_or(0);
        for m in &matrices {
            if m.nrows() != d || m.ncols() != d {
                return Err(Error::Shape(format!("representation matrices must all be {d}x{d}")));
            }
        }
        Ok(Representation { label: label.into(), matrices, faithful: true, unitary: false })
    }

    pub fn unitary(mut self, yes: bool) -> Self {
        self.unitary = yes;
        self
    }

    pub fn d(&self) -> usize {
        self.matrices.first().map(|m| m.nrows()).unwrap_or(1)
    }

    /// `Σ_k c_k M_k`.
    pub fn represent(&self, coeffs: &[Complex64]) -> Result<CMatrix> {
        if coeffs.len() != self.matrices.len() {
            return Err(Error::DimensionMismatch { expected: self.matrices.len(), found: coeffs.len() });
        }
        let d = self.d();
        let mut out = CMatrix::zeros(d, d);
        for (c, m) in coeffs.iter().zip(&self.matrices) {
            if *c != Complex64::new(0.0, 0.0) {
                out += m * *c;
            }
        }
        Ok(out)
    }

    /// `max ‖[M_i, M_j] − Σ_k c[i][j][k] M_k‖_max`.
    pub fn faithfulness_residual(&self, alg: &LieAlgebraSpec) -> f64 {
        let n = alg.dim();
        if self.matrices.len() != n {
            return f64::INFINITY;
        }
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let lhs = linalg::commutator(&self.matrices[i], &self.matrices[j]);
                let coeffs: Vec<Complex64> = (0..n).map(|k| alg.c(i, j, k)).collect();
                let rhs = self.represent(&coeffs).unwrap();
                worst = worst.max(linalg::max_abs_diff(&lhs, &rhs));
            }
        }
        worst
    }

    /// `M ⊗ 1` for the first summand, `1 ⊗ N` for the second: the
    /// representation of `a ⊕ b` on the tensor product space.
    pub fn tensor_sum(a: &Representation, b: &Representation) -> Representation {
        let ia = linalg::identity(a.d());
        let ib = linalg::identity(b.d());
        let matrices = a
            .matrices
            .iter()
            .map(|m| linalg::kron(m, &ib))
            .chain(b.matrices.iter().map(|m| linalg::kron(&ia, m)))
            .collect();
        Representation {
            label: format!("{}x{}", a.label, b.label),
            matrices,
            faithful: a.faithful && b.faithful,
            unitary: a.unitary && b.unitary,
        }
    }

    /// `(ad T_i)_{kj} = c[i][j][k]`.
    pub fn adjoint(alg: &LieAlgebraSpec) -> Representation {
        let n = alg.dim();
        let matrices = (0..n)
            .map(|i| CMatrix::from_fn(n, n, |k, j| alg.c(i, j, k)))
            .collect();
        Representation { label: "adjoint".into(), matrices, faithful: true, unitary: false }
    }
}

/// `(J_x, J_y, J_z)` for spin `l = two_l / 2` in the basis
/// `|l, l⟩, |l, l−1⟩, …, |l, −l⟩` with Condon–Shortley phases.
pub fn spin_matrices(two_l: u32) -> [CMatrix; 3] {
    let d = two_l as usize + 1;
    let l = two_l as f64 / 2.0;
    let m_of = |k: usize| l - k as f64;
    let mut jp = CMatrix::zeros(d, d);
    for k in 1..d {
        let m = m_of(k);
        jp[(k - 1, k)] = Complex64::new((l * (l + 1.0) - m * (m + 1.0)).sqrt(), 0.0);
    }
    let jm = jp.adjoint();
    let jx = (&jp + &jm) * Complex64::new(0.5, 0.0);
    let jy = (&jp - &jm) * Complex64::new(0.0, -0.5);
    let jz = CMatrix::from_fn(d, d, |r, c| if r == c { Complex64::new(m_of(r), 0.0) } else { Complex64::new(0.0, 0.0) });
    [jx, jy, jz]
}
