//! Loop-algebra translations evaluated at a point of the circle.

use num_complex::Complex64;

use super::{translation_operator, PhasePoint};
use crate::algebra::{LieAlgebraSpec, Representation};
use crate::error::{Error, Result};
use crate::linalg::CMatrix;

/// `ξ(z) = Σ_{|n| ≤ N} ξ_n zⁿ`.
pub fn loop_point(modes: &[(i32, PhasePoint<Complex64>)], z: Complex64, n_max: u32) -> Result<PhasePoint<Complex64>> {
    if (z.norm() - 1.0).abs() > 1e-12 {
        return Err(Error::NotUnitModulus(z.norm()));
    }
    let Some((_, first)) = modes.first() else {
        return Err(Error::Shape("no Fourier modes".into()));
    };
    let zero = Complex64::new(0.0, 0.0);
    let mut acc = PhasePoint {
        u: vec![zero; first.u.len()],
        v: vec![zero; first.v.len()],
        lambda: vec![zero; first.lambda.len()],
    };
    for (n, p) in modes {
        if n.unsigned_abs() > n_max {
            continue;
        }
        if p.u.len() != acc.u.len() || p.v.len() != acc.v.len() || p.lambda.len() != acc.lambda.len() {
            return Err(Error::Shape(format!("mode {n} has mismatched coordinates")));
        }
        let zn = z.powi(*n);
        for (a, b) in acc.u.iter_mut().zip(&p.u) {
            *a += b * zn;
        }
        for (a, b) in acc.v.iter_mut().zip(&p.v) {
            *a += b * zn;
        }
        for (a, b) in acc.lambda.iter_mut().zip(&p.lambda) {
            *a += b * zn;
        }
    }
    Ok(acc)
}

/// `Π_loop(ξ)(z) = Π(ξ(z))`.
pub fn loop_translation(
    alg: &LieAlgebraSpec,
    rep: &Representation,
    modes: &[(i32, PhasePoint<Complex64>)],
    z: Complex64,
    n_max: u32,
) -> Result<CMatrix> {
    translation_operator(alg, rep, &loop_point(modes, z, n_max)?)
}
