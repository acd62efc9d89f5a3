//! Wigner rotation matrices as an independent route to spin-`l` symbols.
//!
//! The spin-½ translation `U = Π(ξ)` is an SU(2) element; its ZYZ Euler
//! angles feed the Wigner formula, giving `Π_l(ξ) = D^l(α, β, γ)` without any
//! matrix exponential in the spin-`l` representation. Rows and columns run
//! over `m = l, l−1, …, −l`.

use num_complex::Complex64;

use super::{su2, SampledSymbol};
use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};
use crate::quadrature::QuadratureRule;

fn factorial(n: i32) -> f64 {
    (1..=n).map(f64::from).product()
}

/// `d^j_{m'm}(β)` for the rotation `e^{−iβJ_y}`; arguments are doubled.
pub fn wigner_small_d(two_j: i32, two_mp: i32, two_m: i32, beta: f64) -> f64 {
    let j_mp = (two_j + two_mp) / 2;
    let j_mmp = (two_j - two_mp) / 2;
    let j_m = (two_j + two_m) / 2;
    let j_mm = (two_j - two_m) / 2;
    let pre = (factorial(j_mp) * factorial(j_mmp) * factorial(j_m) * factorial(j_mm)).sqrt();
    let (c, s) = ((beta / 2.0).cos(), (beta / 2.0).sin());
    let mp_minus_m = (two_mp - two_m) / 2;
    let mut sum = 0.0;
    for k in 0..=two_j {
        let (a, b, cc, d) = (j_m - k, k, j_mmp - k, k + mp_minus_m);
        if a < 0 || cc < 0 || d < 0 {
            continue;
        }
        let sign = if (k + mp_minus_m) % 2 == 0 { 1.0 } else { -1.0 };
        let pc = two_j - 2 * k - mp_minus_m;
        let ps = 2 * k + mp_minus_m;
        sum += sign * c.powi(pc) * s.powi(ps) / (factorial(a) * factorial(b) * factorial(cc) * factorial(d));
    }
    pre * sum
}

/// `D^l_{m'm} = e^{−i m' α} d^l_{m'm}(β) e^{−i m γ}`.
pub fn dmatrix(two_l: u32, alpha: f64, beta: f64, gamma: f64) -> CMatrix {
    let d = two_l as usize + 1;
    let tl = two_l as i32;
    CMatrix::from_fn(d, d, |r, c| {
        let (two_mp, two_m) = (tl - 2 * r as i32, tl - 2 * c as i32);
        let phase = -(two_mp as f64 * alpha + two_m as f64 * gamma) / 2.0;
        Complex64::from_polar(wigner_small_d(tl, two_mp, two_m, beta), phase)
    })
}

/// Angles with `U = e^{−iαJ_z} e^{−iβJ_y} e^{−iγJ_z}` for `U ∈ SU(2)`.
pub fn euler_zyz(u: &CMatrix) -> (f64, f64, f64) {
    let (a, b) = (u[(0, 0)], u[(1, 0)]);
    let beta = 2.0 * b.norm().atan2(a.norm());
    let sum = -2.0 * a.arg();
    let diff = 2.0 * b.arg();
    ((sum + diff) / 2.0, beta, (sum - diff) / 2.0)
}

/// `A_W = Σ D^l_{m'm} A_{mm'}` on the nodes of an su2 rule.
pub fn dmatrix_symbol(a: &CMatrix, two_l: u32, rule: &QuadratureRule) -> Result<SampledSymbol> {
    let d = two_l as usize + 1;
    if a.nrows() != d || a.ncols() != d {
        return Err(Error::Shape(format!("expected {d}x{d} operator, got {}x{}", a.nrows(), a.ncols())));
    }
    if rule.nodes.first().is_some_and(|p| p.u.len() != 1 || p.v.len() != 1 || p.lambda.len() != 1) {
        return Err(Error::Shape("rule is not an su2 rule".into()));
    }
    let values = rule
        .nodes
        .iter()
        .map(|p| {
            let (al, be, ga) = euler_zyz(&su2::closed_form_pi(p));
            linalg::trace_product(&dmatrix(two_l, al, be, ga), a)
        })
        .collect();
    Ok(SampledSymbol { rule_id: rule.id.clone(), values, normalization: d as f64 / rule.total_weight() })
}
