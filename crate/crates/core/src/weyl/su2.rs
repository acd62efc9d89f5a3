//! Closed forms for su2 in the spin-½ representation.
//!
//! `Π(ξ) = f₀ + f·σ` with `f₀ = cos r`, `f = i (sin r / r)(u, −v, λ)`,
//! `r = |ξ|`.

use num_complex::Complex64;

use super::PhasePoint;
use crate::linalg::{self, CMatrix};

pub fn f_components(xi: &PhasePoint) -> (Complex64, [Complex64; 3]) {
    let r = xi.norm();
    let s = if r < 1e-8 { 1.0 - r * r / 6.0 } else { r.sin() / r };
    let i = Complex64::new(0.0, s);
    (Complex64::new(r.cos(), 0.0), [i * xi.u[0], -i * xi.v[0], i * xi.lambda[0]])
}

pub fn closed_form_pi(xi: &PhasePoint) -> CMatrix {
    let (f0, f) = f_components(xi);
    let (o, z) = (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0));
    let i = Complex64::new(0.0, 1.0);
    let s1 = linalg::from_rows(2, &[z, o, o, z]);
    let s2 = linalg::from_rows(2, &[z, -i, i, z]);
    let s3 = linalg::from_rows(2, &[o, z, z, -o]);
    linalg::identity(2) * f0 + s1 * f[0] + s2 * f[1] + s3 * f[2]
}

fn dot(a: &[Complex64; 3], b: &[Complex64; 3]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn triple(a: &[Complex64; 3], b: &[Complex64; 3], c: &[Complex64; 3]) -> Complex64 {
    let cross = [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]];
    dot(&cross, c)
}

/// `Tr(Π Π') = 2(f₀f₀' + f·f')`.
pub fn kernel_k(a: &PhasePoint, b: &PhasePoint) -> Complex64 {
    let (f0, f) = f_components(a);
    let (g0, g) = f_components(b);
    (f0 * g0 + dot(&f, &g)) * 2.0
}

/// `Tr(Π Π' Π'') = 2(f₀f₀'f₀'' + f₀ f'·f'' + f₀' f·f'' + f₀'' f·f' + i f·(f'×f''))`.
pub fn kernel_delta(a: &PhasePoint, b: &PhasePoint, c: &PhasePoint) -> Complex64 {
    let (f0, f) = f_components(a);
    let (g0, g) = f_components(b);
    let (h0, h) = f_components(c);
    let i = Complex64::new(0.0, 1.0);
    (f0 * g0 * h0 + f0 * dot(&g, &h) + g0 * dot(&f, &h) + h0 * dot(&f, &g) + i * triple(&f, &g, &h)) * 2.0
}

/// `K = 2(1 − f·f')`, the kernel as printed in the source text.
pub fn printed_kernel(a: &PhasePoint, b: &PhasePoint) -> Complex64 {
    let (_, f) = f_components(a);
    let (_, g) = f_components(b);
    (Complex64::new(1.0, 0.0) - dot(&f, &g)) * 2.0
}

/// `Δ = 2(1 − f·f' − f·f'' − f'·f'' + Σ_ijk f_i f'_j f''_k)`, as printed.
pub fn printed_delta(a: &PhasePoint, b: &PhasePoint, c: &PhasePoint) -> Complex64 {
    let (_, f) = f_components(a);
    let (_, g) = f_components(b);
    let (_, h) = f_components(c);
    let sum = |x: &[Complex64; 3]| x.iter().sum::<Complex64>();
    (Complex64::new(1.0, 0.0) - dot(&f, &g) - dot(&f, &h) - dot(&g, &h) + sum(&f) * sum(&g) * sum(&h)) * 2.0
}
