//! su3 in the fundamental representation through the Gell-Mann algebra.
//!
//! `(u·λ)ⁿ = a_n + λ_a b_nᵃ` with `a_{n+1} = ⅔ u·b_n` and
//! `b_{n+1}ᵃ = a_n uᵃ + d_abc uᵇ b_nᶜ`, so `exp(i u·λ) = c₀ + λ_a cᵃ` with
//! `c₀ = Σ iⁿ a_n / n!`, `cᵃ = Σ iⁿ b_nᵃ / n!`. Traces carry the factor 3:
//! `Tr Π = 3c₀`, `Tr(ΠΠ') = 3(c₀c₀' + ⅔ c·c')`.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;

use super::Branch;
use crate::algebra::registry::{gell_mann, su3_f_entries};
use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};
use crate::quadrature::bisect;

fn idx(a: usize, b: usize, c: usize) -> usize {
    (a * 8 + b) * 8 + c
}

/// `d_abc = ¼ Tr({λ_a, λ_b} λ_c)`, dense `8³`.
pub fn d_tensor() -> &'static [f64] {
    static D: OnceLock<Vec<f64>> = OnceLock::new();
    D.get_or_init(|| {
        let l = gell_mann();
        let mut d = vec![0.0; 512];
        for a in 0..8 {
            for b in 0..8 {
                let anti = &l[a] * &l[b] + &l[b] * &l[a];
                for c in 0..8 {
                    d[idx(a, b, c)] = 0.25 * linalg::trace_product(&anti, &l[c]).re;
                }
            }
        }
        d
    })
}

/// Totally antisymmetric `f_abc`, dense `8³`.
pub fn f_tensor() -> &'static [f64] {
    static F: OnceLock<Vec<f64>> = OnceLock::new();
    F.get_or_init(|| {
        let mut f = vec![0.0; 512];
        for (a, b, c, v) in su3_f_entries() {
            for (x, y, z, s) in [(a, b, c, 1.0), (b, c, a, 1.0), (c, a, b, 1.0), (b, a, c, -1.0), (a, c, b, -1.0), (c, b, a, -1.0)] {
                f[idx(x, y, z)] = s * v;
            }
        }
        f
    })
}

fn check_len(u: &[Complex64]) -> Result<()> {
    if u.len() != 8 {
        return Err(Error::DimensionMismatch { expected: 8, found: u.len() });
    }
    Ok(())
}

fn step(u: &[Complex64], a: Complex64, b: &[Complex64]) -> (Complex64, Vec<Complex64>) {
    let d = d_tensor();
    let a_next = u.iter().zip(b).map(|(x, y)| x * y).sum::<Complex64>() * (2.0 / 3.0);
    let b_next = (0..8)
        .map(|i| {
            let mut s = a * u[i];
            for j in 0..8 {
                for k in 0..8 {
                    let dv = d[idx(i, j, k)];
                    if dv != 0.0 {
                        s += u[j] * b[k] * dv;
                    }
                }
            }
            s
        })
        .collect();
    (a_next, b_next)
}

/// `(a_n, b_n)` from `a₀ = 1`, `b₀ = 0`.
pub fn monomial_coeffs(u: &[Complex64], n: usize) -> Result<(Complex64, Vec<Complex64>)> {
    check_len(u)?;
    let mut a = Complex64::new(1.0, 0.0);
    let mut b = vec![Complex64::new(0.0, 0.0); 8];
    for _ in 0..n {
        (a, b) = step(u, a, &b);
    }
    Ok((a, b))
}

pub const MAX_TERMS: usize = 200;

/// `(c₀, cᵃ)` with `exp(i u·λ) = c₀ + λ_a cᵃ`, summed until a term and its
/// successor both drop below `1e-16` relative to the running sum.
pub fn translation_closed(u: &[Complex64]) -> Result<(Complex64, Vec<Complex64>)> {
    check_len(u)?;
    let i = Complex64::new(0.0, 1.0);
    // Scaled terms tₙ = iⁿ/n! (a_n, b_n); the recursion is linear.
    let mut ta = Complex64::new(1.0, 0.0);
    let mut tb = vec![Complex64::new(0.0, 0.0); 8];
    let mut c0 = ta;
    let mut c = tb.clone();
    let mut quiet = 0;
    for n in 0..MAX_TERMS {
        let (a_next, b_next) = step(u, ta, &tb);
        let f = i / (n as f64 + 1.0);
        ta = a_next * f;
        tb = b_next.into_iter().map(|x| x * f).collect();
        c0 += ta;
        for (ck, tk) in c.iter_mut().zip(&tb) {
            *ck += tk;
        }
        let size = tb.iter().fold(ta.norm(), |m, z| m.max(z.norm()));
        let scale = c.iter().fold(c0.norm(), |m, z| m.max(z.norm())).max(1.0);
        if size < 1e-16 * scale {
            quiet += 1;
            if quiet >= 2 {
                return Ok((c0, c));
            }
        } else {
            quiet = 0;
        }
    }
    Err(Error::NonConvergence(MAX_TERMS))
}

/// `c₀ + λ_a cᵃ` as a matrix.
pub fn assemble(c0: Complex64, c: &[Complex64]) -> CMatrix {
    let l = gell_mann();
    let mut m = linalg::identity(3) * c0;
    for (ck, lk) in c.iter().zip(&l) {
        m += lk * *ck;
    }
    m
}

fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `K/3 = c₀c₀' + ⅔ c·c'`.
pub fn kernel_printed(p: (Complex64, &[Complex64]), q: (Complex64, &[Complex64])) -> Complex64 {
    p.0 * q.0 + dot(p.1, q.1) * (2.0 / 3.0)
}

/// `Δ/3 = c₀c₀'c₀'' + ⅔ Σ_placements c·c' c₀'' + ⅔ (d_abc + i f_abc) cᵃ c'ᵇ c''ᶜ`.
pub fn delta_printed(p: (Complex64, &[Complex64]), q: (Complex64, &[Complex64]), r: (Complex64, &[Complex64])) -> Complex64 {
    let (d, f) = (d_tensor(), f_tensor());
    let mut cubic = Complex64::new(0.0, 0.0);
    for a in 0..8 {
        for b in 0..8 {
            for c in 0..8 {
                let t = Complex64::new(d[idx(a, b, c)], f[idx(a, b, c)]);
                if t != Complex64::new(0.0, 0.0) {
                    cubic += t * p.1[a] * q.1[b] * r.1[c];
                }
            }
        }
    }
    p.0 * q.0 * r.0
        + (dot(p.1, q.1) * r.0 + dot(p.1, r.1) * q.0 + dot(q.1, r.1) * p.0) * (2.0 / 3.0)
        + cubic * (2.0 / 3.0)
}

/// Gell-Mann coefficient vector of `(u, v, λ)`: `u` on `λ1, λ4, λ6`, `−v` on
/// `λ2, λ5, λ7`, `λ` on `λ3, λ8`.
pub fn coefficients(u: &[f64], v: &[f64], lambda: &[f64]) -> Vec<Complex64> {
    let mut x = vec![Complex64::new(0.0, 0.0); 8];
    for (k, &i) in [0usize, 3, 5].iter().enumerate() {
        x[i] = u[k].into();
    }
    for (k, &i) in [1usize, 4, 6].iter().enumerate() {
        x[i] = (-v[k]).into();
    }
    x[2] = lambda[0].into();
    x[7] = lambda[1].into();
    x
}

/// The chart's target value of `c₀`.
pub const C0_TARGET: f64 = 1.0 / 3.0;

/// Eigenvalues of `x·λ` for real `x`: roots of `t³ − p t − q` with
/// `p = |x|²`, `q = ⅔ d_abc xᵃxᵇxᶜ`, by the trigonometric formula.
pub fn generator_eigenvalues(x: &[f64]) -> [f64; 3] {
    let d = d_tensor();
    let p: f64 = x.iter().map(|a| a * a).sum();
    if p < 1e-300 {
        return [0.0; 3];
    }
    let mut q = 0.0;
    for a in 0..8 {
        for b in 0..8 {
            for c in 0..8 {
                let dv = d[idx(a, b, c)];
                if dv != 0.0 {
                    q += dv * x[a] * x[b] * x[c];
                }
            }
        }
    }
    q *= 2.0 / 3.0;
    let m = 2.0 * (p / 3.0).sqrt();
    let phi = ((3.0 * q / (p * m)).clamp(-1.0, 1.0)).acos() / 3.0;
    [0, 1, 2].map(|k| m * (phi - 2.0 * PI * k as f64 / 3.0).cos())
}

/// `Tr exp(i x·λ) / 3` on the chart.
fn c0_at(u: &[f64], v: &[f64], rho: f64, theta: f64) -> Complex64 {
    let x: Vec<f64> = coefficients(u, v, &[rho * theta.cos(), rho * theta.sin()]).iter().map(|z| z.re).collect();
    generator_eigenvalues(&x).iter().map(|&e| Complex64::from_polar(1.0, e)).sum::<Complex64>() / 3.0
}

/// Smallest `ρ > 0` along direction `θ` with `Re c₀ = ⅓`.
fn inner_root(u: &[f64], v: &[f64], theta: f64) -> Option<f64> {
    let g = |rho: f64| c0_at(u, v, rho, theta).re - C0_TARGET;
    let steps = 64;
    let top = 2.0 * PI;
    let mut a = 0.0;
    let mut ga = g(a);
    for s in 1..=steps {
        let b = top * s as f64 / steps as f64;
        let gb = g(b);
        if ga * gb <= 0.0 {
            return bisect(g, a, b).ok();
        }
        a = b;
        ga = gb;
    }
    None
}

/// Our su3 chart: `λ = ρ(cos θ, sin θ)` in the `(λ3, λ8)` plane. The inner
/// solve fixes `Re c₀ = ⅓` in `ρ`, the outer one `Im c₀ = 0` in `θ`.
/// `Plus` takes the root with `λ3 > 0`, `Minus` the one with `λ3 < 0`,
/// preferring the direction closest to `θ = 0` (resp. `π`), then smallest `ρ`.
pub fn solve_lambda(u: &[f64], v: &[f64], branch: Branch) -> Result<[f64; 2]> {
    if u.len() != 3 || v.len() != 3 {
        return Err(Error::DimensionMismatch { expected: 3, found: u.len().min(v.len()) });
    }
    let h = |theta: f64| inner_root(u, v, theta).map(|rho| c0_at(u, v, rho, theta).im);
    let steps = 96;
    let mut roots: Vec<(f64, f64)> = Vec::new();
    // Offset grid, closed up by repeating the first angle one turn later.
    let mut thetas: Vec<f64> = (0..steps).map(|s| -PI + 2.0 * PI * (s as f64 + 0.5) / steps as f64).collect();
    thetas.push(thetas[0] + 2.0 * PI);
    let vals: Vec<Option<f64>> = thetas.iter().map(|&t| h(t)).collect();
    for s in 0..steps {
        let (Some(ha), Some(hb)) = (vals[s], vals[s + 1]) else { continue };
        if ha * hb > 0.0 {
            continue;
        }
        let Ok(theta) = bisect(|t| h(t).unwrap_or(f64::NAN), thetas[s], thetas[s + 1]) else { continue };
        let theta = (theta + PI).rem_euclid(2.0 * PI) - PI;
        let Some(rho) = inner_root(u, v, theta) else { continue };
        if (c0_at(u, v, rho, theta) - Complex64::new(C0_TARGET, 0.0)).norm() <= 1e-10 {
            roots.push((rho, theta));
        }
    }
    let want_plus = branch == Branch::Plus;
    let off = |theta: f64| if want_plus { theta.abs() } else { PI - theta.abs() };
    roots
        .into_iter()
        .filter(|&(_, t)| (t.cos() > 0.0) == want_plus)
        .min_by(|a, b| {
            (off(a.1), a.0).partial_cmp(&(off(b.1), b.0)).unwrap_or(std::cmp::Ordering::Equal)
        })
        .map(|(rho, t)| [rho * t.cos(), rho * t.sin()])
        .ok_or_else(|| Error::OutOfChart { detail: "no point of the su3 surface over these (u, v)".into() })
}
