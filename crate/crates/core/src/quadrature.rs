//! Quadrature rules on the classical phase-spaces.
//!
//! Sphere rules integrate against the solid angle `dΩ` (total `4π`) with
//! nodes `(u, v, λ) = r·(x, y, z)`. Hyperboloid rules cover the patch
//! `|β| ≤ β_max` of `u² + v² − λ² = z²` with `dμ = z² cosh β dα dβ`. On the
//! su3 orbit `{U H₀ U†}` (total weight 1) there are two rules: the orbit of
//! the qutrit Clifford group, a unitary 2-design and hence exact for every
//! integrand of degree `(2, 2)` in `(U, Ū)`, and seeded Haar Monte Carlo.
//! Every rule here is closed under `ξ ↦ −ξ`, recorded in `antipodes`.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::algebra::registry::gell_mann;
use crate::algebra::{LieAlgebraSpec, Representation};
use crate::bch::decompose_over_basis;
use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};
use crate::weyl::{translation_operator, PhasePoint};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Surface {
    Sphere { radius: f64 },
    Hyperboloid { z: f64, beta_max: f64 },
    Su3Orbit,
    Product { factors: Vec<Surface> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadratureRule {
    pub id: String,
    pub surface: Surface,
    pub nodes: Vec<PhasePoint>,
    pub weights: Vec<f64>,
    /// Polynomial degree integrated exactly; `None` for Monte Carlo rules.
    pub exactness_degree: Option<usize>,
    /// `antipodes[n]` is the node at `−ξ_n`.
    pub antipodes: Vec<usize>,
}

impl QuadratureRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn total_weight(&self) -> f64 {
        self.weights.iter().sum()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("rules serialize")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let rule: QuadratureRule =
            serde_json::from_str(s).map_err(|e| Error::UnknownRule(format!("malformed rule JSON: {e}")))?;
        rule.check()?;
        Ok(rule)
    }

    fn check(&self) -> Result<()> {
        if self.weights.len() != self.nodes.len() || self.antipodes.len() != self.nodes.len() {
            return Err(Error::UnknownRule(format!("{}: node, weight and antipode counts differ", self.id)));
        }
        if self.weights.iter().any(|&w| !(w > 0.0)) {
            return Err(Error::UnknownRule(format!("{}: non-positive weight", self.id)));
        }
        Ok(())
    }

    fn finish(mut self) -> Result<Self> {
        self.antipodes = find_antipodes(&self.nodes)
            .ok_or_else(|| Error::NoAntipodes(self.id.clone()))?;
        self.check()?;
        Ok(self)
    }
}

fn coords(p: &PhasePoint) -> Vec<f64> {
    p.u.iter().chain(&p.v).chain(&p.lambda).copied().collect()
}

fn find_antipodes(nodes: &[PhasePoint]) -> Option<Vec<usize>> {
    find_antipodes_tol(nodes, 1e-12)
}

fn find_antipodes_tol(nodes: &[PhasePoint], tol: f64) -> Option<Vec<usize>> {
    let pts: Vec<Vec<f64>> = nodes.iter().map(coords).collect();
    let scale = pts.iter().flatten().fold(1.0f64, |m, x| m.max(x.abs()));
    pts.iter()
        .map(|p| pts.iter().position(|q| p.iter().zip(q).all(|(a, b)| (a + b).abs() <= tol * scale)))
        .collect()
}

fn sphere_point(r: f64, x: f64, y: f64, z: f64) -> PhasePoint {
    PhasePoint::new(vec![r * x], vec![r * y], vec![r * z])
}

/// Octahedrally symmetric rules with 6, 14 or 26 points.
pub fn lebedev(points: usize, radius: f64) -> Result<QuadratureRule> {
    let mut dirs: Vec<([f64; 3], f64)> = Vec::new();
    let (a1, a2, a3, degree) = match points {
        6 => (1.0 / 6.0, 0.0, 0.0, 3),
        14 => (1.0 / 15.0, 0.0, 3.0 / 40.0, 5),
        26 => (1.0 / 21.0, 4.0 / 105.0, 9.0 / 280.0, 7),
        _ => return Err(Error::UnknownRule(format!("lebedev:{points} (supported: 6, 14, 26)"))),
    };
    for axis in 0..3 {
        for s in [1.0, -1.0] {
            let mut p = [0.0; 3];
            p[axis] = s;
            dirs.push((p, a1));
        }
    }
    if a2 > 0.0 {
        let h = 0.5f64.sqrt();
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            for si in [1.0, -1.0] {
                for sj in [1.0, -1.0] {
                    let mut p = [0.0; 3];
                    p[i] = si * h;
                    p[j] = sj * h;
                    dirs.push((p, a2));
                }
            }
        }
    }
    if a3 > 0.0 {
        let t = 1.0 / 3f64.sqrt();
        for sx in [1.0, -1.0] {
            for sy in [1.0, -1.0] {
                for sz in [1.0, -1.0] {
                    dirs.push(([sx * t, sy * t, sz * t], a3));
                }
            }
        }
    }
    QuadratureRule {
        id: format!("lebedev:{points}"),
        surface: Surface::Sphere { radius },
        nodes: dirs.iter().map(|(p, _)| sphere_point(radius, p[0], p[1], p[2])).collect(),
        weights: dirs.iter().map(|(_, w)| 4.0 * PI * w).collect(),
        exactness_degree: Some(degree),
        antipodes: Vec::new(),
    }
    .finish()
}

/// Gauss–Legendre nodes and weights on `[−1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..n {
        let mut z = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * z * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            if n == 1 {
                p1 = z;
                p0 = 1.0;
            }
            dp = n as f64 * (z * p1 - p0) / (z * z - 1.0);
            let dz = p1 / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        x[i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
    }
    // Exact mirror symmetry, so reflected nodes coincide bit for bit.
    for i in 0..n / 2 {
        x[n - 1 - i] = -x[i];
        w[n - 1 - i] = w[i];
    }
    if n % 2 == 1 {
        x[n / 2] = 0.0;
    }
    (x, w)
}

/// `2n` azimuths `(j + ½)·π/n`; entry `j + n` is the exact negation of entry `j`.
fn azimuths(half: usize) -> Vec<(f64, f64)> {
    let first: Vec<(f64, f64)> = (0..half)
        .map(|j| {
            let phi = (j as f64 + 0.5) * PI / half as f64;
            (phi.cos(), phi.sin())
        })
        .collect();
    first.iter().copied().chain(first.iter().map(|&(c, s)| (-c, -s))).collect()
}

/// Gauss–Legendre in `cos θ` times `2n` uniform azimuths; exact to degree
/// `2n − 1`.
pub fn gauss_sphere(n: usize, radius: f64) -> Result<QuadratureRule> {
    if n == 0 {
        return Err(Error::UnsupportedLevel(0));
    }
    let (x, w) = gauss_legendre(n);
    let m = 2 * n;
    let mut nodes = Vec::new();
    let mut weights = Vec::new();
    for (zi, wi) in x.iter().zip(&w) {
        let s = (1.0 - zi * zi).max(0.0).sqrt();
        for (c, sn) in azimuths(n) {
            nodes.push(sphere_point(radius, s * c, s * sn, *zi));
            weights.push(wi * 2.0 * PI / m as f64);
        }
    }
    QuadratureRule {
        id: format!("gauss:{n}"),
        surface: Surface::Sphere { radius },
        nodes,
        weights,
        exactness_degree: Some(2 * n - 1),
        antipodes: Vec::new(),
    }
    .finish()
}

pub const MAX_SPHERE_LEVEL: usize = 40;

/// Levels 1–3 are the 6/14/26-point octahedral rules; level `k ≥ 4` is the
/// `k`-point Gauss product rule.
pub fn sphere_rule(level: usize, radius: f64) -> Result<QuadratureRule> {
    match level {
        1 => lebedev(6, radius),
        2 => lebedev(14, radius),
        3 => lebedev(26, radius),
        4..=MAX_SPHERE_LEVEL => gauss_sphere(level, radius),
        _ => Err(Error::UnsupportedLevel(level)),
    }
}

/// Product rule on `u² + v² − λ² = z²`, `|β| ≤ β_max`.
pub fn hyperboloid_rule(z: f64, beta_max: f64, n_beta: usize, n_alpha: usize) -> Result<QuadratureRule> {
    if n_beta == 0 || n_alpha == 0 || n_alpha % 2 == 1 {
        return Err(Error::UnknownRule(format!("hyperboloid grid {n_beta}x{n_alpha} (azimuth count must be even)")));
    }
    let (x, w) = gauss_legendre(n_beta);
    let mut nodes = Vec::new();
    let mut weights = Vec::new();
    for (xi, wi) in x.iter().zip(&w) {
        let beta = beta_max * xi;
        for (c, s) in azimuths(n_alpha / 2) {
            nodes.push(PhasePoint::new(
                vec![z * beta.cosh() * c],
                vec![z * beta.cosh() * s],
                vec![z * beta.sinh()],
            ));
            weights.push(z * z * beta.cosh() * wi * beta_max * 2.0 * PI / n_alpha as f64);
        }
    }
    QuadratureRule {
        id: format!("hyperboloid:{n_beta}x{n_alpha}"),
        surface: Surface::Hyperboloid { z, beta_max },
        nodes,
        weights,
        exactness_degree: None,
        antipodes: Vec::new(),
    }
    .finish()
}

/// Haar-random unitary via QR of a complex Ginibre matrix with the phase of
/// `R`'s diagonal divided out.
pub fn haar_unitary(d: usize, rng: &mut ChaCha8Rng) -> CMatrix {
    let g = DMatrix::from_fn(d, d, |_, _| {
        let re: f64 = StandardNormal.sample(rng);
        let im: f64 = StandardNormal.sample(rng);
        Complex64::new(re, im)
    });
    let qr = g.qr();
    let (q, r) = (qr.q(), qr.r());
    let phases = DMatrix::from_fn(d, d, |i, j| if i == j { r[(i, i)] / r[(i, i)].norm() } else { Complex64::new(0.0, 0.0) });
    q * phases
}

fn su3_orbit_point(u: &CMatrix) -> PhasePoint {
    let lambda = gell_mann();
    let h0 = &lambda[2] * Complex64::new(PI / 2.0, 0.0);
    let h = u * h0 * u.adjoint();
    let x: Vec<f64> = lambda.iter().map(|l| 0.5 * linalg::trace_product(&h, l).re).collect();
    PhasePoint::new(vec![x[0], x[3], x[5]], vec![-x[1], -x[4], -x[6]], vec![x[2], x[7]])
}

/// `samples` antithetic pairs `±U H₀ U†` with `H₀ = (π/2) λ3`, on which
/// `Tr Π = 1`; total weight 1.
pub fn su3_haar_rule(samples: usize, seed: u64) -> Result<QuadratureRule> {
    if samples == 0 {
        return Err(Error::UnknownRule("haar:0".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut nodes = Vec::with_capacity(2 * samples);
    for _ in 0..samples {
        let p = su3_orbit_point(&haar_unitary(3, &mut rng));
        nodes.push(p.negated());
        nodes.push(p);
    }
    let n = nodes.len();
    QuadratureRule {
        id: format!("haar:{samples}/seed={seed}"),
        surface: Surface::Su3Orbit,
        nodes,
        weights: vec![1.0 / n as f64; n],
        exactness_degree: None,
        antipodes: Vec::new(),
    }
    .finish()
}

/// The single-qutrit Clifford group modulo phases (216 elements).
pub fn qutrit_clifford_group() -> Vec<CMatrix> {
    let w = Complex64::from_polar(1.0, 2.0 * PI / 3.0);
    let (o, z) = (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0));
    let s3 = 1.0 / 3f64.sqrt();
    let fourier = CMatrix::from_fn(3, 3, |j, k| w.powu((j * k) as u32) * s3);
    let phase = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![o, o, w]));
    let shift = CMatrix::from_fn(3, 3, |j, k| if j == (k + 1) % 3 { o } else { z });
    let gens = [fourier, phase, shift];
    let key = |m: &CMatrix| -> Vec<(i64, i64)> {
        let lead = m.iter().find(|x| x.norm() > 1e-6).copied().unwrap_or(o);
        let fix = lead.conj() / lead.norm();
        m.iter().map(|x| {
            let y = x * fix;
            ((y.re * 1e8).round() as i64, (y.im * 1e8).round() as i64)
        }).collect()
    };
    let mut seen = std::collections::HashSet::new();
    let mut group = vec![linalg::identity(3)];
    seen.insert(key(&group[0]));
    let mut frontier = group.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for g in &frontier {
            for h in &gens {
                let m = g * h;
                if seen.insert(key(&m)) {
                    next.push(m);
                }
            }
        }
        group.extend(next.iter().cloned());
        frontier = next;
    }
    group
}

/// Orbit of `H₀ = (π/2) λ3` under the qutrit Clifford group, with
/// multiplicities as weights; an exact 2-design rule on the su3 surface.
pub fn su3_clifford_rule() -> Result<QuadratureRule> {
    let group = qutrit_clifford_group();
    let total = group.len() as f64;
    let mut nodes: Vec<PhasePoint> = Vec::new();
    let mut weights: Vec<f64> = Vec::new();
    for g in &group {
        let p = su3_orbit_point(g);
        match nodes.iter().position(|q| coords(q).iter().zip(coords(&p)).all(|(a, b)| (a - b).abs() < 1e-9)) {
            Some(i) => weights[i] += 1.0 / total,
            None => {
                nodes.push(p);
                weights.push(1.0 / total);
            }
        }
    }
    // Make negation exact on the stored coordinates.
    let anti = find_antipodes_tol(&nodes, 1e-9).ok_or_else(|| Error::NoAntipodes("clifford".into()))?;
    for n in 0..nodes.len() {
        if anti[n] > n {
            nodes[anti[n]] = nodes[n].negated();
        }
    }
    QuadratureRule {
        id: "clifford".into(),
        surface: Surface::Su3Orbit,
        nodes,
        weights,
        exactness_degree: Some(2),
        antipodes: Vec::new(),
    }
    .finish()
}

/// Tensor product of two rules; node coordinates concatenate factor-wise.
pub fn product_rule(a: &QuadratureRule, b: &QuadratureRule) -> Result<QuadratureRule> {
    let mut nodes = Vec::with_capacity(a.len() * b.len());
    let mut weights = Vec::with_capacity(a.len() * b.len());
    for (pa, wa) in a.nodes.iter().zip(&a.weights) {
        for (pb, wb) in b.nodes.iter().zip(&b.weights) {
            let cat = |x: &[f64], y: &[f64]| x.iter().chain(y).copied().collect();
            nodes.push(PhasePoint::new(cat(&pa.u, &pb.u), cat(&pa.v, &pb.v), cat(&pa.lambda, &pb.lambda)));
            weights.push(wa * wb);
        }
    }
    let exactness = a.exactness_degree.zip(b.exactness_degree).map(|(x, y)| x.min(y));
    QuadratureRule {
        id: format!("{}*{}", a.id, b.id),
        surface: Surface::Product { factors: vec![a.surface.clone(), b.surface.clone()] },
        nodes,
        weights,
        exactness_degree: exactness,
        antipodes: Vec::new(),
    }
    .finish()
}

/// Smallest `r > 0` with `Σ_m cos(2 m r) = 1` over `m = −l..l`, i.e.
/// `Tr Π = 1` on the sphere of radius `r` in the spin-`l` representation.
pub fn sphere_radius(two_l: u32) -> Result<f64> {
    let f = |r: f64| -> f64 {
        (0..=two_l).map(|k| ((two_l as f64 - 2.0 * k as f64) * r).cos()).sum::<f64>() - 1.0
    };
    let steps = 2000;
    let top = PI;
    let mut a = 0.0;
    for s in 1..=steps {
        let b = top * s as f64 / steps as f64;
        if f(a) * f(b) <= 0.0 {
            return bisect(f, a, b);
        }
        a = b;
    }
    Err(Error::NonConvergence(steps))
}

pub(crate) fn bisect(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> Result<f64> {
    let mut fa = f(a);
    if fa == 0.0 {
        return Ok(a);
    }
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        let fm = f(m);
        if fm == 0.0 || (b - a).abs() < 1e-16 * (1.0 + m.abs()) {
            return Ok(m);
        }
        if fa * fm < 0.0 {
            b = m;
        } else {
            a = m;
            fa = fm;
        }
    }
    Ok(0.5 * (a + b))
}

/// Default `(β_max, n_β, n_α)` for su11 patches.
pub const HYPERBOLOID_DEFAULT: (f64, usize, usize) = (1.5, 24, 32);
pub const DEFAULT_SEED: u64 = 20240607;

/// Parses a rule name (`lebedev:26`, `gauss:8`, `sphere:3`, `clifford`,
/// `haar:2000`, `hyperboloid:24x32`) for a surface.
pub fn build_rule(name: &str, surface: &Surface, seed: u64) -> Result<QuadratureRule> {
    let (kind, arg) = name.split_once(':').unwrap_or((name, ""));
    let num = |s: &str| s.parse::<usize>().map_err(|_| Error::UnknownRule(name.to_string()));
    match (kind, surface) {
        ("lebedev", Surface::Sphere { radius }) => lebedev(num(arg)?, *radius),
        ("gauss", Surface::Sphere { radius }) => gauss_sphere(num(arg)?, *radius),
        ("sphere", Surface::Sphere { radius }) => sphere_rule(num(arg)?, *radius),
        ("haar", Surface::Su3Orbit) => su3_haar_rule(num(arg)?, seed),
        ("clifford", Surface::Su3Orbit) => su3_clifford_rule(),
        ("hyperboloid", Surface::Hyperboloid { z, beta_max }) => {
            let (nb, na) = arg.split_once('x').ok_or_else(|| Error::UnknownRule(name.to_string()))?;
            hyperboloid_rule(*z, *beta_max, num(nb)?, num(na)?)
        }
        (_, Surface::Product { factors }) if factors.len() == 2 => {
            let a = build_rule(name, &factors[0], seed)?;
            let b = build_rule(name, &factors[1], seed)?;
            product_rule(&a, &b)
        }
        _ => Err(Error::UnknownRule(format!("{name} does not apply to this surface"))),
    }
}

/// `Σ w_n f_n`, summed in node order.
pub fn integrate(values: &[Complex64], rule: &QuadratureRule) -> Result<Complex64> {
    if values.len() != rule.len() {
        return Err(Error::DimensionMismatch { expected: rule.len(), found: values.len() });
    }
    Ok(values.iter().zip(&rule.weights).map(|(f, w)| f * *w).sum())
}

/// Node `ξ'` with `Π(ξ') = g Π(ξ) g†`, read off the algebra coefficients.
pub fn rotate_node(alg: &LieAlgebraSpec, rep: &Representation, g: &CMatrix, p: &PhasePoint) -> Result<PhasePoint> {
    let x = rep.represent(&p.coefficients(alg)?)?;
    let y = g * x * g.adjoint();
    let c = decompose_over_basis(rep, &y)?;
    Ok(PhasePoint::from_coefficients(alg, &c)?.re())
}

/// Largest `|∫ f(gξ) − ∫ f(ξ)|` over the symbols of the given operators.
pub fn haar_invariance_check(
    rule: &QuadratureRule,
    alg: &LieAlgebraSpec,
    rep: &Representation,
    g: &CMatrix,
    operators: &[CMatrix],
) -> Result<f64> {
    let mut plain = Vec::with_capacity(rule.len());
    let mut moved = Vec::with_capacity(rule.len());
    for p in &rule.nodes {
        plain.push(translation_operator(alg, rep, p)?);
        moved.push(translation_operator(alg, rep, &rotate_node(alg, rep, g, p)?)?);
    }
    let mut worst = 0.0f64;
    for a in operators {
        let f: Vec<Complex64> = plain.iter().map(|pi| linalg::trace_product(pi, a)).collect();
        let h: Vec<Complex64> = moved.iter().map(|pi| linalg::trace_product(pi, a)).collect();
        worst = worst.max((integrate(&h, rule)? - integrate(&f, rule)?).norm());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn half_gamma(twice: u32) -> f64 {
        // Γ(twice/2)
        if twice == 1 {
            PI.sqrt()
        } else if twice == 2 {
            1.0
        } else {
            (twice as f64 / 2.0 - 1.0) * half_gamma(twice - 2)
        }
    }

    fn sphere_moment(a: u32, b: u32, c: u32) -> f64 {
        if a % 2 == 1 || b % 2 == 1 || c % 2 == 1 {
            return 0.0;
        }
        2.0 * half_gamma(a + 1) * half_gamma(b + 1) * half_gamma(c + 1) / half_gamma(a + b + c + 3)
    }

    fn max_moment_error(rule: &QuadratureRule, degree: u32) -> f64 {
        let mut worst = 0.0f64;
        for a in 0..=degree {
            for b in 0..=degree - a {
                for c in 0..=degree - a - b {
                    let q: f64 = rule
                        .nodes
                        .iter()
                        .zip(&rule.weights)
                        .map(|(p, w)| {
                            let r = p.norm();
                            w * (p.u[0] / r).powi(a as i32) * (p.v[0] / r).powi(b as i32) * (p.lambda[0] / r).powi(c as i32)
                        })
                        .sum();
                    worst = worst.max((q - sphere_moment(a, b, c)).abs());
                }
            }
        }
        worst
    }

    #[test]
    fn sphere_rules_are_exact_to_their_degree() {
        for level in 1..=8 {
            let rule = sphere_rule(level, 1.0).unwrap();
            let deg = rule.exactness_degree.unwrap() as u32;
            assert!((rule.total_weight() - 4.0 * PI).abs() < 1e-12, "level {level}");
            assert!(max_moment_error(&rule, deg) < 1e-12, "level {level}");
        }
        // One degree beyond is not exact for the 26-point rule.
        assert!(max_moment_error(&lebedev(26, 1.0).unwrap(), 8) > 1e-6);
    }

    #[test]
    fn second_moment_scales_with_radius() {
        let r = PI / 3.0;
        let rule = sphere_rule(3, r).unwrap();
        let m: f64 = rule.nodes.iter().zip(&rule.weights).map(|(p, w)| w * p.u[0] * p.u[0]).sum();
        assert!((m - 4.0 * PI / 3.0 * r * r).abs() < 1e-12);
        let odd: Vec<Complex64> = rule.nodes.iter().map(|p| Complex64::new(p.v[0], 0.0)).collect();
        assert!(integrate(&odd, &rule).unwrap().norm() < 1e-14);
    }

    #[test]
    fn unsupported_inputs_are_rejected() {
        assert!(matches!(sphere_rule(0, 1.0), Err(Error::UnsupportedLevel(0))));
        assert!(matches!(sphere_rule(41, 1.0), Err(Error::UnsupportedLevel(41))));
        assert!(lebedev(50, 1.0).is_err());
        let rule = sphere_rule(1, 1.0).unwrap();
        assert!(integrate(&[Complex64::new(1.0, 0.0)], &rule).is_err());
    }

    #[test]
    fn antipodes_are_involutions() {
        for rule in [
            sphere_rule(3, 1.0).unwrap(),
            sphere_rule(5, 1.0).unwrap(),
            hyperboloid_rule(1.0, 1.0, 6, 8).unwrap(),
            su3_haar_rule(10, 1).unwrap(),
            su3_clifford_rule().unwrap(),
        ] {
            for (n, &m) in rule.antipodes.iter().enumerate() {
                assert_eq!(rule.antipodes[m], n);
                assert_eq!(rule.nodes[m], rule.nodes[n].negated());
            }
        }
    }

    #[test]
    fn spin_radii() {
        assert!((sphere_radius(1).unwrap() - PI / 3.0).abs() < 1e-14);
        assert!((sphere_radius(2).unwrap() - PI / 4.0).abs() < 1e-14);
        let r = sphere_radius(3).unwrap();
        assert!((4.0 * r.cos() * (2.0 * r).cos() - 1.0).abs() < 1e-13);
    }

    #[test]
    fn hyperboloid_patch_area() {
        // ∫ z² cosh β dα dβ over |β| ≤ b is 4π z² sinh b.
        let rule = hyperboloid_rule(2.0, 1.2, 16, 8).unwrap();
        assert!((rule.total_weight() - 4.0 * PI * 4.0 * 1.2f64.sinh()).abs() < 1e-10);
        for p in &rule.nodes {
            assert!((p.u[0].powi(2) + p.v[0].powi(2) - p.lambda[0].powi(2) - 4.0).abs() < 1e-12);
        }
    }

    #[test]
    fn clifford_group_is_a_unitary_two_design() {
        let g = qutrit_clifford_group();
        assert_eq!(g.len(), 216);
        // Frame potential Σ|Tr(U†V)|⁴ / |G|² equals 2 exactly for 2-designs.
        let mut fp = 0.0;
        for a in &g {
            for b in &g {
                fp += linalg::trace_product(&a.adjoint(), b).norm().powi(4);
            }
        }
        fp /= (g.len() * g.len()) as f64;
        assert!((fp - 2.0).abs() < 1e-9, "frame potential {fp}");
        let rule = su3_clifford_rule().unwrap();
        assert!((rule.total_weight() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn json_round_trip_and_determinism() {
        let a = su3_haar_rule(5, 7).unwrap();
        let b = su3_haar_rule(5, 7).unwrap();
        assert_eq!(a, b);
        let back = QuadratureRule::from_json(&a.to_json()).unwrap();
        assert_eq!(back, a);
        assert!(QuadratureRule::from_json("{").is_err());
    }
}
