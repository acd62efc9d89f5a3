//! Translation operators, Weyl symbols, kernels and twisted products for
//! matrix representations.
//!
//! Symbols use the plain trace `A_W(ξ) = Tr(Π(ξ) A)`. Every chart is chosen
//! so that `Tr Π = 1` on it, hence `(1)_W = 1` without rescaling. The
//! calibrated constant `c = d / Σ w` makes `Tr(A B†) = c ∫ A_W conj(B_W) dμ`
//! on tight frames (su2 spin-½, su3 fundamental).
//!
//! Integral kernels are evaluated at reflected arguments: with
//! `Π(ξ̄) = Π(ξ)^{-1}`, the frame identity is `c ∫ Π(ξ̄) Tr(Π(ξ) A) dμ = A`,
//! so the twisted product is
//! `(f⋆g)(ξ) = c² ∫∫ f(ξ')g(ξ'') Δ(ξ, ξ̄', ξ̄'') dμ' dμ''`
//! and the reproducing identity reads `c ∫ K(ξ, ξ̄') f(ξ') dμ' = f(ξ)`.

mod dmatrix;
mod loops;
mod point;
pub mod su2;
pub mod su3;

pub use dmatrix::{dmatrix, dmatrix_symbol, euler_zyz, wigner_small_d};
pub use loops::{loop_point, loop_translation};
pub use point::PhasePoint;

use std::f64::consts::PI;

use nalgebra::DVector;
use num_complex::Complex64;
use serde::Serialize;

use crate::algebra::{Chart, LieAlgebraSpec, RegistryEntry, Representation};
use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};
use crate::quadrature::{self, QuadratureRule, Surface};

/// `Π(ξ) = exp(i Σ_k c_k(ξ) M_k)`.
pub fn translation_operator<T: Copy + Into<Complex64>>(
    alg: &LieAlgebraSpec,
    rep: &Representation,
    xi: &PhasePoint<T>,
) -> Result<CMatrix> {
    let c = xi.coefficients(alg)?;
    Ok(linalg::expm(&(rep.represent(&c)? * Complex64::new(0.0, 1.0))))
}

/// Sign choice for the abelian coordinates on a two-sheeted chart.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    Plus,
    Minus,
}

/// Hyperboloid waist: `u² + v² − λ² = z²` gives `Tr Π = 2 cos z = 1`.
pub const HYPERBOLOID_Z: f64 = PI / 3.0;

/// The constraint surface of an entry in a given representation.
pub fn surface_for(entry: &RegistryEntry, rep: &Representation) -> Result<Surface> {
    match entry.chart {
        Chart::Sphere => Ok(Surface::Sphere { radius: quadrature::sphere_radius(rep.d() as u32 - 1)? }),
        Chart::Hyperboloid => Ok(Surface::Hyperboloid { z: HYPERBOLOID_Z, beta_max: quadrature::HYPERBOLOID_DEFAULT.0 }),
        Chart::Su3Orbit => Ok(Surface::Su3Orbit),
        // Direct sums of two spin-½ factors.
        Chart::Product => {
            let s = Surface::Sphere { radius: PI / 3.0 };
            Ok(Surface::Product { factors: vec![s.clone(), s] })
        }
        Chart::Flat | Chart::None => {
            Err(Error::UnknownRule(format!("{} has no compact phase-space chart", entry.spec.name)))
        }
    }
}

/// Default rule name for a surface.
pub fn default_rule_name(surface: &Surface) -> String {
    match surface {
        Surface::Sphere { .. } | Surface::Product { .. } => "lebedev:26".into(),
        Surface::Hyperboloid { .. } => {
            let (_, nb, na) = quadrature::HYPERBOLOID_DEFAULT;
            format!("hyperboloid:{nb}x{na}")
        }
        Surface::Su3Orbit => "clifford".into(),
    }
}

/// Builds the named (or default) rule on the entry's surface.
pub fn rule_for(entry: &RegistryEntry, rep: &Representation, name: Option<&str>, seed: u64) -> Result<QuadratureRule> {
    let surface = surface_for(entry, rep)?;
    let name = name.map(str::to_string).unwrap_or_else(|| default_rule_name(&surface));
    quadrature::build_rule(&name, &surface, seed)
}

/// Abelian coordinates placing `(u, v)` on the entry's constraint surface.
pub fn solve_lambda(entry: &RegistryEntry, rep: &Representation, u: &[f64], v: &[f64], branch: Branch) -> Result<Vec<f64>> {
    let spec = &entry.spec;
    if u.len() != spec.raising.len() || v.len() != spec.lowering.len() {
        return Err(Error::DimensionMismatch { expected: spec.raising.len(), found: u.len() });
    }
    let sign = if branch == Branch::Plus { 1.0 } else { -1.0 };
    let sphere = |r: f64, u: f64, v: f64| -> Result<f64> {
        let rest = r * r - u * u - v * v;
        if rest < -1e-14 {
            return Err(Error::OutOfChart { detail: format!("u² + v² = {:.6} exceeds r² = {:.6}", u * u + v * v, r * r) });
        }
        Ok(sign * rest.max(0.0).sqrt())
    };
    match entry.chart {
        Chart::Sphere => Ok(vec![sphere(quadrature::sphere_radius(rep.d() as u32 - 1)?, u[0], v[0])?]),
        Chart::Product => {
            let r = PI / 3.0;
            Ok(vec![sphere(r, u[0], v[0])?, sphere(r, u[1], v[1])?])
        }
        Chart::Hyperboloid => {
            let z = HYPERBOLOID_Z;
            let rest = u[0] * u[0] + v[0] * v[0] - z * z;
            if rest < -1e-14 {
                return Err(Error::OutOfChart { detail: format!("u² + v² below the waist z² = {:.6}", z * z) });
            }
            Ok(vec![sign * rest.max(0.0).sqrt()])
        }
        Chart::Su3Orbit => Ok(su3::solve_lambda(u, v, branch)?.to_vec()),
        Chart::Flat | Chart::None => Err(Error::OutOfChart { detail: format!("{} has no constraint surface", spec.name) }),
    }
}

/// Symbol values on the nodes of one rule.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SampledSymbol {
    pub rule_id: String,
    pub values: Vec<Complex64>,
    /// Calibrated `c` of the frame that produced the symbol.
    pub normalization: f64,
}

impl SampledSymbol {
    pub fn max_abs_diff(&self, other: &SampledSymbol) -> f64 {
        self.values.iter().zip(&other.values).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    pub fn sub(&self, other: &SampledSymbol) -> Result<SampledSymbol> {
        if self.rule_id != other.rule_id {
            return Err(Error::RuleMismatch);
        }
        Ok(SampledSymbol {
            values: self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect(),
            ..self.clone()
        })
    }

    pub fn scale(&self, s: Complex64) -> SampledSymbol {
        SampledSymbol { values: self.values.iter().map(|a| a * s).collect(), ..self.clone() }
    }
}

/// `Tr(Π(ξ) Π(ξ'))`.
pub fn kernel_k<T: Copy + Into<Complex64>>(alg: &LieAlgebraSpec, rep: &Representation, a: &PhasePoint<T>, b: &PhasePoint<T>) -> Result<Complex64> {
    Ok(linalg::trace_product(&translation_operator(alg, rep, a)?, &translation_operator(alg, rep, b)?))
}

/// `Tr(Π(ξ) Π(ξ') Π(ξ''))`.
pub fn kernel_delta<T: Copy + Into<Complex64>>(
    alg: &LieAlgebraSpec,
    rep: &Representation,
    a: &PhasePoint<T>,
    b: &PhasePoint<T>,
    c: &PhasePoint<T>,
) -> Result<Complex64> {
    let ab = translation_operator(alg, rep, a)? * translation_operator(alg, rep, b)?;
    Ok(linalg::trace_product(&ab, &translation_operator(alg, rep, c)?))
}

/// Precomputed frame `{Π(ξ_n)}` over a rule, with its Gram system.
#[derive(Clone, Debug)]
pub struct WeylContext {
    pub alg: LieAlgebraSpec,
    pub rep: Representation,
    pub rule: QuadratureRule,
    pis: Vec<CMatrix>,
    normalization: f64,
    gram: nalgebra::DMatrix<Complex64>,
    gram_condition: f64,
}

const CONSTRAINT_TOL: f64 = 1e-10;
pub const MAX_GRAM_CONDITION: f64 = 1e8;

impl WeylContext {
    /// Checks every node against `Tr Π = 1` and calibrates `c = d / Σ w`.
    pub fn new(alg: &LieAlgebraSpec, rep: &Representation, rule: &QuadratureRule) -> Result<Self> {
        let mut pis = Vec::with_capacity(rule.len());
        for (n, p) in rule.nodes.iter().enumerate() {
            let pi = translation_operator(alg, rep, p)?;
            let tr = linalg::trace(&pi);
            if (tr - Complex64::new(1.0, 0.0)).norm() > CONSTRAINT_TOL {
                return Err(Error::OutOfChart { detail: format!("node {n} of {} has Tr Π = {tr}", rule.id) });
            }
            pis.push(pi);
        }
        let d = rep.d();
        let d2 = d * d;
        // G_ab = Σ w conj((E_a)_W) (E_b)_W; `a = i + d·j` labels E_ij, whose symbol is Π_ji.
        let mut gram = nalgebra::DMatrix::<Complex64>::zeros(d2, d2);
        for (pi, w) in pis.iter().zip(&rule.weights) {
            let vals: Vec<Complex64> = (0..d2).map(|a| pi[(a / d, a % d)]).collect();
            for a in 0..d2 {
                let ca = vals[a].conj() * *w;
                for b in 0..d2 {
                    gram[(a, b)] += ca * vals[b];
                }
            }
        }
        let sv = gram.clone().singular_values();
        let (smax, smin) = (sv.max(), sv.min());
        let gram_condition = if smin > 0.0 { smax / smin } else { f64::INFINITY };
        Ok(WeylContext {
            alg: alg.clone(),
            rep: rep.clone(),
            rule: rule.clone(),
            pis,
            normalization: d as f64 / rule.total_weight(),
            gram,
            gram_condition,
        })
    }

    /// Context for a registry entry with a named or default rule.
    pub fn for_entry(entry: &RegistryEntry, rep_selector: Option<&str>, rule: Option<&str>, seed: u64) -> Result<Self> {
        let rep = entry.representation(rep_selector)?;
        let rule = rule_for(entry, rep, rule, seed)?;
        Self::new(&entry.spec, rep, &rule)
    }

    pub fn normalization(&self) -> f64 {
        self.normalization
    }

    pub fn gram_condition(&self) -> f64 {
        self.gram_condition
    }

    pub fn translations(&self) -> &[CMatrix] {
        &self.pis
    }

    fn wrap(&self, values: Vec<Complex64>) -> SampledSymbol {
        SampledSymbol { rule_id: self.rule.id.clone(), values, normalization: self.normalization }
    }

    fn check_sym(&self, s: &SampledSymbol) -> Result<()> {
        if s.rule_id != self.rule.id || s.values.len() != self.rule.len() {
            return Err(Error::RuleMismatch);
        }
        Ok(())
    }

    fn check_shape(&self, a: &CMatrix) -> Result<()> {
        let d = self.rep.d();
        if a.nrows() != d || a.ncols() != d {
            return Err(Error::Shape(format!("expected {d}x{d} operator, got {}x{}", a.nrows(), a.ncols())));
        }
        Ok(())
    }

    /// `A_W(ξ_n) = Tr(Π(ξ_n) A)`.
    pub fn symbol(&self, a: &CMatrix) -> Result<SampledSymbol> {
        self.check_shape(a)?;
        Ok(self.wrap(self.pis.iter().map(|pi| linalg::trace_product(pi, a)).collect()))
    }

    /// Operator whose symbol best matches `sym` in the weighted L² sense,
    /// from the Gram system over matrix units.
    pub fn inverse(&self, sym: &SampledSymbol) -> Result<CMatrix> {
        self.check_sym(sym)?;
        if !(self.gram_condition <= MAX_GRAM_CONDITION) {
            return Err(Error::IllConditioned(self.gram_condition));
        }
        let d = self.rep.d();
        let d2 = d * d;
        let mut m = DVector::<Complex64>::zeros(d2);
        for ((pi, w), f) in self.pis.iter().zip(&self.rule.weights).zip(&sym.values) {
            for a in 0..d2 {
                m[a] += pi[(a / d, a % d)].conj() * f * *w;
            }
        }
        let x = self
            .gram
            .clone()
            .lu()
            .solve(&m)
            .ok_or(Error::IllConditioned(f64::INFINITY))?;
        Ok(CMatrix::from_fn(d, d, |i, j| x[i + d * j]))
    }

    pub fn integrate(&self, sym: &SampledSymbol) -> Result<Complex64> {
        self.check_sym(sym)?;
        quadrature::integrate(&sym.values, &self.rule)
    }

    /// `c ∫ f conj(g) dμ`, equal to `Tr(A B†)` for symbols of `A`, `B`.
    pub fn overlap(&self, f: &SampledSymbol, g: &SampledSymbol) -> Result<Complex64> {
        self.check_sym(f)?;
        self.check_sym(g)?;
        let s: Complex64 = f.values.iter().zip(&g.values).zip(&self.rule.weights).map(|((a, b), w)| a * b.conj() * *w).sum();
        Ok(s * self.normalization)
    }

    /// `c ∫ f g dμ` without conjugation.
    pub fn overlap_bilinear(&self, f: &SampledSymbol, g: &SampledSymbol) -> Result<Complex64> {
        self.check_sym(f)?;
        self.check_sym(g)?;
        let s: Complex64 = f.values.iter().zip(&g.values).zip(&self.rule.weights).map(|((a, b), w)| a * b * *w).sum();
        Ok(s * self.normalization)
    }

    fn reflected(&self, n: usize) -> Result<&CMatrix> {
        self.rule.antipodes.get(n).map(|&m| &self.pis[m]).ok_or_else(|| Error::NoAntipodes(self.rule.id.clone()))
    }

    /// `c Σ_p w_p f_p Π(ξ̄_p)`: the frame reconstruction of `f`.
    fn synthesize(&self, f: &SampledSymbol) -> Result<CMatrix> {
        let d = self.rep.d();
        let mut acc = CMatrix::zeros(d, d);
        for (p, (fp, w)) in f.values.iter().zip(&self.rule.weights).enumerate() {
            acc += self.reflected(p)? * (fp * *w);
        }
        Ok(acc * Complex64::new(self.normalization, 0.0))
    }

    /// Reflected-kernel twisted product. The double integral against
    /// `Δ(ξ, ξ̄', ξ̄'')` factors through the trace as `Tr(Π(ξ) F G)`.
    pub fn twisted_product(&self, f: &SampledSymbol, g: &SampledSymbol) -> Result<SampledSymbol> {
        self.check_sym(f)?;
        self.check_sym(g)?;
        let fg = self.synthesize(f)? * self.synthesize(g)?;
        Ok(self.wrap(self.pis.iter().map(|pi| linalg::trace_product(pi, &fg)).collect()))
    }

    /// The same product summed term by term over node pairs; `O(N³)`.
    pub fn twisted_product_direct(&self, f: &SampledSymbol, g: &SampledSymbol) -> Result<SampledSymbol> {
        self.twisted_sum(f, g, true)
    }

    /// Kernel `Δ(ξ, ξ', ξ'')` at unreflected arguments, as a plain reading
    /// of the integral formula; reported for comparison only.
    pub fn twisted_product_unreflected(&self, f: &SampledSymbol, g: &SampledSymbol) -> Result<SampledSymbol> {
        self.twisted_sum(f, g, false)
    }

    fn twisted_sum(&self, f: &SampledSymbol, g: &SampledSymbol, reflect: bool) -> Result<SampledSymbol> {
        self.check_sym(f)?;
        self.check_sym(g)?;
        let c2 = self.normalization * self.normalization;
        let arg = |p: usize| if reflect { self.reflected(p) } else { Ok(&self.pis[p]) };
        let mut out = Vec::with_capacity(self.rule.len());
        for pi in &self.pis {
            let mut acc = Complex64::new(0.0, 0.0);
            for p in 0..self.rule.len() {
                let left = pi * arg(p)?;
                let wp = self.rule.weights[p] * f.values[p];
                for q in 0..self.rule.len() {
                    let delta = linalg::trace_product(&left, arg(q)?);
                    acc += delta * wp * g.values[q] * self.rule.weights[q];
                }
            }
            out.push(acc * c2);
        }
        Ok(self.wrap(out))
    }

    /// Product through the Gram inverse: `(inverse(f) · inverse(g))_W`.
    pub fn twisted_product_via_inverse(&self, f: &SampledSymbol, g: &SampledSymbol) -> Result<SampledSymbol> {
        self.symbol(&(self.inverse(f)? * self.inverse(g)?))
    }

    /// `f⋆g − g⋆f`.
    pub fn moyal_bracket(&self, f: &SampledSymbol, g: &SampledSymbol) -> Result<SampledSymbol> {
        self.twisted_product(f, g)?.sub(&self.twisted_product(g, f)?)
    }

    /// `c ∫ K(ξ, ξ̄') f(ξ') dμ'` at every node.
    pub fn reproduce(&self, f: &SampledSymbol) -> Result<SampledSymbol> {
        self.check_sym(f)?;
        let mut out = Vec::with_capacity(self.rule.len());
        for pi in &self.pis {
            let mut acc = Complex64::new(0.0, 0.0);
            for (q, (fq, w)) in f.values.iter().zip(&self.rule.weights).enumerate() {
                acc += linalg::trace_product(pi, self.reflected(q)?) * fq * *w;
            }
            out.push(acc * self.normalization);
        }
        Ok(self.wrap(out))
    }

    /// `⟨ψ|Π(ξ_n)|ψ⟩`, the symbol of `|ψ⟩⟨ψ|`.
    pub fn wigner(&self, psi: &[Complex64]) -> Result<SampledSymbol> {
        let d = self.rep.d();
        if psi.len() != d {
            return Err(Error::DimensionMismatch { expected: d, found: psi.len() });
        }
        let norm = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > 1e-10 {
            return Err(Error::NotNormalized(norm));
        }
        let v = DVector::from_column_slice(psi);
        Ok(self.wrap(self.pis.iter().map(|pi| (v.adjoint() * pi * &v)[(0, 0)]).collect()))
    }
}

/// `Tr(Π(ξ_n) A)` over a rule.
pub fn weyl_symbol(a: &CMatrix, alg: &LieAlgebraSpec, rep: &Representation, rule: &QuadratureRule) -> Result<SampledSymbol> {
    WeylContext::new(alg, rep, rule)?.symbol(a)
}

/// Gram-system inverse of [`weyl_symbol`]; `rule` must be the one that
/// produced `sym`.
pub fn inverse_weyl(sym: &SampledSymbol, alg: &LieAlgebraSpec, rep: &Representation, rule: &QuadratureRule) -> Result<CMatrix> {
    WeylContext::new(alg, rep, rule)?.inverse(sym)
}

pub fn wigner_function(psi: &[Complex64], alg: &LieAlgebraSpec, rep: &Representation, rule: &QuadratureRule) -> Result<SampledSymbol> {
    WeylContext::new(alg, rep, rule)?.wigner(psi)
}

#[cfg(test)]
mod tests;
