//! Exact Grassmann algebra and Grassmann-valued matrices.
//!
//! Monomials are bitmasks over at most 64 generators, ordered by increasing
//! index; `merge_sign(a, b)` is the parity of the shuffle taking `θ^a θ^b` to
//! canonical order. Coefficients are Gaussian rationals.
//!
//! A [`MixedElement`] is `Σ_m θ^m ⊗ A_m` with exact matrices `A_m`. Generators
//! anticommute with odd operators, those anticommuting with the grading `G`
//! (`G² = 1`), so `A θ = θ P(A)` with `P(A) = G A G` and
//! `(θ^{m₁} A)(θ^{m₂} B) = ±θ^{m₁∪m₂} P^{|m₂|}(A) B`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{cq, format_cq, frac, CRational};

pub const MAX_GENERATORS: usize = 64;

/// `±1` for `θ^a θ^b = ±θ^{a|b}`; `None` when a generator repeats.
pub fn merge_sign(a: u64, b: u64) -> Option<i32> {
    if a & b != 0 {
        return None;
    }
    let mut swaps = 0u32;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        rest &= rest - 1;
        let above = if j >= 63 { 0 } else { a >> (j + 1) };
        swaps += above.count_ones();
    }
    Some(if swaps.is_multiple_of(2) { 1 } else { -1 })
}

fn add_into(map: &mut BTreeMap<u64, CRational>, m: u64, c: CRational) {
    if c.is_zero() {
        return;
    }
    let e = map.entry(m).or_insert_with(CRational::zero);
    *e += c;
    if e.is_zero() {
        map.remove(&m);
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrassmannElement {
    n_gen: usize,
    coeffs: BTreeMap<u64, CRational>,
}

impl GrassmannElement {
    pub fn zero(n_gen: usize) -> Self {
        assert!(n_gen <= MAX_GENERATORS, "at most {MAX_GENERATORS} generators");
        GrassmannElement { n_gen, coeffs: BTreeMap::new() }
    }

    pub fn scalar(n_gen: usize, c: CRational) -> Self {
        let mut g = Self::zero(n_gen);
        add_into(&mut g.coeffs, 0, c);
        g
    }

    pub fn one(n_gen: usize) -> Self {
        Self::scalar(n_gen, CRational::one())
    }

    pub fn generator(n_gen: usize, i: usize) -> Result<Self> {
        if i >= n_gen {
            return Err(Error::DimensionMismatch { expected: n_gen, found: i + 1 });
        }
        Ok(Self::from_terms(n_gen, [(1u64 << i, CRational::one())]))
    }

    /// Sum of `c · θ^mask`; masks are taken as canonically ordered products.
    pub fn from_terms(n_gen: usize, terms: impl IntoIterator<Item = (u64, CRational)>) -> Self {
        let mut g = Self::zero(n_gen);
        for (m, c) in terms {
            assert!(n_gen == 64 || m >> n_gen == 0, "mask uses a generator beyond n_gen");
            add_into(&mut g.coeffs, m, c);
        }
        g
    }

    pub fn n_gen(&self) -> usize {
        self.n_gen
    }

    pub fn coeff(&self, mask: u64) -> CRational {
        self.coeffs.get(&mask).copied().unwrap_or_else(CRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u64, &CRational)> {
        self.coeffs.iter().map(|(m, c)| (*m, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Largest monomial degree present (0 for the zero element).
    pub fn degree(&self) -> u32 {
        self.coeffs.keys().map(|m| m.count_ones()).max().unwrap_or(0)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.n_gen != other.n_gen {
            return Err(Error::DimensionMismatch { expected: self.n_gen, found: other.n_gen });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.coeffs {
            add_into(&mut out.coeffs, *m, *c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(-CRational::one()))
    }

    pub fn scale(&self, s: CRational) -> Self {
        Self::from_terms(self.n_gen, self.coeffs.iter().map(|(m, c)| (*m, c * s)))
    }

    pub fn gmul(&self, other: &Self) -> Result<Self> {
        self.mul_truncated(other, u32::MAX)
    }

    /// Product keeping monomials of degree `≤ max_degree`.
    pub fn mul_truncated(&self, other: &Self, max_degree: u32) -> Result<Self> {
        self.check(other)?;
        let mut out = Self::zero(self.n_gen);
        for (ma, ca) in &self.coeffs {
            for (mb, cb) in &other.coeffs {
                if (ma | mb).count_ones() > max_degree {
                    continue;
                }
                if let Some(s) = merge_sign(*ma, *mb) {
                    add_into(&mut out.coeffs, ma | mb, ca * cb * cq(s as i128, 0));
                }
            }
        }
        Ok(out)
    }

    pub fn truncate(&self, max_degree: u32) -> Self {
        Self::from_terms(self.n_gen, self.coeffs.iter().filter(|(m, _)| m.count_ones() <= max_degree).map(|(m, c)| (*m, *c)))
    }

    pub fn even_part(&self) -> Self {
        Self::from_terms(self.n_gen, self.coeffs.iter().filter(|(m, _)| m.count_ones() % 2 == 0).map(|(m, c)| (*m, *c)))
    }

    pub fn odd_part(&self) -> Self {
        Self::from_terms(self.n_gen, self.coeffs.iter().filter(|(m, _)| m.count_ones() % 2 == 1).map(|(m, c)| (*m, *c)))
    }

    /// `exp(x)` for `x` without constant term; the series ends by nilpotency.
    pub fn exp_nilpotent(&self) -> Result<Self> {
        if !self.coeff(0).is_zero() {
            return Err(Error::Numerical("exp of a Grassmann element with a scalar part".into()));
        }
        let mut out = Self::one(self.n_gen);
        let mut term = Self::one(self.n_gen);
        let mut k: i128 = 0;
        loop {
            k += 1;
            term = term.gmul(self)?.scale(frac(1, k));
            if term.is_zero() {
                return Ok(out);
            }
            out = out.add(&term)?;
        }
    }

    /// Berezin integral `∫ dθ_{g_k} … dθ_{g_1}`: each monomial containing all
    /// listed generators is reordered to `θ_{g_1} ⋯ θ_{g_k} · rest` and
    /// replaced by `rest`; monomials missing one of them vanish.
    pub fn berezin(&self, gens: &[usize]) -> Result<Self> {
        let mut want = 0u64;
        for &g in gens {
            if g >= self.n_gen || want & (1 << g) != 0 {
                return Err(Error::IndexClash(format!("integration generator {g}")));
            }
            want |= 1 << g;
        }
        let mut out = Self::zero(self.n_gen);
        for (m, c) in &self.coeffs {
            if m & want != want {
                continue;
            }
            let rest = m & !want;
            // θ^m = sign · θ_{g_1}⋯θ_{g_k} θ^rest
            let mut sign = merge_sign(want, rest).expect("disjoint");
            // θ_{g_1}⋯θ_{g_k} in listed order vs canonical order of `want`.
            let mut inv = 0;
            for i in 0..gens.len() {
                inv += gens[i + 1..].iter().filter(|&&h| h < gens[i]).count();
            }
            if inv % 2 == 1 {
                sign = -sign;
            }
            add_into(&mut out.coeffs, rest, c * cq(sign as i128, 0));
        }
        Ok(out)
    }

    /// Renders with generator names (`θ`, `η`, …); default names `e0, e1, …`.
    pub fn format_with(&self, names: &[&str]) -> String {
        if self.coeffs.is_empty() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (m, c) in &self.coeffs {
            let mono: Vec<String> = (0..self.n_gen)
                .filter(|i| m >> i & 1 == 1)
                .map(|i| names.get(i).map(|s| s.to_string()).unwrap_or_else(|| format!("e{i}")))
                .collect();
            let coef = format_cq(c);
            parts.push(if mono.is_empty() {
                coef
            } else if coef == "1" {
                mono.join("*")
            } else if coef == "-1" {
                format!("-{}", mono.join("*"))
            } else if coef.contains(['+', '-']) && !coef.starts_with('-') || coef[1..].contains(['+', '-']) {
                format!("({coef})*{}", mono.join("*"))
            } else {
                format!("{coef}*{}", mono.join("*"))
            });
        }
        parts.join(" + ").replace("+ -", "- ")
    }
}

impl fmt::Display for GrassmannElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_with(&[]))
    }
}

/// Dense exact square matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMatrix {
    n: usize,
    data: Vec<CRational>,
}

impl QMatrix {
    pub fn zeros(n: usize) -> Self {
        QMatrix { n, data: vec![CRational::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = CRational::one();
        }
        m
    }

    /// Row-major entries.
    pub fn from_rows(n: usize, entries: &[CRational]) -> Self {
        assert_eq!(entries.len(), n * n, "row-major entries of an n×n matrix");
        QMatrix { n, data: entries.to_vec() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> CRational {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: CRational) {
        self.data[i * self.n + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn add(&self, o: &Self) -> Self {
        QMatrix { n: self.n, data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        QMatrix { n: self.n, data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect() }
    }

    pub fn scale(&self, s: CRational) -> Self {
        QMatrix { n: self.n, data: self.data.iter().map(|a| a * s).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = o.data[k * n + j];
                    if !b.is_zero() {
                        out.data[i * n + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn trace(&self) -> CRational {
        (0..self.n).map(|i| self.data[i * self.n + i]).fold(CRational::zero(), |a, b| a + b)
    }

    /// `Some(c)` when the matrix is `c·1`.
    pub fn as_scalar(&self) -> Option<CRational> {
        let c = self.get(0, 0);
        (0..self.n)
            .all(|i| (0..self.n).all(|j| self.get(i, j) == if i == j { c } else { CRational::zero() }))
            .then_some(c)
    }

    pub fn to_complex(&self) -> crate::linalg::CMatrix {
        crate::linalg::CMatrix::from_fn(self.n, self.n, |i, j| crate::exact::to_c64(&self.get(i, j)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedElement {
    n_gen: usize,
    grading: QMatrix,
    terms: BTreeMap<u64, QMatrix>,
}

impl MixedElement {
    pub fn zero(n_gen: usize, grading: &QMatrix) -> Self {
        MixedElement { n_gen, grading: grading.clone(), terms: BTreeMap::new() }
    }

    pub fn identity(n_gen: usize, grading: &QMatrix) -> Self {
        Self::from_parts(&GrassmannElement::one(n_gen), &QMatrix::identity(grading.n()), grading).expect("shapes agree")
    }

    /// `g ⊗ m`.
    pub fn from_parts(g: &GrassmannElement, m: &QMatrix, grading: &QMatrix) -> Result<Self> {
        if m.n() != grading.n() {
            return Err(Error::Shape(format!("{}x{} matrix with a {}-dim grading", m.n(), m.n(), grading.n())));
        }
        let mut out = Self::zero(g.n_gen(), grading);
        for (mask, c) in g.terms() {
            out.add_term(mask, &m.scale(*c));
        }
        Ok(out)
    }

    fn add_term(&mut self, mask: u64, m: &QMatrix) {
        if m.is_zero() {
            return;
        }
        let d = self.grading.n();
        let e = self.terms.entry(mask).or_insert_with(|| QMatrix::zeros(d));
        *e = e.add(m);
        if e.is_zero() {
            self.terms.remove(&mask);
        }
    }

    pub fn d(&self) -> usize {
        self.grading.n()
    }

    pub fn n_gen(&self) -> usize {
        self.n_gen
    }

    pub fn grading(&self) -> &QMatrix {
        &self.grading
    }

    pub fn terms(&self) -> impl Iterator<Item = (u64, &QMatrix)> {
        self.terms.iter().map(|(m, a)| (*m, a))
    }

    pub fn component(&self, mask: u64) -> QMatrix {
        self.terms.get(&mask).cloned().unwrap_or_else(|| QMatrix::zeros(self.d()))
    }

    fn check(&self, o: &Self) -> Result<()> {
        if self.n_gen != o.n_gen {
            return Err(Error::DimensionMismatch { expected: self.n_gen, found: o.n_gen });
        }
        if self.grading != o.grading {
            return Err(Error::Shape("mixed elements with different gradings".into()));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let mut out = self.clone();
        for (m, a) in &o.terms {
            out.add_term(*m, a);
        }
        Ok(out)
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.scale(-CRational::one()))
    }

    pub fn scale(&self, s: CRational) -> Self {
        let mut out = Self::zero(self.n_gen, &self.grading);
        for (m, a) in &self.terms {
            out.add_term(*m, &a.scale(s));
        }
        out
    }

    /// `P(A) = G A G`.
    fn parity(&self, a: &QMatrix) -> QMatrix {
        self.grading.mul(a).mul(&self.grading)
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.mul_truncated(o, u32::MAX)
    }

    /// Product keeping Grassmann degrees `≤ max_degree`.
    pub fn mul_truncated(&self, o: &Self, max_degree: u32) -> Result<Self> {
        self.check(o)?;
        let mut out = Self::zero(self.n_gen, &self.grading);
        let mut flipped: BTreeMap<u64, QMatrix> = BTreeMap::new();
        for (m1, a) in &self.terms {
            for (m2, b) in &o.terms {
                if (m1 | m2).count_ones() > max_degree {
                    continue;
                }
                let Some(sign) = merge_sign(*m1, *m2) else { continue };
                let left = if m2.count_ones() % 2 == 1 {
                    flipped.entry(*m1).or_insert_with(|| self.parity(a)).clone()
                } else {
                    a.clone()
                };
                out.add_term(m1 | m2, &left.mul(b).scale(cq(sign as i128, 0)));
            }
        }
        Ok(out)
    }

    /// `Σ_k x^k / k!`, truncated at Grassmann degree `max_degree`; requires
    /// every term of `x` to carry at least one generator.
    pub fn exp(&self, max_degree: u32) -> Result<Self> {
        if self.terms.contains_key(&0) {
            return Err(Error::Numerical("exp of a mixed element with a generator-free part".into()));
        }
        let mut out = Self::identity(self.n_gen, &self.grading);
        let mut term = out.clone();
        let mut k: i128 = 0;
        loop {
            k += 1;
            term = term.mul_truncated(self, max_degree)?.scale(frac(1, k));
            if term.terms.is_empty() {
                return Ok(out);
            }
            out = out.add(&term)?;
        }
    }

    /// `Σ_m θ^m Tr(A_m)`.
    pub fn trace(&self) -> GrassmannElement {
        GrassmannElement::from_terms(self.n_gen, self.terms.iter().map(|(m, a)| (*m, a.trace())))
    }

    /// `Σ_m θ^m Tr(A_m B)` for a plain matrix `B`.
    pub fn trace_with(&self, b: &QMatrix) -> GrassmannElement {
        GrassmannElement::from_terms(self.n_gen, self.terms.iter().map(|(m, a)| (*m, a.mul(b).trace())))
    }

    /// `Some(q)` when every component is a multiple of the identity.
    pub fn as_scalar(&self) -> Option<GrassmannElement> {
        let mut out = GrassmannElement::zero(self.n_gen);
        for (m, a) in &self.terms {
            out = out.add(&GrassmannElement::from_terms(self.n_gen, [(*m, a.as_scalar()?)])).ok()?;
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize, i: usize) -> GrassmannElement {
        GrassmannElement::generator(n, i).unwrap()
    }

    #[test]
    fn anticommutation_and_nilpotency() {
        let (t, e) = (g(2, 0), g(2, 1));
        let te = t.gmul(&e).unwrap();
        let et = e.gmul(&t).unwrap();
        assert_eq!(te, GrassmannElement::from_terms(2, [(0b11, cq(1, 0))]));
        assert_eq!(et, te.scale(cq(-1, 0)));
        assert!(t.gmul(&t).unwrap().is_zero());
        let one = GrassmannElement::one(2);
        let lhs = one.add(&t).unwrap().gmul(&one.add(&e).unwrap()).unwrap();
        let rhs = one.add(&t).unwrap().add(&e).unwrap().add(&te).unwrap();
        assert_eq!(lhs, rhs);
        assert!(t.gmul(&g(3, 0)).is_err());
        assert_eq!(te.format_with(&["θ", "η"]), "θ*η");
    }

    #[test]
    fn merge_signs() {
        assert_eq!(merge_sign(0b10, 0b01), Some(-1));
        assert_eq!(merge_sign(0b01, 0b10), Some(1));
        assert_eq!(merge_sign(0b110, 0b001), Some(1));
        assert_eq!(merge_sign(0b101, 0b010), Some(-1));
        assert_eq!(merge_sign(0b1, 0b1), None);
    }

    #[test]
    fn even_elements_are_central() {
        let n = 4;
        let even = g(n, 0).gmul(&g(n, 1)).unwrap().add(&GrassmannElement::scalar(n, frac(1, 2))).unwrap();
        let other = g(n, 2).add(&g(n, 3).gmul(&g(n, 1)).unwrap()).unwrap();
        assert_eq!(even.gmul(&other).unwrap(), other.gmul(&even).unwrap());
    }

    #[test]
    fn berezin_integration() {
        // ∫ dη dθ (θ η) = 1 with θ integrated first.
        let te = g(2, 0).gmul(&g(2, 1)).unwrap();
        assert_eq!(te.berezin(&[0, 1]).unwrap(), GrassmannElement::one(2));
        assert_eq!(te.berezin(&[1, 0]).unwrap(), GrassmannElement::scalar(2, cq(-1, 0)));
        assert!(g(2, 0).berezin(&[0, 1]).unwrap().is_zero());
        assert!(te.berezin(&[0, 0]).is_err());
    }

    #[test]
    fn exponentials_terminate() {
        let x = g(2, 0).gmul(&g(2, 1)).unwrap();
        let e = x.exp_nilpotent().unwrap();
        assert_eq!(e, GrassmannElement::one(2).add(&x).unwrap());
        assert!(GrassmannElement::one(2).exp_nilpotent().is_err());
    }

    #[test]
    fn mixed_products_respect_the_grading() {
        let o = cq(1, 0);
        let z = cq(0, 0);
        let a = QMatrix::from_rows(2, &[z, o, z, z]);
        let grading = QMatrix::from_rows(2, &[o, z, z, -o]);
        let theta = MixedElement::from_parts(&g(1, 0), &QMatrix::identity(2), &grading).unwrap();
        let op = MixedElement::from_parts(&GrassmannElement::one(1), &a, &grading).unwrap();
        // a θ = −θ a for odd a.
        let left = op.mul(&theta).unwrap();
        let right = theta.mul(&op).unwrap();
        assert_eq!(left, right.scale(cq(-1, 0)));
    }
}
