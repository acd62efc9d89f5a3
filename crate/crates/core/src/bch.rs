//! Baker–Campbell–Hausdorff series `Z = log(e^X e^Y)` contracted through
//! structure constants.
//!
//! The universal series is computed in the free associative algebra on
//! `{X, Y}` with exact rationals, then rewritten in the Lyndon (Hall) basis
//! of the free Lie algebra by triangular elimination: the standard
//! bracketing `P_w` of a Lyndon word `w` expands as `w` plus
//! lexicographically larger words. Each basis bracket is then contracted
//! with `X = Σ x_i T_i`, `Y = Σ y_i T_i`.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Debug;

use num_complex::Complex64;
use num_traits::{Num, One, Zero};
use serde::Serialize;

use crate::algebra::{LieAlgebraSpec, Representation};
use crate::error::{Error, Result};
use crate::exact::{format_cq, rationalize_complex, to_c64, CRational, Rational};
use crate::linalg::{self, CMatrix};
use crate::weyl::{translation_operator, PhasePoint};

pub const MAX_ORDER: usize = 6;

type Word = Vec<u8>;
type WordPoly = BTreeMap<Word, Rational>;

fn wp_add(acc: &mut WordPoly, w: Word, c: Rational) {
    if c.is_zero() {
        return;
    }
    let e = acc.entry(w.clone()).or_insert_with(Rational::zero);
    *e += c;
    if e.is_zero() {
        acc.remove(&w);
    }
}

fn wp_mul(a: &WordPoly, b: &WordPoly, max_len: usize) -> WordPoly {
    let mut out = WordPoly::new();
    for (wa, ca) in a {
        for (wb, cb) in b {
            if wa.len() + wb.len() > max_len {
                continue;
            }
            let mut w = wa.clone();
            w.extend_from_slice(wb);
            wp_add(&mut out, w, ca * cb);
        }
    }
    out
}

fn exp_letter(letter: u8, order: usize) -> WordPoly {
    let mut out = WordPoly::new();
    let mut fact = Rational::one();
    for k in 0..=order {
        if k > 0 {
            fact *= Rational::from_integer(k as i128);
        }
        out.insert(vec![letter; k], fact.recip());
    }
    out
}

/// `log(e^X e^Y)` in the free associative algebra, words up to `order`.
fn log_series(order: usize) -> WordPoly {
    let mut p = wp_mul(&exp_letter(0, order), &exp_letter(1, order), order);
    p.remove(&Vec::new());
    let mut out = WordPoly::new();
    let mut power = p.clone();
    for k in 1..=order {
        let sign = if k % 2 == 1 { 1 } else { -1 };
        let c = Rational::new(sign, k as i128);
        for (w, x) in &power {
            wp_add(&mut out, w.clone(), x * c);
        }
        power = wp_mul(&power, &p, order);
    }
    out
}

/// Lyndon words over `{0 < 1}` of length `1..=max_len`, sorted by length
/// then lexicographically.
pub fn lyndon_words(max_len: usize) -> Vec<Word> {
    let mut out = Vec::new();
    if max_len == 0 {
        return out;
    }
    let mut w: Word = vec![0];
    loop {
        out.push(w.clone());
        let m = w.len();
        while w.len() < max_len {
            w.push(w[w.len() - m]);
        }
        while w.last() == Some(&1) {
            w.pop();
        }
        match w.last_mut() {
            Some(x) => *x += 1,
            None => break,
        }
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    out
}

fn is_lyndon(w: &[u8]) -> bool {
    !w.is_empty() && (1..w.len()).all(|i| w < &w[i..])
}

/// `w = u v` with `v` the longest proper Lyndon suffix.
fn standard_factorization(w: &[u8]) -> (Word, Word) {
    for i in 1..w.len() {
        if is_lyndon(&w[i..]) {
            return (w[..i].to_vec(), w[i..].to_vec());
        }
    }
    unreachable!("a Lyndon word of length ≥ 2 has a Lyndon proper suffix")
}

fn bracket_expansion(w: &[u8], memo: &mut HashMap<Word, WordPoly>) -> WordPoly {
    if let Some(p) = memo.get(w) {
        return p.clone();
    }
    let out = if w.len() == 1 {
        WordPoly::from([(w.to_vec(), Rational::one())])
    } else {
        let (u, v) = standard_factorization(w);
        let pu = bracket_expansion(&u, memo);
        let pv = bracket_expansion(&v, memo);
        let mut out = wp_mul(&pu, &pv, usize::MAX);
        for (word, c) in wp_mul(&pv, &pu, usize::MAX) {
            wp_add(&mut out, word, -c);
        }
        out
    };
    memo.insert(w.to_vec(), out.clone());
    out
}

/// Bracket notation of a Lyndon word under its standard bracketing.
pub fn bracket_string(w: &[u8]) -> String {
    if w.len() == 1 {
        return if w[0] == 0 { "X".into() } else { "Y".into() };
    }
    let (u, v) = standard_factorization(w);
    format!("[{},{}]", bracket_string(&u), bracket_string(&v))
}

/// The universal series in the Lyndon basis.
#[derive(Clone, Debug)]
pub struct LieSeries {
    pub order: usize,
    pub terms: Vec<(Word, Rational)>,
}

pub fn lie_series(order: usize) -> Result<LieSeries> {
    if order > MAX_ORDER {
        return Err(Error::UnsupportedOrder { order, max: MAX_ORDER });
    }
    let log = log_series(order);
    let mut memo = HashMap::new();
    let mut terms = Vec::new();
    for degree in 1..=order {
        let mut rest: WordPoly = log.iter().filter(|(w, _)| w.len() == degree).map(|(w, c)| (w.clone(), *c)).collect();
        while let Some((w, c)) = rest.iter().next().map(|(w, c)| (w.clone(), *c)) {
            if !is_lyndon(&w) {
                return Err(Error::Numerical(format!("non-Lie remainder at word {w:?}")));
            }
            for (word, x) in bracket_expansion(&w, &mut memo) {
                wp_add(&mut rest, word, -(x * c));
            }
            terms.push((w, c));
        }
    }
    terms.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then(a.0.cmp(&b.0)));
    Ok(LieSeries { order, terms })
}

impl LieSeries {
    /// Evaluates the truncated series at numeric coefficient vectors.
    pub fn evaluate_numeric(&self, alg: &LieAlgebraSpec, x: &[Complex64], y: &[Complex64]) -> Result<Vec<Complex64>> {
        let mut memo: HashMap<Word, Vec<Complex64>> = HashMap::new();
        memo.insert(vec![0], x.to_vec());
        memo.insert(vec![1], y.to_vec());
        fn eval(w: &[u8], alg: &LieAlgebraSpec, memo: &mut HashMap<Word, Vec<Complex64>>) -> Result<Vec<Complex64>> {
            if let Some(v) = memo.get(w) {
                return Ok(v.clone());
            }
            let (u, v) = standard_factorization(w);
            let a = eval(&u, alg, memo)?;
            let b = eval(&v, alg, memo)?;
            let out = alg.commutator(&a, &b)?;
            memo.insert(w.to_vec(), out.clone());
            Ok(out)
        }
        let mut z = vec![Complex64::new(0.0, 0.0); alg.dim()];
        for (w, c) in &self.terms {
            let val = eval(w, alg, &mut memo)?;
            let cf = crate::exact::rational_to_f64(c);
            for (zk, vk) in z.iter_mut().zip(val) {
                *zk += vk * cf;
            }
        }
        Ok(z)
    }
}

/// Coefficient field for contracted series: exact Gaussian rationals or
/// complex floats.
pub trait BchScalar: Clone + PartialEq + Debug + Num + std::ops::Neg<Output = Self> {
    fn from_rational(q: &Rational) -> Self;
    fn from_c64(z: Complex64) -> Option<Self>;
    fn imag_unit() -> Self;
    fn to_c64(&self) -> Complex64;
    fn format(&self) -> String;
}

impl BchScalar for CRational {
    fn from_rational(q: &Rational) -> Self {
        CRational::new(*q, Rational::zero())
    }
    fn from_c64(z: Complex64) -> Option<Self> {
        rationalize_complex(z, 1_000_000)
    }
    fn imag_unit() -> Self {
        CRational::new(Rational::zero(), Rational::one())
    }
    fn to_c64(&self) -> Complex64 {
        to_c64(self)
    }
    fn format(&self) -> String {
        format_cq(self)
    }
}

impl BchScalar for Complex64 {
    fn from_rational(q: &Rational) -> Self {
        Complex64::new(crate::exact::rational_to_f64(q), 0.0)
    }
    fn from_c64(z: Complex64) -> Option<Self> {
        Some(z)
    }
    fn imag_unit() -> Self {
        Complex64::new(0.0, 1.0)
    }
    fn to_c64(&self) -> Complex64 {
        *self
    }
    fn format(&self) -> String {
        format!("{:.17e}{:+.17e}i", self.re, self.im)
    }
}

/// Polynomial in `2n` commuting variables with vector coefficients.
type VecPoly<S> = BTreeMap<Vec<u8>, Vec<S>>;

fn vp_add<S: BchScalar>(acc: &mut VecPoly<S>, m: Vec<u8>, v: Vec<S>) {
    if v.iter().all(|x| x.is_zero()) {
        return;
    }
    match acc.get_mut(&m) {
        Some(cur) => {
            for (c, x) in cur.iter_mut().zip(v) {
                *c = c.clone() + x;
            }
            if cur.iter().all(|x| x.is_zero()) {
                acc.remove(&m);
            }
        }
        None => {
            acc.insert(m, v);
        }
    }
}

/// `log(e^X e^Y)` with `X = Σ x_i T_i`, `Y = Σ y_i T_i`, truncated at `order`.
#[derive(Clone, Debug, PartialEq)]
pub struct BchSeries<S> {
    pub order: usize,
    /// Algebra dimension `n`; monomials have `2n` exponents `(x…, y…)`.
    pub dim: usize,
    /// Basis indices carried by the coefficient vectors.
    pub components: Vec<usize>,
    pub terms: BTreeMap<Vec<u8>, Vec<S>>,
}

fn constants_as<S: BchScalar>(alg: &LieAlgebraSpec) -> Option<Vec<S>> {
    alg.constants().iter().map(|&z| S::from_c64(z)).collect()
}

fn contract<S: BchScalar>(alg: &LieAlgebraSpec, consts: &[S], a: &VecPoly<S>, b: &VecPoly<S>) -> VecPoly<S> {
    let n = alg.dim();
    let mut out = VecPoly::new();
    for (ma, va) in a {
        for (mb, vb) in b {
            let m: Vec<u8> = ma.iter().zip(mb).map(|(p, q)| p + q).collect();
            let mut w = vec![S::zero(); n];
            for i in 0..n {
                if va[i].is_zero() {
                    continue;
                }
                for j in 0..n {
                    if vb[j].is_zero() {
                        continue;
                    }
                    let xy = va[i].clone() * vb[j].clone();
                    for (k, wk) in w.iter_mut().enumerate() {
                        let c = &consts[(i * n + j) * n + k];
                        if !c.is_zero() {
                            *wk = wk.clone() + xy.clone() * c.clone();
                        }
                    }
                }
            }
            vp_add(&mut out, m, w);
        }
    }
    out
}

fn build<S: BchScalar>(alg: &LieAlgebraSpec, order: usize, consts: Vec<S>) -> Result<BchSeries<S>> {
    let series = lie_series(order)?;
    let n = alg.dim();
    let generator = |offset: usize| {
        let mut p = VecPoly::new();
        for i in 0..n {
            let mut m = vec![0u8; 2 * n];
            m[offset + i] = 1;
            let mut v = vec![S::zero(); n];
            v[i] = S::one();
            p.insert(m, v);
        }
        p
    };
    let mut memo: HashMap<Word, VecPoly<S>> = HashMap::new();
    memo.insert(vec![0], generator(0));
    memo.insert(vec![1], generator(n));
    fn eval<S: BchScalar>(w: &[u8], alg: &LieAlgebraSpec, consts: &[S], memo: &mut HashMap<Word, VecPoly<S>>) -> VecPoly<S> {
        if let Some(p) = memo.get(w) {
            return p.clone();
        }
        let (u, v) = standard_factorization(w);
        let a = eval(&u, alg, consts, memo);
        let b = eval(&v, alg, consts, memo);
        let out = contract(alg, consts, &a, &b);
        memo.insert(w.to_vec(), out.clone());
        out
    }
    let mut terms = VecPoly::new();
    for (w, c) in &series.terms {
        let p = eval(w, alg, &consts, &mut memo);
        let cs = S::from_rational(c);
        for (m, v) in p {
            vp_add(&mut terms, m, v.into_iter().map(|x| x * cs.clone()).collect());
        }
    }
    Ok(BchSeries { order, dim: n, components: (0..n).collect(), terms })
}

/// Exact series; requires Gaussian-rational structure constants.
pub fn bch(alg: &LieAlgebraSpec, order: usize) -> Result<BchSeries<CRational>> {
    if order > MAX_ORDER {
        return Err(Error::UnsupportedOrder { order, max: MAX_ORDER });
    }
    let consts = constants_as::<CRational>(alg).ok_or_else(|| {
        Error::InvalidAlgebra(format!("{}: structure constants are not Gaussian rationals; use the floating-point series", alg.name))
    })?;
    build(alg, order, consts)
}

/// Same series over complex floats (e.g. su3, whose constants involve √3).
pub fn bch_float(alg: &LieAlgebraSpec, order: usize) -> Result<BchSeries<Complex64>> {
    if order > MAX_ORDER {
        return Err(Error::UnsupportedOrder { order, max: MAX_ORDER });
    }
    build(alg, order, alg.constants().to_vec())
}

fn monomial_name(m: &[u8], names: &dyn Fn(usize) -> String) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(names(i)),
            _ => parts.push(format!("{}^{e}", names(i))),
        }
    }
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

impl<S: BchScalar> BchSeries<S> {
    /// Terms of total degree `d`.
    pub fn degree_part(&self, d: usize) -> BTreeMap<Vec<u8>, Vec<S>> {
        self.terms
            .iter()
            .filter(|(m, _)| m.iter().map(|&e| e as usize).sum::<usize>() == d)
            .map(|(m, v)| (m.clone(), v.clone()))
            .collect()
    }

    /// Keeps only the listed basis components.
    pub fn project(&self, keep: &[usize]) -> BchSeries<S> {
        let pos: Vec<usize> = keep.iter().filter_map(|k| self.components.iter().position(|c| c == k)).collect();
        let mut terms = BTreeMap::new();
        for (m, v) in &self.terms {
            let w: Vec<S> = pos.iter().map(|&p| v[p].clone()).collect();
            if w.iter().any(|x| !x.is_zero()) {
                terms.insert(m.clone(), w);
            }
        }
        BchSeries { order: self.order, dim: self.dim, components: pos.iter().map(|&p| self.components[p]).collect(), terms }
    }

    pub fn evaluate(&self, x: &[Complex64], y: &[Complex64]) -> Vec<Complex64> {
        let vars: Vec<Complex64> = x.iter().chain(y).copied().collect();
        let mut out = vec![Complex64::new(0.0, 0.0); self.components.len()];
        for (m, v) in &self.terms {
            let mono: Complex64 = m.iter().zip(&vars).map(|(&e, &z)| z.powu(e as u32)).product();
            for (o, c) in out.iter_mut().zip(v) {
                *o += mono * c.to_c64();
            }
        }
        out
    }

    /// Substitutes `x_k = i s_k ξ_k`, `y_k = i s_k ξ'_k` (with `s_k = −1` on
    /// lowering indices) and returns the phase coordinates of `Z / i`.
    pub fn phase_specialize(&self, alg: &LieAlgebraSpec) -> PhaseSeries<S> {
        let n = self.dim;
        let sign = |k: usize| if alg.lowering.contains(&k) { -S::one() } else { S::one() };
        let mut terms: BTreeMap<Vec<u8>, Vec<S>> = BTreeMap::new();
        for (m, v) in &self.terms {
            let degree: usize = m.iter().map(|&e| e as usize).sum();
            let mut factor = S::one();
            for _ in 0..degree.saturating_sub(1) {
                factor = factor * S::imag_unit();
            }
            for (idx, &e) in m.iter().enumerate() {
                if e % 2 == 1 {
                    factor = factor * sign(idx % n);
                }
            }
            let w: Vec<S> = v
                .iter()
                .zip(&self.components)
                .map(|(c, &k)| c.clone() * factor.clone() * sign(k))
                .collect();
            terms.insert(m.clone(), w);
        }
        let names: Vec<String> = (0..n)
            .map(|k| match alg.role(k) {
                Some(crate::algebra::BasisRole::Raising(i)) => format!("u{}", i + 1),
                Some(crate::algebra::BasisRole::Lowering(i)) => format!("v{}", i + 1),
                Some(crate::algebra::BasisRole::Abelian(i)) => format!("l{}", i + 1),
                None => format!("z{k}"),
            })
            .collect();
        PhaseSeries { order: self.order, dim: n, components: self.components.clone(), names, terms }
    }

    /// JSON-ready view: component label → monomial in `x_i, y_j` → value.
    pub fn to_report(&self, alg: &LieAlgebraSpec) -> BTreeMap<String, BTreeMap<String, String>> {
        let n = self.dim;
        let names = |i: usize| if i < n { format!("x{}", i + 1) } else { format!("y{}", i - n + 1) };
        let mut out = BTreeMap::new();
        for (pos, &k) in self.components.iter().enumerate() {
            let mut comp = BTreeMap::new();
            for (m, v) in &self.terms {
                if !v[pos].is_zero() {
                    comp.insert(monomial_name(m, &names), v[pos].format());
                }
            }
            out.insert(alg.labels[k].clone(), comp);
        }
        out
    }
}

/// Deformed addition (non-abelian components) and deformed symplectic
/// product (abelian components) of a series.
pub fn deformed_ops<S: BchScalar>(series: &BchSeries<S>, alg: &LieAlgebraSpec) -> (BchSeries<S>, BchSeries<S>) {
    let roots: Vec<usize> = alg.raising.iter().chain(&alg.lowering).copied().collect();
    (series.project(&roots), series.project(&alg.abelian))
}

/// BCH series in phase coordinates: monomials over `(ξ_0..ξ_{n−1},
/// ξ'_0..ξ'_{n−1})` where `ξ_k` is the `u`, `v` or `λ` attached to basis
/// index `k`; values are the corresponding coordinates of `ξ ⊕ ξ'`.
#[derive(Clone, Debug, PartialEq)]
pub struct PhaseSeries<S> {
    pub order: usize,
    pub dim: usize,
    pub components: Vec<usize>,
    pub names: Vec<String>,
    pub terms: BTreeMap<Vec<u8>, Vec<S>>,
}

impl<S: BchScalar> PhaseSeries<S> {
    /// Component `k` (a basis index) as a map monomial → coefficient.
    pub fn component(&self, k: usize) -> BTreeMap<Vec<u8>, S> {
        let Some(pos) = self.components.iter().position(|&c| c == k) else {
            return BTreeMap::new();
        };
        self.terms
            .iter()
            .filter(|(_, v)| !v[pos].is_zero())
            .map(|(m, v)| (m.clone(), v[pos].clone()))
            .collect()
    }

    /// Drops monomials containing any of the listed variables (indices into
    /// the `2n` variables).
    pub fn set_zero(&self, vars: &[usize]) -> PhaseSeries<S> {
        let mut out = self.clone();
        out.terms.retain(|m, _| vars.iter().all(|&i| m[i] == 0));
        out
    }

    pub fn degree_part(&self, d: usize) -> PhaseSeries<S> {
        let mut out = self.clone();
        out.terms.retain(|m, _| m.iter().map(|&e| e as usize).sum::<usize>() == d);
        out
    }

    pub fn monomial_name(&self, m: &[u8]) -> String {
        let n = self.dim;
        let names = |i: usize| if i < n { self.names[i].clone() } else { format!("{}'", self.names[i - n]) };
        monomial_name(m, &names)
    }
}

type ExactPoly = BTreeMap<Vec<u8>, CRational>;

fn poly_mul(a: &ExactPoly, b: &ExactPoly) -> ExactPoly {
    let mut out = ExactPoly::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            let m: Vec<u8> = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
            let e = out.entry(m.clone()).or_insert_with(CRational::zero);
            *e += ca * cb;
            if e.is_zero() {
                out.remove(&m);
            }
        }
    }
    out
}

fn poly_var(n_vars: usize, i: usize, c: CRational) -> ExactPoly {
    let mut m = vec![0u8; n_vars];
    m[i] = 1;
    ExactPoly::from([(m, c)])
}

fn poly_add(a: &ExactPoly, b: &ExactPoly) -> ExactPoly {
    let mut out = a.clone();
    for (m, c) in b {
        let e = out.entry(m.clone()).or_insert_with(CRational::zero);
        *e += c;
        if e.is_zero() {
            out.remove(m);
        }
    }
    out
}

/// Cubic term of `ξ ⊕ ξ'` for a rank-one algebra on the slice `λ = λ' = 0`.
#[derive(Clone, Debug, Serialize)]
pub struct CubicTermReport {
    /// Coordinate name → monomial → exact coefficient.
    pub computed: BTreeMap<String, BTreeMap<String, String>>,
    /// Against `⅓(ξ∧ξ')(ξ' − ξ)` with `ξ∧ξ' = uv' − vu'`.
    pub literal_matches: bool,
    /// Against `⅓(ξ∧ξ') J(ξ' − ξ)`, `J(x, y) = (−y, x)`.
    pub rotated_matches: bool,
}

pub fn cubic_term_report(alg: &LieAlgebraSpec) -> Result<CubicTermReport> {
    if alg.raising.len() != 1 || alg.lowering.len() != 1 || alg.abelian.len() != 1 {
        return Err(Error::InvalidAlgebra(format!("{} is not a rank-one algebra with one root pair", alg.name)));
    }
    let (iu, iv, il) = (alg.raising[0], alg.lowering[0], alg.abelian[0]);
    let n = alg.dim();
    let phase = bch(alg, 3)?.phase_specialize(alg).degree_part(3).set_zero(&[il, n + il]);
    let var = |i: usize, c: i128| poly_var(2 * n, i, crate::exact::cq(c, 0));
    let wedge = poly_add(&poly_mul(&var(iu, 1), &var(n + iv, 1)), &poly_mul(&var(iv, 1), &var(n + iu, -1)));
    let third = ExactPoly::from([(vec![0u8; 2 * n], crate::exact::frac(1, 3))]);
    let w3 = poly_mul(&wedge, &third);
    let du = poly_add(&var(n + iu, 1), &var(iu, -1));
    let dv = poly_add(&var(n + iv, 1), &var(iv, -1));
    let neg = |p: &ExactPoly| p.iter().map(|(m, c)| (m.clone(), -c)).collect::<ExactPoly>();
    let literal = [(iu, poly_mul(&w3, &du)), (iv, poly_mul(&w3, &dv))];
    let rotated = [(iu, poly_mul(&w3, &neg(&dv))), (iv, poly_mul(&w3, &du))];
    let got = |k: usize| -> ExactPoly { phase.component(k).into_iter().collect() };
    let mut computed = BTreeMap::new();
    for &k in &[iu, iv] {
        let comp = got(k).iter().map(|(m, c)| (phase.monomial_name(m), format_cq(c))).collect();
        computed.insert(phase.names[k].clone(), comp);
    }
    Ok(CubicTermReport {
        computed,
        literal_matches: literal.iter().all(|(k, p)| &got(*k) == p),
        rotated_matches: rotated.iter().all(|(k, p)| &got(*k) == p),
    })
}

/// Result of composing two translations numerically.
#[derive(Clone, Debug, Serialize)]
pub struct DeformedSum {
    /// Non-abelian coordinates of the product, with `λ` set to the phase.
    pub xi: PhasePoint<Complex64>,
    /// Abelian coefficients of the logarithm.
    pub cartan_phase: Vec<Complex64>,
    /// `‖Π(ξ)Π(ξ') − exp(i Σ c_k M_k)‖_max`.
    pub residual: f64,
}

/// Least-squares coefficients of `m` over the representation matrices.
pub fn decompose_over_basis(rep: &Representation, m: &CMatrix) -> Result<Vec<Complex64>> {
    let n = rep.matrices.len();
    let d2 = rep.d() * rep.d();
    let a = CMatrix::from_fn(d2, n, |r, col| rep.matrices[col][(r / rep.d(), r % rep.d())]);
    let b = CMatrix::from_fn(d2, 1, |r, _| m[(r / rep.d(), r % rep.d())]);
    let ah = a.adjoint();
    let normal = &ah * &a;
    let rhs = &ah * &b;
    let sol = normal
        .lu()
        .solve(&rhs)
        .ok_or_else(|| Error::Numerical("representation matrices are linearly dependent".into()))?;
    Ok(sol.iter().copied().collect())
}

/// `Π(ξ)Π(ξ') = exp(i Σ c_k M_k)` solved for `c` through the principal
/// logarithm.
pub fn numeric_deformed_add<T: Copy + Into<Complex64>>(
    alg: &LieAlgebraSpec,
    rep: &Representation,
    xi: &PhasePoint<T>,
    xi2: &PhasePoint<T>,
) -> Result<DeformedSum> {
    let p = translation_operator(alg, rep, xi)? * translation_operator(alg, rep, xi2)?;
    let log = linalg::logm(&p)?;
    let coeffs: Vec<Complex64> = decompose_over_basis(rep, &(log * Complex64::new(0.0, -1.0)))?;
    let rebuilt = linalg::expm(&(rep.represent(&coeffs)? * Complex64::new(0.0, 1.0)));
    let residual = linalg::max_abs_diff(&rebuilt, &p);
    if residual > 1e-10 {
        return Err(Error::Numerical(format!("logarithm leaves the algebra span (residual {residual:.3e})")));
    }
    let xi_out = PhasePoint::from_coefficients(alg, &coeffs)?;
    let cartan_phase = xi_out.lambda.clone();
    Ok(DeformedSum { xi: xi_out, cartan_phase, residual })
}
