//! Clifford algebras `C(r,s)` with Grassmann-valued coordinates.
//!
//! Gammas satisfy `{γ_a, γ_b} = 2η_ab` with `η = diag(+1 × r, −1 × s)`. The
//! coordinates anticommute with every `γ_a`, so the grading is the chirality
//! element, which exists only for even `r + s`.
//!
//! `C(1,3)` uses the Dirac basis `γ⁰ = diag(1,1,−1,−1)`,
//! `γ^k = [[0, σ_k], [−σ_k, 0]]`, `γ⁵ = iγ⁰γ¹γ²γ³` and
//! `σ^{mn} = (i/2)[γ^m, γ^n]`. Its translation slots are
//! `1, γ⁵, γ^m, γ⁵γ^m, σ^{mn} (m<n)`; decomposition uses
//! `1, γ⁵, γ^m, γ^mγ⁵, σ^{mn}`, the vector-axial slots differing by a sign.
//!
//! A full translation over 16 generators has up to `2^16` monomials, so
//! translations take a degree bound; products of truncated factors are exact
//! up to that degree.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{cq, format_cq, frac, i_unit, CRational};
use crate::grassmann::{GrassmannElement, MixedElement, QMatrix};

#[derive(Clone, Debug)]
pub struct BasisElement {
    pub name: String,
    pub matrix: QMatrix,
    /// `B^{-1}`, so the component along `B` is `Tr(x B^{-1}) / dim`.
    pub dual: QMatrix,
}

#[derive(Clone, Debug)]
pub struct CliffordSpec {
    pub r: usize,
    pub s: usize,
    pub gammas: Vec<QMatrix>,
    pub metric: Vec<i128>,
    pub grading: QMatrix,
    /// Slots multiplying the coordinates in the translation operator.
    pub slots: Vec<BasisElement>,
    /// Basis used by `decompose`.
    pub basis: Vec<BasisElement>,
}

fn pauli(k: usize) -> QMatrix {
    let (o, z, i) = (cq(1, 0), cq(0, 0), i_unit());
    match k {
        0 => QMatrix::identity(2),
        1 => QMatrix::from_rows(2, &[z, o, o, z]),
        2 => QMatrix::from_rows(2, &[z, -i, i, z]),
        _ => QMatrix::from_rows(2, &[o, z, z, -o]),
    }
}

fn kron(a: &QMatrix, b: &QMatrix) -> QMatrix {
    let (n, m) = (a.n(), b.n());
    let mut out = QMatrix::zeros(n * m);
    for i in 0..n {
        for j in 0..n {
            for k in 0..m {
                for l in 0..m {
                    out.set(i * m + k, j * m + l, a.get(i, j) * b.get(k, l));
                }
            }
        }
    }
    out
}

/// Inverse of a matrix whose square is `±1`.
fn involutive_inverse(b: &QMatrix) -> Result<QMatrix> {
    let sq = b.mul(b).as_scalar().ok_or_else(|| Error::Shape("basis element does not square to a scalar".into()))?;
    if sq.is_zero() {
        return Err(Error::Shape("nilpotent basis element".into()));
    }
    Ok(b.scale(CRational::one() / sq))
}

fn element(name: impl Into<String>, matrix: QMatrix) -> Result<BasisElement> {
    let dual = involutive_inverse(&matrix)?;
    Ok(BasisElement { name: name.into(), matrix, dual })
}

/// `(m, n)` pairs with `m < n` in the order used for `σ^{mn}` slots.
pub fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|m| (m + 1..n).map(move |k| (m, k))).collect()
}

impl CliffordSpec {
    pub fn new(r: usize, s: usize) -> Result<Self> {
        if (r, s) == (1, 3) {
            return Self::dirac();
        }
        let n = r + s;
        if n % 2 == 1 {
            return Err(Error::Shape(format!(
                "C({r},{s}) has odd rank; no grading anticommutes with every generator"
            )));
        }
        if n > 6 {
            return Err(Error::Shape(format!("C({r},{s}) exceeds the supported rank 6")));
        }
        let k = n / 2;
        let mut gammas = Vec::new();
        for j in 0..k {
            for p in [1, 2] {
                let mut m = QMatrix::identity(1);
                for slot in 0..k {
                    let f = if slot < j { pauli(3) } else if slot == j { pauli(p) } else { pauli(0) };
                    m = kron(&m, &f);
                }
                gammas.push(m);
            }
        }
        let metric: Vec<i128> = (0..n).map(|a| if a < r { 1 } else { -1 }).collect();
        for (g, eta) in gammas.iter_mut().zip(&metric) {
            if *eta < 0 {
                *g = g.scale(i_unit());
            }
        }
        let dim = 1usize << k;
        let mut chir = QMatrix::identity(dim);
        for g in &gammas {
            chir = chir.mul(g);
        }
        if chir.mul(&chir).as_scalar() == Some(-CRational::one()) {
            chir = chir.scale(i_unit());
        }
        let mut basis = Vec::new();
        for subset in 0u32..(1 << n) {
            let mut m = QMatrix::identity(dim);
            let mut name = String::new();
            for a in 0..n {
                if subset >> a & 1 == 1 {
                    m = m.mul(&gammas[a]);
                    name.push_str(&format!("g{a}"));
                }
            }
            basis.push(element(if name.is_empty() { "1".to_string() } else { name }, m)?);
        }
        let spec = CliffordSpec { r, s, gammas, metric, grading: chir, slots: basis.clone(), basis };
        spec.validate()?;
        Ok(spec)
    }

    /// `C(1,3)` in the Dirac basis.
    pub fn dirac() -> Result<Self> {
        let mut gammas = vec![kron(&pauli(3), &pauli(0))];
        let eps = QMatrix::from_rows(2, &[cq(0, 0), cq(1, 0), cq(-1, 0), cq(0, 0)]);
        for k in 1..=3 {
            gammas.push(kron(&eps, &pauli(k)));
        }
        let g5 = gammas.iter().fold(QMatrix::identity(4), |acc, g| acc.mul(g)).scale(i_unit());
        let sigma = |m: usize, n: usize| {
            gammas[m].mul(&gammas[n]).sub(&gammas[n].mul(&gammas[m])).scale(frac(1, 2) * i_unit())
        };
        let mut slots = vec![element("1", QMatrix::identity(4))?, element("g5", g5.clone())?];
        let mut basis = slots.clone();
        for m in 0..4 {
            slots.push(element(format!("g{m}"), gammas[m].clone())?);
            basis.push(element(format!("g{m}"), gammas[m].clone())?);
        }
        for m in 0..4 {
            slots.push(element(format!("g5g{m}"), g5.mul(&gammas[m]))?);
            basis.push(element(format!("g{m}g5"), gammas[m].mul(&g5))?);
        }
        for (m, n) in pairs(4) {
            slots.push(element(format!("s{m}{n}"), sigma(m, n))?);
            basis.push(element(format!("s{m}{n}"), sigma(m, n))?);
        }
        let spec = CliffordSpec { r: 1, s: 3, gammas, metric: vec![1, -1, -1, -1], grading: g5, slots, basis };
        spec.validate()?;
        Ok(spec)
    }

    fn validate(&self) -> Result<()> {
        let d = self.dim();
        for (a, ga) in self.gammas.iter().enumerate() {
            for (b, gb) in self.gammas.iter().enumerate() {
                let anti = ga.mul(gb).add(&gb.mul(ga));
                let want = if a == b { QMatrix::identity(d).scale(cq(2 * self.metric[a], 0)) } else { QMatrix::zeros(d) };
                if anti != want {
                    return Err(Error::Shape(format!("gammas {a},{b} violate the Clifford relation")));
                }
            }
            if ga.mul(&self.grading).add(&self.grading.mul(ga)) != QMatrix::zeros(d) {
                return Err(Error::Shape(format!("grading commutes with gamma {a}")));
            }
        }
        if self.grading.mul(&self.grading) != QMatrix::identity(d) {
            return Err(Error::Shape("grading does not square to one".into()));
        }
        Ok(())
    }

    /// Matrix size `2^{(r+s)/2}`.
    pub fn dim(&self) -> usize {
        self.grading.n()
    }

    pub fn n_slots(&self) -> usize {
        self.slots.len()
    }
}

/// `dim Γ = 2^{r+s} − 1`.
pub fn clifford_phase_space_dim(r: usize, s: usize) -> u64 {
    (1u64 << (r + s)) - 1
}

/// Coordinates `sign · θ_{offset + k}` for every slot `k`.
pub fn slot_generators(spec: &CliffordSpec, offset: usize, n_gen: usize, sign: i128) -> Result<Vec<GrassmannElement>> {
    (0..spec.n_slots()).map(|k| Ok(GrassmannElement::generator(n_gen, offset + k)?.scale(cq(sign, 0)))).collect()
}

/// `exp(i ξ_I Γ^I)` keeping Grassmann degrees `≤ max_degree`.
pub fn clifford_translation(spec: &CliffordSpec, xi: &[GrassmannElement], max_degree: u32) -> Result<MixedElement> {
    if xi.len() != spec.n_slots() {
        return Err(Error::DimensionMismatch { expected: spec.n_slots(), found: xi.len() });
    }
    let n_gen = xi.first().map(|x| x.n_gen()).unwrap_or(0);
    let mut x = MixedElement::zero(n_gen, &spec.grading);
    for (c, slot) in xi.iter().zip(&spec.slots) {
        if !c.even_part().is_zero() {
            return Err(Error::NotOdd(format!("coordinate for slot {}", slot.name)));
        }
        x = x.add(&MixedElement::from_parts(&c.scale(i_unit()), &slot.matrix, &spec.grading)?)?;
    }
    x.exp(max_degree)
}

pub type Components = Vec<(String, GrassmannElement)>;

/// Components along `spec.basis`: `c_B = Tr(x B^{-1}) / dim`.
pub fn clifford_decompose(spec: &CliffordSpec, x: &MixedElement) -> Result<Components> {
    if x.d() != spec.dim() {
        return Err(Error::Shape(format!("{}x{} element for a {}-dim representation", x.d(), x.d(), spec.dim())));
    }
    let norm = frac(1, spec.dim() as i128);
    Ok(spec.basis.iter().map(|b| (b.name.clone(), x.trace_with(&b.dual).scale(norm))).collect())
}

pub fn clifford_reassemble(spec: &CliffordSpec, comps: &Components) -> Result<MixedElement> {
    let n_gen = comps.first().map(|(_, c)| c.n_gen()).unwrap_or(0);
    let mut out = MixedElement::zero(n_gen, &spec.grading);
    for ((_, c), b) in comps.iter().zip(&spec.basis) {
        out = out.add(&MixedElement::from_parts(c, &b.matrix, &spec.grading)?)?;
    }
    Ok(out)
}

/// Components of `Π(ξ)Π(ξ')` with `ξ` on generators `0..n` and `ξ'` on
/// `n..2n`, exact up to `max_degree`.
pub fn clifford_sigma(spec: &CliffordSpec, max_degree: u32) -> Result<Components> {
    let n = spec.n_slots();
    let p = clifford_translation(spec, &slot_generators(spec, 0, 2 * n, 1)?, max_degree)?;
    let q = clifford_translation(spec, &slot_generators(spec, n, 2 * n, 1)?, max_degree)?;
    clifford_decompose(spec, &p.mul_truncated(&q, max_degree)?)
}

/// `K(ξ,ξ') = Tr(Π(ξ)Π(ξ')) / dim` for coordinate blocks at the given
/// generator offsets and signs.
pub fn clifford_kernel(spec: &CliffordSpec, a: (usize, i128), b: (usize, i128), n_gen: usize, max_degree: u32) -> Result<GrassmannElement> {
    let p = clifford_translation(spec, &slot_generators(spec, a.0, n_gen, a.1)?, max_degree)?;
    let q = clifford_translation(spec, &slot_generators(spec, b.0, n_gen, b.1)?, max_degree)?;
    Ok(p.mul_truncated(&q, max_degree)?.trace().scale(frac(1, spec.dim() as i128)))
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct DeltaCheck {
    pub max_degree: u32,
    /// Degrees `0..=max_degree` at which both sides agree.
    pub agreeing_degrees: Vec<u32>,
    pub first_failing_degree: Option<u32>,
    pub lhs_degree0: String,
    pub rhs_degree0: String,
    pub holds: bool,
}

fn degree_part(x: &GrassmannElement, d: u32) -> GrassmannElement {
    GrassmannElement::from_terms(x.n_gen(), x.terms().filter(|(m, _)| m.count_ones() == d).map(|(m, c)| (m, *c)))
}

/// Compares `Tr(Π(ξ)Π(ξ')Π(ξ''))/dim` with `K(ξ,ξ') + K(ξ',ξ'') + K(−ξ,ξ'')`
/// degree by degree.
pub fn clifford_delta_check(spec: &CliffordSpec, max_degree: u32) -> Result<DeltaCheck> {
    let n = spec.n_slots();
    let n_gen = 3 * n;
    if n_gen > crate::grassmann::MAX_GENERATORS {
        return Err(Error::Shape(format!("{n_gen} generators exceed the Grassmann limit")));
    }
    let pi = |offset| clifford_translation(spec, &slot_generators(spec, offset, n_gen, 1)?, max_degree);
    let lhs = pi(0)?
        .mul_truncated(&pi(n)?, max_degree)?
        .mul_truncated(&pi(2 * n)?, max_degree)?
        .trace()
        .scale(frac(1, spec.dim() as i128));
    let rhs = clifford_kernel(spec, (0, 1), (n, 1), n_gen, max_degree)?
        .add(&clifford_kernel(spec, (n, 1), (2 * n, 1), n_gen, max_degree)?)?
        .add(&clifford_kernel(spec, (0, -1), (2 * n, 1), n_gen, max_degree)?)?;
    let agreeing: Vec<u32> = (0..=max_degree).filter(|&d| degree_part(&lhs, d) == degree_part(&rhs, d)).collect();
    let first_failing = (0..=max_degree).find(|d| !agreeing.contains(d));
    Ok(DeltaCheck {
        max_degree,
        first_failing_degree: first_failing,
        holds: first_failing.is_none(),
        agreeing_degrees: agreeing,
        lhs_degree0: format_cq(&lhs.coeff(0)),
        rhs_degree0: format_cq(&rhs.coeff(0)),
    })
}

// Printed C(1,3) formulas. Coordinates: ξ₀ = slot 0, ξ̃₀ = 1, ξ_m = 2+m,
// ξ̃_m = 6+m, ξ_mn = 10 + pair index; primed coordinates shifted by 16.

const ETA: [i128; 4] = [1, -1, -1, -1];

fn eta(a: usize, b: usize) -> i128 {
    if a == b { ETA[a] } else { 0 }
}

fn delta(a: usize, b: usize) -> i128 {
    (a == b) as i128
}

/// `ε^{mnpq}` with `ε^{0123} = +1`.
fn eps_up(idx: [usize; 4]) -> i128 {
    let mut v = idx;
    for i in 0..4 {
        for j in i + 1..4 {
            if v[i] == v[j] {
                return 0;
            }
        }
    }
    let mut sign = 1;
    for i in 0..4 {
        for j in 0..3 - i {
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    sign
}

struct Coords {
    n_gen: usize,
    shift: usize,
}

impl Coords {
    fn gen(&self, slot: usize) -> GrassmannElement {
        GrassmannElement::generator(self.n_gen, self.shift + slot).expect("slot in range")
    }
    fn xt0(&self) -> GrassmannElement {
        self.gen(1)
    }
    fn x(&self, m: usize) -> GrassmannElement {
        self.gen(2 + m)
    }
    fn xt(&self, m: usize) -> GrassmannElement {
        self.gen(6 + m)
    }
    /// `ξ_mn`, antisymmetric in `m, n`.
    fn xx(&self, m: usize, n: usize) -> GrassmannElement {
        if m == n {
            return GrassmannElement::zero(self.n_gen);
        }
        let (a, b, s) = if m < n { (m, n, 1) } else { (n, m, -1) };
        let k = pairs(4).iter().position(|&p| p == (a, b)).expect("pair");
        self.gen(10 + k).scale(cq(s, 0))
    }
}

fn bil(a: &GrassmannElement, b: &GrassmannElement) -> GrassmannElement {
    a.gmul(b).expect("same generator count")
}

fn acc(sum: &mut GrassmannElement, c: CRational, term: GrassmannElement) {
    if !c.is_zero() {
        *sum = sum.add(&term.scale(c)).expect("same generator count");
    }
}

/// The printed `Σ` components of `C(1,3)`, named as in `CliffordSpec::basis`.
pub fn printed_sigma() -> Components {
    let n_gen = 32;
    let (u, w) = (Coords { n_gen, shift: 0 }, Coords { n_gen, shift: 16 });
    let four_i = cq(0, 4);
    let idx = 0..4usize;
    let mut out = Vec::new();

    let mut s0 = bil(&u.xt0(), &w.xt0());
    let mut st0 = GrassmannElement::zero(n_gen);
    for m in idx.clone() {
        for n in idx.clone() {
            for p in idx.clone() {
                for q in idx.clone() {
                    let c = eta(m, p) * eta(n, q) - eta(m, q) * eta(n, p);
                    acc(&mut s0, -four_i * cq(c, 0), bil(&u.xx(m, n), &w.xx(p, q)));
                    acc(&mut st0, -four_i * cq(eps_up([m, n, p, q]), 0), bil(&u.xx(m, n), &w.xx(p, q)));
                }
            }
        }
    }
    out.push(("1".to_string(), s0));
    out.push(("g5".to_string(), st0));

    // ε^{npq}_m = ε^{npqr} η_rm
    let eps_m = |n: usize, p: usize, q: usize, m: usize| eps_up([n, p, q, m]) * ETA[m];
    let mut vec_parts = Vec::new();
    let mut axial_parts = Vec::new();
    for m in idx.clone() {
        let mut sm = bil(&u.xt0(), &w.xt(m)).scale(cq(-1, 0)).add(&bil(&u.xt(m), &w.xt0())).unwrap();
        let mut stm = bil(&u.xt0(), &w.x(m)).scale(cq(-1, 0)).add(&bil(&u.x(m), &w.xt0())).unwrap();
        for n in idx.clone() {
            for p in idx.clone() {
                for q in idx.clone() {
                    let tens = eta(n, p) * delta(q, m) - eta(n, q) * delta(p, m);
                    let e = eps_m(n, p, q, m);
                    let vp = bil(&u.x(n), &w.xx(p, q)).add(&bil(&u.xx(p, q), &w.x(n))).unwrap();
                    let ap = bil(&u.xt(n), &w.xx(p, q)).add(&bil(&u.xx(p, q), &w.xt(n))).unwrap();
                    let vm = bil(&u.x(n), &w.xx(p, q)).sub(&bil(&u.xx(p, q), &w.x(n))).unwrap();
                    acc(&mut sm, four_i * cq(tens, 0), vp);
                    acc(&mut sm, -four_i * cq(e, 0), ap.clone());
                    acc(&mut stm, -four_i * cq(e, 0), vm);
                    acc(&mut stm, four_i * cq(tens, 0), ap);
                }
            }
        }
        vec_parts.push((format!("g{m}"), sm));
        axial_parts.push((format!("g{m}g5"), stm));
    }
    out.extend(vec_parts);
    out.extend(axial_parts);

    for (m, n) in pairs(4) {
        let mut smn = GrassmannElement::zero(n_gen);
        for p in idx.clone() {
            for q in idx.clone() {
                // ε_{mn}^{pq} = η_ma η_nb ε^{abpq}
                let e = ETA[m] * ETA[n] * eps_up([m, n, p, q]);
                let t = bil(&u.xx(p, q), &w.xt0()).add(&bil(&u.xt0(), &w.xx(p, q))).unwrap();
                acc(&mut smn, four_i * cq(e, 0), t);
                for r in idx.clone() {
                    for s in idx.clone() {
                        let c = eta(p, q) * eta(r, s) * eta(m, n) - eta(q, r) * delta(s, m) * delta(p, n)
                            + eta(r, s) * delta(p, m) * delta(q, n)
                            - eta(s, p) * delta(q, m) * delta(r, n);
                        acc(&mut smn, four_i * cq(c, 0), bil(&u.xx(p, q), &w.xx(r, s)));
                    }
                }
            }
        }
        out.push((format!("s{m}{n}"), smn));
    }
    out
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct SigmaComparison {
    pub component: String,
    /// Part of the exact component bilinear in `ξ` and `ξ'`.
    pub computed_bilinear: String,
    pub printed: String,
    pub matches: bool,
}

/// Per-component comparison of the printed `Σ` formulas with the bilinear
/// part of the exact product `Π(ξ)Π(ξ')` in `C(1,3)`.
pub fn sigma_report() -> Result<Vec<SigmaComparison>> {
    let spec = CliffordSpec::dirac()?;
    let exact = clifford_sigma(&spec, 2)?;
    let printed = printed_sigma();
    let low: u64 = (1 << 16) - 1;
    let names = coordinate_names();
    let names: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    Ok(exact
        .iter()
        .zip(&printed)
        .map(|((name, c), (pname, p))| {
            debug_assert_eq!(name, pname);
            let bilinear = GrassmannElement::from_terms(
                c.n_gen(),
                c.terms().filter(|(m, _)| (m & low).count_ones() == 1 && (m & !low).count_ones() == 1).map(|(m, v)| (m, *v)),
            );
            SigmaComparison {
                component: name.clone(),
                computed_bilinear: bilinear.format_with(&names),
                printed: p.format_with(&names),
                matches: &bilinear == p,
            }
        })
        .collect())
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct TranslationComparison {
    pub component: String,
    /// Degree `≤ 1` part of the exact component.
    pub computed_linear: String,
    pub printed: String,
    pub linear_matches: bool,
    /// Whether the exact component carries terms of degree `≥ 2`.
    pub has_higher_terms: bool,
}

/// Compares the components of `Π(ξ)` in `C(1,3)` (exact to degree 2) with
/// the printed list `Π₀ = 1 + iξ₀, Π̃₀ = ξ̃₀, Π_m = ξ_m, Π̃_m = ξ̃_m, Π_mn = ξ_mn`.
pub fn translation_report() -> Result<Vec<TranslationComparison>> {
    let spec = CliffordSpec::dirac()?;
    let n = 16;
    let p = clifford_translation(&spec, &slot_generators(&spec, 0, n, 1)?, 2)?;
    let names = coordinate_names();
    let names: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let one = CRational::one();
    Ok(clifford_decompose(&spec, &p)?
        .into_iter()
        .enumerate()
        .map(|(k, (name, c))| {
            // Printed forms carry the slot's own coordinate with unit factor.
            let mut printed = GrassmannElement::generator(n, k).expect("slot").scale(if k == 0 { i_unit() } else { one });
            if k == 0 {
                printed = printed.add(&GrassmannElement::one(n)).expect("same size");
            }
            let linear = c.truncate(1);
            TranslationComparison {
                component: name,
                computed_linear: linear.format_with(&names),
                printed: printed.format_with(&names),
                linear_matches: linear == printed,
                has_higher_terms: c.degree() >= 2,
            }
        })
        .collect())
}

/// Display names of the 32 coordinates of `ξ, ξ'` in `C(1,3)`.
pub fn coordinate_names() -> Vec<String> {
    let mut base = vec!["x0".to_string(), "xt0".to_string()];
    base.extend((0..4).map(|m| format!("x_{m}")));
    base.extend((0..4).map(|m| format!("xt_{m}")));
    base.extend(pairs(4).iter().map(|(m, n)| format!("x_{m}{n}")));
    let primed: Vec<String> = base.iter().map(|s| format!("{s}'")).collect();
    base.extend(primed);
    base
}
