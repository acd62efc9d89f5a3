//! Invariant batteries behind `phasekit verify`.
//!
//! A report holds checks (residual against tolerance; the report passes iff
//! all pass) and findings: comparisons with printed closed forms that are
//! recorded either way and never fail the report.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{direct_sum, AlgebraRegistry, RegistryEntry};
use crate::bch::{bch_float, cubic_term_report, numeric_deformed_add};
use crate::clifford::{self, CliffordSpec};
use crate::error::{Error, Result};
use crate::exact::cq;
use crate::fermion;
use crate::grassmann::{GrassmannElement, MixedElement, QMatrix};
use crate::group::{self, FiniteGroup, GroupAlgebraElement};
use crate::linalg::{self, c, CMatrix};
use crate::moyal::{moyal_bracket, poisson_bracket, star_product, Monomial, PhasePolynomial};
use crate::weyl::{dmatrix_symbol, loop_point, loop_translation, su3, translation_operator, PhasePoint, WeylContext};

pub const SUITES: [&str; 9] = ["weyl", "moyal", "bch", "loops", "directsum", "su3", "fermion", "clifford", "group"];
pub const DEFAULT_SEED: u64 = 7;

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub id: String,
    pub anchor: String,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Finding {
    pub anchor: String,
    pub description: String,
    pub agrees: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub algebra: String,
    pub seed: u64,
    pub checks: Vec<Check>,
    pub findings: Vec<Finding>,
    pub pass: bool,
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    pub seed: u64,
    /// Replaces every non-exact tolerance.
    pub tolerance: Option<f64>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { seed: DEFAULT_SEED, tolerance: None }
    }
}

struct Builder {
    checks: Vec<Check>,
    findings: Vec<Finding>,
    tolerance: Option<f64>,
}

impl Builder {
    fn new(opts: &VerifyOptions) -> Self {
        Builder { checks: Vec::new(), findings: Vec::new(), tolerance: opts.tolerance }
    }

    fn check(&mut self, id: &str, anchor: &str, residual: f64, tolerance: f64) {
        let tol = if tolerance > 0.0 { self.tolerance.unwrap_or(tolerance) } else { 0.0 };
        self.checks.push(Check { id: id.into(), anchor: anchor.into(), residual, tolerance: tol, pass: residual <= tol });
    }

    fn exact(&mut self, id: &str, anchor: &str, holds: bool) {
        self.check(id, anchor, if holds { 0.0 } else { 1.0 }, 0.0);
    }

    fn finding(&mut self, anchor: &str, description: impl Into<String>, agrees: bool) {
        self.findings.push(Finding { anchor: anchor.into(), description: description.into(), agrees });
    }
}

fn random_matrix(d: usize, rng: &mut ChaCha8Rng) -> CMatrix {
    CMatrix::from_fn(d, d, |_, _| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
}

fn random_hermitian(d: usize, rng: &mut ChaCha8Rng) -> CMatrix {
    let a = random_matrix(d, rng);
    (&a + a.adjoint()) * c(0.5, 0.0)
}

fn max_of(it: impl Iterator<Item = f64>) -> f64 {
    it.fold(0.0, f64::max)
}

/// Runs one suite, or every suite for `"all"`.
pub fn run(suite: &str, registry: &AlgebraRegistry, algebra: &str, opts: &VerifyOptions) -> Result<VerificationReport> {
    let entry = registry.get(algebra)?;
    let mut b = Builder::new(opts);
    let names: Vec<&str> = if suite == "all" {
        SUITES.to_vec()
    } else if SUITES.contains(&suite) {
        vec![suite]
    } else {
        return Err(Error::Shape(format!("unknown suite {suite:?}; expected one of {} or all", SUITES.join(", "))));
    };
    for name in names {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        let before = b.checks.len();
        let outcome = match name {
            "weyl" => weyl_suite(&mut b, entry, &mut rng),
            "moyal" => moyal_suite(&mut b, &mut rng),
            "bch" => bch_suite(&mut b, entry, &mut rng),
            "loops" => loops_suite(&mut b, entry, &mut rng),
            "directsum" => directsum_suite(&mut b, registry, &mut rng),
            "su3" => su3_suite(&mut b, &mut rng),
            "fermion" => fermion_suite(&mut b),
            "clifford" => clifford_suite(&mut b, &mut rng),
            _ => group_suite(&mut b, &mut rng),
        };
        match outcome {
            Ok(()) => {}
            // Under "all", algebra-specific suites that do not apply are noted.
            Err(e @ (Error::OutOfChart { .. } | Error::UnknownRepresentation { .. })) if suite == "all" => {
                b.finding(name, format!("suite skipped for {algebra}: {e}"), true);
            }
            Err(e) => return Err(e),
        }
        for chk in &mut b.checks[before..] {
            chk.id = format!("{name}/{}", chk.id);
        }
    }
    let pass = b.checks.iter().all(|c| c.pass);
    Ok(VerificationReport { suite: suite.into(), algebra: algebra.into(), seed: opts.seed, checks: b.checks, findings: b.findings, pass })
}

fn weyl_suite(b: &mut Builder, entry: &RegistryEntry, rng: &mut ChaCha8Rng) -> Result<()> {
    if entry.reps.is_empty() {
        return Err(Error::UnknownRepresentation { algebra: entry.spec.name.clone(), selector: "<any>".into() });
    }
    let ctx = WeylContext::for_entry(entry, None, None, rng.gen())?;
    let d = ctx.rep.d();
    let samples = if d <= 2 { 100 } else { 20 };
    let one = ctx.symbol(&linalg::identity(d))?;
    b.check("identity-symbol", "identity-maps-to-one", max_of(one.values.iter().map(|v| (v - c(1.0, 0.0)).norm())), 1e-10);
    let mut rt = 0.0f64;
    for _ in 0..samples {
        let a = random_hermitian(d, rng);
        rt = rt.max(linalg::max_abs_diff(&ctx.inverse(&ctx.symbol(&a)?)?, &a));
    }
    b.check("round-trip", "weyl-inverse-round-trip", rt, 1e-8);
    let mut ov = 0.0f64;
    for _ in 0..50 {
        let (x, y) = (random_hermitian(d, rng), random_hermitian(d, rng));
        let lhs = linalg::trace_product(&x, &y);
        ov = ov.max((lhs - ctx.overlap(&ctx.symbol(&x)?, &ctx.symbol(&y)?)?).norm());
    }
    b.check("overlap", "expectation-values-as-overlaps", ov, 1e-6);
    // Tight frames reproduce symbols; otherwise products go through the inverse.
    let probe = ctx.symbol(&random_matrix(d, rng))?;
    let tight = ctx.reproduce(&probe)?.max_abs_diff(&probe) < 1e-8;
    if tight {
        b.check("reproducing-kernel", "reproducing-kernel", ctx.reproduce(&probe)?.max_abs_diff(&probe), 1e-8);
    } else {
        b.finding("reproducing-kernel", format!("rep {} on rule {}: frame is not tight; products use the inverse map", ctx.rep.label, ctx.rule.id), true);
    }
    let product = |f: &_, g: &_| if tight { ctx.twisted_product(f, g) } else { ctx.twisted_product_via_inverse(f, g) };
    let mut hom = 0.0f64;
    for _ in 0..20 {
        let (x, y) = (random_matrix(d, rng), random_matrix(d, rng));
        let lhs = ctx.symbol(&(&x * &y))?;
        hom = hom.max(lhs.max_abs_diff(&product(&ctx.symbol(&x)?, &ctx.symbol(&y)?)?));
    }
    b.check("homomorphism", "twisted-product-homomorphism", hom, 1e-5);
    let mats = &ctx.rep.matrices;
    let mut br = 0.0f64;
    for i in 0..mats.len() {
        for j in i + 1..mats.len() {
            let lhs = ctx.symbol(&linalg::commutator(&mats[i], &mats[j]))?;
            let (fi, fj) = (ctx.symbol(&mats[i])?, ctx.symbol(&mats[j])?);
            let rhs = product(&fi, &fj)?.sub(&product(&fj, &fi)?)?;
            br = br.max(lhs.max_abs_diff(&rhs));
        }
    }
    b.check("bracket", "moyal-bracket-of-generators", br, 1e-5);
    if entry.spec.name == "su2" {
        for (sel, two_l) in [("l=1/2", 1u32), ("l=1", 2)] {
            let ctx_l = WeylContext::for_entry(entry, Some(sel), None, 0)?;
            let mut dm = 0.0f64;
            for _ in 0..5 {
                let a = random_matrix(two_l as usize + 1, rng);
                dm = dm.max(dmatrix_symbol(&a, two_l, &ctx_l.rule)?.max_abs_diff(&ctx_l.symbol(&a)?));
            }
            b.check(&format!("dmatrix-{sel}"), "d-matrix-representation", dm, 1e-10);
        }
    }
    Ok(())
}

fn random_poly(n: usize, rng: &mut ChaCha8Rng) -> PhasePolynomial {
    let mut p = PhasePolynomial::zero(n);
    for _ in 0..3 {
        let m = Monomial { h: 0, u: (0..n).map(|_| rng.gen_range(0..3)).collect(), v: (0..n).map(|_| rng.gen_range(0..3)).collect() };
        let coef = cq(rng.gen_range(-3..=3), rng.gen_range(-1..=1));
        p = p.add(&PhasePolynomial::from_monomial(n, m, coef)).expect("same pairs");
    }
    p
}

fn moyal_suite(b: &mut Builder, rng: &mut ChaCha8Rng) -> Result<()> {
    let mut assoc = true;
    let mut bracket = true;
    for n in [1, 2] {
        for _ in 0..6 {
            let (f, g, h) = (random_poly(n, rng), random_poly(n, rng), random_poly(n, rng));
            let l = star_product(&star_product(&f, &g)?, &h)?;
            let r = star_product(&f, &star_product(&g, &h)?)?;
            assoc &= l == r;
            let ihbar = PhasePolynomial::hbar(n).scale(&cq(0, 1));
            let diff = moyal_bracket(&f, &g)?.sub(&ihbar.mul(&poisson_bracket(&f, &g)?)?)?;
            bracket &= diff.hbar_coefficient(1).is_zero() && diff.hbar_coefficient(2).is_zero();
        }
    }
    b.exact("associativity", "star-product-associativity", assoc);
    b.exact("bracket-classical-limit", "moyal-bracket-poisson-limit", bracket);
    let (u, v) = (PhasePolynomial::u(1, 0), PhasePolynomial::v(1, 0));
    let vu = moyal_bracket(&v, &u)?;
    b.exact("canonical-commutator", "v-star-u-commutator", vu == PhasePolynomial::hbar(1).scale(&cq(0, 1)));
    Ok(())
}

fn bch_suite(b: &mut Builder, entry: &RegistryEntry, rng: &mut ChaCha8Rng) -> Result<()> {
    let alg = &entry.spec;
    let series = bch_float(alg, 6)?;
    if let Some(rep) = entry.reps.first() {
        let mut res = 0.0f64;
        for _ in 0..10 {
            let x: Vec<Complex64> = (0..alg.dim()).map(|_| c(rng.gen_range(-0.02..0.02), 0.0)).collect();
            let y: Vec<Complex64> = (0..alg.dim()).map(|_| c(rng.gen_range(-0.02..0.02), 0.0)).collect();
            let z = series.evaluate(&x, &y);
            let mut full = vec![c(0.0, 0.0); alg.dim()];
            for (k, val) in series.components.iter().zip(&z) {
                full[*k] = *val;
            }
            let lhs = linalg::expm(&rep.represent(&x)?) * linalg::expm(&rep.represent(&y)?);
            res = res.max(linalg::max_abs_diff(&lhs, &linalg::expm(&rep.represent(&full)?)));
        }
        b.check("series-vs-exponentials", "bch-series-order-six", res, 1e-9);
    }
    if alg.raising.len() == 1 && alg.lowering.len() == 1 && alg.abelian.len() == 1 && alg.name == "su2" {
        let r = cubic_term_report(alg)?;
        b.exact("cubic-term-rotated", "cubic-deformed-addition", r.rotated_matches);
        b.finding(
            "cubic-deformed-addition",
            "printed cubic term (1/3)(u v' - v u')(xi' - xi) compared with the exact series; the series gives the quarter-turned form (1/3)(u v' - v u')J(xi' - xi)",
            r.literal_matches,
        );
    }
    Ok(())
}

fn random_modes(rng: &mut ChaCha8Rng, entry: &RegistryEntry, n_modes: i32, scale: f64) -> Vec<(i32, PhasePoint<Complex64>)> {
    let alg = &entry.spec;
    let (nu, nl) = (alg.raising.len(), alg.abelian.len());
    let mut draw = |real: bool| -> Complex64 {
        c(rng.gen_range(-scale..scale), if real { 0.0 } else { rng.gen_range(-scale..scale) })
    };
    let mut modes = vec![(0, PhasePoint::new((0..nu).map(|_| draw(true)).collect(), (0..nu).map(|_| draw(true)).collect(), (0..nl).map(|_| draw(true)).collect()))];
    for n in 1..=n_modes {
        let p = PhasePoint::new((0..nu).map(|_| draw(false)).collect(), (0..nu).map(|_| draw(false)).collect(), (0..nl).map(|_| draw(false)).collect());
        let conj = PhasePoint::new(p.u.iter().map(|z| z.conj()).collect(), p.v.iter().map(|z| z.conj()).collect(), p.lambda.iter().map(|z| z.conj()).collect());
        modes.push((n, p));
        modes.push((-n, conj));
    }
    modes
}

fn loops_suite(b: &mut Builder, entry: &RegistryEntry, rng: &mut ChaCha8Rng) -> Result<()> {
    let rep = entry.reps.first().ok_or_else(|| Error::UnknownRepresentation { algebra: entry.spec.name.clone(), selector: "<any>".into() })?;
    let (m1, m2) = (random_modes(rng, entry, 5, 0.05), random_modes(rng, entry, 5, 0.05));
    let mut res = 0.0f64;
    for k in 0..8 {
        let z = Complex64::from_polar(1.0, 2.0 * PI * k as f64 / 8.0);
        let prod = loop_translation(&entry.spec, rep, &m1, z, 5)? * loop_translation(&entry.spec, rep, &m2, z, 5)?;
        let sum = numeric_deformed_add(&entry.spec, rep, &loop_point(&m1, z, 5)?, &loop_point(&m2, z, 5)?)?;
        res = res.max(linalg::max_abs_diff(&prod, &translation_operator(&entry.spec, rep, &sum.xi)?));
    }
    b.check("fixed-z-composition", "loop-algebra-factorization", res, 1e-10);
    Ok(())
}

fn directsum_suite(b: &mut Builder, registry: &AlgebraRegistry, rng: &mut ChaCha8Rng) -> Result<()> {
    let (so4, su2) = (registry.get("so4")?, registry.get("su2")?);
    let mut res = 0.0f64;
    for _ in 0..10 {
        let mut g = || rng.gen_range(-1.0..1.0);
        let (a, bb) = (PhasePoint::new(vec![g()], vec![g()], vec![g()]), PhasePoint::new(vec![g()], vec![g()], vec![g()]));
        let joint = PhasePoint::new(vec![a.u[0], bb.u[0]], vec![a.v[0], bb.v[0]], vec![a.lambda[0], bb.lambda[0]]);
        let lhs = translation_operator(&so4.spec, &so4.reps[0], &joint)?;
        let rhs = linalg::kron(&translation_operator(&su2.spec, &su2.reps[0], &a)?, &translation_operator(&su2.spec, &su2.reps[0], &bb)?);
        res = res.max(linalg::max_abs_diff(&lhs, &rhs));
    }
    b.check("so4-factorization", "direct-sum-translation", res, 1e-12);
    let mut additive = true;
    for x in registry.entries() {
        for y in registry.entries() {
            let s = direct_sum(&x.spec, &y.spec)?;
            additive &= s.phase_space_dim() == x.spec.phase_space_dim() + y.spec.phase_space_dim();
        }
    }
    b.exact("dimension-additivity", "direct-sum-phase-space", additive);
    Ok(())
}

fn su3_suite(b: &mut Builder, rng: &mut ChaCha8Rng) -> Result<()> {
    let gm = crate::algebra::registry::gell_mann();
    let (mut mono, mut closed) = (0.0f64, 0.0f64);
    for _ in 0..10 {
        let u: Vec<Complex64> = (0..8).map(|_| c(rng.gen_range(-1.0..1.0), 0.0)).collect();
        let x = gm.iter().zip(&u).fold(CMatrix::zeros(3, 3), |acc, (l, k)| acc + l * *k);
        let mut power = linalg::identity(3);
        for n in 0..=12 {
            let (a, cv) = su3::monomial_coeffs(&u, n)?;
            let scale = linalg::max_abs(&power).max(1.0);
            mono = mono.max(linalg::max_abs_diff(&su3::assemble(a, &cv), &power) / scale);
            power = &power * &x;
        }
        let s = 2.0 / u.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt() * rng.gen_range(0.1..1.0);
        let us: Vec<Complex64> = u.iter().map(|z| z * s).collect();
        let (c0, cv) = su3::translation_closed(&us)?;
        let xs = gm.iter().zip(&us).fold(CMatrix::zeros(3, 3), |acc, (l, k)| acc + l * *k);
        closed = closed.max(linalg::max_abs_diff(&su3::assemble(c0, &cv), &linalg::expm(&(xs * c(0.0, 1.0)))));
    }
    b.check("monomial-recursion", "su3-monomial-coefficients", mono, 1e-10);
    b.check("closed-form", "su3-closed-form-translation", closed, 1e-10);
    Ok(())
}

fn fermion_suite(b: &mut Builder) -> Result<()> {
    let oracle = fermion::fermi_q_from_composition()?;
    b.exact("q-composition", "fermionic-composition-cocycle", fermion::fermi_q()? == oracle);
    b.finding(
        "fermionic-composition-cocycle",
        format!("printed Q = 1 + θη' + ηθ' + θη'ηθ' against the composition {}", oracle.format_with(&fermion::Q_NAMES)),
        fermion::fermi_q_printed()? == oracle,
    );
    let basis = fermion::operator_basis();
    let (mut hom, mut kern) = (true, true);
    for x in &basis {
        for y in &basis {
            let (fx, fy) = (fermion::fermi_symbol(x)?, fermion::fermi_symbol(y)?);
            let want = fermion::fermi_symbol(&x.mul(y))?;
            hom &= fermion::fermi_star(&fx, &fy)? == want;
            kern &= fermion::fermi_star_kernel(&fx, &fy)? == want;
        }
    }
    b.exact("star-homomorphism", "fermionic-twisted-product", hom);
    b.exact("berezin-kernel-star", "fermionic-twisted-product", kern);
    let report = fermion::star_table_report()?;
    let bad = report.iter().filter(|c| !c.matches).count();
    b.finding("fermionic-twisted-product", format!("printed coefficient table: {bad} of {} structure constants differ", report.len()), bad == 0);
    Ok(())
}

fn random_mixed(spec: &CliffordSpec, n_gen: usize, rng: &mut ChaCha8Rng) -> Result<MixedElement> {
    let mut x = MixedElement::zero(n_gen, &spec.grading);
    for _ in 0..6 {
        let mask: u64 = rng.gen_range(0..(1u64 << n_gen));
        let d = spec.dim();
        let entries: Vec<_> = (0..d * d).map(|_| cq(rng.gen_range(-3..=3), rng.gen_range(-2..=2))).collect();
        let g = GrassmannElement::from_terms(n_gen, [(mask, cq(1, 0))]);
        x = x.add(&MixedElement::from_parts(&g, &QMatrix::from_rows(d, &entries), &spec.grading)?)?;
    }
    Ok(x)
}

fn clifford_suite(b: &mut Builder, rng: &mut ChaCha8Rng) -> Result<()> {
    let spec = CliffordSpec::dirac()?;
    let mut round = true;
    for _ in 0..10 {
        let x = random_mixed(&spec, 5, rng)?;
        round &= clifford::clifford_reassemble(&spec, &clifford::clifford_decompose(&spec, &x)?)? == x;
    }
    b.exact("decomposition-round-trip", "clifford-decomposition", round);
    let sigma = clifford::clifford_sigma(&spec, 2)?;
    let k = clifford::clifford_kernel(&spec, (0, 1), (16, 1), 32, 2)?;
    b.exact("kernel-is-scalar-part", "clifford-reproducing-kernel", sigma[0].1 == k);
    b.exact(
        "phase-space-dimension",
        "clifford-phase-space-dimension",
        clifford::clifford_phase_space_dim(1, 3) == 15 && clifford::clifford_phase_space_dim(2, 0) == 3,
    );
    let delta = clifford::clifford_delta_check(&spec, 2)?;
    b.finding(
        "clifford-twisted-product-kernel",
        format!(
            "Δ = K(ξ,ξ') + K(ξ',ξ'') + K(−ξ,ξ'') against ¼Tr(ΠΠΠ) through degree {}: degree-0 parts {} vs {}, first failing degree {:?}",
            delta.max_degree, delta.lhs_degree0, delta.rhs_degree0, delta.first_failing_degree
        ),
        delta.holds,
    );
    let sig = clifford::sigma_report()?;
    let bad: Vec<&str> = sig.iter().filter(|c| !c.matches).map(|c| c.component.as_str()).collect();
    b.finding("clifford-sigma-components", format!("printed Σ components differing from the product: {}", bad.join(", ")), bad.is_empty());
    let lin = clifford::translation_report()?;
    let bad: Vec<&str> = lin.iter().filter(|c| !c.linear_matches).map(|c| c.component.as_str()).collect();
    b.finding("clifford-translation-components", format!("printed linear components differing from the expansion: {}", bad.join(", ")), bad.is_empty());
    Ok(())
}

/// `|α⁽¹⁾|₁ ≤ 5` on `[−1, 1]` inputs; `5³¹/31!` is below 1e-12.
const S3_SERIES_ORDER: usize = 30;

fn group_suite(b: &mut Builder, rng: &mut ChaCha8Rng) -> Result<()> {
    let mut valid = FiniteGroup::dihedral(4).is_ok();
    for n in 1..=8 {
        valid &= FiniteGroup::cyclic(n).is_ok();
    }
    b.exact("cayley-validation", "finite-group-tables", valid);
    b.exact("recursion-lines", "s3-recursion-relations", group::s3_recursion_disagreements().is_empty());
    let mut res = 0.0f64;
    for _ in 0..10 {
        let mut g = || rng.gen_range(-1.0..1.0);
        let (u, l) = ([g(), g(), g()], [g(), g()]);
        res = res.max(group::s3_pi_recursion(u, l, S3_SERIES_ORDER)?.max_abs_diff(&group::s3_pi_oracle(u, l)));
    }
    b.check("series-vs-regular-rep", "s3-recursion-relations", res, 1e-12);
    let (u, l, up, lp) = ([0.3, -0.2, 0.25], [0.1, -0.15], [-0.1, 0.3, 0.2], [0.2, 0.05]);
    let at = |s: f64, second: bool| {
        let args = (u.map(|x| x * s), l.map(|x| x * s), up.map(|x| x * s), lp.map(|x| x * s));
        if second {
            group::s3_second_order_residual(args.0, args.1, args.2, args.3)
        } else {
            group::s3_first_order_residual(args.0, args.1, args.2, args.3)
        }
    };
    let ratio2 = at(0.125, true)? / at(0.0625, true)?;
    b.check("second-order-composition-scaling", "s3-deformed-addition", (ratio2 / 8.0 - 1.0).abs(), 0.2);
    let ratio1 = at(0.125, false)? / at(0.0625, false)?;
    b.finding(
        "s3-deformed-addition",
        format!("printed first-order law: residual shrinks by {ratio1:.3} under halving (third order needs 8)"),
        (ratio1 / 8.0 - 1.0).abs() <= 0.2,
    );
    let (mut anti, mut expand, mut bil) = (0.0f64, 0.0f64, 0.0f64);
    for _ in 0..20 {
        let mut g = || rng.gen_range(-1.0..1.0);
        let (x, y) = ([g(), g(), g()], [g(), g(), g()]);
        anti = anti.max((group::omega0_s3(x, y) + group::omega0_s3(y, x)).abs());
        expand = expand.max((group::omega0_s3(x, y) - group::omega0_s3_expanded(x, y)).abs());
        bil = bil.max((group::omega0_s3(x.map(|t| 2.0 * t), y) - 2.0 * group::omega0_s3(x, y)).abs());
    }
    b.check("omega-antisymmetry", "s3-omega-determinant", anti, 1e-14);
    b.check("omega-expanded-form", "s3-omega-determinant", expand, 1e-14);
    b.check("omega-bilinearity", "s3-omega-determinant", bil, 1e-14);
    let d4 = Arc::new(FiniteGroup::dihedral(4)?);
    let x = GroupAlgebraElement::new(&d4, (0..8).map(|_| c(rng.gen_range(-0.5..0.5), 0.0)).collect())?;
    b.check("center-phase", "central-elements-give-phases", group::center_phase_check(&x, 2, 0.7)?, 1e-12);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn su2_all_passes() {
        let reg = AlgebraRegistry::builtin();
        let r = run("all", &reg, "su2", &VerifyOptions::default()).unwrap();
        let failed: Vec<_> = r.checks.iter().filter(|c| !c.pass).collect();
        assert!(r.pass, "{failed:#?}");
        assert!(r.findings.iter().any(|f| !f.agrees));
    }

    #[test]
    fn unknown_suite_is_rejected() {
        let reg = AlgebraRegistry::builtin();
        assert!(run("nope", &reg, "su2", &VerifyOptions::default()).is_err());
        assert!(run("weyl", &reg, "nope", &VerifyOptions::default()).is_err());
    }

    #[test]
    fn tolerance_override_applies_to_numeric_checks() {
        let reg = AlgebraRegistry::builtin();
        let opts = VerifyOptions { seed: 1, tolerance: Some(1e-300) };
        let r = run("group", &reg, "su2", &opts).unwrap();
        assert!(!r.pass);
        assert!(r.checks.iter().filter(|c| c.tolerance == 0.0).all(|c| c.pass));
    }
}
