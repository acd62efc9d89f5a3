//! Acceptance battery: one line per criterion, tolerances pinned below.
//!
//! Criteria that the formulas as stated cannot meet are evaluated as stated
//! and reported FAIL; the test fails if any line does.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use phasekit::algebra::{direct_sum, AlgebraRegistry};
use phasekit::bch::{cubic_term_report, numeric_deformed_add};
use phasekit::clifford::{self, CliffordSpec};
use phasekit::exact::cq;
use phasekit::fermion;
use phasekit::grassmann::{GrassmannElement, MixedElement, QMatrix};
use phasekit::group;
use phasekit::linalg::{self, c, CMatrix};
use phasekit::moyal::{moyal_bracket, poisson_bracket, star_product, Monomial, PhasePolynomial};
use phasekit::weyl::{dmatrix_symbol, inverse_weyl, loop_point, loop_translation, su3, translation_operator, weyl_symbol, PhasePoint, WeylContext};

const ROUND_TRIP_TOL: f64 = 1e-8;
const OVERLAP_TOL: f64 = 1e-6;
const HOMOMORPHISM_TOL: f64 = 1e-5;
const S3_SERIES_TOL: f64 = 1e-12;
/// Third-order remainder: halving the inputs divides the residual by 8.
const S3_SHRINK: f64 = 8.0;
const S3_SHRINK_REL: f64 = 0.2;
const DIRECT_SUM_TOL: f64 = 1e-12;
const DMATRIX_TOL: f64 = 1e-10;
const LOOP_TOL: f64 = 1e-10;
const SU3_TOL: f64 = 1e-10;

struct Line {
    id: u32,
    name: &'static str,
    pass: bool,
    detail: String,
}

fn line(id: u32, name: &'static str, pass: bool, detail: String) -> Line {
    Line { id, name, pass, detail }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_hermitian(d: usize, r: &mut ChaCha8Rng) -> CMatrix {
    let a = CMatrix::from_fn(d, d, |_, _| c(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0)));
    (&a + a.adjoint()) * c(0.5, 0.0)
}

fn random_matrix(d: usize, r: &mut ChaCha8Rng) -> CMatrix {
    CMatrix::from_fn(d, d, |_, _| c(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0)))
}

fn su2_ctx(sel: &str) -> WeylContext {
    let reg = AlgebraRegistry::builtin();
    WeylContext::for_entry(reg.get("su2").unwrap(), Some(sel), None, 0).unwrap()
}

fn su2_round_trip() -> Line {
    let ctx = su2_ctx("l=1/2");
    let mut ops: Vec<CMatrix> = vec![linalg::identity(2)];
    ops.extend(ctx.rep.matrices.iter().cloned());
    let mut r = rng(1);
    ops.extend((0..100).map(|_| random_hermitian(2, &mut r)));
    let worst = ops
        .iter()
        .map(|a| {
            let sym = weyl_symbol(a, &ctx.alg, &ctx.rep, &ctx.rule).unwrap();
            linalg::max_abs_diff(a, &inverse_weyl(&sym, &ctx.alg, &ctx.rep, &ctx.rule).unwrap())
        })
        .fold(0.0, f64::max);
    line(1, "su2 spin-1/2 round trip", worst <= ROUND_TRIP_TOL, format!("max {worst:.2e} over {} operators, tol {ROUND_TRIP_TOL:.0e}, rule {}", ops.len(), ctx.rule.id))
}

fn overlap_identity() -> Line {
    let ctx = su2_ctx("l=1/2");
    let mut r = rng(2);
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let (a, b) = (random_hermitian(2, &mut r), random_hermitian(2, &mut r));
        let lhs = linalg::trace_product(&a, &b);
        let rhs = ctx.overlap(&ctx.symbol(&a).unwrap(), &ctx.symbol(&b).unwrap()).unwrap();
        worst = worst.max((lhs - rhs).norm());
    }
    line(2, "overlap identity", worst <= OVERLAP_TOL, format!("max {worst:.2e} over 50 pairs, c = {:.6}, tol {OVERLAP_TOL:.0e}", ctx.normalization()))
}

fn homomorphism() -> Line {
    let ctx = su2_ctx("l=1/2");
    let mut r = rng(3);
    let mut prod = 0.0f64;
    for _ in 0..20 {
        let (a, b) = (random_matrix(2, &mut r), random_matrix(2, &mut r));
        let twisted = ctx.twisted_product(&ctx.symbol(&a).unwrap(), &ctx.symbol(&b).unwrap()).unwrap();
        prod = prod.max(ctx.symbol(&(&a * &b)).unwrap().max_abs_diff(&twisted));
    }
    let s = &ctx.rep.matrices;
    let mut br = 0.0f64;
    for i in 0..3 {
        for j in 0..3 {
            let lhs = ctx.symbol(&linalg::commutator(&s[i], &s[j])).unwrap();
            let rhs = ctx.moyal_bracket(&ctx.symbol(&s[i]).unwrap(), &ctx.symbol(&s[j]).unwrap()).unwrap();
            br = br.max(lhs.max_abs_diff(&rhs));
        }
    }
    let pass = prod <= HOMOMORPHISM_TOL && br <= HOMOMORPHISM_TOL;
    line(3, "twisted product homomorphism", pass, format!("product {prod:.2e}, bracket {br:.2e}, tol {HOMOMORPHISM_TOL:.0e}"))
}

fn bch_cubic() -> Line {
    let reg = AlgebraRegistry::builtin();
    let rep = cubic_term_report(&reg.get("su2").unwrap().spec).unwrap();
    line(
        4,
        "su2 cubic deformed addition (1/3)(u v' - v u')(xi' - xi)",
        rep.literal_matches,
        format!("exact cubic term: {}; equals the quarter-turned form (1/3)(u v' - v u')J(xi' - xi): {}", rep.computed.iter().map(|(k, m)| format!("{k}: {}", m.iter().map(|(mono, c)| format!("{c}*{mono}")).collect::<Vec<_>>().join(" + "))).collect::<Vec<_>>().join("; "), rep.rotated_matches),
    )
}

fn random_poly(n: usize, r: &mut ChaCha8Rng) -> PhasePolynomial {
    let mut p = PhasePolynomial::zero(n);
    for _ in 0..3 {
        let m = Monomial { h: r.gen_range(0..2), u: (0..n).map(|_| r.gen_range(0..3)).collect(), v: (0..n).map(|_| r.gen_range(0..3)).collect() };
        p = p.add(&PhasePolynomial::from_monomial(n, m, cq(r.gen_range(-4..=4), r.gen_range(-2..=2)))).unwrap();
    }
    p
}

fn flat_moyal() -> Line {
    let mut r = rng(5);
    let (mut assoc, mut limit, mut cases) = (true, true, 0);
    for n in 1..=2 {
        for _ in 0..15 {
            let (f, g, h) = (random_poly(n, &mut r), random_poly(n, &mut r), random_poly(n, &mut r));
            assoc &= star_product(&star_product(&f, &g).unwrap(), &h).unwrap() == star_product(&f, &star_product(&g, &h).unwrap()).unwrap();
            let ih = PhasePolynomial::hbar(n).scale(&cq(0, 1));
            let d = moyal_bracket(&f, &g).unwrap().sub(&ih.mul(&poisson_bracket(&f, &g).unwrap()).unwrap()).unwrap();
            limit &= d.hbar_coefficient(1).is_zero() && d.hbar_coefficient(2).is_zero();
            cases += 1;
        }
    }
    line(5, "flat Moyal structure", assoc && limit, format!("{cases} random triples: associative {assoc}, hbar^1 and hbar^2 residual zero {limit} (exact)"))
}

fn fermionic() -> Line {
    let q_ok = fermion::fermi_q().unwrap() == fermion::fermi_q_from_composition().unwrap();
    let basis = fermion::operator_basis();
    let mut star_ok = 0;
    for a in &basis {
        for b in &basis {
            let got = fermion::fermi_star(&fermion::fermi_symbol(a).unwrap(), &fermion::fermi_symbol(b).unwrap()).unwrap();
            star_ok += (got == fermion::fermi_symbol(&a.mul(b)).unwrap()) as usize;
        }
    }
    let table = fermion::star_table_report().unwrap();
    let bad = table.iter().filter(|t| !t.matches).count();
    let printed_q = fermion::fermi_q_printed().unwrap() == fermion::fermi_q().unwrap();
    line(
        6,
        "fermionic WWM",
        q_ok && star_ok == 16,
        format!("Q exact {q_ok}; star exact on {star_ok}/16 pairs; printed table differs in {bad}/64 coefficients (reported); printed Q agrees {printed_q} (reported)"),
    )
}

fn clifford_dirac() -> Line {
    let spec = CliffordSpec::dirac().unwrap();
    let mut r = rng(7);
    let mut round = true;
    for _ in 0..20 {
        let mut x = MixedElement::zero(6, &spec.grading);
        for _ in 0..5 {
            let entries: Vec<_> = (0..16).map(|_| cq(r.gen_range(-3..=3), r.gen_range(-3..=3))).collect();
            let g = GrassmannElement::from_terms(6, [(r.gen_range(0..64u64), cq(1, 0))]);
            x = x.add(&MixedElement::from_parts(&g, &QMatrix::from_rows(4, &entries), &spec.grading).unwrap()).unwrap();
        }
        round &= clifford::clifford_reassemble(&spec, &clifford::clifford_decompose(&spec, &x).unwrap()).unwrap() == x;
    }
    let delta = clifford::clifford_delta_check(&spec, 2).unwrap();
    let sigma = clifford::sigma_report().unwrap();
    let bad = sigma.iter().filter(|s| !s.matches).count();
    line(
        7,
        "Clifford C(1,3)",
        round && delta.holds,
        format!(
            "decomposition round trip exact {round}; Delta = K + K + K vs Tr(PiPiPi)/4: degree-0 parts {} vs {}, first failing degree {:?}; printed Sigma differs in {bad}/16 components (reported)",
            delta.lhs_degree0, delta.rhs_degree0, delta.first_failing_degree
        ),
    )
}

fn s3() -> Line {
    let mut r = rng(8);
    let (mut series, mut series30) = (0.0f64, 0.0f64);
    for _ in 0..20 {
        let u = [r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0)];
        let l = [r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0)];
        let oracle = group::s3_pi_oracle(u, l);
        series = series.max(group::s3_pi_recursion(u, l, 20).unwrap().max_abs_diff(&oracle));
        series30 = series30.max(group::s3_pi_recursion(u, l, 30).unwrap().max_abs_diff(&oracle));
    }
    let (u, l, up, lp) = ([0.3, -0.2, 0.25], [0.1, -0.15], [-0.1, 0.3, 0.2], [0.2, 0.05]);
    let res = |s: f64| group::s3_first_order_residual(u.map(|x| x * s), l.map(|x| x * s), up.map(|x| x * s), lp.map(|x| x * s)).unwrap();
    let ratios: Vec<f64> = [1.0, 0.5, 0.25, 0.125].iter().map(|&s| res(s) / res(s / 2.0)).collect();
    let last = *ratios.last().unwrap();
    let shrink_ok = (last / S3_SHRINK - 1.0).abs() <= S3_SHRINK_REL;
    line(
        8,
        "S3 recursions and first-order deformed addition",
        series <= S3_SERIES_TOL && shrink_ok,
        format!(
            "series vs regular rep at order 20 {series:.2e} (tol {S3_SERIES_TOL:.0e}; the Taylor remainder |x|^21/21! reaches 1e-5 at |x| = 5), at order 30 {series30:.2e}; residual shrink under halving {} (need {S3_SHRINK} within {:.0}%)",
            ratios.iter().map(|x| format!("{x:.3}")).collect::<Vec<_>>().join(", "),
            S3_SHRINK_REL * 100.0
        ),
    )
}

fn direct_sums() -> Line {
    let reg = AlgebraRegistry::builtin();
    let (so4, su2) = (reg.get("so4").unwrap(), reg.get("su2").unwrap());
    let mut r = rng(9);
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let mut g = || r.gen_range(-1.0..1.0);
        let (a, b) = (PhasePoint::new(vec![g()], vec![g()], vec![g()]), PhasePoint::new(vec![g()], vec![g()], vec![g()]));
        let joint = PhasePoint::new(vec![a.u[0], b.u[0]], vec![a.v[0], b.v[0]], vec![a.lambda[0], b.lambda[0]]);
        let lhs = translation_operator(&so4.spec, &so4.reps[0], &joint).unwrap();
        let rhs = linalg::kron(&translation_operator(&su2.spec, &su2.reps[0], &a).unwrap(), &translation_operator(&su2.spec, &su2.reps[0], &b).unwrap());
        worst = worst.max(linalg::max_abs_diff(&lhs, &rhs));
    }
    let mut pairs = 0;
    let mut additive = true;
    for x in reg.entries() {
        for y in reg.entries() {
            additive &= direct_sum(&x.spec, &y.spec).unwrap().phase_space_dim() == x.spec.phase_space_dim() + y.spec.phase_space_dim();
            pairs += 1;
        }
    }
    line(9, "direct sums", worst <= DIRECT_SUM_TOL && additive, format!("so4 vs su2 x su2 {worst:.2e} (tol {DIRECT_SUM_TOL:.0e}); dimension additive on {pairs} pairs {additive}"))
}

fn dmatrix() -> Line {
    let mut r = rng(10);
    let mut worst = 0.0f64;
    for (sel, two_l) in [("l=1/2", 1u32), ("l=1", 2)] {
        let ctx = su2_ctx(sel);
        for _ in 0..5 {
            let a = random_matrix(two_l as usize + 1, &mut r);
            worst = worst.max(dmatrix_symbol(&a, two_l, &ctx.rule).unwrap().max_abs_diff(&ctx.symbol(&a).unwrap()));
        }
    }
    line(10, "D-matrix symbols", worst <= DMATRIX_TOL, format!("max node deviation {worst:.2e}, tol {DMATRIX_TOL:.0e}"))
}

fn modes(r: &mut ChaCha8Rng, n: i32) -> Vec<(i32, PhasePoint<Complex64>)> {
    let mut z = |re_only: bool| c(r.gen_range(-0.05..0.05), if re_only { 0.0 } else { r.gen_range(-0.05..0.05) });
    let mut out = vec![(0, PhasePoint::new(vec![z(true)], vec![z(true)], vec![z(true)]))];
    for k in 1..=n {
        let p = PhasePoint::new(vec![z(false)], vec![z(false)], vec![z(false)]);
        let conj = PhasePoint::new(vec![p.u[0].conj()], vec![p.v[0].conj()], vec![p.lambda[0].conj()]);
        out.push((k, p));
        out.push((-k, conj));
    }
    out
}

fn loops() -> Line {
    let reg = AlgebraRegistry::builtin();
    let e = reg.get("su2").unwrap();
    let mut r = rng(11);
    let (a, b) = (modes(&mut r, 5), modes(&mut r, 5));
    let mut worst = 0.0f64;
    for k in 0..12 {
        let z = Complex64::from_polar(1.0, 2.0 * PI * k as f64 / 12.0);
        let lhs = loop_translation(&e.spec, &e.reps[0], &a, z, 5).unwrap() * loop_translation(&e.spec, &e.reps[0], &b, z, 5).unwrap();
        let sum = numeric_deformed_add(&e.spec, &e.reps[0], &loop_point(&a, z, 5).unwrap(), &loop_point(&b, z, 5).unwrap()).unwrap();
        worst = worst.max(linalg::max_abs_diff(&lhs, &translation_operator(&e.spec, &e.reps[0], &sum.xi).unwrap()));
    }
    line(11, "loop factorization at fixed z", worst <= LOOP_TOL, format!("max {worst:.2e} over 12 points of |z| = 1, 5 modes, tol {LOOP_TOL:.0e}"))
}

fn su3_closed_forms() -> Line {
    let gm = phasekit::algebra::registry::gell_mann();
    let mut r = rng(12);
    let (mut mono, mut closed) = (0.0f64, 0.0f64);
    for _ in 0..20 {
        let u: Vec<Complex64> = (0..8).map(|_| c(r.gen_range(-1.0..1.0), 0.0)).collect();
        let norm = u.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let u: Vec<Complex64> = u.iter().map(|z| z * (r.gen_range(0.05..2.0) / norm)).collect();
        let x = gm.iter().zip(&u).fold(CMatrix::zeros(3, 3), |acc, (l, k)| acc + l * *k);
        let mut power = linalg::identity(3);
        for n in 0..=12 {
            let (a, cv) = su3::monomial_coeffs(&u, n).unwrap();
            mono = mono.max(linalg::max_abs_diff(&su3::assemble(a, &cv), &power) / linalg::max_abs(&power).max(1.0));
            power = &power * &x;
        }
        let (c0, cv) = su3::translation_closed(&u).unwrap();
        closed = closed.max(linalg::max_abs_diff(&su3::assemble(c0, &cv), &linalg::expm(&(x * c(0.0, 1.0)))));
    }
    line(12, "su3 closed forms", mono <= SU3_TOL && closed <= SU3_TOL, format!("monomials to n = 12 {mono:.2e} (relative); closed form {closed:.2e} for |u| <= 2; tol {SU3_TOL:.0e}"))
}

#[test]
fn acceptance() {
    let lines = [
        su2_round_trip(),
        overlap_identity(),
        homomorphism(),
        bch_cubic(),
        flat_moyal(),
        fermionic(),
        clifford_dirac(),
        s3(),
        direct_sums(),
        dmatrix(),
        loops(),
        su3_closed_forms(),
    ];
    for l in &lines {
        println!("criterion {:>2} {}: {} | {}", l.id, if l.pass { "PASS" } else { "FAIL" }, l.name, l.detail);
    }
    let failed: Vec<u32> = lines.iter().filter(|l| !l.pass).map(|l| l.id).collect();
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}

