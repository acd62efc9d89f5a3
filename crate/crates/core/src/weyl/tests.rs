use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::algebra::{AlgebraRegistry, RegistryEntry};
use crate::bch::numeric_deformed_add;
use crate::linalg::{self, c, CMatrix};
use crate::quadrature::{haar_invariance_check, haar_unitary, sphere_rule};

fn reg() -> AlgebraRegistry {
    AlgebraRegistry::builtin()
}

fn su2_ctx(sel: &str, rule: Option<&str>) -> WeylContext {
    WeylContext::for_entry(reg().get("su2").unwrap(), Some(sel), rule, 0).unwrap()
}

fn random_hermitian(d: usize, rng: &mut ChaCha8Rng) -> CMatrix {
    let a = CMatrix::from_fn(d, d, |_, _| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
    (&a + a.adjoint()) * c(0.5, 0.0)
}

fn random_matrix(d: usize, rng: &mut ChaCha8Rng) -> CMatrix {
    CMatrix::from_fn(d, d, |_, _| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
}

fn pauli(k: usize) -> CMatrix {
    reg().get("su2").unwrap().reps[0].matrices[k].clone()
}

fn random_point(rng: &mut ChaCha8Rng, scale: f64) -> PhasePoint {
    PhasePoint::new(
        vec![rng.gen_range(-scale..scale)],
        vec![rng.gen_range(-scale..scale)],
        vec![rng.gen_range(-scale..scale)],
    )
}

#[test]
fn translation_at_origin_is_identity() {
    let r = reg();
    for entry in r.entries() {
        for rep in &entry.reps {
            let pi = translation_operator(&entry.spec, rep, &PhasePoint::zero(&entry.spec)).unwrap();
            assert!(linalg::max_abs_diff(&pi, &linalg::identity(rep.d())) < 1e-15, "{}", entry.spec.name);
        }
    }
}

#[test]
fn spin_half_translation_closed_form() {
    let r = reg();
    let e = r.get("su2").unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..20 {
        let p = random_point(&mut rng, 1.5);
        let pi = translation_operator(&e.spec, &e.reps[0], &p).unwrap();
        assert!(linalg::max_abs_diff(&pi, &su2::closed_form_pi(&p)) < 1e-13);
    }
}

#[test]
fn exponential_routes_agree_and_translations_are_unitary() {
    let r = reg();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for name in ["su2", "su3", "so4"] {
        let e = r.get(name).unwrap();
        for rep in &e.reps {
            for _ in 0..5 {
                let x: Vec<Complex64> = (0..e.spec.dim()).map(|_| c(rng.gen_range(-1.0..1.0), 0.0)).collect();
                let m = rep.represent(&x).unwrap() * c(0.0, 1.0);
                let a = linalg::expm_normal(&m).unwrap();
                let b = linalg::expm_taylor(&m);
                assert!(linalg::max_abs_diff(&a, &b) < 1e-12, "{name}");
                let unit = &a * a.adjoint();
                assert!(linalg::max_abs_diff(&unit, &linalg::identity(rep.d())) < 1e-12);
            }
        }
    }
}

#[test]
fn direct_sum_translation_factorizes() {
    let r = reg();
    let (so4, su2) = (r.get("so4").unwrap(), r.get("su2").unwrap());
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..10 {
        let a = random_point(&mut rng, 1.0);
        let b = random_point(&mut rng, 1.0);
        let joint = PhasePoint::new(vec![a.u[0], b.u[0]], vec![a.v[0], b.v[0]], vec![a.lambda[0], b.lambda[0]]);
        let lhs = translation_operator(&so4.spec, &so4.reps[0], &joint).unwrap();
        let pa = translation_operator(&su2.spec, &su2.reps[0], &a).unwrap();
        let pb = translation_operator(&su2.spec, &su2.reps[0], &b).unwrap();
        assert!(linalg::max_abs_diff(&lhs, &linalg::kron(&pa, &pb)) < 1e-12);
    }
}

#[test]
fn su2_lambda_constraint() {
    let r = reg();
    let e = r.get("su2").unwrap();
    let rep = &e.reps[0];
    let l = solve_lambda(e, rep, &[0.0], &[0.0], Branch::Plus).unwrap();
    assert!((l[0] - PI / 3.0).abs() < 1e-15);
    let l = solve_lambda(e, rep, &[0.0], &[0.0], Branch::Minus).unwrap();
    assert!((l[0] + PI / 3.0).abs() < 1e-15);
    let a = PI / 3.0 / 2f64.sqrt();
    let l = solve_lambda(e, rep, &[a], &[a], Branch::Plus).unwrap();
    assert!(l[0].abs() < 1e-7);
    assert!(matches!(solve_lambda(e, rep, &[1.1], &[0.0], Branch::Plus), Err(Error::OutOfChart { .. })));
    // On the surface the identity symbol is 1.
    let p = PhasePoint::new(vec![0.3], vec![-0.2], solve_lambda(e, rep, &[0.3], &[-0.2], Branch::Minus).unwrap());
    let tr = linalg::trace(&translation_operator(&e.spec, rep, &p).unwrap());
    assert!((tr - c(1.0, 0.0)).norm() < 1e-12);
}

#[test]
fn su11_and_so4_charts_have_unit_trace() {
    let r = reg();
    let e = r.get("su11").unwrap();
    let l = solve_lambda(e, &e.reps[0], &[1.2], &[0.4], Branch::Plus).unwrap();
    let p = PhasePoint::new(vec![1.2], vec![0.4], l);
    let tr = linalg::trace(&translation_operator(&e.spec, &e.reps[0], &p).unwrap());
    assert!((tr - c(1.0, 0.0)).norm() < 1e-12);
    assert!(solve_lambda(e, &e.reps[0], &[0.1], &[0.1], Branch::Plus).is_err());
    for name in ["su11", "so4", "su3"] {
        let ctx = WeylContext::for_entry(r.get(name).unwrap(), None, None, 0).unwrap();
        let one = ctx.symbol(&linalg::identity(ctx.rep.d())).unwrap();
        assert!(one.values.iter().all(|v| (v - c(1.0, 0.0)).norm() < 1e-10), "{name}");
    }
}

#[test]
fn su3_lambda_constraint() {
    let l = su3::solve_lambda(&[0.0; 3], &[0.0; 3], Branch::Plus).unwrap();
    assert!((l[0] - PI / 2.0).abs() < 1e-12 && l[1].abs() < 1e-12, "{l:?}");
    let l = su3::solve_lambda(&[0.0; 3], &[0.0; 3], Branch::Minus).unwrap();
    assert!((l[0] + PI / 2.0).abs() < 1e-12 && l[1].abs() < 1e-12, "{l:?}");
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let r = reg();
    let e = r.get("su3").unwrap();
    for _ in 0..3 {
        let u: Vec<f64> = (0..3).map(|_| rng.gen_range(-0.3..0.3)).collect();
        let v: Vec<f64> = (0..3).map(|_| rng.gen_range(-0.3..0.3)).collect();
        let lam = solve_lambda(e, &e.reps[0], &u, &v, Branch::Plus).unwrap();
        // Oracle: series value of c₀ and the matrix trace.
        let (c0, _) = su3::translation_closed(&su3::coefficients(&u, &v, &lam)).unwrap();
        assert!((c0 - c(1.0 / 3.0, 0.0)).norm() < 1e-10);
        let p = PhasePoint::new(u.clone(), v.clone(), lam);
        let tr = linalg::trace(&translation_operator(&e.spec, &e.reps[0], &p).unwrap());
        assert!((tr - c(1.0, 0.0)).norm() < 1e-10);
    }
}

#[test]
fn forward_symbols() {
    let ctx = su2_ctx("l=1/2", None);
    let one = ctx.symbol(&linalg::identity(2)).unwrap();
    assert!(one.values.iter().all(|v| (v - c(1.0, 0.0)).norm() < 1e-14));
    let s3 = ctx.symbol(&pauli(2)).unwrap();
    for (p, v) in ctx.rule.nodes.iter().zip(&s3.values) {
        let r = p.norm();
        assert!((v - c(0.0, 2.0 * p.lambda[0] * r.sin() / r)).norm() < 1e-14);
    }
    let zero = ctx.symbol(&CMatrix::zeros(2, 2)).unwrap();
    assert!(zero.values.iter().all(|v| v.norm() == 0.0));
    assert!(matches!(ctx.symbol(&CMatrix::zeros(3, 3)), Err(Error::Shape(_))));
}

#[test]
fn su2_round_trip() {
    let ctx = su2_ctx("l=1/2", None);
    assert!(ctx.gram_condition() < 10.0);
    for k in 0..3 {
        let back = ctx.inverse(&ctx.symbol(&pauli(k)).unwrap()).unwrap();
        assert!(linalg::max_abs_diff(&back, &pauli(k)) < 1e-12);
    }
    let zero = ctx.inverse(&ctx.symbol(&CMatrix::zeros(2, 2)).unwrap()).unwrap();
    assert!(linalg::max_abs(&zero) == 0.0);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..100 {
        let a = random_hermitian(2, &mut rng);
        assert!(linalg::max_abs_diff(&ctx.inverse(&ctx.symbol(&a).unwrap()).unwrap(), &a) < 1e-8);
    }
}

#[test]
fn higher_spin_and_su3_round_trips() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for sel in ["l=1", "l=3/2"] {
        let ctx = su2_ctx(sel, None);
        let d = ctx.rep.d();
        for _ in 0..10 {
            let a = random_matrix(d, &mut rng);
            assert!(linalg::max_abs_diff(&ctx.inverse(&ctx.symbol(&a).unwrap()).unwrap(), &a) < 1e-8, "{sel}");
        }
    }
    let r = reg();
    for rule in ["clifford", "haar:200"] {
        let ctx = WeylContext::for_entry(r.get("su3").unwrap(), None, Some(rule), 9).unwrap();
        for _ in 0..10 {
            let a = random_matrix(3, &mut rng);
            assert!(linalg::max_abs_diff(&ctx.inverse(&ctx.symbol(&a).unwrap()).unwrap(), &a) < 1e-6, "{rule}");
        }
    }
}

#[test]
fn inverse_rejects_foreign_symbols_and_degenerate_frames() {
    let ctx = su2_ctx("l=1/2", None);
    let other = su2_ctx("l=1/2", Some("lebedev:14"));
    let s = other.symbol(&pauli(0)).unwrap();
    assert!(matches!(ctx.inverse(&s), Err(Error::RuleMismatch)));
    // Spin-3/2 needs more than six nodes to span 16 matrix units.
    let poor = su2_ctx("l=3/2", Some("lebedev:6"));
    assert!(matches!(poor.inverse(&poor.symbol(&linalg::identity(4)).unwrap()), Err(Error::IllConditioned(_))));
}

#[test]
fn overlap_is_the_hilbert_schmidt_pairing() {
    let ctx = su2_ctx("l=1/2", None);
    assert!((ctx.normalization() - 2.0 / (4.0 * PI)).abs() < 1e-15);
    let s1 = ctx.symbol(&pauli(0)).unwrap();
    assert!((ctx.overlap(&s1, &s1).unwrap() - c(2.0, 0.0)).norm() < 1e-12);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..50 {
        let (a, b) = (random_hermitian(2, &mut rng), random_hermitian(2, &mut rng));
        let lhs = linalg::trace_product(&a, &b);
        let rhs = ctx.overlap(&ctx.symbol(&a).unwrap(), &ctx.symbol(&b).unwrap()).unwrap();
        assert!((lhs - rhs).norm() < 1e-12);
    }
    // Without conjugation the vector part enters with the wrong sign.
    let lit = ctx.overlap_bilinear(&s1, &s1).unwrap();
    assert!((lit - c(2.0, 0.0)).norm() > 1.0);
}

#[test]
fn su3_overlap_is_exact_on_the_design() {
    let r = reg();
    let ctx = WeylContext::for_entry(r.get("su3").unwrap(), None, None, 0).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..10 {
        let (a, b) = (random_hermitian(3, &mut rng), random_hermitian(3, &mut rng));
        let rhs = ctx.overlap(&ctx.symbol(&a).unwrap(), &ctx.symbol(&b).unwrap()).unwrap();
        assert!((linalg::trace_product(&a, &b) - rhs).norm() < 1e-12);
    }
}

#[test]
fn twisted_product_examples() {
    let ctx = su2_ctx("l=1/2", None);
    let one = ctx.symbol(&linalg::identity(2)).unwrap();
    let s: Vec<SampledSymbol> = (0..3).map(|k| ctx.symbol(&pauli(k)).unwrap()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let g = ctx.symbol(&random_matrix(2, &mut rng)).unwrap();
    assert!(ctx.twisted_product(&one, &g).unwrap().max_abs_diff(&g) < 1e-12);
    let bracket = ctx.moyal_bracket(&s[0], &s[1]).unwrap();
    assert!(bracket.max_abs_diff(&s[2].scale(c(0.0, 2.0))) < 1e-12);
    assert!(ctx.twisted_product(&s[2], &s[2]).unwrap().max_abs_diff(&one) < 1e-12);
    for _ in 0..20 {
        let (a, b) = (random_matrix(2, &mut rng), random_matrix(2, &mut rng));
        let lhs = ctx.symbol(&(&a * &b)).unwrap();
        let rhs = ctx.twisted_product(&ctx.symbol(&a).unwrap(), &ctx.symbol(&b).unwrap()).unwrap();
        assert!(lhs.max_abs_diff(&rhs) < 1e-12);
    }
}

#[test]
fn factored_and_direct_kernel_sums_agree() {
    let ctx = su2_ctx("l=1/2", Some("lebedev:14"));
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let f = ctx.symbol(&random_matrix(2, &mut rng)).unwrap();
    let g = ctx.symbol(&random_matrix(2, &mut rng)).unwrap();
    let a = ctx.twisted_product(&f, &g).unwrap();
    let b = ctx.twisted_product_direct(&f, &g).unwrap();
    assert!(a.max_abs_diff(&b) < 1e-12);
    // At unreflected arguments the identity does not act as a unit.
    let one = ctx.symbol(&linalg::identity(2)).unwrap();
    let s1 = ctx.symbol(&pauli(0)).unwrap();
    let lit = ctx.twisted_product_unreflected(&one, &s1).unwrap();
    assert!(lit.max_abs_diff(&s1.scale(c(-1.0, 0.0))) < 1e-12);
}

#[test]
fn products_beyond_tight_frames_go_through_the_inverse() {
    let ctx = su2_ctx("l=1", None);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let (a, b) = (random_matrix(3, &mut rng), random_matrix(3, &mut rng));
    let lhs = ctx.symbol(&(&a * &b)).unwrap();
    let via = ctx.twisted_product_via_inverse(&ctx.symbol(&a).unwrap(), &ctx.symbol(&b).unwrap()).unwrap();
    assert!(lhs.max_abs_diff(&via) < 1e-10);
    let r = reg();
    let ctx3 = WeylContext::for_entry(r.get("su3").unwrap(), None, None, 0).unwrap();
    let (a, b) = (random_matrix(3, &mut rng), random_matrix(3, &mut rng));
    let lhs = ctx3.symbol(&(&a * &b)).unwrap();
    let rhs = ctx3.twisted_product(&ctx3.symbol(&a).unwrap(), &ctx3.symbol(&b).unwrap()).unwrap();
    assert!(lhs.max_abs_diff(&rhs) < 1e-12);
}

#[test]
fn reproducing_property() {
    let ctx = su2_ctx("l=1/2", None);
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..5 {
        let f = ctx.symbol(&random_hermitian(2, &mut rng)).unwrap();
        assert!(ctx.reproduce(&f).unwrap().max_abs_diff(&f) < 1e-12);
    }
}

#[test]
fn kernels() {
    let r = reg();
    let e = r.get("su2").unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let zero = PhasePoint::zero(&e.spec);
    for _ in 0..10 {
        let (a, b, cc) = (random_point(&mut rng, 1.0), random_point(&mut rng, 1.0), random_point(&mut rng, 1.0));
        for rep in &e.reps {
            let k0 = kernel_k(&e.spec, rep, &a, &zero).unwrap();
            assert!((k0 - linalg::trace(&translation_operator(&e.spec, rep, &a).unwrap())).norm() < 1e-13);
            let d1 = kernel_delta(&e.spec, rep, &a, &b, &cc).unwrap();
            let d2 = kernel_delta(&e.spec, rep, &b, &cc, &a).unwrap();
            assert!((d1 - d2).norm() < 1e-12);
            let dz = kernel_delta(&e.spec, rep, &a, &zero, &cc).unwrap();
            assert!((dz - kernel_k(&e.spec, rep, &a, &cc).unwrap()).norm() < 1e-12);
            // Δ as the character of the composed rotation.
            let u = su2::closed_form_pi(&a) * su2::closed_form_pi(&b) * su2::closed_form_pi(&cc);
            let (al, be, ga) = euler_zyz(&u);
            let two_l = rep.d() as u32 - 1;
            assert!((linalg::trace(&dmatrix(two_l, al, be, ga)) - d1).norm() < 1e-10);
        }
        let rep = &e.reps[0];
        assert!((su2::kernel_k(&a, &b) - kernel_k(&e.spec, rep, &a, &b).unwrap()).norm() < 1e-13);
        assert!((su2::kernel_delta(&a, &b, &cc) - kernel_delta(&e.spec, rep, &a, &b, &cc).unwrap()).norm() < 1e-13);
    }
}

#[test]
fn printed_su2_kernel_differs_from_the_trace() {
    // Reported, not asserted as correct: the printed form drops f₀f₀'.
    let a = PhasePoint::new(vec![0.2], vec![0.1], vec![0.9]);
    let b = PhasePoint::new(vec![-0.4], vec![0.3], vec![0.8]);
    assert!((su2::printed_kernel(&a, &b) - su2::kernel_k(&a, &b)).norm() > 1e-3);
}

#[test]
fn wigner_functions() {
    let ctx = su2_ctx("l=1", None);
    let up = [c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)];
    let w = ctx.wigner(&up).unwrap();
    let mut proj = CMatrix::zeros(3, 3);
    proj[(0, 0)] = c(1.0, 0.0);
    assert!(w.max_abs_diff(&ctx.symbol(&proj).unwrap()) < 1e-14);
    assert!(matches!(ctx.wigner(&[c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]), Err(Error::NotNormalized(_))));
    let half = su2_ctx("l=1/2", None);
    let s = 0.5f64.sqrt();
    let psi = [c(s, 0.0), c(s, 0.0)];
    let f = half.wigner(&psi).unwrap();
    let rho = CMatrix::from_fn(2, 2, |i, j| psi[i] * psi[j].conj());
    assert!(f.max_abs_diff(&half.symbol(&rho).unwrap()) < 1e-14);
    // c ∫ F conj(1_W) = ⟨ψ|1|ψ⟩.
    let one = half.symbol(&linalg::identity(2)).unwrap();
    assert!((half.overlap(&f, &one).unwrap() - c(1.0, 0.0)).norm() < 1e-12);
    // |½ + i u sin r / r| peaks on the u axis for the σ1 eigenstate.
    let best = f.values.iter().enumerate().max_by(|a, b| a.1.norm().partial_cmp(&b.1.norm()).unwrap()).unwrap().0;
    assert!((half.rule.nodes[best].u[0].abs() - PI / 3.0).abs() < 1e-12);
}

#[test]
fn dmatrix_route_matches_the_trace_route() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for (sel, two_l) in [("l=1/2", 1u32), ("l=1", 2), ("l=3/2", 3)] {
        let ctx = su2_ctx(sel, None);
        for _ in 0..5 {
            let a = random_matrix(two_l as usize + 1, &mut rng);
            let lhs = dmatrix_symbol(&a, two_l, &ctx.rule).unwrap();
            assert!(lhs.max_abs_diff(&ctx.symbol(&a).unwrap()) < 1e-10, "{sel}");
        }
        let id = dmatrix_symbol(&linalg::identity(two_l as usize + 1), two_l, &ctx.rule).unwrap();
        assert!(id.values.iter().all(|v| (v - c(1.0, 0.0)).norm() < 1e-10));
    }
    assert!(dmatrix_symbol(&linalg::identity(2), 2, &sphere_rule(3, PI / 4.0).unwrap()).is_err());
}

#[test]
fn su3_monomials_and_closed_form() {
    let gm = crate::algebra::registry::gell_mann();
    let zero = vec![c(0.0, 0.0); 8];
    let (a0, b0) = su3::monomial_coeffs(&zero, 0).unwrap();
    assert_eq!((a0, b0), (c(1.0, 0.0), zero.clone()));
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for _ in 0..10 {
        let u: Vec<Complex64> = (0..8).map(|_| c(rng.gen_range(-1.0..1.0), 0.0)).collect();
        let (a2, _) = su3::monomial_coeffs(&u, 2).unwrap();
        let norm2: Complex64 = u.iter().map(|x| x * x).sum();
        assert!((a2 - norm2 * (2.0 / 3.0)).norm() < 1e-14);
        let x = gm.iter().zip(&u).fold(CMatrix::zeros(3, 3), |acc, (l, k)| acc + l * *k);
        let mut power = linalg::identity(3);
        for n in 0..=12 {
            let (a, b) = su3::monomial_coeffs(&u, n).unwrap();
            let scale = linalg::max_abs(&power).max(1.0);
            assert!(linalg::max_abs_diff(&su3::assemble(a, &b), &power) / scale < 1e-10, "n={n}");
            power = &power * &x;
        }
        let s = 2.0 / u.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt() * rng.gen_range(0.1..1.0);
        let us: Vec<Complex64> = u.iter().map(|z| z * s).collect();
        let (c0, cv) = su3::translation_closed(&us).unwrap();
        let xs = gm.iter().zip(&us).fold(CMatrix::zeros(3, 3), |acc, (l, k)| acc + l * *k);
        let exp = linalg::expm(&(xs * c(0.0, 1.0)));
        assert!(linalg::max_abs_diff(&su3::assemble(c0, &cv), &exp) < 1e-10);
        assert!((linalg::trace(&exp) - c0 * 3.0).norm() < 1e-12);
    }
    let (c0, cv) = su3::translation_closed(&zero).unwrap();
    assert_eq!(c0, c(1.0, 0.0));
    assert!(cv.iter().all(|z| z.norm() == 0.0));
    assert!(matches!(su3::monomial_coeffs(&zero[..3], 1), Err(Error::DimensionMismatch { .. })));
}

#[test]
fn su3_generator_spectrum() {
    let gm = crate::algebra::registry::gell_mann();
    let mut rng = ChaCha8Rng::seed_from_u64(19);
    for _ in 0..10 {
        let x: Vec<f64> = (0..8).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let h = gm.iter().zip(&x).fold(CMatrix::zeros(3, 3), |acc, (l, k)| acc + l * c(*k, 0.0));
        let mut want: Vec<f64> = h.symmetric_eigenvalues().iter().copied().collect();
        let mut got = su3::generator_eigenvalues(&x).to_vec();
        want.sort_by(f64::total_cmp);
        got.sort_by(f64::total_cmp);
        assert!(want.iter().zip(&got).all(|(a, b)| (a - b).abs() < 1e-12), "{want:?} {got:?}");
    }
}

#[test]
fn su3_printed_kernels_match_the_normalized_trace() {
    let gm = crate::algebra::registry::gell_mann();
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    let mut draw = || -> (CMatrix, Complex64, Vec<Complex64>) {
        let u: Vec<Complex64> = (0..8).map(|_| c(rng.gen_range(-0.7..0.7), 0.0)).collect();
        let (c0, cv) = su3::translation_closed(&u).unwrap();
        let x = gm.iter().zip(&u).fold(CMatrix::zeros(3, 3), |acc, (l, k)| acc + l * *k);
        (linalg::expm(&(x * c(0.0, 1.0))), c0, cv)
    };
    let (p, p0, pc) = draw();
    let (q, q0, qc) = draw();
    let (r, r0, rc) = draw();
    let k = linalg::trace_product(&p, &q) / 3.0;
    assert!((su3::kernel_printed((p0, &pc), (q0, &qc)) - k).norm() < 1e-12);
    let d = linalg::trace(&(&p * &q * &r)) / 3.0;
    assert!((su3::delta_printed((p0, &pc), (q0, &qc), (r0, &rc)) - d).norm() < 1e-12);
}

fn loop_modes(rng: &mut ChaCha8Rng, n_modes: i32, scale: f64) -> Vec<(i32, PhasePoint<Complex64>)> {
    let mut modes = Vec::new();
    let draw = |rng: &mut ChaCha8Rng| c(rng.gen_range(-scale..scale), rng.gen_range(-scale..scale));
    let zero = PhasePoint::new(vec![c(0.0, 0.0)], vec![c(0.0, 0.0)], vec![c(0.0, 0.0)]);
    modes.push((0, PhasePoint::new(vec![c(rng.gen_range(-scale..scale), 0.0)], vec![c(rng.gen_range(-scale..scale), 0.0)], vec![c(rng.gen_range(-scale..scale), 0.0)])));
    for n in 1..=n_modes {
        let p = PhasePoint::new(vec![draw(rng)], vec![draw(rng)], vec![draw(rng)]);
        let conj = PhasePoint::new(vec![p.u[0].conj()], vec![p.v[0].conj()], vec![p.lambda[0].conj()]);
        modes.push((n, p));
        modes.push((-n, conj));
    }
    let _ = zero;
    modes
}

#[test]
fn loop_translations() {
    let r = reg();
    let e = r.get("su2").unwrap();
    let rep = &e.reps[0];
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let single = vec![(0, PhasePoint::new(vec![c(0.2, 0.0)], vec![c(0.1, 0.0)], vec![c(-0.3, 0.0)]))];
    let z = Complex64::from_polar(1.0, 0.7);
    let direct = translation_operator(&e.spec, rep, &single[0].1).unwrap();
    assert!(linalg::max_abs_diff(&loop_translation(&e.spec, rep, &single, z, 5).unwrap(), &direct) < 1e-15);
    let modes = loop_modes(&mut rng, 1, 0.1);
    let sum = modes.iter().fold(PhasePoint::new(vec![c(0.0, 0.0)], vec![c(0.0, 0.0)], vec![c(0.0, 0.0)]), |acc, (_, p)| {
        PhasePoint::new(vec![acc.u[0] + p.u[0]], vec![acc.v[0] + p.v[0]], vec![acc.lambda[0] + p.lambda[0]])
    });
    let at_one = loop_translation(&e.spec, rep, &modes, c(1.0, 0.0), 5).unwrap();
    assert!(linalg::max_abs_diff(&at_one, &translation_operator(&e.spec, rep, &sum).unwrap()) < 1e-14);
    assert!(matches!(loop_translation(&e.spec, rep, &modes, c(1.1, 0.0), 5), Err(Error::NotUnitModulus(_))));
    // Composition at fixed z against the deformed addition.
    let (m1, m2) = (loop_modes(&mut rng, 5, 0.05), loop_modes(&mut rng, 5, 0.05));
    for k in 0..8 {
        let z = Complex64::from_polar(1.0, 2.0 * PI * k as f64 / 8.0);
        let prod = loop_translation(&e.spec, rep, &m1, z, 5).unwrap() * loop_translation(&e.spec, rep, &m2, z, 5).unwrap();
        let (x1, x2) = (loop_point(&m1, z, 5).unwrap(), loop_point(&m2, z, 5).unwrap());
        assert!(x1.max_imag() < 1e-15);
        let sum = numeric_deformed_add(&e.spec, rep, &x1, &x2).unwrap();
        let rebuilt = translation_operator(&e.spec, rep, &sum.xi).unwrap();
        assert!(linalg::max_abs_diff(&prod, &rebuilt) < 1e-10);
    }
}

#[test]
fn haar_invariance_of_rules() {
    let r = reg();
    let e: &RegistryEntry = r.get("su2").unwrap();
    let rep = &e.reps[0];
    let ctx = su2_ctx("l=1/2", None);
    let ops: Vec<CMatrix> = (0..3).map(pauli).chain([linalg::identity(2)]).collect();
    let id = haar_invariance_check(&ctx.rule, &e.spec, rep, &linalg::identity(2), &ops).unwrap();
    assert!(id < 1e-15);
    // Rotation about the λ axis: exp(iφσ3).
    let z_rot = linalg::expm(&(pauli(2) * c(0.0, 0.4)));
    assert!(haar_invariance_check(&ctx.rule, &e.spec, rep, &z_rot, &ops).unwrap() < 1e-12);
    let mut rng = ChaCha8Rng::seed_from_u64(18);
    for _ in 0..5 {
        let g = haar_unitary(2, &mut rng);
        assert!(haar_invariance_check(&ctx.rule, &e.spec, rep, &g, &ops).unwrap() < 1e-10);
    }
    let e3 = r.get("su3").unwrap();
    let ctx3 = WeylContext::for_entry(e3, None, None, 0).unwrap();
    let ops3 = crate::algebra::registry::gell_mann();
    let g = haar_unitary(3, &mut rng);
    assert!(haar_invariance_check(&ctx3.rule, &e3.spec, &e3.reps[0], &g, &ops3).unwrap() < 1e-10);
}
