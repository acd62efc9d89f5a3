use proptest::prelude::*;

use phasekit::clifford::{self, CliffordSpec};
use phasekit::exact::cq;
use phasekit::grassmann::{GrassmannElement, MixedElement, QMatrix};
use phasekit::group;
use phasekit::moyal::{star_product, Monomial, PhasePolynomial};

const N_GEN: usize = 5;

fn grassmann() -> impl Strategy<Value = GrassmannElement> {
    prop::collection::vec((0u64..(1 << N_GEN), -4i128..=4, -4i128..=4), 0..6)
        .prop_map(|terms| GrassmannElement::from_terms(N_GEN, terms.into_iter().map(|(m, re, im)| (m, cq(re, im)))))
}

fn mixed(spec: &'static CliffordSpec) -> impl Strategy<Value = MixedElement> {
    prop::collection::vec((0u64..(1 << N_GEN), prop::collection::vec(-3i128..=3, 16)), 1..4).prop_map(move |parts| {
        parts.into_iter().fold(MixedElement::zero(N_GEN, &spec.grading), |acc, (mask, entries)| {
            let m = QMatrix::from_rows(4, &entries.iter().map(|&x| cq(x, 0)).collect::<Vec<_>>());
            let g = GrassmannElement::from_terms(N_GEN, [(mask, cq(1, 0))]);
            acc.add(&MixedElement::from_parts(&g, &m, &spec.grading).unwrap()).unwrap()
        })
    })
}

fn poly() -> impl Strategy<Value = PhasePolynomial> {
    prop::collection::vec((0u32..3, 0u32..3, -3i128..=3), 1..4).prop_map(|terms| {
        terms.into_iter().fold(PhasePolynomial::zero(1), |acc, (u, v, c)| {
            acc.add(&PhasePolynomial::from_monomial(1, Monomial { h: 0, u: vec![u], v: vec![v] }, cq(c, 0))).unwrap()
        })
    })
}

fn dirac() -> &'static CliffordSpec {
    static SPEC: std::sync::OnceLock<CliffordSpec> = std::sync::OnceLock::new();
    SPEC.get_or_init(|| CliffordSpec::dirac().unwrap())
}

proptest! {
    #[test]
    fn grassmann_product_is_associative(a in grassmann(), b in grassmann(), c in grassmann()) {
        let l = a.gmul(&b).unwrap().gmul(&c).unwrap();
        let r = a.gmul(&b.gmul(&c).unwrap()).unwrap();
        prop_assert_eq!(l, r);
    }

    #[test]
    fn odd_grassmann_elements_square_to_zero(a in grassmann()) {
        let odd = a.odd_part();
        prop_assert!(odd.gmul(&odd).unwrap().is_zero());
    }

    #[test]
    fn clifford_decomposition_round_trips(x in mixed(dirac())) {
        let spec = dirac();
        let back = clifford::clifford_reassemble(spec, &clifford::clifford_decompose(spec, &x).unwrap()).unwrap();
        prop_assert_eq!(back, x);
    }

    #[test]
    fn mixed_product_is_associative(x in mixed(dirac()), y in mixed(dirac()), z in mixed(dirac())) {
        let l = x.mul(&y).unwrap().mul(&z).unwrap();
        let r = x.mul(&y.mul(&z).unwrap()).unwrap();
        prop_assert_eq!(l, r);
    }

    #[test]
    fn omega_is_antisymmetric(x in prop::array::uniform3(-1.0f64..1.0), y in prop::array::uniform3(-1.0f64..1.0)) {
        prop_assert!((group::omega0_s3(x, y) + group::omega0_s3(y, x)).abs() < 1e-14);
        prop_assert!(group::omega0_s3(x, x).abs() < 1e-14);
    }

    #[test]
    fn star_is_associative(f in poly(), g in poly(), h in poly()) {
        let l = star_product(&star_product(&f, &g).unwrap(), &h).unwrap();
        let r = star_product(&f, &star_product(&g, &h).unwrap()).unwrap();
        prop_assert_eq!(l, r);
    }
}
