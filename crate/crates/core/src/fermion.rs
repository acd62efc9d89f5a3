//! One fermionic mode: Grassmann translation operators, symbols and the
//! twisted product.
//!
//! `a = [[0,1],[0,0]]`, `a† = [[0,0],[1,0]]`, grading `G = diag(1,-1)`.
//! `Π(θ,η) = exp(iθa† − iηa)`; symbols are `f(θ,η) = Tr(Π(θ,η) A)` written
//! `f = f1 + f2 θ + f3 η + f4 θη`.
//!
//! The translations compose as `Π(ξ)Π(ξ') = Q Π(ξ+ξ')` with the c-number
//! `Q = exp(−½(θη' + ηθ'))`, which follows from `[X, X'] = −(θη' + ηθ')`.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::{cq, frac, i_unit, CRational};
use crate::grassmann::{GrassmannElement, MixedElement, QMatrix};

/// Coefficients `(f1, f2, f3, f4)` of `f1 + f2 θ + f3 η + f4 θη`.
pub type FermiSymbol = [CRational; 4];

pub const THETA: usize = 0;
pub const ETA: usize = 1;
/// Monomial masks for `1, θ, η, θη` in the two-generator algebra.
pub const MASKS: [u64; 4] = [0, 1 << THETA, 1 << ETA, (1 << THETA) | (1 << ETA)];

pub fn annihilator() -> QMatrix {
    QMatrix::from_rows(2, &[cq(0, 0), cq(1, 0), cq(0, 0), cq(0, 0)])
}

pub fn creator() -> QMatrix {
    QMatrix::from_rows(2, &[cq(0, 0), cq(0, 0), cq(1, 0), cq(0, 0)])
}

pub fn grading() -> QMatrix {
    QMatrix::from_rows(2, &[cq(1, 0), cq(0, 0), cq(0, 0), cq(-1, 0)])
}

/// Operator basis `1, a, a†, a†a`.
pub fn operator_basis() -> [QMatrix; 4] {
    [QMatrix::identity(2), annihilator(), creator(), creator().mul(&annihilator())]
}

fn require_odd(x: &GrassmannElement, what: &str) -> Result<()> {
    if !x.even_part().is_zero() {
        return Err(Error::NotOdd(format!("{what} = {x}")));
    }
    Ok(())
}

/// `exp(iθa† − iηa)` for odd Grassmann elements `θ`, `η` (sums of generators
/// allowed, which is how `Π(θ+θ', η+η')` is formed).
pub fn translation_from(theta: &GrassmannElement, eta: &GrassmannElement) -> Result<MixedElement> {
    require_odd(theta, "θ")?;
    require_odd(eta, "η")?;
    let g = grading();
    let x = MixedElement::from_parts(&theta.scale(i_unit()), &creator(), &g)?
        .add(&MixedElement::from_parts(&eta.scale(-i_unit()), &annihilator(), &g)?)?;
    x.exp(u32::MAX)
}

/// `Π(θ,η)` with `θ`, `η` the generators at the given indices.
pub fn fermi_translation(theta: usize, eta: usize, n_gen: usize) -> Result<MixedElement> {
    if theta == eta {
        return Err(Error::IndexClash(format!("θ and η both use generator {theta}")));
    }
    translation_from(&GrassmannElement::generator(n_gen, theta)?, &GrassmannElement::generator(n_gen, eta)?)
}

pub fn symbol_element(op: &QMatrix) -> Result<GrassmannElement> {
    if op.n() != 2 {
        return Err(Error::Shape(format!("fermion operators are 2x2, got {}x{}", op.n(), op.n())));
    }
    Ok(fermi_translation(THETA, ETA, 2)?.trace_with(op))
}

pub fn from_element(f: &GrassmannElement) -> Result<FermiSymbol> {
    if f.n_gen() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: f.n_gen() });
    }
    Ok(MASKS.map(|m| f.coeff(m)))
}

pub fn to_element(f: &FermiSymbol) -> GrassmannElement {
    GrassmannElement::from_terms(2, MASKS.iter().zip(f).map(|(m, c)| (*m, *c)))
}

pub fn fermi_symbol(op: &QMatrix) -> Result<FermiSymbol> {
    from_element(&symbol_element(op)?)
}

/// Exact Gauss–Jordan solve of `m x = b` (row-major `m`).
fn solve_exact(mut m: Vec<Vec<CRational>>, mut b: Vec<CRational>) -> Result<Vec<CRational>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero()).ok_or_else(|| Error::Numerical("singular symbol map".into()))?;
        m.swap(col, piv);
        b.swap(col, piv);
        let p = m[col][col];
        for j in 0..n {
            m[col][j] /= p;
        }
        b[col] /= p;
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col];
                for j in 0..n {
                    let v = m[col][j];
                    m[r][j] -= f * v;
                }
                let v = b[col];
                b[r] -= f * v;
            }
        }
    }
    Ok(b)
}

/// The operator whose symbol is `f`, by inverting the symbol map on
/// `1, a, a†, a†a`.
pub fn fermi_inverse(f: &FermiSymbol) -> Result<QMatrix> {
    let basis = operator_basis();
    let cols: Vec<FermiSymbol> = basis.iter().map(fermi_symbol).collect::<Result<_>>()?;
    let m: Vec<Vec<CRational>> = (0..4).map(|k| (0..4).map(|j| cols[j][k]).collect()).collect();
    let x = solve_exact(m, f.to_vec())?;
    Ok(basis.iter().zip(x).fold(QMatrix::zeros(2), |acc, (b, c)| acc.add(&b.scale(c))))
}

/// Twisted product: the symbol of the operator product.
pub fn fermi_star(f: &FermiSymbol, g: &FermiSymbol) -> Result<FermiSymbol> {
    fermi_symbol(&fermi_inverse(f)?.mul(&fermi_inverse(g)?))
}

/// Reconstruction kernel `G Π(θ,η) = Π(−θ,−η) G` with the parity
/// `G = aa† − a†a`: `A = ∫ dη dθ f(θ,η) G Π(θ,η)`, no further normalization.
pub fn reconstruction_kernel(theta: &GrassmannElement, eta: &GrassmannElement) -> Result<MixedElement> {
    let g = grading();
    let par = MixedElement::from_parts(&GrassmannElement::one(theta.n_gen()), &g, &g)?;
    par.mul(&translation_from(theta, eta)?)
}

/// Inverse map through the Berezin integral rather than a linear solve.
pub fn fermi_inverse_berezin(f: &FermiSymbol) -> Result<QMatrix> {
    let g = grading();
    let k = reconstruction_kernel(&GrassmannElement::generator(2, THETA)?, &GrassmannElement::generator(2, ETA)?)?;
    let integrand = MixedElement::from_parts(&to_element(f), &QMatrix::identity(2), &g)?.mul(&k)?;
    Ok(integrand.component(MASKS[3]))
}

/// Twisted product as a Berezin double integral,
/// `(f⋆g)(ξ) = ∫dξ'∫dξ'' f(ξ') g(ξ'') Tr(Π(ξ) GΠ(ξ') GΠ(ξ''))`.
pub fn fermi_star_kernel(f: &FermiSymbol, g: &FermiSymbol) -> Result<FermiSymbol> {
    // θ=0, η=1, θ'=2, η'=3, θ''=4, η''=5
    let n = 6;
    let grad = grading();
    let gen = |i: usize| GrassmannElement::generator(n, i);
    let lift = |s: &FermiSymbol, t: usize, e: usize| -> Result<MixedElement> {
        let (th, et) = (gen(t)?, gen(e)?);
        let parts = [GrassmannElement::one(n), th.clone(), et.clone(), th.gmul(&et)?];
        let fe = parts.iter().zip(s).try_fold(GrassmannElement::zero(n), |acc, (p, c)| acc.add(&p.scale(*c)))?;
        MixedElement::from_parts(&fe, &QMatrix::identity(2), &grad)?.mul(&reconstruction_kernel(&th, &et)?)
    };
    let p0 = translation_from(&gen(0)?, &gen(1)?)?;
    let integrand = p0.mul(&lift(f, 2, 3)?)?.mul(&lift(g, 4, 5)?)?.trace();
    let reduced = integrand.berezin(&[2, 3, 4, 5])?;
    Ok(MASKS.map(|m| reduced.coeff(m)))
}

/// The twisted-product table as printed in the source formula,
/// `f = f1 + f2θ + f3η + f4θη`.
pub fn printed_star(f: &FermiSymbol, g: &FermiSymbol) -> FermiSymbol {
    let [f1, f2, f3, f4] = *f;
    let [g1, g2, g3, g4] = *g;
    let two = cq(2, 0);
    let c = |k: i128| cq(k, 0);
    [
        two * (f4 * g4 + c(3) * f3 * g2 - f2 * g3 + c(2) * f1 * g4 + c(2) * f4 * g1),
        two * (c(2) * f1 * g2 - c(2) * f2 * g1 - c(3) * f2 * g4 - c(3) * f4 * g2),
        two * (c(2) * f3 * g1 - c(2) * f1 * g3 - f3 * g4 - f4 * g3),
        two * (c(2) * f4 * g4 - c(6) * f3 * g2 + c(2) * f2 * g3),
    ]
}

/// One structure constant `T[k][i][j]` of `(f⋆g)_k = Σ T[k][i][j] f_i g_j`.
#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct StarCoefficient {
    pub output: usize,
    pub f_index: usize,
    pub g_index: usize,
    pub computed: String,
    pub printed: String,
    pub matches: bool,
}

fn unit(i: usize) -> FermiSymbol {
    let mut e = [CRational::zero(); 4];
    e[i] = cq(1, 0);
    e
}

/// All 64 structure constants of the computed and printed tables.
pub fn star_table_report() -> Result<Vec<StarCoefficient>> {
    let mut out = Vec::new();
    for i in 0..4 {
        for j in 0..4 {
            let computed = fermi_star(&unit(i), &unit(j))?;
            let printed = printed_star(&unit(i), &unit(j));
            for k in 0..4 {
                out.push(StarCoefficient {
                    output: k + 1,
                    f_index: i + 1,
                    g_index: j + 1,
                    computed: crate::exact::format_cq(&computed[k]),
                    printed: crate::exact::format_cq(&printed[k]),
                    matches: computed[k] == printed[k],
                });
            }
        }
    }
    Ok(out)
}

/// Generators `θ, η, θ', η'` at indices 0..4 of a four-generator algebra.
const Q_GENS: usize = 4;

fn q_exponent(kappa: CRational) -> Result<GrassmannElement> {
    let g = |i| GrassmannElement::generator(Q_GENS, i);
    let (t, e, t2, e2) = (g(0)?, g(1)?, g(2)?, g(3)?);
    Ok(t.gmul(&e2)?.add(&e.gmul(&t2)?)?.scale(kappa))
}

/// `Q(θ,η;θ',η') = exp(−½(θη' + ηθ'))` in the generators `θ, η, θ', η'`
/// (indices 0..4).
pub fn fermi_q() -> Result<GrassmannElement> {
    q_exponent(frac(-1, 2))?.exp_nilpotent()
}

/// The printed closed form `1 + θη' + ηθ' + θη'ηθ'`, i.e. `exp(θη' + ηθ')`.
pub fn fermi_q_printed() -> Result<GrassmannElement> {
    q_exponent(cq(1, 0))?.exp_nilpotent()
}

/// `Π(ξ)Π(ξ')Π(ξ+ξ')^{-1}` computed from the translations; errors unless it
/// is a c-number.
pub fn fermi_q_from_composition() -> Result<GrassmannElement> {
    let g = |i| GrassmannElement::generator(Q_GENS, i);
    let p = translation_from(&g(0)?, &g(1)?)?;
    let p2 = translation_from(&g(2)?, &g(3)?)?;
    let sum_t = g(0)?.add(&g(2)?)?.scale(cq(-1, 0));
    let sum_e = g(1)?.add(&g(3)?)?.scale(cq(-1, 0));
    let inv = translation_from(&sum_t, &sum_e)?;
    p.mul(&p2)?
        .mul(&inv)?
        .as_scalar()
        .ok_or_else(|| Error::Numerical("translation composition is not a c-number".into()))
}

pub const Q_NAMES: [&str; 4] = ["θ", "η", "θ'", "η'"];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn translation_expansion() {
        // Π = 1 + iθa† − iηa − ½θη(a†a − aa†)
        let p = fermi_translation(THETA, ETA, 2).unwrap();
        let ad = creator();
        let a = annihilator();
        assert_eq!(p.component(0), QMatrix::identity(2));
        assert_eq!(p.component(1), ad.scale(i_unit()));
        assert_eq!(p.component(2), a.scale(-i_unit()));
        let comm = ad.mul(&a).sub(&a.mul(&ad));
        assert_eq!(p.component(3), comm.scale(frac(-1, 2)));
        assert!(fermi_translation(0, 0, 2).is_err());
        assert!(fermi_translation(0, 2, 2).is_err());
    }

    #[test]
    fn basis_symbols() {
        let [one, a, ad, n] = operator_basis();
        assert_eq!(fermi_symbol(&one).unwrap(), [cq(2, 0), cq(0, 0), cq(0, 0), cq(0, 0)]);
        assert_eq!(fermi_symbol(&a).unwrap(), [cq(0, 0), cq(0, 1), cq(0, 0), cq(0, 0)]);
        assert_eq!(fermi_symbol(&ad).unwrap(), [cq(0, 0), cq(0, 0), cq(0, -1), cq(0, 0)]);
        assert_eq!(fermi_symbol(&n).unwrap(), [cq(1, 0), cq(0, 0), cq(0, 0), frac(-1, 2)]);
    }

    #[test]
    fn inverse_round_trip() {
        for op in operator_basis() {
            assert_eq!(fermi_inverse(&fermi_symbol(&op).unwrap()).unwrap(), op);
        }
    }

    #[test]
    fn berezin_inverse_agrees() {
        for op in operator_basis() {
            let f = fermi_symbol(&op).unwrap();
            assert_eq!(fermi_inverse_berezin(&f).unwrap(), op, "operator {op:?}");
        }
    }

    #[test]
    fn kernel_star_matches_operator_product() {
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(fermi_star_kernel(&unit(i), &unit(j)).unwrap(), fermi_star(&unit(i), &unit(j)).unwrap(), "pair {i},{j}");
            }
        }
    }

    #[test]
    fn q_is_the_composition_cocycle() {
        let oracle = fermi_q_from_composition().unwrap();
        assert_eq!(fermi_q().unwrap(), oracle);
        assert_ne!(fermi_q_printed().unwrap(), oracle);
    }

    #[test]
    fn symbol_of_identity_is_the_unit() {
        let unit_symbol = fermi_symbol(&QMatrix::identity(2)).unwrap();
        for i in 0..4 {
            assert_eq!(fermi_star(&unit_symbol, &unit(i)).unwrap(), unit(i));
            assert_eq!(fermi_star(&unit(i), &unit_symbol).unwrap(), unit(i));
        }
    }

    #[test]
    fn printed_table_is_reported_not_trusted() {
        let report = star_table_report().unwrap();
        assert_eq!(report.len(), 64);
        // The printed table has no unit: 1⋆1 = 0 there, ½ here.
        let one_one = &report[0];
        assert_eq!((one_one.computed.as_str(), one_one.printed.as_str()), ("1/2", "0"));
        assert_eq!(report.iter().filter(|c| !c.matches).count(), 18);
    }
}
