//! Finite groups, group algebras and the `S₃` translation operator.
//!
//! Elements are indexed `0..|G|` with the identity at 0; `table[i][j]` is the
//! index of `g_i g_j`. Group-algebra elements carry complex coefficients and
//! multiply by convolution over the table.

use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{expm, logm, CMatrix};

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct FiniteGroup {
    pub name: String,
    pub labels: Vec<String>,
    pub table: Vec<Vec<usize>>,
    pub center: Vec<usize>,
}

impl FiniteGroup {
    /// Validates the table (identity at 0, Latin square, associativity) and
    /// computes the center.
    pub fn new(name: impl Into<String>, labels: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        let bad = |m: String| Err(Error::InvalidGroup(m));
        if n == 0 || labels.len() != n || table.iter().any(|r| r.len() != n) {
            return bad(format!("table must be {n}x{n} with {n} labels"));
        }
        for i in 0..n {
            if table[0][i] != i || table[i][0] != i {
                return bad("index 0 is not the identity".into());
            }
            let mut row = vec![false; n];
            let mut col = vec![false; n];
            for j in 0..n {
                let (r, c) = (table[i][j], table[j][i]);
                if r >= n || row[r] || col[c] {
                    return bad(format!("not a Latin square at index {i}"));
                }
                row[r] = true;
                col[c] = true;
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return bad(format!("associativity fails for ({a},{b},{c})"));
                    }
                }
            }
        }
        let center = (0..n).filter(|&z| (0..n).all(|g| table[z][g] == table[g][z])).collect();
        Ok(FiniteGroup { name: name.into(), labels, table, center })
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        (0..self.order()).find(|&b| self.table[a][b] == 0).expect("Latin square has an inverse")
    }

    /// `S₃` with the labels `e, g1, …, g5` and the multiplication table used
    /// for the translation-operator recursions; `{e, g1, g4}` is `A₃`.
    pub fn s3() -> Self {
        let table = vec![
            vec![0, 1, 2, 3, 4, 5],
            vec![1, 4, 3, 5, 0, 2],
            vec![2, 5, 0, 4, 3, 1],
            vec![3, 2, 1, 0, 5, 4],
            vec![4, 0, 5, 2, 1, 3],
            vec![5, 3, 4, 1, 2, 0],
        ];
        let labels = ["e", "g1", "g2", "g3", "g4", "g5"].map(String::from).to_vec();
        Self::new("s3", labels, table).expect("S3 table is valid")
    }

    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGroup("cyclic group of order 0".into()));
        }
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::new(format!("z{n}"), (0..n).map(|k| format!("r{k}")).collect(), table)
    }

    /// Dihedral group of order `2n`; index `k + n·f` is `r^k s^f`.
    pub fn dihedral(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidGroup("dihedral group needs n >= 2".into()));
        }
        let idx = |k: usize, f: usize| k % n + n * f;
        let mut table = vec![vec![0; 2 * n]; 2 * n];
        for a in 0..2 * n {
            for b in 0..2 * n {
                let (ka, fa) = (a % n, a / n);
                let (kb, fb) = (b % n, b / n);
                // r^a s^f r^b s^g = r^{a + (−1)^f b} s^{f+g}
                let k = if fa == 0 { ka + kb } else { ka + n - kb };
                table[a][b] = idx(k, (fa + fb) % 2);
            }
        }
        let labels = (0..2 * n).map(|i| if i < n { format!("r{i}") } else { format!("r{}s", i - n) }).collect();
        Self::new(format!("d{n}"), labels, table)
    }

    pub fn by_name(name: &str) -> Result<Self> {
        let lower = name.to_ascii_lowercase();
        if lower == "s3" {
            return Ok(Self::s3());
        }
        let parse = |p: &str| lower.strip_prefix(p).and_then(|s| s.parse::<usize>().ok());
        if let Some(n) = parse("z") {
            return Self::cyclic(n);
        }
        if let Some(n) = parse("d") {
            return Self::dihedral(n);
        }
        Err(Error::InvalidGroup(format!("unknown group {name:?}; expected s3, zN or dN")))
    }
}

#[derive(Clone, Debug)]
pub struct GroupAlgebraElement {
    pub group: Arc<FiniteGroup>,
    pub coeffs: Vec<Complex64>,
}

impl GroupAlgebraElement {
    pub fn new(group: &Arc<FiniteGroup>, coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() != group.order() {
            return Err(Error::DimensionMismatch { expected: group.order(), found: coeffs.len() });
        }
        Ok(GroupAlgebraElement { group: group.clone(), coeffs })
    }

    pub fn zero(group: &Arc<FiniteGroup>) -> Self {
        GroupAlgebraElement { group: group.clone(), coeffs: vec![Complex64::new(0.0, 0.0); group.order()] }
    }

    pub fn basis(group: &Arc<FiniteGroup>, i: usize) -> Self {
        let mut x = Self::zero(group);
        x.coeffs[i] = Complex64::new(1.0, 0.0);
        x
    }

    pub fn unit(group: &Arc<FiniteGroup>) -> Self {
        Self::basis(group, 0)
    }

    fn same_group(&self, o: &Self) -> Result<()> {
        if !Arc::ptr_eq(&self.group, &o.group) && self.group != o.group {
            return Err(Error::InvalidGroup(format!("{} element combined with {} element", self.group.name, o.group.name)));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.same_group(o)?;
        Ok(GroupAlgebraElement { group: self.group.clone(), coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect() })
    }

    pub fn scale(&self, s: Complex64) -> Self {
        GroupAlgebraElement { group: self.group.clone(), coeffs: self.coeffs.iter().map(|a| a * s).collect() }
    }

    /// Left-multiplication matrix: `L(x)_{kj} = Σ_{g_i g_j = g_k} x_i`.
    pub fn regular_matrix(&self) -> CMatrix {
        let n = self.group.order();
        let mut m = CMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                m[(self.group.mul(i, j), j)] += self.coeffs[i];
            }
        }
        m
    }

    /// Reads an element back from its regular matrix (column of `e`).
    pub fn from_regular(group: &Arc<FiniteGroup>, m: &CMatrix) -> Self {
        GroupAlgebraElement { group: group.clone(), coeffs: (0..group.order()).map(|k| m[(k, 0)]).collect() }
    }

    pub fn max_abs_diff(&self, o: &Self) -> f64 {
        self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }
}

/// `(xy)_k = Σ_{g_i g_j = g_k} x_i y_j`.
pub fn gmul_algebra(x: &GroupAlgebraElement, y: &GroupAlgebraElement) -> Result<GroupAlgebraElement> {
    x.same_group(y)?;
    let mut out = GroupAlgebraElement::zero(&x.group);
    for (i, a) in x.coeffs.iter().enumerate() {
        for (j, b) in y.coeffs.iter().enumerate() {
            out.coeffs[x.group.mul(i, j)] += a * b;
        }
    }
    Ok(out)
}

/// `exp(i x)` through the regular representation.
pub fn regular_rep_exp(x: &GroupAlgebraElement) -> GroupAlgebraElement {
    let m = expm(&x.regular_matrix().map(|z| z * Complex64::new(0.0, 1.0)));
    GroupAlgebraElement::from_regular(&x.group, &m)
}

/// `x` with `exp(i x) = y`, principal branch of the regular-matrix logarithm.
pub fn regular_rep_log(y: &GroupAlgebraElement) -> Result<GroupAlgebraElement> {
    let m = logm(&y.regular_matrix())?;
    Ok(GroupAlgebraElement::from_regular(&y.group, &m).scale(Complex64::new(0.0, -1.0)))
}

pub const S3_MAX_ORDER: usize = 60;

/// The six recursion lines: `α_k^{(n+1)} = Σ α_i^{(n)} α_j^{(1)}` over the
/// listed `(i, j)`.
pub const S3_RECURSION: [[(usize, usize); 6]; 6] = [
    [(0, 0), (1, 4), (2, 2), (3, 3), (4, 1), (5, 5)],
    [(0, 1), (1, 0), (2, 5), (3, 2), (4, 4), (5, 3)],
    [(0, 2), (1, 5), (2, 0), (3, 1), (4, 3), (5, 4)],
    [(0, 3), (1, 2), (2, 4), (3, 0), (4, 5), (5, 1)],
    [(0, 4), (1, 1), (2, 3), (3, 5), (4, 0), (5, 2)],
    [(0, 5), (1, 3), (2, 1), (3, 4), (4, 2), (5, 0)],
];

/// `α^{(1)} = (0, −λ₁, u₂, u₃, −λ₂, u₅)`, the exponent of
/// `Π(u) = exp(−iλ₁g₁ + iu₂g₂ + iu₃g₃ − iλ₂g₄ + iu₅g₅)` divided by `i`.
pub fn s3_exponent(u: [f64; 3], lambda: [f64; 2]) -> [f64; 6] {
    [0.0, -lambda[0], u[0], u[1], -lambda[1], u[2]]
}

pub fn s3_exponent_element(u: [f64; 3], lambda: [f64; 2]) -> GroupAlgebraElement {
    let g = Arc::new(FiniteGroup::s3());
    let c = s3_exponent(u, lambda).iter().map(|&x| Complex64::new(x, 0.0)).collect();
    GroupAlgebraElement::new(&g, c).expect("six coefficients")
}

/// `Π(u) = e + Σ_{n=1}^{order} (iⁿ/n!) Σ_k α_k^{(n)} g_k`; `u = (u₂, u₃, u₅)`.
pub fn s3_pi_recursion(u: [f64; 3], lambda: [f64; 2], order: usize) -> Result<GroupAlgebraElement> {
    if order > S3_MAX_ORDER {
        return Err(Error::UnsupportedOrder { order, max: S3_MAX_ORDER });
    }
    let a1 = s3_exponent(u, lambda);
    let mut alpha = a1;
    let mut out = GroupAlgebraElement::unit(&Arc::new(FiniteGroup::s3()));
    // iⁿ/n! accumulated step by step
    let mut factor = Complex64::new(1.0, 0.0);
    for n in 1..=order {
        factor *= Complex64::new(0.0, 1.0 / n as f64);
        for k in 0..6 {
            out.coeffs[k] += factor * alpha[k];
        }
        let mut next = [0.0; 6];
        for (k, line) in S3_RECURSION.iter().enumerate() {
            next[k] = line.iter().map(|&(i, j)| alpha[i] * a1[j]).sum();
        }
        alpha = next;
    }
    Ok(out)
}

/// Lines of the recursion table that disagree with convolution by `α^{(1)}`
/// on the `S₃` table (empty when all six agree).
pub fn s3_recursion_disagreements() -> Vec<usize> {
    let g = FiniteGroup::s3();
    (0..6)
        .filter(|&k| {
            let mut from_table: Vec<(usize, usize)> = (0..6).flat_map(|i| (0..6).map(move |j| (i, j))).filter(|&(i, j)| g.mul(i, j) == k).collect();
            let mut printed = S3_RECURSION[k].to_vec();
            from_table.sort();
            printed.sort();
            from_table != printed
        })
        .collect()
}

pub fn s3_pi_oracle(u: [f64; 3], lambda: [f64; 2]) -> GroupAlgebraElement {
    regular_rep_exp(&s3_exponent_element(u, lambda))
}

/// The printed first-order deformed addition of `(u₂, u₃, u₅)`.
pub fn s3_deformed_add_first_order(u: [f64; 3], lambda: [f64; 2], up: [f64; 3], lambdap: [f64; 2]) -> [f64; 3] {
    let [u2, u3, u5] = u;
    let [l1, l2] = lambda;
    let [u2p, u3p, u5p] = up;
    let [l1p, l2p] = lambdap;
    [
        u2 + u2p - u3 * l1p - l2 * u3p - u5 * l2p - l1 * u5p,
        u3 + u3p - l2 * u2p - u2 * l2p - l2 * u5p - u5 * l1p,
        u5 + u5p - l1 * u3p - u2 * l1p - u3 * l2p - l2 * u2p,
    ]
}

/// `X ⊕ X'` through `exp(iX)exp(iX') = exp(iX'')` with the regular-matrix
/// logarithm; all six coefficients of `X''`.
pub fn s3_deformed_add_numeric(u: [f64; 3], lambda: [f64; 2], up: [f64; 3], lambdap: [f64; 2]) -> Result<GroupAlgebraElement> {
    let p = s3_pi_oracle(u, lambda);
    let q = s3_pi_oracle(up, lambdap);
    regular_rep_log(&gmul_algebra(&p, &q)?)
}

/// Second-order composition `X + X' + (i/2)[X, X']` (BCH through degree 2).
pub fn s3_deformed_add_second_order(u: [f64; 3], lambda: [f64; 2], up: [f64; 3], lambdap: [f64; 2]) -> Result<GroupAlgebraElement> {
    let x = s3_exponent_element(u, lambda);
    let y = s3_exponent_element(up, lambdap);
    let comm = gmul_algebra(&x, &y)?.add(&gmul_algebra(&y, &x)?.scale(Complex64::new(-1.0, 0.0)))?;
    x.add(&y)?.add(&comm.scale(Complex64::new(0.0, 0.5)))
}

/// `(u₂, u₃, u₅)` read from a full exponent.
pub fn s3_phase_part(x: &GroupAlgebraElement) -> [Complex64; 3] {
    [x.coeffs[2], x.coeffs[3], x.coeffs[5]]
}

/// Largest `(u₂, u₃, u₅)` deviation of the printed first-order formula from
/// the numeric composition.
pub fn s3_first_order_residual(u: [f64; 3], lambda: [f64; 2], up: [f64; 3], lambdap: [f64; 2]) -> Result<f64> {
    let exact = s3_phase_part(&s3_deformed_add_numeric(u, lambda, up, lambdap)?);
    let printed = s3_deformed_add_first_order(u, lambda, up, lambdap);
    Ok(exact.iter().zip(printed).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max))
}

/// As [`s3_first_order_residual`] for the second-order composition.
pub fn s3_second_order_residual(u: [f64; 3], lambda: [f64; 2], up: [f64; 3], lambdap: [f64; 2]) -> Result<f64> {
    let exact = s3_phase_part(&s3_deformed_add_numeric(u, lambda, up, lambdap)?);
    let approx = s3_phase_part(&s3_deformed_add_second_order(u, lambda, up, lambdap)?);
    Ok(exact.iter().zip(approx).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max))
}

/// `det [[−1, u₂, u₂'], [−1, u₃, u₃'], [−1, u₅, u₅']]`.
pub fn omega0_s3(u: [f64; 3], up: [f64; 3]) -> f64 {
    let m = nalgebra::Matrix3::new(-1.0, u[0], up[0], -1.0, u[1], up[1], -1.0, u[2], up[2]);
    m.determinant()
}

/// The expanded form `u₂u₅' − u₂'u₅ + u₃u₂' − u₃'u₂ + u₅u₃' − u₅'u₃`.
pub fn omega0_s3_expanded(u: [f64; 3], up: [f64; 3]) -> f64 {
    let [u2, u3, u5] = u;
    let [u2p, u3p, u5p] = up;
    u2 * u5p - u2p * u5 + u3 * u2p - u3p * u2 + u5 * u3p - u5p * u3
}

/// For a central `z`, `exp(i(x + c z)) = exp(icz) exp(ix)`; returns the
/// largest coefficient deviation. Errors when `z` is not central.
pub fn center_phase_check(x: &GroupAlgebraElement, z: usize, c: f64) -> Result<f64> {
    if !x.group.center.contains(&z) {
        return Err(Error::InvalidGroup(format!("{} is not central in {}", x.group.labels[z], x.group.name)));
    }
    let zc = GroupAlgebraElement::basis(&x.group, z).scale(Complex64::new(c, 0.0));
    let lhs = regular_rep_exp(&x.add(&zc)?);
    let rhs = gmul_algebra(&regular_rep_exp(&zc), &regular_rep_exp(x))?;
    Ok(lhs.max_abs_diff(&rhs))
}
