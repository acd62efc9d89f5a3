//! Lie algebras given by structure constants, with a declared split into a
//! maximal abelian part and raising/lowering root vectors.

mod file;
pub mod registry;
mod rep;

pub use file::{load_spec_file, SpecFile};
pub use registry::{AlgebraRegistry, Chart, RegistryEntry};
pub use rep::{spin_matrices, Representation};

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

/// Residual allowed for antisymmetry, Jacobi and abelianness checks.
pub const STRUCTURE_TOL: f64 = 1e-12;

/// Where a basis index sits in the declared decomposition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasisRole {
    Raising(usize),
    Lowering(usize),
    Abelian(usize),
}

/// `[T_i, T_j] = Σ_k c[i][j][k] T_k` plus the declared decomposition.
#[derive(Clone, Debug, PartialEq)]
pub struct LieAlgebraSpec {
    pub name: String,
    pub labels: Vec<String>,
    constants: Vec<Complex64>,
    pub abelian: Vec<usize>,
    pub raising: Vec<usize>,
    pub lowering: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Violation {
    pub invariant: String,
    pub residual: f64,
    pub detail: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    /// Observations that are not errors, e.g. unpaired root vectors of a
    /// solvable algebra.
    pub notes: Vec<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, invariant: &str) -> bool {
        self.violations.iter().any(|v| v.invariant == invariant)
    }
}

impl LieAlgebraSpec {
    /// An algebra with all brackets zero; fill them with [`Self::with_bracket`].
    pub fn new(
        name: impl Into<String>,
        labels: &[&str],
        abelian: &[usize],
        raising: &[usize],
        lowering: &[usize],
    ) -> Self {
        let dim = labels.len();
        LieAlgebraSpec {
            name: name.into(),
            labels: labels.iter().map(|s| s.to_string()).collect(),
            constants: vec![Complex64::new(0.0, 0.0); dim * dim * dim],
            abelian: abelian.to_vec(),
            raising: raising.to_vec(),
            lowering: lowering.to_vec(),
        }
    }

    /// The zero-dimensional algebra, neutral for [`direct_sum`].
    pub fn zero() -> Self {
        Self::new("0", &[], &[], &[], &[])
    }

    /// Sets `[T_i, T_j] = Σ c_k T_k` and the antisymmetric partner.
    pub fn with_bracket(mut self, i: usize, j: usize, terms: &[(usize, Complex64)]) -> Self {
        for &(k, c) in terms {
            self.set(i, j, k, c);
            self.set(j, i, k, -c);
        }
        self
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    fn idx(&self, i: usize, j: usize, k: usize) -> usize {
        let n = self.dim();
        (i * n + j) * n + k
    }

    pub fn c(&self, i: usize, j: usize, k: usize) -> Complex64 {
        self.constants[self.idx(i, j, k)]
    }

    /// Raw setter; does not touch `c[j][i][k]`.
    pub fn set(&mut self, i: usize, j: usize, k: usize, value: Complex64) {
        let at = self.idx(i, j, k);
        self.constants[at] = value;
    }

    pub fn constants(&self) -> &[Complex64] {
        &self.constants
    }

    pub fn role(&self, k: usize) -> Option<BasisRole> {
        if let Some(p) = self.raising.iter().position(|&x| x == k) {
            return Some(BasisRole::Raising(p));
        }
        if let Some(p) = self.lowering.iter().position(|&x| x == k) {
            return Some(BasisRole::Lowering(p));
        }
        self.abelian.iter().position(|&x| x == k).map(BasisRole::Abelian)
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// `[x, y]_k = Σ_ij x_i y_j c[i][j][k]`.
    pub fn commutator(&self, x: &[Complex64], y: &[Complex64]) -> Result<Vec<Complex64>> {
        let n = self.dim();
        for v in [x, y] {
            if v.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: v.len() });
            }
        }
        let mut out = vec![Complex64::new(0.0, 0.0); n];
        for i in 0..n {
            if x[i] == Complex64::new(0.0, 0.0) {
                continue;
            }
            for j in 0..n {
                if y[j] == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let xy = x[i] * y[j];
                for (k, o) in out.iter_mut().enumerate() {
                    *o += xy * self.c(i, j, k);
                }
            }
        }
        Ok(out)
    }

    fn unit(&self, i: usize) -> Vec<Complex64> {
        let mut e = vec![Complex64::new(0.0, 0.0); self.dim()];
        e[i] = Complex64::new(1.0, 0.0);
        e
    }

    /// Checks every declared invariant and reports the worst residual of each
    /// kind that fails.
    pub fn validate(&self) -> ValidationReport {
        let n = self.dim();
        let mut report = ValidationReport::default();
        if self.constants.len() != n * n * n {
            report.violations.push(Violation {
                invariant: "shape".into(),
                residual: f64::INFINITY,
                detail: format!("expected {} structure constants, found {}", n * n * n, self.constants.len()),
            });
            return report;
        }

        let mut anti = (0.0f64, String::new());
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let r = (self.c(i, j, k) + self.c(j, i, k)).norm();
                    if r > anti.0 {
                        anti = (r, format!("c[{i}][{j}][{k}] + c[{j}][{i}][{k}]"));
                    }
                }
            }
        }
        if anti.0 > STRUCTURE_TOL {
            report.violations.push(Violation { invariant: "antisymmetry".into(), residual: anti.0, detail: anti.1 });
        }

        let mut jac = (0.0f64, String::new());
        for i in 0..n {
            for j in (i + 1)..n {
                for k in (j + 1)..n {
                    let (ei, ej, ek) = (self.unit(i), self.unit(j), self.unit(k));
                    let a = self.commutator(&ei, &self.commutator(&ej, &ek).unwrap()).unwrap();
                    let b = self.commutator(&ej, &self.commutator(&ek, &ei).unwrap()).unwrap();
                    let c = self.commutator(&ek, &self.commutator(&ei, &ej).unwrap()).unwrap();
                    let r = (0..n).map(|m| (a[m] + b[m] + c[m]).norm()).fold(0.0, f64::max);
                    if r > jac.0 {
                        jac = (r, format!("({}, {}, {})", self.labels[i], self.labels[j], self.labels[k]));
                    }
                }
            }
        }
        if jac.0 > STRUCTURE_TOL {
            report.violations.push(Violation { invariant: "jacobi".into(), residual: jac.0, detail: jac.1 });
        }

        let mut ab = (0.0f64, String::new());
        for &i in &self.abelian {
            for &j in &self.abelian {
                if i >= n || j >= n {
                    continue;
                }
                for k in 0..n {
                    let r = self.c(i, j, k).norm();
                    if r > ab.0 {
                        ab = (r, format!("[{}, {}]", self.labels[i], self.labels[j]));
                    }
                }
            }
        }
        if ab.0 > STRUCTURE_TOL {
            report.violations.push(Violation { invariant: "abelian".into(), residual: ab.0, detail: ab.1 });
        }

        let mut seen = vec![0usize; n];
        let mut out_of_range = false;
        for &k in self.abelian.iter().chain(&self.raising).chain(&self.lowering) {
            if k < n {
                seen[k] += 1;
            } else {
                out_of_range = true;
            }
        }
        if out_of_range || seen.iter().any(|&s| s != 1) {
            report.violations.push(Violation {
                invariant: "partition".into(),
                residual: 1.0,
                detail: "abelian, raising and lowering indices must partition the basis".into(),
            });
        }
        if self.raising.len() != self.lowering.len() {
            report.notes.push(format!(
                "{} raising vs {} lowering root vectors: roots are unpaired (expected for non-semisimple algebras)",
                self.raising.len(),
                self.lowering.len()
            ));
        }
        report
    }

    /// `dim Γ = n − l`.
    pub fn phase_space_dim(&self) -> usize {
        self.dim() - self.abelian.len()
    }

    /// Dimension of the part of the abelian subalgebra that no bracket of two
    /// root vectors reaches.
    pub fn defficiency(&self) -> usize {
        let roots: Vec<usize> = self.raising.iter().chain(&self.lowering).copied().collect();
        let l = self.abelian.len();
        if l == 0 {
            return 0;
        }
        let mut rows: Vec<Complex64> = Vec::new();
        let mut count = 0;
        for &a in &roots {
            for &b in &roots {
                let br = self.commutator(&self.unit(a), &self.unit(b)).unwrap();
                rows.extend(self.abelian.iter().map(|&h| br[h]));
                count += 1;
            }
        }
        if count == 0 {
            return l;
        }
        let m = DMatrix::from_row_slice(count, l, &rows);
        let sv = m.svd(false, false).singular_values;
        let rank = sv.iter().filter(|&&s| s > 1e-10).count();
        l - rank
    }
}

/// Block-diagonal sum; index sets of `b` are shifted by `a.dim()`.
pub fn direct_sum(a: &LieAlgebraSpec, b: &LieAlgebraSpec) -> Result<LieAlgebraSpec> {
    for s in [a, b] {
        let report = s.validate();
        if !report.is_valid() {
            return Err(Error::InvalidAlgebra(format!(
                "{}: {}",
                s.name,
                report.violations.iter().map(|v| v.invariant.as_str()).collect::<Vec<_>>().join(", ")
            )));
        }
    }
    if a.dim() == 0 {
        return Ok(b.clone());
    }
    if b.dim() == 0 {
        return Ok(a.clone());
    }
    let na = a.dim();
    let labels: Vec<String> = a
        .labels
        .iter()
        .map(|l| format!("{l}.1"))
        .chain(b.labels.iter().map(|l| format!("{l}.2")))
        .collect();
    let label_refs: Vec<&str> = labels.iter().map(|s| s.as_str()).collect();
    let shift = |v: &[usize]| v.iter().map(|&k| k + na).collect::<Vec<_>>();
    let cat = |x: &[usize], y: &[usize]| x.iter().copied().chain(shift(y)).collect::<Vec<_>>();
    let mut out = LieAlgebraSpec::new(
        format!("{}+{}", a.name, b.name),
        &label_refs,
        &cat(&a.abelian, &b.abelian),
        &cat(&a.raising, &b.raising),
        &cat(&a.lowering, &b.lowering),
    );
    for i in 0..na {
        for j in 0..na {
            for k in 0..na {
                out.set(i, j, k, a.c(i, j, k));
            }
        }
    }
    let nb = b.dim();
    for i in 0..nb {
        for j in 0..nb {
            for k in 0..nb {
                out.set(i + na, j + na, k + na, b.c(i, j, k));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ci(x: f64) -> Complex64 {
        Complex64::new(0.0, x)
    }

    #[test]
    fn su2_brackets_and_structure() {
        let reg = AlgebraRegistry::builtin();
        let su2 = &reg.get("su2").unwrap().spec;
        let e1 = su2.unit(0);
        let e2 = su2.unit(1);
        let br = su2.commutator(&e1, &e2).unwrap();
        assert_eq!(br, vec![Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0), ci(2.0)]);
        assert!(su2.validate().is_valid());
        assert_eq!(su2.phase_space_dim(), 2);
        assert_eq!(su2.defficiency(), 0);
    }

    #[test]
    fn antisymmetric_perturbation_breaks_jacobi() {
        let reg = AlgebraRegistry::builtin();
        let mut su2 = reg.get("su2").unwrap().spec.clone();
        // [σ1,σ2] = 2iσ3 + σ1, partner included: antisymmetric, Jacobi sum 2iσ2.
        su2.set(0, 1, 0, Complex64::new(1.0, 0.0));
        su2.set(1, 0, 0, Complex64::new(-1.0, 0.0));
        let report = su2.validate();
        assert!(report.has("jacobi"));
        assert!(!report.has("antisymmetry"));
    }

    #[test]
    fn non_commuting_abelian_declaration_is_flagged() {
        let reg = AlgebraRegistry::builtin();
        let mut su2 = reg.get("su2").unwrap().spec.clone();
        su2.abelian = vec![1, 2];
        su2.lowering = vec![];
        assert!(su2.validate().has("abelian"));
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let reg = AlgebraRegistry::builtin();
        let su2 = &reg.get("su2").unwrap().spec;
        let err = su2.commutator(&[Complex64::new(1.0, 0.0)], &su2.unit(0));
        assert!(matches!(err, Err(Error::DimensionMismatch { expected: 3, found: 1 })));
    }

    #[test]
    fn abelian_algebra_brackets_vanish() {
        let ab = LieAlgebraSpec::new("u1x2", &["a", "b"], &[0, 1], &[], &[]);
        let br = ab.commutator(&ab.unit(0), &ab.unit(1)).unwrap();
        assert!(br.iter().all(|z| z.norm() == 0.0));
        assert_eq!(ab.defficiency(), 2);
    }

    #[test]
    fn sum_with_zero_algebra_is_identity() {
        let reg = AlgebraRegistry::builtin();
        let su3 = &reg.get("su3").unwrap().spec;
        assert_eq!(&direct_sum(su3, &LieAlgebraSpec::zero()).unwrap(), su3);
        assert_eq!(&direct_sum(&LieAlgebraSpec::zero(), su3).unwrap(), su3);
    }

    #[test]
    fn defficiency_of_solvable_algebras() {
        let reg = AlgebraRegistry::builtin();
        assert_eq!(reg.get("solvable2").unwrap().spec.defficiency(), 1);
        assert_eq!(reg.get("su3").unwrap().spec.defficiency(), 0);
    }
}
