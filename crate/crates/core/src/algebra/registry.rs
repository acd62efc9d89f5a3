//! Built-in algebras and user-loaded spec files.
//!
//! Conventions fixed here:
//! - `su2`: basis `(σ1, σ2, σ3)`, `[σ_j, σ_k] = 2i ε_jkl σ_l`; raising `σ1`
//!   (coordinate `u`), lowering `σ2` (coordinate `v`, entering with `−v`),
//!   abelian `σ3`. Spin-`l` representations use `T_k = 2 J_k`.
//! - `su11`: matrices `X1 = σ1`, `X2 = −σ2`, `H = iσ3`; the brackets are read
//!   off these matrices: `[H, X1] = 2 X2`, `[H, X2] = −2 X1`, `[X1, X2] = −2 H`.
//! - `su3`: Gell-Mann `λ_1..λ_8`, `[λ_a, λ_b] = 2i f_abc λ_c`; abelian
//!   `λ3, λ8`, raising `λ1, λ4, λ6`, lowering `λ2, λ5, λ7`.
//! - `heisenberg_flat`: `(p, q, 1)` with `[p, q] = −i·1`, realized by
//!   strictly upper triangular 3×3 matrices (faithful, not unitary).
//! - `mobius4`: `(h, e, f, g)` with `[h, e] = e`, `[h, f] = f`, `[g, f] = e`,
//!   abelian part `span{h, g}`.
//! - `solvable2`: `(h, x)` with `[h, x] = x`.

use std::path::{Path, PathBuf};

use num_complex::Complex64;

use super::{direct_sum, load_spec_file, spin_matrices, LieAlgebraSpec, Representation};
use crate::error::{Error, Result};
use crate::linalg::{self, c, CMatrix};

/// Which constraint surface the Weyl machinery uses for an entry.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Chart {
    /// Symbolic only; consumed by the flat Moyal module.
    Flat,
    /// `u² + v² + λ² = r²` with `Tr Π = 1` fixing `r` per representation.
    Sphere,
    /// `u² + v² − λ² = z²`, compact patch in the rapidity.
    Hyperboloid,
    /// Adjoint orbit of a regular Cartan element with `Tr Π = 1`.
    Su3Orbit,
    /// Direct sums: product of the factors' charts.
    Product,
    None,
}

#[derive(Clone, Debug)]
pub struct RegistryEntry {
    pub spec: LieAlgebraSpec,
    pub reps: Vec<Representation>,
    pub chart: Chart,
}

impl RegistryEntry {
    /// Selects a representation by label (`l=1/2`, `l=0.5`, `fundamental`,
    /// `adjoint`) or position; `None` picks the first.
    pub fn representation(&self, selector: Option<&str>) -> Result<&Representation> {
        let Some(sel) = selector else {
            return self.reps.first().ok_or_else(|| Error::UnknownRepresentation {
                algebra: self.spec.name.clone(),
                selector: "<default>".into(),
            });
        };
        let norm = normalize_selector(sel);
        self.reps
            .iter()
            .find(|r| normalize_selector(&r.label) == norm)
            .or_else(|| sel.parse::<usize>().ok().and_then(|i| self.reps.get(i)))
            .ok_or_else(|| Error::UnknownRepresentation { algebra: self.spec.name.clone(), selector: sel.into() })
    }
}

fn normalize_selector(s: &str) -> String {
    let s = s.trim().replace(' ', "");
    if let Some(rest) = s.strip_prefix("l=") {
        let value = if let Some((n, d)) = rest.split_once('/') {
            n.parse::<f64>().ok().zip(d.parse::<f64>().ok()).map(|(n, d)| n / d)
        } else {
            rest.parse::<f64>().ok()
        };
        if let Some(v) = value {
            return format!("l={}", (2.0 * v).round() as i64);
        }
    }
    s.to_lowercase()
}

#[derive(Clone, Debug)]
pub struct AlgebraRegistry {
    entries: Vec<RegistryEntry>,
}

fn z() -> Complex64 {
    c(0.0, 0.0)
}

fn pauli() -> [CMatrix; 3] {
    let (o, i) = (c(1.0, 0.0), c(0.0, 1.0));
    [
        linalg::from_rows(2, &[z(), o, o, z()]),
        linalg::from_rows(2, &[z(), -i, i, z()]),
        linalg::from_rows(2, &[o, z(), z(), -o]),
    ]
}

pub(crate) fn su2_spec() -> LieAlgebraSpec {
    let two_i = c(0.0, 2.0);
    LieAlgebraSpec::new("su2", &["sigma1", "sigma2", "sigma3"], &[2], &[0], &[1])
        .with_bracket(0, 1, &[(2, two_i)])
        .with_bracket(1, 2, &[(0, two_i)])
        .with_bracket(2, 0, &[(1, two_i)])
}

pub(crate) fn su2_rep(two_l: u32) -> Representation {
    let mats = spin_matrices(two_l).map(|m| m * c(2.0, 0.0)).to_vec();
    let label = if two_l.is_multiple_of(2) { format!("l={}", two_l / 2) } else { format!("l={two_l}/2") };
    Representation::new(label, mats).unwrap().unitary(true)
}

fn su11() -> RegistryEntry {
    let [s1, s2, s3] = pauli();
    let mats = vec![s1, -s2, s3 * c(0.0, 1.0)];
    let spec = LieAlgebraSpec::new("su11", &["X1", "X2", "H"], &[2], &[0], &[1])
        .with_bracket(2, 0, &[(1, c(2.0, 0.0))])
        .with_bracket(2, 1, &[(0, c(-2.0, 0.0))])
        .with_bracket(0, 1, &[(2, c(-2.0, 0.0))]);
    let rep = Representation::new("fundamental", mats).unwrap();
    RegistryEntry { spec, reps: vec![rep], chart: Chart::Hyperboloid }
}

/// Gell-Mann matrices `λ_1..λ_8`.
pub fn gell_mann() -> Vec<CMatrix> {
    let mut out = Vec::with_capacity(8);
    let mut m = |entries: &[(usize, usize, Complex64)]| {
        let mut a = CMatrix::zeros(3, 3);
        for &(r, col, v) in entries {
            a[(r, col)] = v;
        }
        out.push(a);
    };
    let (o, i) = (c(1.0, 0.0), c(0.0, 1.0));
    let s = 1.0 / 3f64.sqrt();
    m(&[(0, 1, o), (1, 0, o)]);
    m(&[(0, 1, -i), (1, 0, i)]);
    m(&[(0, 0, o), (1, 1, -o)]);
    m(&[(0, 2, o), (2, 0, o)]);
    m(&[(0, 2, -i), (2, 0, i)]);
    m(&[(1, 2, o), (2, 1, o)]);
    m(&[(1, 2, -i), (2, 1, i)]);
    m(&[(0, 0, c(s, 0.0)), (1, 1, c(s, 0.0)), (2, 2, c(-2.0 * s, 0.0))]);
    out
}

/// Totally antisymmetric `f_abc` of su3 (0-based), nonzero entries with `a < b < c`.
pub fn su3_f_entries() -> Vec<(usize, usize, usize, f64)> {
    let h = 0.5;
    let r = 3f64.sqrt() / 2.0;
    vec![
        (0, 1, 2, 1.0),
        (0, 3, 6, h),
        (0, 4, 5, -h),
        (1, 3, 5, h),
        (1, 4, 6, h),
        (2, 3, 4, h),
        (2, 5, 6, -h),
        (3, 4, 7, r),
        (5, 6, 7, r),
    ]
}

pub(crate) fn su3_spec() -> LieAlgebraSpec {
    let labels = ["lambda1", "lambda2", "lambda3", "lambda4", "lambda5", "lambda6", "lambda7", "lambda8"];
    let mut spec = LieAlgebraSpec::new("su3", &labels, &[2, 7], &[0, 3, 5], &[1, 4, 6]);
    for (a, b, cc, f) in su3_f_entries() {
        let v = c(0.0, 2.0 * f);
        // All six orderings with the permutation sign.
        for (x, y, w, sign) in [(a, b, cc, 1.0), (b, cc, a, 1.0), (cc, a, b, 1.0), (b, a, cc, -1.0), (a, cc, b, -1.0), (cc, b, a, -1.0)] {
            spec.set(x, y, w, v * sign);
        }
    }
    spec
}

fn heisenberg() -> RegistryEntry {
    let spec = LieAlgebraSpec::new("heisenberg_flat", &["p", "q", "one"], &[2], &[0], &[1])
        .with_bracket(0, 1, &[(2, c(0.0, -1.0))]);
    let mut p = CMatrix::zeros(3, 3);
    p[(0, 1)] = c(1.0, 0.0);
    let mut q = CMatrix::zeros(3, 3);
    q[(1, 2)] = c(1.0, 0.0);
    let mut one = CMatrix::zeros(3, 3);
    one[(0, 2)] = c(0.0, 1.0);
    let rep = Representation::new("triangular", vec![p, q, one]).unwrap();
    RegistryEntry { spec, reps: vec![rep], chart: Chart::Flat }
}

fn solvable2() -> RegistryEntry {
    let spec = LieAlgebraSpec::new("solvable2", &["h", "x"], &[0], &[1], &[])
        .with_bracket(0, 1, &[(1, c(1.0, 0.0))]);
    let rep = Representation::adjoint(&spec);
    RegistryEntry { spec, reps: vec![rep], chart: Chart::None }
}

fn mobius4() -> RegistryEntry {
    let one = c(1.0, 0.0);
    let spec = LieAlgebraSpec::new("mobius4", &["h", "e", "f", "g"], &[0, 3], &[1], &[2])
        .with_bracket(0, 1, &[(1, one)])
        .with_bracket(0, 2, &[(2, one)])
        .with_bracket(3, 2, &[(1, one)]);
    let rep = Representation::adjoint(&spec);
    RegistryEntry { spec, reps: vec![rep], chart: Chart::None }
}

impl AlgebraRegistry {
    /// All built-in entries; each is validated on construction.
    pub fn builtin() -> Self {
        let su2 = su2_spec();
        let su2_entry = RegistryEntry {
            spec: su2.clone(),
            reps: vec![su2_rep(1), su2_rep(2), su2_rep(3)],
            chart: Chart::Sphere,
        };
        let su3 = RegistryEntry {
            spec: su3_spec(),
            reps: vec![Representation::new("fundamental", gell_mann()).unwrap().unitary(true)],
            chart: Chart::Su3Orbit,
        };
        let mut so4_spec = direct_sum(&su2, &su2).expect("su2 is valid");
        so4_spec.name = "so4".into();
        let so4 = RegistryEntry {
            spec: so4_spec,
            reps: vec![Representation::tensor_sum(&su2_rep(1), &su2_rep(1))],
            chart: Chart::Product,
        };
        let entries = vec![heisenberg(), su2_entry, su11(), su3, so4, solvable2(), mobius4()];
        for e in &entries {
            let report = e.spec.validate();
            assert!(report.is_valid(), "built-in {} fails validation: {:?}", e.spec.name, report.violations);
        }
        AlgebraRegistry { entries }
    }

    pub fn names(&self) -> Vec<&str> {
        self.entries.iter().map(|e| e.spec.name.as_str()).collect()
    }

    pub fn entries(&self) -> &[RegistryEntry] {
        &self.entries
    }

    pub fn get(&self, name: &str) -> Result<&RegistryEntry> {
        self.entries
            .iter()
            .find(|e| e.spec.name == name)
            .ok_or_else(|| Error::UnknownAlgebra(name.into()))
    }

    /// Adds a validated entry from a spec file, replacing any same-named one.
    pub fn load_file(&mut self, path: &Path) -> Result<&RegistryEntry> {
        let entry = load_spec_file(path)?;
        let name = entry.spec.name.clone();
        self.entries.retain(|e| e.spec.name != name);
        self.entries.push(entry);
        Ok(self.entries.last().unwrap())
    }

    /// Looks `name` up among built-ins, then as `<dir>/<name>.json` in each
    /// directory of `search_path`, then as a literal path.
    pub fn resolve(&mut self, name: &str, search_path: &[PathBuf]) -> Result<&RegistryEntry> {
        if let Some(pos) = self.entries.iter().position(|e| e.spec.name == name) {
            return Ok(&self.entries[pos]);
        }
        for dir in search_path {
            let candidate = dir.join(format!("{name}.json"));
            if candidate.is_file() {
                return self.load_file(&candidate);
            }
        }
        let literal = Path::new(name);
        if literal.extension().is_some_and(|e| e == "json") || literal.is_file() {
            return self.load_file(literal);
        }
        Err(Error::UnknownAlgebra(name.into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_builtin_rep_is_faithful() {
        let reg = AlgebraRegistry::builtin();
        for e in reg.entries() {
            for r in &e.reps {
                let res = r.faithfulness_residual(&e.spec);
                assert!(res <= 1e-12, "{} {}: residual {res}", e.spec.name, r.label);
            }
        }
    }

    #[test]
    fn su11_bracket_read_off_the_matrices() {
        let reg = AlgebraRegistry::builtin();
        let e = reg.get("su11").unwrap();
        let h = [z(), z(), c(1.0, 0.0)];
        let x1 = [c(1.0, 0.0), z(), z()];
        assert_eq!(e.spec.commutator(&h, &x1).unwrap(), vec![z(), c(2.0, 0.0), z()]);
    }

    #[test]
    fn selectors_accept_fractions_and_decimals() {
        let reg = AlgebraRegistry::builtin();
        let e = reg.get("su2").unwrap();
        assert_eq!(e.representation(Some("l=0.5")).unwrap().d(), 2);
        assert_eq!(e.representation(Some("l=1/2")).unwrap().d(), 2);
        assert_eq!(e.representation(Some("l=1")).unwrap().d(), 3);
        assert_eq!(e.representation(Some("l=3/2")).unwrap().d(), 4);
        assert!(e.representation(Some("l=7")).is_err());
    }

    #[test]
    fn phase_space_dimensions() {
        let reg = AlgebraRegistry::builtin();
        let dims: Vec<(&str, usize)> = reg.entries().iter().map(|e| (e.spec.name.as_str(), e.spec.phase_space_dim())).collect();
        assert!(dims.contains(&("su2", 2)));
        assert!(dims.contains(&("su3", 6)));
        assert!(dims.contains(&("mobius4", 2)));
        assert!(dims.contains(&("solvable2", 1)));
        assert!(dims.contains(&("so4", 4)));
    }
}
