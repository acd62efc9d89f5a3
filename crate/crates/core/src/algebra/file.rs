//! JSON algebra spec files.
//!
//! ```json
//! { "name": "su2", "dim": 3, "labels": ["s1", "s2", "s3"],
//!   "structure_constants": [[0, 1, 2, 0.0, 2.0], [1, 0, 2, 0.0, -2.0]],
//!   "abelian": [2], "raising": [0], "lowering": [1],
//!   "representations": [{ "d": 2, "matrices": [[[0,0],[1,0],[1,0],[0,0]]] }] }
//! ```
//!
//! Structure constants are sparse `[i, j, k, re, im]` entries; omitted ones
//! are zero and no antisymmetric partner is implied. Each matrix is a flat
//! row-major list of `[re, im]` pairs.

use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{Chart, LieAlgebraSpec, RegistryEntry, Representation};
use crate::error::{Error, Result};
use crate::linalg::CMatrix;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RepFile {
    pub d: usize,
    #[serde(default)]
    pub label: Option<String>,
    pub matrices: Vec<Vec<[f64; 2]>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SpecFile {
    pub name: String,
    pub dim: usize,
    pub labels: Vec<String>,
    pub structure_constants: Vec<[f64; 5]>,
    pub abelian: Vec<usize>,
    pub raising: Vec<usize>,
    pub lowering: Vec<usize>,
    #[serde(default)]
    pub representations: Vec<RepFile>,
}

fn format_err(path: &Path, message: impl Into<String>) -> Error {
    Error::SpecFormat { path: path.display().to_string(), message: message.into() }
}

fn as_index(x: f64, dim: usize, path: &Path) -> Result<usize> {
    if x < 0.0 || x.fract() != 0.0 || x as usize >= dim {
        return Err(format_err(path, format!("structure-constant index {x} is not in 0..{dim}")));
    }
    Ok(x as usize)
}

impl SpecFile {
    pub fn into_entry(self, path: &Path) -> Result<RegistryEntry> {
        if self.labels.len() != self.dim {
            return Err(format_err(path, format!("dim is {} but {} labels were given", self.dim, self.labels.len())));
        }
        let labels: Vec<&str> = self.labels.iter().map(|s| s.as_str()).collect();
        let mut spec = LieAlgebraSpec::new(self.name.clone(), &labels, &self.abelian, &self.raising, &self.lowering);
        for [i, j, k, re, im] in self.structure_constants {
            let (i, j, k) = (as_index(i, self.dim, path)?, as_index(j, self.dim, path)?, as_index(k, self.dim, path)?);
            spec.set(i, j, k, Complex64::new(re, im));
        }
        let mut reps = Vec::new();
        for (n, r) in self.representations.into_iter().enumerate() {
            if r.matrices.len() != self.dim {
                return Err(format_err(path, format!("representation {n} has {} matrices for dim {}", r.matrices.len(), self.dim)));
            }
            let mut mats = Vec::new();
            for m in r.matrices {
                if m.len() != r.d * r.d {
                    return Err(format_err(path, format!("representation {n}: matrix has {} entries, expected {}", m.len(), r.d * r.d)));
                }
                let entries: Vec<Complex64> = m.iter().map(|[re, im]| Complex64::new(*re, *im)).collect();
                mats.push(CMatrix::from_row_slice(r.d, r.d, &entries));
            }
            let label = r.label.unwrap_or_else(|| format!("rep{n}"));
            reps.push(Representation::new(label, mats)?);
        }
        let report = spec.validate();
        if !report.is_valid() {
            let list: Vec<String> = report
                .violations
                .iter()
                .map(|v| format!("{} (residual {:.3e}, {})", v.invariant, v.residual, v.detail))
                .collect();
            return Err(Error::InvalidAlgebra(format!("{}: {}", spec.name, list.join("; "))));
        }
        Ok(RegistryEntry { spec, reps, chart: Chart::None })
    }
}

/// Reads and validates a spec file; JSON errors carry line and column.
pub fn load_spec_file(path: &Path) -> Result<RegistryEntry> {
    let text = std::fs::read_to_string(path)?;
    let file: SpecFile = serde_json::from_str(&text)
        .map_err(|e| format_err(path, format!("line {} column {}: {e}", e.line(), e.column())))?;
    file.into_entry(path)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrips_su2_from_json() {
        let text = r#"{ "name": "mysu2", "dim": 3, "labels": ["a","b","c"],
            "structure_constants": [[0,1,2,0,2],[1,0,2,0,-2],[1,2,0,0,2],[2,1,0,0,-2],[2,0,1,0,2],[0,2,1,0,-2]],
            "abelian": [2], "raising": [0], "lowering": [1],
            "representations": [{ "d": 2, "matrices": [
                [[0,0],[1,0],[1,0],[0,0]], [[0,0],[0,-1],[0,1],[0,0]], [[1,0],[0,0],[0,0],[-1,0]] ] }] }"#;
        let file: SpecFile = serde_json::from_str(text).unwrap();
        let entry = file.into_entry(Path::new("mem")).unwrap();
        assert_eq!(entry.spec.dim(), 3);
        assert!(entry.reps[0].faithfulness_residual(&entry.spec) < 1e-15);
    }

    #[test]
    fn missing_partner_is_rejected() {
        let text = r#"{ "name": "bad", "dim": 2, "labels": ["a","b"],
            "structure_constants": [[0,1,1,1,0]], "abelian": [0], "raising": [1], "lowering": [] }"#;
        let file: SpecFile = serde_json::from_str(text).unwrap();
        assert!(matches!(file.into_entry(Path::new("mem")), Err(Error::InvalidAlgebra(_))));
    }
}
