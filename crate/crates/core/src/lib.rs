//! Generalized Wigner–Weyl–Moyal machinery.
//!
//! Translation operators `Π(ξ) = exp(i Σ u E₊ − i Σ v E₋ + i Σ λ H)` over
//! finite-dimensional Lie algebras, their Weyl symbols, trace kernels and
//! twisted products; the flat Moyal product on polynomials; BCH-deformed
//! phase-space addition; exact Grassmann, fermionic and Clifford variants;
//! and the finite group algebra of `S₃`.

pub mod algebra;
pub mod bch;
pub mod clifford;
pub mod error;
pub mod exact;
pub mod fermion;
pub mod grassmann;
pub mod group;
pub mod linalg;
pub mod moyal;
pub mod quadrature;
pub mod verify;
pub mod weyl;

pub use error::{Error, Result};
