//! Exact computations on primitive substitutions and stationary Bratteli
//! diagrams.
//!
//! The crate is organised bottom-up:
//!
//! * [`exact`]: big rationals, integer polynomials (with factorisation and
//!   real root isolation), number fields with certified real signs, exact
//!   matrices and Hermite normal forms.
//! * [`perron`]: exact Perron–Frobenius data of primitive integer matrices
//!   and the multiplication-by-λ operators on coordinates.
//! * [`subst`]: substitutions, fixed points, factor languages and the
//!   complexity function.
//! * [`bratteli`]: stationary ordered Bratteli diagrams, telescoping, the
//!   Vershik successor on finite paths and cylinder measures.
//! * [`clopen`]: the group generated by the Perron eigenvector as a lattice
//!   and the clopen-values invariant built from it.
//! * [`construct`]: builders for orbit-equivalent families, matrix
//!   enlargement and vertex minimisation, each returning re-checked
//!   certificates.

pub mod bratteli;
pub mod clopen;
pub mod construct;
pub mod error;
pub mod exact;
pub mod perron;
pub mod subst;

pub use error::{Error, Result};
