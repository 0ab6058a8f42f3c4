//! Exact arithmetic in the rational affine Schur algebra `S(n, r)`.
//!
//! Basis elements `[A]_1` are indexed by `Z`-periodic `N`-matrices of total
//! weight `r` ([`lattice::AffineMatrix`]). Products with generator-type left
//! factors use closed forms ([`engine`]); general products go through the
//! PBW normal form ([`pbw`]). [`presentation`] checks the defining relations
//! of the algebra by generators and relations.

pub mod element;
pub mod engine;
pub mod error;
pub mod generator;
pub mod json;
pub mod lattice;
pub mod pbw;
pub mod presentation;

pub use element::{bracket_element, idempotent, AlgebraElement, ExponentVector, Rational};
pub use error::{Error, Result};
pub use generator::Generator;
pub use lattice::{canonicalize, enumerate_compositions, AffineMatrix, Composition};
