//! Transformation shift registers over finite fields.
//!
//! A periodic TSR of order `n` over `F_{q^m}` is given by feedback scalars
//! `c_1, ..., c_{n-1}` in `F_q` and an invertible `m x m` matrix `B`; its
//! state evolves by the block companion matrix whose last block column is
//! `(B, c_1 B, ..., c_{n-1} B)`. This crate builds the fields and
//! polynomials involved, simulates and classifies TSRs, and counts the
//! irreducible ones both by exhaustive enumeration and by closed formulas.

pub mod arith;
pub mod census;
pub mod error;
pub mod formulas;
pub mod gf;
pub mod matrix;
pub mod poly;
pub mod tsr;
pub mod verify;

pub use error::{Error, Result};
pub use gf::{Elem, Field, FieldElement};
pub use matrix::MatrixFq;
pub use poly::Poly;
pub use tsr::{Classification, PeriodFinder, TsrSpec, TsrState};
