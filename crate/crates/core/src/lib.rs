//! Exact computation with translation- and dilation-invariant spaces of
//! multivariate polynomials.
//!
//! * [`multiindex`]: multi-indices, the componentwise order, and lower sets
//!   (the index sets of translation-dilation invariant spaces).
//! * [`polynomial`]: sparse polynomials over ℚ, parsing and printing.
//! * [`operators`]: translation, dilation, derivatives, finite differences.
//! * [`invariant_spaces`]: exact subspaces and the orbits `τ(p)`, `σ(p)`,
//!   `τσ(p)`.
//! * [`harness`]: randomized oracles and the closure demonstrator.
//! * [`muntz`]: floating-point least-squares demo of a dilation-invariant
//!   space that is not closed under pointwise limits.

pub mod error;
pub mod harness;
pub mod invariant_spaces;
mod linalg;
pub mod multiindex;
pub mod muntz;
pub mod operators;
pub mod polynomial;

pub use error::{Error, Result};
pub use invariant_spaces::PolySpace;
pub use multiindex::{ExtendedMultiIndex, Extent, LowerSet, MultiIndex};
pub use operators::OperatorMode;
pub use polynomial::{Point, Polynomial, Rational};
