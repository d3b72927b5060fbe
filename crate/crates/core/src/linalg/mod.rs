//! Exact rational scalars, dense matrices and the elimination kernels built on them.

pub mod form;
pub mod matrix;
pub mod rational;
pub mod signature;
pub mod span;

pub use form::{FormKind, GramForm};
pub use matrix::{standard_complex, RationalMatrix};
pub use rational::{q, Rational};
pub use signature::{symmetric_signature, Signature};
pub use span::{coordinates_in_basis, span_dim, CoordinateSolver, Membership};
