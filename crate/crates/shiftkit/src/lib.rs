//! Exact analysis of graph shift matrices and the filters that commute with
//! them.
//!
//! The crate answers one question in several forms: when is a shift-invariant
//! graph filter a polynomial in the shift matrix? An exact-arithmetic core
//! (rational scalars, dense matrices, fraction-free elimination) feeds the
//! verdict layer: characteristic and minimal polynomials with the
//! shift-enabled predicate ([`spectra`]), commutant bases and their structure
//! ([`commutant`]), representability tests with machine-checkable
//! certificates and a seeded conversion-search harness ([`represent`]), and a
//! bundled end-to-end counterexample ([`counterexample`]). A separate
//! floating-point path applies polynomial filters to signals through repeated
//! sparse matrix-vector products ([`filterbank`]).
//!
//! Dense kernels are generic over [`Scalar`]; verdicts additionally require
//! [`ExactScalar`] because they rest on exact equality. Concrete aliases for
//! the rational instantiation ([`Rat`], [`MatQ`], [`PolyQ`]) and the float
//! one ([`MatF`], [`SparseMatF`]) live at the crate root.

pub mod commutant;
pub mod counterexample;
pub mod elim;
pub mod error;
pub mod filterbank;
pub mod io;
pub mod mat;
pub mod poly;
pub mod report;
pub mod represent;
pub mod scalar;
pub mod spectra;

pub use error::{Error, Result};
pub use scalar::{ExactScalar, Scalar};

/// Exact rational scalar used by all verdict-level computations.
pub type Rat = num::BigRational;
/// Dense rational matrix.
pub type MatQ = mat::Mat<Rat>;
/// Rational polynomial, ascending coefficients.
pub type PolyQ = poly::Poly<Rat>;
/// Dense double-precision matrix (bench reference path).
pub type MatF = mat::Mat<f64>;
/// Double-precision polynomial.
pub type PolyF = poly::Poly<f64>;
/// Row-compressed sparse matrix over f64.
pub type SparseMatF = filterbank::SparseMat<f64>;
/// Double-precision signal.
pub type SignalF = filterbank::Signal<f64>;

/// Default RNG seed used when none is supplied; echoed in every report.
pub const DEFAULT_SEED: u64 = 42;
