//! Scalar trait bounds for the dense kernels.

use std::fmt::Debug;

use num::traits::{FromPrimitive, Num, Signed};

/// Field element the matrix, polynomial, and elimination kernels are generic
/// over. Satisfied by `f32`/`f64` and by exact rationals.
pub trait Scalar: Num + Signed + FromPrimitive + Clone + Debug {}

impl<T> Scalar for T where T: Num + Signed + FromPrimitive + Clone + Debug {}

/// Marker for scalars whose arithmetic is exact (no rounding anywhere).
///
/// Verdicts such as shift-enabledness or representability reduce to exact
/// equalities of field elements, so they are only offered over these types.
pub trait ExactScalar: Scalar {}

impl ExactScalar for num::BigRational {}
