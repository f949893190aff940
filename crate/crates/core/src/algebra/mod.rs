//! Exact linear algebra: fields, sparse matrices, elimination, and graded
//! chain complexes.

pub mod complex;
pub mod field;
pub mod graded;
pub mod laurent;
pub mod reduce;
pub mod sparse;

pub use complex::{ComplexError, GradedChainComplex};
pub use field::{ExactField, Field, Rational, F2};
pub use graded::{BigradedDims, DeltaGradedDims, TableParseError};
pub use laurent::LaurentPoly;
pub use reduce::{Cancellation, Reducer};
pub use sparse::SparseMatrix;
