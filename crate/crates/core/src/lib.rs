//! Exact arithmetic in quantum affine wreath algebras over symmetric
//! superalgebras and in their cyclotomic quotients.

pub mod affine;
pub mod cyclotomic;
pub mod error;
pub mod expr;
pub mod laurent;
pub mod linalg;
pub mod lincomb;
pub mod par;
pub mod perm;
pub mod random;
pub mod scalar;
pub mod serial;
pub mod suite;
pub mod superalgebra;
pub mod tensor;

pub use affine::{AffineContext, AffineElement, Symmetry, Term};
pub use cyclotomic::{CycloContext, CyclotomicElement, CyclotomicPoly, CyclotomicSpec, Tower};
pub use error::{Error, Result};
pub use expr::Expr;
pub use laurent::{ActMode, Exps, LaurentElement, Monomial};
pub use lincomb::LinComb;
pub use par::Execution;
pub use perm::Permutation;
pub use scalar::Scalar;
pub use superalgebra::{SuperAlgebra, SuperAlgebraSpec};
pub use tensor::{Slots, TensorElement};
