//! Exact scalars, dense matrices and univariate polynomials.

pub mod algebraic;
pub mod field;
pub mod mat;
pub mod poly;

pub use algebraic::{AlgebraicNumber, ExtensionContext};
pub use field::{format_rational, int, parse_rational, rational, Field, Fp, Rational, Scalar};
pub use mat::{
    bareiss_determinant, charpoly_discriminant, commutator, kernel_basis, random_matrix, rank, Mat,
};
pub use poly::{charpoly, rational_roots, Poly};
