//! Exact linear algebra over ℚ, 𝔽_p and ℤ.

mod error;
mod field;
mod integer;
mod matrix;
mod span;

pub use error::XalgError;
pub use field::{
    format_rational, is_prime, parse_rational, prime_divisors, valuation, valuation_rational,
    Field, PrimeField, Rationals,
};
pub use integer::{
    bareiss_det, bareiss_rank, column_hermite, elementary_divisors, integer_kernel_saturated,
    is_saturated, IntMatrix,
};
pub use matrix::{
    determinant, kernel_basis, orthogonal_complement, rank_of, row_space, same_span, Echelon,
    Matrix,
};
pub use span::{centralizer_dimension, span_dimension, IncrementalBasis};
