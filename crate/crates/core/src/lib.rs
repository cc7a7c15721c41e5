//! Matroidal Schur algebras over ℚ and 𝔽_p.
//!
//! The crate builds, for a matroid with a weight function, the graded pieces of the
//! exterior algebra indexed by pairs of cyclic flats, the kernels `U` and `Ǔ` of the
//! boundary maps on them, and the Gram forms those kernels carry. From this data it
//! computes characters of standard and simple modules, decomposition numbers,
//! semisimple characteristics and determinant factorizations, and checks the
//! structural identities the construction is expected to satisfy.

pub mod exterior;
pub mod matroid;
pub mod schur;
pub mod selftest;
pub mod xalg;
