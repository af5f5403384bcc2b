//! Pattern polynomial graphs.
//!
//! For a graph `X` with adjacency matrix `A`, three nested matrix algebras
//! are computed exactly: the adjacency algebra `𝒜(X)` spanned by powers of
//! `A`, the span `ℒ(X)` of the pattern matrices (positions grouped by their
//! entries across `I, A, …, A^(ℓ-1)`), and the coherent closure `𝒞𝒞(X)`.
//! `X` is pattern polynomial when the first two coincide, which happens
//! exactly when `ℓ`, the degree of the minimal polynomial, equals the number
//! of pattern classes `r`.
//!
//! ```
//! use patpoly::graphs::{generate, Family};
//! use patpoly::pattern::pattern_basis;
//!
//! let petersen = generate(Family::Petersen).unwrap();
//! let basis = pattern_basis(&petersen);
//! assert_eq!((basis.ell(), basis.r()), (3, 3));
//! assert!(basis.is_pattern_polynomial());
//! ```

pub mod census;
pub mod classify;
pub mod closure;
pub mod designs;
mod error;
pub mod exactmat;
pub mod graphs;
pub mod pattern;
pub mod polyenum;

pub use error::{Error, Result};
