//! Exact-arithmetic toolkit for three-fold divisorial contractions to cD/2
//! points with discrepancy two.
//!
//! The crate is split along the computations it mechanizes:
//!
//! - [`graded_dim`]: lattice sets `N_i^j` and the dimension recursion of the
//!   bi-graded ring, including reconstruction of the periodic correction term.
//! - [`poly`]: sparse multivariate polynomials over `Q` with weighted orders,
//!   truncations, semi-invariance and the square-form detector.
//! - [`toric`]: cyclic quotient types, Reid–Tai terminality, Smith normal form
//!   and the charts of a toric weighted blow-up.
//! - [`blowup`]: weighted blow-ups of complete-intersection germs (orders,
//!   discrepancy, `E^3`, chart singularities).
//! - [`cd2`]: the cD/2 model `(r, p, q)`, its validation, generation and the
//!   normal-form recognizer.

pub mod blowup;
pub mod cd2;
pub mod error;
pub mod graded_dim;
pub mod poly;
pub mod rational;
pub mod toric;

pub use error::{Error, Result};
pub use rational::Q;
