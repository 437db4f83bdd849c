//! Exact and numerical toolkit for the cohomology of moduli spaces attached to
//! a punctured surface of genus `g` with `n` marked points.
//!
//! The symbolic side works over exact scalars (Gaussian rationals by default,
//! see [`GaussRat`]); floating point enters only at evaluation boundaries.

pub mod error;
pub mod fiber;
pub mod floer;
pub mod generators;
pub mod groebner;
pub mod lefschetz;
pub mod linalg;
pub mod mumford;
pub mod poly;
pub mod repvar;
pub mod scalar;

pub use error::Error;
pub use generators::GeneratorTable;
pub use poly::{GradedPoly, Monomial};
pub use scalar::{GaussRat, Rat, Scalar};

pub type Result<T> = std::result::Result<T, Error>;

/// Default exact polynomial: Gaussian-rational coefficients.
pub type Poly = GradedPoly<GaussRat>;
