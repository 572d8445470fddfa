//! Coamoebae, phase limit sets, and normal fans of subvarieties of complex
//! tori.
//!
//! The crate is organised bottom-up: [`laurent`] holds polynomials and
//! initial forms, [`polytope`] the Newton polytope and its normal fan,
//! [`coamoeba`] the argument map, root finding and plane-curve sampling,
//! [`lines3d`] the lines in `P^3`, and [`phase_limit`] the codual hyperplanes
//! and toric degenerations. [`cli`] backs the `coamoeba` binary.

pub mod cli;
pub mod coamoeba;
pub mod error;
pub mod laurent;
pub mod lines3d;
pub mod phase_limit;
pub mod polytope;

pub use error::{Error, Result};
pub use laurent::{
    parse, ExponentVector, LaurentPolynomial, LaurentTerm, TorusElement, WeightVector,
};
