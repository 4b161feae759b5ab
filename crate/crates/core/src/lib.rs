//! Geodesics of the planar two-link tricycle.
//!
//! [`linkage`] evaluates vector fields and first integrals, [`ode`] integrates
//! them, [`sim`] ties the two together, [`curves`] analyses the resulting plane
//! curves and [`backlund`] implements the bicycle correspondence between curves.

pub mod error;
pub mod linkage;
pub mod ode;
pub mod curves;
pub mod backlund;
pub mod sim;

pub use error::{Error, Result};
