//! Exact polynomial algebra over the rationals and the ideal-membership
//! proofs for the conserved quantities and curvatures of the two-link tricycle.
//!
//! [`MultiPoly`] is a sparse polynomial over a shared [`Ring`]; [`buchberger`]
//! computes reduced Gröbner bases and [`normal_form`] decides membership.
//! [`Tricycle`] builds the unit-energy ideal and the geodesic flow as a
//! [`Derivation`], and [`proofs`] runs the individual claims.

pub mod derivation;
pub mod error;
pub mod groebner;
pub mod linsolve;
pub mod poly;
pub mod proofs;
pub mod ring;
pub mod samples;
pub mod tricycle;

pub use derivation::{derive, verify_constant, Derivation};
pub use error::{AlgebraError, Result};
pub use groebner::{buchberger, normal_form, s_polynomial, BuchbergerStats, GroebnerBasis};
pub use poly::{rat, MultiPoly, Q};
pub use ring::{MonomialOrder, Ring};
pub use tricycle::{ExactParams, Tricycle, Var};
