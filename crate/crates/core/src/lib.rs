//! Exact polynomial algebra for additive group actions on affine space.
//!
//! The crate is organized bottom-up:
//!
//! - [`poly`]: sparse multivariate polynomials over the rationals, polynomial
//!   maps, differentiation, composition and Jacobian determinants.
//! - [`groebner`]: reduced Gröbner bases and the ideal-theoretic decision
//!   procedures built on them (membership, elimination, dimension, radical and
//!   subalgebra membership).
//! - [`derivation`]: derivations of the polynomial ring and certificates of
//!   local nilpotency.
//! - [`action`]: exponentiation of certified derivations into polynomial
//!   actions of the additive group, invariance and the induced degree function.
//! - [`quotient`]: Jacobian derivations of quotient-type maps, local slices and
//!   the localization identity.
//! - [`geometry`]: fiber emptiness, singular loci and image-complement scans.
//! - [`text`]: parsing and canonical printing of polynomials.
//!
//! Coefficients are exact rationals throughout. Every probe answered here
//! (unit ideal, dimension, membership) is stable under extension of the base
//! field, so results computed over the rationals hold over the complex numbers.

pub mod action;
pub mod derivation;
mod error;
pub mod geometry;
pub mod groebner;
pub mod poly;
pub mod quotient;
pub mod text;

pub use action::{exponentiate, GaAction, TDegree};
pub use derivation::{Derivation, FixedLocus, NilpotencyCertificate, NilpotencyStatus};
pub use error::{Error, Result};
pub use geometry::{FiberReport, FiberStatus, GridSpec, ScanPoints, SingularityReport};
pub use groebner::{GroebnerBasis, MonomialOrder};
pub use poly::{Monomial, PolyMap, Polynomial, Rational, Ring};
pub use quotient::{GeneratorCheck, LocalSlice, LocalizationWitness};
pub use text::{format_polynomial, format_rational, parse_polynomial, parse_rational, ParseError};
