//! Certified computation of double zeta values and mechanical verification
//! of their restricted sum formulas.
//!
//! Exact identities (Bernoulli convolutions, π-power chains) are checked in
//! rational arithmetic. Everything transcendental is carried as a
//! midpoint-radius ball, so a passing numeric check is an enclosure
//! statement rather than a floating-point coincidence.

pub mod bernoulli;
pub mod dzeta;
pub mod error;
pub mod identities;
pub mod numerics;
pub mod zeta;

pub use error::{Error, Result};
pub use numerics::{ComplexBall, PiPolynomial, PrecisionCtx, Rational, RealBall};
