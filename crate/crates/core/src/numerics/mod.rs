//! Arbitrary-precision substrate: exact rationals, midpoint-radius balls,
//! π-power polynomials and the constants π and ω.

mod ball;
mod complex;
mod constants;
mod dyadic;
mod mag;
mod pipoly;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{invalid, Result};

pub use ball::{dyadic_sci_string, RealBall};
pub use complex::ComplexBall;
pub use constants::{cube_root_of_unity, pi_const};
pub use dyadic::Dyadic;
pub use mag::Mag;
pub use pipoly::{pipoly_eval, PiPolynomial};

/// Reduced fraction with positive denominator; `num_rational` normalizes on
/// every construction.
pub type Rational = num_rational::BigRational;

pub fn rational(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn integer(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub const MIN_PRECISION: u32 = 64;

/// Working precision in bits and the residual tolerance checks accept.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrecisionCtx {
    working_precision: u32,
    target_tolerance: Rational,
}

impl PrecisionCtx {
    pub fn new(working_precision: u32, target_tolerance: Rational) -> Result<PrecisionCtx> {
        if working_precision < MIN_PRECISION {
            return Err(invalid(format!(
                "working precision {working_precision} is below {MIN_PRECISION} bits"
            )));
        }
        if !target_tolerance.is_positive() {
            return Err(invalid("target tolerance must be positive"));
        }
        Ok(PrecisionCtx {
            working_precision,
            target_tolerance,
        })
    }

    /// Tolerance defaults to `2^-(bits/2)`.
    pub fn from_bits(bits: u32) -> Result<PrecisionCtx> {
        let tol = Rational::new(BigInt::one(), BigInt::one() << (bits / 2));
        PrecisionCtx::new(bits, tol)
    }

    pub fn working_precision(&self) -> u32 {
        self.working_precision
    }

    pub fn target_tolerance(&self) -> &Rational {
        &self.target_tolerance
    }

    pub fn with_precision(&self, bits: u32) -> PrecisionCtx {
        PrecisionCtx {
            working_precision: bits.max(MIN_PRECISION),
            target_tolerance: self.target_tolerance.clone(),
        }
    }
}

/// Exact `C(n, k)`; zero outside `0 <= k <= n`.
pub fn binomial(n: u64, k: i64) -> Rational {
    Rational::from_integer(binomial_int(n, k))
}

pub fn binomial_int(n: u64, k: i64) -> BigInt {
    if k < 0 || k as u64 > n {
        return BigInt::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Evidence for a residual acceptance decision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroCertificate {
    pub abs_midpoint: Rational,
    pub radius: Rational,
    pub tolerance: Rational,
}

impl ZeroCertificate {
    pub fn holds(&self) -> bool {
        &self.abs_midpoint + &self.radius <= self.tolerance
    }
}

/// `|mid| + rad <= tol`, i.e. the whole ball lies within `tol` of zero.
pub fn ball_is_zero_within(x: &RealBall, tol: &Rational) -> (bool, ZeroCertificate) {
    let cert = ZeroCertificate {
        abs_midpoint: x.midpoint().to_rational().abs(),
        radius: x.radius().to_rational(),
        tolerance: tol.clone(),
    };
    (cert.holds(), cert)
}
