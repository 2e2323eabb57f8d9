//! π and the primitive cube root of unity.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::Zero;

use super::ball::RealBall;
use super::complex::ComplexBall;
use super::dyadic::Dyadic;
use super::mag::Mag;
use super::{PrecisionCtx, Rational};

/// `2^bits * atan(1/x)` in fixed point, with an error bound in units of
/// the last place.
fn atan_recip_fixed(x: u32, bits: u64) -> (BigInt, u64) {
    let x = BigInt::from(x);
    let x2 = &x * &x;
    let mut power = (BigInt::from(1) << bits) / &x;
    let mut sum = BigInt::zero();
    let mut k: u64 = 0;
    while !power.is_zero() {
        let term = &power / BigInt::from(2 * k + 1);
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        power /= &x2;
        k += 1;
    }
    // each term is off by < 2.05 ulp; the dropped alternating tail is < 1.05 ulp
    (sum, 3 * k + 3)
}

fn compute_pi(prec: u32) -> RealBall {
    let bits = u64::from(prec) + 32;
    let (a5, e5) = atan_recip_fixed(5, bits);
    let (a239, e239) = atan_recip_fixed(239, bits);
    let fixed = a5 * 16 - a239 * 4;
    let err_ulps = 16 * e5 + 4 * e239;
    let scale = -(bits as i64);
    RealBall::new(
        Dyadic::new(fixed, scale),
        Mag::from_u64(err_ulps).mul_2exp(scale),
        prec,
    )
}

/// Ball containing π, radius at most `2^(1-p) * π` for working precision `p`.
///
/// Machin's formula `π = 16 atan(1/5) - 4 atan(1/239)` evaluated in fixed
/// point with 32 guard bits. Results are memoized per precision.
pub fn pi_const(ctx: &PrecisionCtx) -> RealBall {
    static CACHE: OnceLock<Mutex<HashMap<u32, RealBall>>> = OnceLock::new();
    let prec = ctx.working_precision();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(pi) = cache.lock().expect("pi cache poisoned").get(&prec) {
        return pi.clone();
    }
    let pi = compute_pi(prec);
    cache
        .lock()
        .expect("pi cache poisoned")
        .insert(prec, pi.clone());
    pi
}

/// ω = e^{2πi/3} = -1/2 + (√3/2) i.
pub fn cube_root_of_unity(ctx: &PrecisionCtx) -> ComplexBall {
    let prec = ctx.working_precision();
    let half = Rational::new(BigInt::from(1), BigInt::from(2));
    let re = RealBall::from_rational(&-half.clone(), prec);
    let sqrt3 = RealBall::from_int(3, prec)
        .sqrt()
        .expect("3 is positive");
    ComplexBall::new(re, sqrt3.mul_2exp(-1))
}
