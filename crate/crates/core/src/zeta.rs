//! Riemann zeta at integers and Hurwitz zeta `ζ(s, a)` for integer `s >= 2`.
//!
//! Even arguments have the exact form `ζ(2k) = c·π^{2k}` with rational `c`
//! obtained from `B_{2k}`. Everything else goes through Euler–Maclaurin
//! summation of `f(x) = (x + a)^{-s}`:
//!
//! ```text
//! ζ(s, a) = Σ_{k<N} (a+k)^{-s} + b^{1-s}/(s-1) + b^{-s}/2
//!         + Σ_{j=1}^{K} B_{2j}/(2j)! · (s)_{2j-1} · b^{-s-2j+1} + R_K,   b = a + N
//! ```
//!
//! with `|R_K| <= 4 (s)_{2K-1} / ((2π)^{2K} b^{s+2K-1})`. The remainder is
//! added to the radius; `2π` is replaced by the lower bound `25/4`.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::bernoulli::bernoulli;
use crate::error::{invalid, Error, Result};
use crate::numerics::{pipoly_eval, Mag, PiPolynomial, PrecisionCtx, Rational, RealBall};

/// Extra bits carried through a Hurwitz evaluation beyond the target.
pub const HURWITZ_GUARD_BITS: u32 = 32;

const MAX_ATTEMPTS: u32 = 14;

/// `ζ(s)` at an integer argument, exact when `s` is even.
#[derive(Clone, Debug)]
pub struct ZetaValue {
    pub argument: u32,
    pub exact: Option<PiPolynomial>,
    pub numeric: RealBall,
}

/// `ζ(m) = (-1)^{m/2+1} 2^{m-1} B_m / m! · π^m` for even `m >= 2`.
pub fn zeta_even_exact(m: u32) -> Result<PiPolynomial> {
    if m < 2 || m % 2 == 1 {
        return Err(invalid(format!(
            "exact zeta needs an even argument >= 2, got {m}"
        )));
    }
    let factorial: BigInt = (1..=u64::from(m)).map(BigInt::from).product();
    let mut coeff = bernoulli(m as usize) * Rational::new(BigInt::one() << (m - 1), factorial);
    if (m / 2) % 2 == 0 {
        coeff = -coeff;
    }
    Ok(PiPolynomial::monomial(coeff, m))
}

/// Certified ball for `ζ(s)`, `s >= 2`.
pub fn zeta_numeric(s: u32, ctx: &PrecisionCtx) -> Result<RealBall> {
    if s < 2 {
        return Err(Error::Divergent(format!("zeta({s})")));
    }
    if s % 2 == 0 {
        return Ok(pipoly_eval(&zeta_even_exact(s)?, ctx));
    }
    hurwitz_zeta_int(s, 1, ctx)
}

pub fn zeta_value(s: u32, ctx: &PrecisionCtx) -> Result<ZetaValue> {
    let exact = if s % 2 == 0 && s >= 2 {
        Some(zeta_even_exact(s)?)
    } else {
        None
    };
    Ok(ZetaValue {
        argument: s,
        numeric: zeta_numeric(s, ctx)?,
        exact,
    })
}

/// The shift `a` in `ζ(s, a)`.
#[derive(Clone, Debug)]
pub enum HurwitzShift {
    Rational(Rational),
    Ball(RealBall),
}

impl HurwitzShift {
    fn check(&self) -> Result<()> {
        let ok = match self {
            HurwitzShift::Rational(r) => *r >= Rational::one(),
            HurwitzShift::Ball(b) => b.lower() >= crate::numerics::Dyadic::from_int(1),
        };
        if ok {
            Ok(())
        } else {
            Err(invalid("Hurwitz zeta shift must be >= 1"))
        }
    }

    fn is_exact(&self) -> bool {
        match self {
            HurwitzShift::Rational(_) => true,
            HurwitzShift::Ball(b) => b.is_exact(),
        }
    }

    /// `(a + k)^{-s}` as a ball.
    fn inverse_power(&self, k: u64, s: u32, prec: u32) -> RealBall {
        match self {
            HurwitzShift::Rational(a) => {
                let x = a + Rational::from_integer(BigInt::from(k));
                let p = num_traits::pow(x.recip(), s as usize);
                RealBall::from_rational(&p, prec)
            }
            HurwitzShift::Ball(a) => {
                let x = (a + &RealBall::from_int(k, prec)).with_precision(prec);
                x.recip().expect("shift is positive").pow(s)
            }
        }
    }

    fn shifted(&self, n: u64, prec: u32) -> RealBall {
        match self {
            HurwitzShift::Rational(a) => {
                RealBall::from_rational(&(a + Rational::from_integer(BigInt::from(n))), prec)
            }
            HurwitzShift::Ball(a) => (a + &RealBall::from_int(n, prec)).with_precision(prec),
        }
    }
}

/// One Euler–Maclaurin attempt with `n_lead` leading terms and at most
/// `k_max` corrections. `None` if the remainder never drops below
/// `2^-target_bits` times the integral term.
fn hurwitz_attempt(
    s: u32,
    a: &HurwitzShift,
    n_lead: u64,
    k_max: u32,
    prec: u32,
    target_bits: u32,
) -> Option<RealBall> {
    let b = a.shifted(n_lead, prec);
    let binv = b.recip()?;
    let binv2 = &binv * &binv;
    let b_pow = binv.pow(s - 1); // b^{1-s}
    let integral = b_pow
        .checked_div(&RealBall::from_int(s - 1, prec))
        .expect("s >= 2");
    let b_s = &b_pow * &binv;
    let mut acc = &integral + &b_s.mul_2exp(-1);

    let target = integral.mag_lower().mul_2exp(-i64::from(target_bits) - 2);
    let step = Mag::from_u64(16).div(Mag::from_u64(625));
    let mut inv_two_pi = Mag::from_u64(1);
    let mut cur = &b_s * &binv; // b^{-s-1}
    let mut poch = BigInt::from(s); // (s)_{2j-1}
    let mut fact = BigInt::from(2); // (2j)!
    let mut last_bound: Option<Mag> = None;

    for j in 1..=k_max {
        let coeff = bernoulli(2 * j as usize) * Rational::new(poch.clone(), fact.clone());
        acc = &acc + &cur.mul_rational(&coeff);

        inv_two_pi = inv_two_pi.mul(step);
        let poch_mag = Mag::from_dyadic_upper(&crate::numerics::Dyadic::from_int(poch.clone()));
        let bound = Mag::from_u64(4)
            .mul(poch_mag)
            .mul(inv_two_pi)
            .mul(cur.mag_upper());
        if bound <= target {
            let head: RealBall = (0..n_lead).map(|k| a.inverse_power(k, s, prec)).sum();
            return Some((&head + &acc).add_error(bound));
        }
        if last_bound.is_some_and(|prev| bound > prev) {
            return None;
        }
        last_bound = Some(bound);

        let (j2, s2) = (2 * u64::from(j), u64::from(s));
        poch *= BigInt::from(s2 + j2 - 1) * BigInt::from(s2 + j2);
        fact *= BigInt::from(j2 + 1) * BigInt::from(j2 + 2);
        cur = &cur * &binv2;
    }
    None
}

/// Certified ball for `ζ(s, a) = Σ_{n>=0} (n + a)^{-s}`, `s >= 2`, `a >= 1`.
///
/// For exact `a` the returned radius is at most `2^-p·|ζ(s, a)|` where `p`
/// is the working precision; midpoints carry [`HURWITZ_GUARD_BITS`] extra
/// bits. Leading terms start at `max(16, p/4)` and corrections at
/// `max(8, p/8)`; both are doubled until the bound is met.
pub fn hurwitz_zeta(s: u32, a: &HurwitzShift, ctx: &PrecisionCtx) -> Result<RealBall> {
    if s < 2 {
        return Err(Error::Divergent(format!("Hurwitz zeta at s = {s}")));
    }
    a.check()?;
    let p = ctx.working_precision();
    let mut n_lead = u64::from((p / 4).max(16));
    let mut k_max = (p / 8).max(8);
    let mut guard = HURWITZ_GUARD_BITS;
    for attempt in 0..MAX_ATTEMPTS {
        let prec = p + guard;
        match hurwitz_attempt(s, a, n_lead, k_max, prec, p + 4) {
            Some(v) if !a.is_exact() || v.meets_relative(p) => return Ok(v),
            Some(_) => guard += 32,
            None => {
                n_lead *= 2;
                if attempt % 2 == 1 {
                    k_max *= 2;
                }
            }
        }
    }
    Err(Error::PrecisionUnreachable(format!(
        "Hurwitz zeta({s}, a) at {p} bits"
    )))
}

/// `ζ(s, a)` for a positive integer shift, memoized per `(s, a, precision)`.
pub fn hurwitz_zeta_int(s: u32, a: u64, ctx: &PrecisionCtx) -> Result<RealBall> {
    type Key = (u32, u64, u32);
    static MEMO: OnceLock<Mutex<HashMap<Key, RealBall>>> = OnceLock::new();
    let key = (s, a, ctx.working_precision());
    let memo = MEMO.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = memo.lock().expect("hurwitz memo poisoned").get(&key) {
        return Ok(v.clone());
    }
    let shift = HurwitzShift::Rational(Rational::from_integer(BigInt::from(a)));
    let v = hurwitz_zeta(s, &shift, ctx)?;
    memo.lock()
        .expect("hurwitz memo poisoned")
        .insert(key, v.clone());
    Ok(v)
}

pub fn hurwitz_zeta_rational(s: u32, a: &Rational, ctx: &PrecisionCtx) -> Result<RealBall> {
    if !a.is_positive() {
        return Err(invalid("Hurwitz zeta shift must be positive"));
    }
    hurwitz_zeta(s, &HurwitzShift::Rational(a.clone()), ctx)
}
