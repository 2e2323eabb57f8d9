//! Short-mantissa magnitudes used as ball radii.
//!
//! A [`Mag`] is `man * 2^exp` with a mantissa of at most [`MAG_BITS`] bits.
//! Arithmetic rounds up unless the method is named `*_lower`, so a radius
//! built from these operations bounds the exact quantity from above.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::dyadic::Dyadic;
use super::Rational;

pub const MAG_BITS: u32 = 30;

#[derive(Clone, Copy)]
pub struct Mag {
    man: u64,
    exp: i64,
}

fn bitlen(x: u128) -> u32 {
    128 - x.leading_zeros()
}

impl Mag {
    pub const ZERO: Mag = Mag { man: 0, exp: 0 };

    fn round_up(man: u128, exp: i64) -> Mag {
        if man == 0 {
            return Mag::ZERO;
        }
        let bits = bitlen(man);
        if bits <= MAG_BITS {
            return Mag {
                man: man as u64,
                exp,
            };
        }
        let shift = bits - MAG_BITS;
        let mut q = man >> shift;
        if man & ((1u128 << shift) - 1) != 0 {
            q += 1;
        }
        let mut e = exp + i64::from(shift);
        if bitlen(q) > MAG_BITS {
            q >>= 1;
            e += 1;
        }
        Mag { man: q as u64, exp: e }
    }

    fn round_down(man: u128, exp: i64) -> Mag {
        if man == 0 {
            return Mag::ZERO;
        }
        let bits = bitlen(man);
        if bits <= MAG_BITS {
            return Mag {
                man: man as u64,
                exp,
            };
        }
        let shift = bits - MAG_BITS;
        Mag {
            man: (man >> shift) as u64,
            exp: exp + i64::from(shift),
        }
    }

    /// Exactly `2^e`.
    pub fn pow2(e: i64) -> Mag {
        Mag { man: 1, exp: e }
    }

    pub fn from_u64(n: u64) -> Mag {
        Mag::round_up(u128::from(n), 0)
    }

    pub fn is_zero(self) -> bool {
        self.man == 0
    }

    pub fn mantissa(self) -> u64 {
        self.man
    }

    pub fn exponent(self) -> i64 {
        self.exp
    }

    /// Smallest `e` with `self < 2^e` (meaningless for zero).
    pub fn log2_ceil(self) -> i64 {
        self.exp + i64::from(bitlen(u128::from(self.man)))
    }

    pub fn add(self, other: Mag) -> Mag {
        if self.is_zero() {
            return other;
        }
        if other.is_zero() {
            return self;
        }
        let (hi, lo) = if self.log2_ceil() >= other.log2_ceil() {
            (self, other)
        } else {
            (other, self)
        };
        // lo is below one ulp of hi: absorb it into a single ulp.
        if hi.exp - lo.exp > 64 {
            let widen = MAG_BITS - bitlen(u128::from(hi.man));
            return Mag::round_up(
                (u128::from(hi.man) << widen) + 1,
                hi.exp - i64::from(widen),
            );
        }
        let e = hi.exp.min(lo.exp);
        let a = u128::from(hi.man) << (hi.exp - e);
        let b = u128::from(lo.man) << (lo.exp - e);
        Mag::round_up(a + b, e)
    }

    pub fn mul(self, other: Mag) -> Mag {
        if self.is_zero() || other.is_zero() {
            return Mag::ZERO;
        }
        Mag::round_up(
            u128::from(self.man) * u128::from(other.man),
            self.exp + other.exp,
        )
    }

    pub fn mul_lower(self, other: Mag) -> Mag {
        if self.is_zero() || other.is_zero() {
            return Mag::ZERO;
        }
        Mag::round_down(
            u128::from(self.man) * u128::from(other.man),
            self.exp + other.exp,
        )
    }

    /// Upper bound of `self / other`; `other` must be nonzero.
    pub fn div(self, other: Mag) -> Mag {
        assert!(!other.is_zero(), "Mag division by zero");
        if self.is_zero() {
            return Mag::ZERO;
        }
        let num = u128::from(self.man) << 64;
        let den = u128::from(other.man);
        let q = num.div_ceil(den);
        Mag::round_up(q, self.exp - other.exp - 64)
    }

    pub fn mul_2exp(self, e: i64) -> Mag {
        if self.is_zero() {
            return self;
        }
        Mag {
            man: self.man,
            exp: self.exp + e,
        }
    }

    pub fn max(self, other: Mag) -> Mag {
        if self >= other {
            self
        } else {
            other
        }
    }

    /// Upper bound of `|x|`.
    pub fn from_dyadic_upper(x: &Dyadic) -> Mag {
        Mag::from_bigint(x.mantissa(), x.exponent(), true)
    }

    /// Lower bound of `|x|`.
    pub fn from_dyadic_lower(x: &Dyadic) -> Mag {
        Mag::from_bigint(x.mantissa(), x.exponent(), false)
    }

    fn from_bigint(man: &BigInt, exp: i64, up: bool) -> Mag {
        if man.is_zero() {
            return Mag::ZERO;
        }
        let mag = man.magnitude();
        let bits = mag.bits();
        if bits <= 64 {
            let m = u128::from(mag.iter_u64_digits().next().unwrap_or(0));
            return if up {
                Mag::round_up(m, exp)
            } else {
                Mag::round_down(m, exp)
            };
        }
        let shift = bits - 64;
        let top: u64 = (mag >> shift).iter_u64_digits().next().unwrap_or(0);
        let e = exp + shift as i64;
        if up {
            // the discarded low bits are strictly below one unit of `top`
            let inexact = mag.trailing_zeros().unwrap_or(0) < shift;
            Mag::round_up(u128::from(top) + u128::from(inexact), e)
        } else {
            Mag::round_down(u128::from(top), e)
        }
    }

    pub fn to_dyadic(self) -> Dyadic {
        Dyadic::new(BigInt::from(self.man), self.exp)
    }

    pub fn to_rational(self) -> Rational {
        self.to_dyadic().to_rational()
    }

    pub fn to_f64(self) -> f64 {
        self.man as f64 * 2f64.powi(self.exp.clamp(-1100, 1100) as i32)
    }

    /// Decimal upper bound with two significant digits, e.g. `3.1e-58`.
    pub fn to_sci_string(self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let r = self.to_rational();
        let ten = BigInt::from(10);
        // estimate the decimal exponent from the binary one, then correct it
        let mut e10 = ((self.log2_ceil() as f64) * std::f64::consts::LOG10_2).floor() as i64 - 1;
        let scaled = |e: i64| -> Rational {
            if e >= 0 {
                &r / Rational::from_integer(num_traits::pow(ten.clone(), e as usize))
            } else {
                &r * Rational::from_integer(num_traits::pow(ten.clone(), (-e) as usize))
            }
        };
        let one = Rational::one();
        let tenr = Rational::from_integer(ten.clone());
        let mut s = scaled(e10);
        while s >= tenr {
            e10 += 1;
            s = scaled(e10);
        }
        while s < one {
            e10 -= 1;
            s = scaled(e10);
        }
        // s in [1, 10): round up to one decimal place
        let tenth = (s * Rational::from_integer(ten.clone())).ceil().to_integer();
        let (mut int, mut frac) = num_integer::Integer::div_rem(&tenth, &ten);
        if int >= ten {
            int = BigInt::one();
            frac = BigInt::zero();
            e10 += 1;
        }
        format!("{int}.{frac}e{e10}")
    }
}

impl Ord for Mag {
    fn cmp(&self, other: &Mag) -> Ordering {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => return Ordering::Equal,
            (true, false) => return Ordering::Less,
            (false, true) => return Ordering::Greater,
            _ => {}
        }
        let (ta, tb) = (self.log2_ceil(), other.log2_ceil());
        if ta != tb {
            return ta.cmp(&tb);
        }
        let e = self.exp.min(other.exp);
        let a = u128::from(self.man) << (self.exp - e);
        let b = u128::from(other.man) << (other.exp - e);
        a.cmp(&b)
    }
}

impl PartialEq for Mag {
    fn eq(&self, other: &Mag) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Mag {}

impl PartialOrd for Mag {
    fn partial_cmp(&self, other: &Mag) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Mag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mag({}*2^{})", self.man, self.exp)
    }
}

impl fmt::Display for Mag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_sci_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn add_rounds_up() {
        let a = Mag::from_u64((1 << 30) - 1);
        let b = Mag::from_u64(1);
        let s = a.add(b);
        assert!(s.to_rational() >= Rational::from_integer(BigInt::from(1u64 << 30)));
    }

    #[test]
    fn add_far_apart_absorbs_into_ulp() {
        let a = Mag::pow2(0);
        let b = Mag::pow2(-500);
        let s = a.add(b);
        assert!(s.to_rational() > Rational::one());
        assert!(s.to_rational() <= Rational::new(BigInt::from(3), BigInt::from(2)));
    }

    #[test]
    fn div_is_upper_bound() {
        let q = Mag::from_u64(1).div(Mag::from_u64(3));
        let exact = Rational::new(BigInt::from(1), BigInt::from(3));
        assert!(q.to_rational() >= exact);
        assert!(q.to_rational() - exact < Rational::new(BigInt::one(), BigInt::from(1u64 << 28)));
    }

    #[test]
    fn ordering_matches_values() {
        let a = Mag::from_u64(12345).mul_2exp(-10);
        let b = Mag::from_u64(12346).mul_2exp(-10);
        assert!(a < b);
        assert!(Mag::ZERO < a);
        assert_eq!(a.max(b), b);
    }

    #[test]
    fn sci_string_rounds_up() {
        assert_eq!(Mag::from_u64(1).to_sci_string(), "1.0e0");
        assert_eq!(Mag::from_u64(1234).to_sci_string(), "1.3e3");
        assert_eq!(Mag::pow2(-10).to_sci_string(), "9.8e-4");
    }
}
