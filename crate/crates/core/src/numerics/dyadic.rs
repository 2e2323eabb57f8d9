//! Exact binary floating-point numbers `man * 2^exp`.
//!
//! Addition, subtraction and multiplication are exact. Everything that has
//! to round (`round`, `div`, `from_rational`, `sqrt_lower`) returns
//! the rounded value together with a [`Mag`] bounding the error.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, Zero};

use super::mag::Mag;
use super::Rational;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    man: BigInt,
    exp: i64,
}

impl Dyadic {
    /// Canonical form: odd mantissa, or zero with exponent 0.
    pub fn new(man: BigInt, exp: i64) -> Dyadic {
        if man.is_zero() {
            return Dyadic::zero();
        }
        let tz = man.trailing_zeros().unwrap_or(0);
        if tz == 0 {
            return Dyadic { man, exp };
        }
        Dyadic {
            man: man >> tz,
            exp: exp + tz as i64,
        }
    }

    pub fn zero() -> Dyadic {
        Dyadic {
            man: BigInt::zero(),
            exp: 0,
        }
    }

    pub fn from_int(n: impl Into<BigInt>) -> Dyadic {
        Dyadic::new(n.into(), 0)
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.man
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.man.is_zero()
    }

    pub fn sign(&self) -> Sign {
        self.man.sign()
    }

    pub fn is_negative(&self) -> bool {
        self.man.is_negative()
    }

    pub fn abs(&self) -> Dyadic {
        Dyadic {
            man: self.man.abs(),
            exp: self.exp,
        }
    }

    /// Bit length of the mantissa.
    pub fn bits(&self) -> u64 {
        self.man.bits()
    }

    /// `floor(log2 |x|)`; undefined for zero.
    pub fn log2_floor(&self) -> i64 {
        self.exp + self.bits() as i64 - 1
    }

    pub fn mul_2exp(&self, e: i64) -> Dyadic {
        if self.is_zero() {
            return Dyadic::zero();
        }
        Dyadic {
            man: self.man.clone(),
            exp: self.exp + e,
        }
    }

    /// Truncate the mantissa to `prec` bits (toward zero).
    pub fn round(&self, prec: u32) -> (Dyadic, Mag) {
        let bits = self.bits();
        if bits <= u64::from(prec) {
            return (self.clone(), Mag::ZERO);
        }
        let shift = bits - u64::from(prec);
        let mag = self.man.magnitude() >> shift;
        let man = BigInt::from_biguint(self.man.sign(), mag);
        let exp = self.exp + shift as i64;
        (Dyadic::new(man, exp), Mag::pow2(exp))
    }

    /// `a / b` with a quotient of at least `prec` bits; `b` nonzero.
    pub fn div(a: &Dyadic, b: &Dyadic, prec: u32) -> (Dyadic, Mag) {
        assert!(!b.is_zero(), "Dyadic division by zero");
        if a.is_zero() {
            return (Dyadic::zero(), Mag::ZERO);
        }
        let sign = if a.is_negative() == b.is_negative() {
            Sign::Plus
        } else {
            Sign::Minus
        };
        let (na, nb) = (a.man.magnitude(), b.man.magnitude());
        let k = i64::from(prec) + nb.bits() as i64 - na.bits() as i64 + 1;
        let q = if k >= 0 {
            (na << k as u64) / nb
        } else {
            na / (nb << (-k) as u64)
        };
        let exp = a.exp - b.exp - k;
        let q = Dyadic::new(BigInt::from_biguint(sign, q), exp);
        let (r, err) = q.round(prec);
        (r, err.add(Mag::pow2(exp)))
    }

    pub fn from_rational(r: &Rational, prec: u32) -> (Dyadic, Mag) {
        let num = Dyadic::from_int(r.numer().clone());
        let den = r.denom();
        if den.is_one() {
            return num.round(prec);
        }
        let tz = den.trailing_zeros().unwrap_or(0);
        if (den >> tz).is_one() {
            return num.mul_2exp(-(tz as i64)).round(prec);
        }
        Dyadic::div(&num, &Dyadic::from_int(den.clone()), prec)
    }

    /// Lower bound of `sqrt(x)` for `x >= 0`, plus the gap to the true root.
    pub fn sqrt_lower(&self, prec: u32) -> (Dyadic, Mag) {
        assert!(!self.is_negative(), "square root of a negative dyadic");
        if self.is_zero() {
            return (Dyadic::zero(), Mag::ZERO);
        }
        let want = 2 * i64::from(prec) + 4;
        let mut s = want - self.bits() as i64;
        if (self.exp - s).rem_euclid(2) != 0 {
            s += 1;
        }
        let n = if s >= 0 {
            self.man.magnitude() << s as u64
        } else {
            self.man.magnitude() >> (-s) as u64
        };
        let root = n.sqrt();
        let exp = (self.exp - s) / 2;
        (
            Dyadic::new(BigInt::from_biguint(Sign::Plus, root), exp),
            Mag::pow2(exp + 1),
        )
    }

    pub fn to_rational(&self) -> Rational {
        if self.exp >= 0 {
            Rational::from_integer(&self.man << self.exp as u64)
        } else {
            Rational::new(self.man.clone(), BigInt::one() << (-self.exp) as u64)
        }
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.bits();
        let (top, shift) = if bits > 60 {
            let shift = bits - 60;
            (&self.man >> shift, shift as i64)
        } else {
            (self.man.clone(), 0)
        };
        let m: f64 = num_traits::ToPrimitive::to_f64(&top).unwrap_or(0.0);
        m * 2f64.powi((self.exp + shift).clamp(-1100, 1100) as i32)
    }

    /// `floor(|x| * 10^digits)` with the sign of `x`, as a decimal string
    /// with the point inserted: the truncated decimal expansion of `x`.
    pub fn to_fixed_truncated(&self, digits: usize) -> String {
        let scale = num_traits::pow(BigInt::from(10), digits);
        let mag = self.man.abs() * scale;
        let v = if self.exp >= 0 {
            mag << self.exp as u64
        } else {
            mag >> (-self.exp) as u64
        };
        let s = v.to_string();
        let s = if s.len() <= digits {
            format!("{}{}", "0".repeat(digits + 1 - s.len()), s)
        } else {
            s
        };
        let (int, frac) = s.split_at(s.len() - digits);
        let sign = if self.is_negative() { "-" } else { "" };
        if digits == 0 {
            format!("{sign}{int}")
        } else {
            format!("{sign}{int}.{frac}")
        }
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Dyadic) -> Ordering {
        match (self - other).sign() {
            Sign::Minus => Ordering::Less,
            Sign::NoSign => Ordering::Equal,
            Sign::Plus => Ordering::Greater,
        }
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Dyadic) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<'a> Add<&'a Dyadic> for &'a Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: &'a Dyadic) -> Dyadic {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let e = self.exp.min(rhs.exp);
        let a = &self.man << (self.exp - e) as u64;
        let b = &rhs.man << (rhs.exp - e) as u64;
        Dyadic::new(a + b, e)
    }
}

impl<'a> Sub<&'a Dyadic> for &'a Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: &'a Dyadic) -> Dyadic {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Dyadic> for &'a Dyadic {
    type Output = Dyadic;
    fn mul(self, rhs: &'a Dyadic) -> Dyadic {
        Dyadic::new(&self.man * &rhs.man, self.exp + rhs.exp)
    }
}

impl Neg for &Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic {
            man: -&self.man,
            exp: self.exp,
        }
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*2^{}", self.man, self.exp)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn canonical_form() {
        let d = Dyadic::new(BigInt::from(12), 0);
        assert_eq!(d.mantissa(), &BigInt::from(3));
        assert_eq!(d.exponent(), 2);
        assert_eq!(Dyadic::new(BigInt::zero(), 17), Dyadic::zero());
    }

    #[test]
    fn division_error_bound() {
        let (q, err) = Dyadic::from_rational(&rat(1, 3), 100);
        let diff = (q.to_rational() - rat(1, 3)).abs();
        assert!(diff <= err.to_rational());
        assert!(err.to_rational() < rat(1, 1 << 60));
    }

    #[test]
    fn power_of_two_denominator_is_exact() {
        let (q, err) = Dyadic::from_rational(&rat(-3, 8), 64);
        assert!(err.is_zero());
        assert_eq!(q.to_rational(), rat(-3, 8));
    }

    #[test]
    fn sqrt_lower_bound() {
        let (r, err) = Dyadic::from_int(2).sqrt_lower(80);
        let sq = &r * &r;
        assert!(sq.to_rational() <= rat(2, 1));
        let hi = &r + &err.to_dyadic();
        assert!((&hi * &hi).to_rational() >= rat(2, 1));
    }

    #[test]
    fn truncated_decimal() {
        let d = Dyadic::from_rational(&rat(-5, 4), 64).0;
        assert_eq!(d.to_fixed_truncated(3), "-1.250");
        assert_eq!(Dyadic::from_int(7).to_fixed_truncated(0), "7");
        let small = Dyadic::new(BigInt::from(1), -4);
        assert_eq!(small.to_fixed_truncated(2), "0.06");
    }
}
