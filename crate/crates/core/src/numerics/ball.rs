//! Real midpoint-radius balls.
//!
//! A [`RealBall`] `[m ± r]` represents every real `x` with `|x - m| <= r`.
//! Each operation returns a ball that contains the pointwise result for all
//! admissible inputs. The stored precision is the mantissa length midpoints
//! are rounded to; binary operations use the larger of the two precisions.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::dyadic::Dyadic;
use super::mag::Mag;
use super::Rational;

#[derive(Clone)]
pub struct RealBall {
    mid: Dyadic,
    rad: Mag,
    prec: u32,
}

impl RealBall {
    pub fn new(mid: Dyadic, rad: Mag, prec: u32) -> RealBall {
        let (mid, err) = mid.round(prec);
        RealBall {
            mid,
            rad: rad.add(err),
            prec,
        }
    }

    pub fn zero(prec: u32) -> RealBall {
        RealBall {
            mid: Dyadic::zero(),
            rad: Mag::ZERO,
            prec,
        }
    }

    pub fn one(prec: u32) -> RealBall {
        RealBall::from_int(1, prec)
    }

    pub fn from_int(n: impl Into<BigInt>, prec: u32) -> RealBall {
        RealBall::new(Dyadic::from_int(n), Mag::ZERO, prec)
    }

    pub fn from_rational(r: &Rational, prec: u32) -> RealBall {
        let (mid, err) = Dyadic::from_rational(r, prec);
        RealBall { mid, rad: err, prec }
    }

    pub fn midpoint(&self) -> &Dyadic {
        &self.mid
    }

    pub fn radius(&self) -> Mag {
        self.rad
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    pub fn is_exact(&self) -> bool {
        self.rad.is_zero()
    }

    /// Same enclosure, midpoints rounded to `prec` from now on.
    pub fn with_precision(&self, prec: u32) -> RealBall {
        RealBall::new(self.mid.clone(), self.rad, prec)
    }

    /// Widen the radius by `err`.
    pub fn add_error(&self, err: Mag) -> RealBall {
        RealBall {
            mid: self.mid.clone(),
            rad: self.rad.add(err),
            prec: self.prec,
        }
    }

    pub fn lower(&self) -> Dyadic {
        &self.mid - &self.rad.to_dyadic()
    }

    pub fn upper(&self) -> Dyadic {
        &self.mid + &self.rad.to_dyadic()
    }

    /// Upper bound of `|x|` over the ball.
    pub fn mag_upper(&self) -> Mag {
        Mag::from_dyadic_upper(&self.mid).add(self.rad)
    }

    /// Lower bound of `|x|` over the ball (zero if the ball straddles zero).
    pub fn mag_lower(&self) -> Mag {
        let low = &self.mid.abs() - &self.rad.to_dyadic();
        if low.is_negative() {
            Mag::ZERO
        } else {
            Mag::from_dyadic_lower(&low)
        }
    }

    pub fn contains_zero(&self) -> bool {
        self.mid.abs() <= self.rad.to_dyadic()
    }

    pub fn contains_dyadic(&self, x: &Dyadic) -> bool {
        (x - &self.mid).abs() <= self.rad.to_dyadic()
    }

    pub fn contains_rational(&self, x: &Rational) -> bool {
        (x - self.mid.to_rational()).abs() <= self.rad.to_rational()
    }

    /// `other` lies entirely inside `self`.
    pub fn contains(&self, other: &RealBall) -> bool {
        self.lower() <= other.lower() && other.upper() <= self.upper()
    }

    pub fn overlaps(&self, other: &RealBall) -> bool {
        let gap = (&self.mid - &other.mid).abs();
        gap <= self.rad.add(other.rad).to_dyadic()
    }

    pub fn is_positive(&self) -> bool {
        !self.mid.is_negative() && !self.mid.is_zero() && self.mid.abs() > self.rad.to_dyadic()
    }

    pub fn is_negative(&self) -> bool {
        self.mid.is_negative() && self.mid.abs() > self.rad.to_dyadic()
    }

    /// `rad <= 2^-bits * min|x|`; false for balls that contain zero.
    pub fn meets_relative(&self, bits: u32) -> bool {
        let low = self.mag_lower();
        !low.is_zero() && self.rad <= low.mul_2exp(-i64::from(bits))
    }

    pub fn mul_2exp(&self, e: i64) -> RealBall {
        RealBall {
            mid: self.mid.mul_2exp(e),
            rad: self.rad.mul_2exp(e),
            prec: self.prec,
        }
    }

    pub fn abs(&self) -> RealBall {
        if self.mid.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn mul_rational(&self, r: &Rational) -> RealBall {
        if r.denom().is_one() {
            return self * &RealBall::from_int(r.numer().clone(), self.prec);
        }
        self * &RealBall::from_rational(r, self.prec)
    }

    pub fn add_rational(&self, r: &Rational) -> RealBall {
        self + &RealBall::from_rational(r, self.prec)
    }

    /// `1/x`, or `None` when the ball contains zero.
    pub fn recip(&self) -> Option<RealBall> {
        let low = &self.mid.abs() - &self.rad.to_dyadic();
        if low.is_negative() || low.is_zero() {
            return None;
        }
        let (mid, err) = Dyadic::div(&Dyadic::from_int(1), &self.mid, self.prec);
        // |1/x - 1/m| <= r / (|m| (|m| - r))
        let prop = if self.rad.is_zero() {
            Mag::ZERO
        } else {
            let den = Mag::from_dyadic_lower(&self.mid).mul_lower(Mag::from_dyadic_lower(&low));
            self.rad.div(den)
        };
        Some(RealBall {
            mid,
            rad: prop.add(err),
            prec: self.prec,
        })
    }

    pub fn checked_div(&self, other: &RealBall) -> Option<RealBall> {
        if other.is_exact() {
            let prec = self.prec.max(other.prec);
            if other.mid.is_zero() {
                return None;
            }
            let (mid, err) = Dyadic::div(&self.mid, &other.mid, prec);
            let rad = if self.rad.is_zero() {
                err
            } else {
                self.rad
                    .div(Mag::from_dyadic_lower(&other.mid))
                    .add(err)
            };
            return Some(RealBall { mid, rad, prec });
        }
        Some(self * &other.recip()?)
    }

    pub fn pow(&self, mut n: u32) -> RealBall {
        let mut base = self.clone();
        let mut acc = RealBall::one(self.prec);
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Square root of a ball whose lower endpoint is strictly positive.
    pub fn sqrt(&self) -> Option<RealBall> {
        let low = self.lower();
        if low.is_negative() || low.is_zero() {
            return None;
        }
        let (root, gap) = self.mid.sqrt_lower(self.prec);
        // |sqrt(x) - sqrt(m)| <= r / sqrt(m - r)
        let prop = if self.rad.is_zero() {
            Mag::ZERO
        } else {
            let (low_root, _) = low.sqrt_lower(self.prec);
            self.rad.div(Mag::from_dyadic_lower(&low_root))
        };
        Some(RealBall::new(root, gap.add(prop), self.prec))
    }

    pub fn to_f64(&self) -> f64 {
        self.mid.to_f64()
    }

    /// Decimal digits certified by the enclosure.
    ///
    /// Both endpoints are expanded to enough digits and truncated; only the
    /// common prefix is kept, so every point in the ball shares the printed
    /// digits. Returns `None` when the ball straddles zero.
    pub fn certified_digits(&self) -> Option<String> {
        let (lo, hi) = (self.lower(), self.upper());
        if lo.is_negative() != hi.is_negative() || lo.is_zero() || hi.is_zero() {
            return None;
        }
        let digits = (f64::from(self.prec) * std::f64::consts::LOG10_2) as usize + 4;
        let a = lo.to_fixed_truncated(digits);
        let b = hi.to_fixed_truncated(digits);
        let common: String = a
            .chars()
            .zip(b.chars())
            .take_while(|(x, y)| x == y)
            .map(|(x, _)| x)
            .collect();
        let common = if a.len() != b.len() { String::new() } else { common };
        let common = common.trim_end_matches('.').to_string();
        if common.is_empty() || common == "-" {
            return None;
        }
        // a trailing partial integer part cannot be certified
        if !common.contains('.') && common.len() < a.find('.').unwrap_or(a.len()) {
            return None;
        }
        Some(common)
    }

    /// Midpoint in scientific notation with `sig` significant digits.
    pub fn mid_sci_string(&self, sig: usize) -> String {
        dyadic_sci_string(&self.mid, sig)
    }
}

/// Scientific-notation rendering of a dyadic, rounded toward zero.
pub fn dyadic_sci_string(x: &Dyadic, sig: usize) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    let r = x.to_rational().abs();
    let ten = Rational::from_integer(BigInt::from(10));
    let mut e10 = (x.log2_floor() as f64 * std::f64::consts::LOG10_2).floor() as i64;
    let scaled = |e: i64| -> Rational {
        let p = Rational::from_integer(num_traits::pow(BigInt::from(10), e.unsigned_abs() as usize));
        if e >= 0 {
            &r / &p
        } else {
            &r * &p
        }
    };
    let mut s = scaled(e10);
    while s >= ten {
        e10 += 1;
        s = scaled(e10);
    }
    while s < Rational::one() {
        e10 -= 1;
        s = scaled(e10);
    }
    let digits = (s * Rational::from_integer(num_traits::pow(BigInt::from(10), sig - 1)))
        .floor()
        .to_integer()
        .to_string();
    let sign = if x.is_negative() { "-" } else { "" };
    let (head, tail) = digits.split_at(1);
    if tail.is_empty() {
        format!("{sign}{head}e{e10}")
    } else {
        format!("{sign}{head}.{tail}e{e10}")
    }
}

fn add_balls(a: &RealBall, b: &RealBall) -> RealBall {
    let prec = a.prec.max(b.prec);
    if a.mid.is_zero() {
        return RealBall::new(b.mid.clone(), b.rad.add(a.rad), prec);
    }
    if b.mid.is_zero() {
        return RealBall::new(a.mid.clone(), a.rad.add(b.rad), prec);
    }
    // a midpoint far below the other's last bit folds into the radius
    let (ta, tb) = (a.mid.log2_floor(), b.mid.log2_floor());
    let gap = i64::from(prec) + 8;
    if ta - tb > gap {
        let rad = a.rad.add(b.rad).add(Mag::from_dyadic_upper(&b.mid));
        return RealBall::new(a.mid.clone(), rad, prec);
    }
    if tb - ta > gap {
        let rad = a.rad.add(b.rad).add(Mag::from_dyadic_upper(&a.mid));
        return RealBall::new(b.mid.clone(), rad, prec);
    }
    RealBall::new(&a.mid + &b.mid, a.rad.add(b.rad), prec)
}

fn mul_balls(a: &RealBall, b: &RealBall) -> RealBall {
    let prec = a.prec.max(b.prec);
    let mid = &a.mid * &b.mid;
    let rad = if a.rad.is_zero() && b.rad.is_zero() {
        Mag::ZERO
    } else {
        let ma = Mag::from_dyadic_upper(&a.mid);
        let mb = Mag::from_dyadic_upper(&b.mid);
        ma.mul(b.rad).add(mb.mul(a.rad)).add(a.rad.mul(b.rad))
    };
    RealBall::new(mid, rad, prec)
}

impl Add<&RealBall> for &RealBall {
    type Output = RealBall;
    fn add(self, rhs: &RealBall) -> RealBall {
        add_balls(self, rhs)
    }
}

impl Sub<&RealBall> for &RealBall {
    type Output = RealBall;
    fn sub(self, rhs: &RealBall) -> RealBall {
        add_balls(self, &-rhs)
    }
}

impl Mul<&RealBall> for &RealBall {
    type Output = RealBall;
    fn mul(self, rhs: &RealBall) -> RealBall {
        mul_balls(self, rhs)
    }
}

impl Neg for &RealBall {
    type Output = RealBall;
    fn neg(self) -> RealBall {
        RealBall {
            mid: -&self.mid,
            rad: self.rad,
            prec: self.prec,
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<RealBall> for RealBall {
            type Output = RealBall;
            fn $m(self, rhs: RealBall) -> RealBall {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&RealBall> for RealBall {
            type Output = RealBall;
            fn $m(self, rhs: &RealBall) -> RealBall {
                (&self).$m(rhs)
            }
        }
        impl $tr<RealBall> for &RealBall {
            type Output = RealBall;
            fn $m(self, rhs: RealBall) -> RealBall {
                self.$m(&rhs)
            }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for RealBall {
    type Output = RealBall;
    fn neg(self) -> RealBall {
        -&self
    }
}

impl std::iter::Sum for RealBall {
    fn sum<I: Iterator<Item = RealBall>>(iter: I) -> RealBall {
        let mut acc: Option<RealBall> = None;
        for x in iter {
            acc = Some(match acc {
                None => x,
                Some(a) => &a + &x,
            });
        }
        acc.unwrap_or_else(|| RealBall::zero(64))
    }
}

impl fmt::Debug for RealBall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} +/- {}]", self.mid_sci_string(20), self.rad)
    }
}

impl fmt::Display for RealBall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sig = ((f64::from(self.prec) * std::f64::consts::LOG10_2) as usize).max(2);
        write!(f, "[{} +/- {}]", self.mid_sci_string(sig), self.rad)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn third_times_three_contains_one() {
        let third = RealBall::from_rational(&rat(1, 3), 128);
        let x = &third * &RealBall::from_int(3, 128);
        assert!(x.contains_rational(&rat(1, 1)));
        assert!(!x.is_exact());
    }

    #[test]
    fn recip_of_zero_ball_is_none() {
        let x = RealBall::new(Dyadic::from_int(1), Mag::from_u64(2), 64);
        assert!(x.recip().is_none());
        assert!(RealBall::zero(64).recip().is_none());
    }

    #[test]
    fn sqrt_two_squared() {
        let r = RealBall::from_int(2, 200).sqrt().unwrap();
        assert!((&r * &r).contains_rational(&rat(2, 1)));
        assert!(r.radius() < Mag::pow2(-190));
        assert!(RealBall::from_int(-1, 64).sqrt().is_none());
    }

    #[test]
    fn far_apart_addition_folds_small_term() {
        let big = RealBall::from_int(1, 64);
        let tiny = RealBall::new(Dyadic::new(BigInt::from(1), -10_000), Mag::ZERO, 64);
        let s = &big + &tiny;
        assert!(s.contains_rational(&(rat(1, 1) + tiny.midpoint().to_rational())));
        assert!(s.midpoint().bits() <= 64);
    }

    #[test]
    fn certified_digits_stop_at_radius() {
        let x = RealBall::new(
            Dyadic::from_rational(&rat(314159, 100000), 64).0,
            Mag::from_dyadic_upper(&Dyadic::from_rational(&rat(1, 10000), 64).0),
            64,
        );
        let d = x.certified_digits().unwrap();
        assert!(d.starts_with("3.14"), "{d}");
        assert!(d.len() <= 6, "{d}");
        assert!(RealBall::zero(64).add_error(Mag::pow2(-3)).certified_digits().is_none());
    }

    #[test]
    fn sci_string() {
        let x = RealBall::from_rational(&rat(-1, 8), 64);
        assert_eq!(x.mid_sci_string(3), "-1.25e-1");
        assert_eq!(RealBall::from_int(1000, 64).mid_sci_string(1), "1e3");
    }
}
