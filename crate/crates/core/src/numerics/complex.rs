use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::ball::RealBall;
use super::mag::Mag;
use super::Rational;

/// Rectangular complex ball: independent real and imaginary enclosures.
#[derive(Clone)]
pub struct ComplexBall {
    re: RealBall,
    im: RealBall,
}

impl ComplexBall {
    pub fn new(re: RealBall, im: RealBall) -> ComplexBall {
        ComplexBall { re, im }
    }

    pub fn from_real(re: RealBall) -> ComplexBall {
        let prec = re.precision();
        ComplexBall {
            re,
            im: RealBall::zero(prec),
        }
    }

    pub fn from_rational(re: &Rational, prec: u32) -> ComplexBall {
        ComplexBall::from_real(RealBall::from_rational(re, prec))
    }

    pub fn from_int(n: i64, prec: u32) -> ComplexBall {
        ComplexBall::from_real(RealBall::from_int(n, prec))
    }

    pub fn zero(prec: u32) -> ComplexBall {
        ComplexBall::from_real(RealBall::zero(prec))
    }

    pub fn one(prec: u32) -> ComplexBall {
        ComplexBall::from_int(1, prec)
    }

    pub fn re(&self) -> &RealBall {
        &self.re
    }

    pub fn im(&self) -> &RealBall {
        &self.im
    }

    pub fn precision(&self) -> u32 {
        self.re.precision().max(self.im.precision())
    }

    pub fn conj(&self) -> ComplexBall {
        ComplexBall {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    pub fn contains_zero(&self) -> bool {
        self.re.contains_zero() && self.im.contains_zero()
    }

    pub fn overlaps(&self, other: &ComplexBall) -> bool {
        self.re.overlaps(&other.re) && self.im.overlaps(&other.im)
    }

    /// Larger of the two component radii.
    pub fn radius(&self) -> Mag {
        self.re.radius().max(self.im.radius())
    }

    pub fn mul_real(&self, x: &RealBall) -> ComplexBall {
        ComplexBall {
            re: &self.re * x,
            im: &self.im * x,
        }
    }

    pub fn mul_rational(&self, r: &Rational) -> ComplexBall {
        ComplexBall {
            re: self.re.mul_rational(r),
            im: self.im.mul_rational(r),
        }
    }

    pub fn pow(&self, mut n: u32) -> ComplexBall {
        let mut base = self.clone();
        let mut acc = ComplexBall::one(self.precision());
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
}

impl Add<&ComplexBall> for &ComplexBall {
    type Output = ComplexBall;
    fn add(self, rhs: &ComplexBall) -> ComplexBall {
        ComplexBall {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl Sub<&ComplexBall> for &ComplexBall {
    type Output = ComplexBall;
    fn sub(self, rhs: &ComplexBall) -> ComplexBall {
        ComplexBall {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl Mul<&ComplexBall> for &ComplexBall {
    type Output = ComplexBall;
    fn mul(self, rhs: &ComplexBall) -> ComplexBall {
        ComplexBall {
            re: &(&self.re * &rhs.re) - &(&self.im * &rhs.im),
            im: &(&self.re * &rhs.im) + &(&self.im * &rhs.re),
        }
    }
}

impl Neg for &ComplexBall {
    type Output = ComplexBall;
    fn neg(self) -> ComplexBall {
        ComplexBall {
            re: -&self.re,
            im: -&self.im,
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<ComplexBall> for ComplexBall {
            type Output = ComplexBall;
            fn $m(self, rhs: ComplexBall) -> ComplexBall {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&ComplexBall> for ComplexBall {
            type Output = ComplexBall;
            fn $m(self, rhs: &ComplexBall) -> ComplexBall {
                (&self).$m(rhs)
            }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul);

impl std::iter::Sum for ComplexBall {
    fn sum<I: Iterator<Item = ComplexBall>>(iter: I) -> ComplexBall {
        let mut acc: Option<ComplexBall> = None;
        for x in iter {
            acc = Some(match acc {
                None => x,
                Some(a) => &a + &x,
            });
        }
        acc.unwrap_or_else(|| ComplexBall::zero(64))
    }
}

impl fmt::Debug for ComplexBall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?} + {:?}i)", self.re, self.im)
    }
}

impl fmt::Display for ComplexBall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}i", self.re, self.im)
    }
}
