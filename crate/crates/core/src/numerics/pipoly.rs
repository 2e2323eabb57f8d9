use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::ball::RealBall;
use super::constants::pi_const;
use super::{PrecisionCtx, Rational};

/// Finite sum `Σ c_k π^k` with exact rational coefficients.
///
/// Zero coefficients are never stored, so structural equality is equality
/// of polynomials in the formal symbol π.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PiPolynomial {
    terms: BTreeMap<u32, Rational>,
}

impl PiPolynomial {
    pub fn zero() -> PiPolynomial {
        PiPolynomial::default()
    }

    pub fn constant(c: Rational) -> PiPolynomial {
        PiPolynomial::monomial(c, 0)
    }

    /// `c * π^k`.
    pub fn monomial(c: Rational, k: u32) -> PiPolynomial {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(k, c);
        }
        PiPolynomial { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, k: u32) -> Rational {
        self.terms.get(&k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &Rational)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().copied()
    }

    /// The single term `(k, c)` if the polynomial is a monomial.
    pub fn as_monomial(&self) -> Option<(u32, &Rational)> {
        if self.terms.len() == 1 {
            self.terms().next()
        } else {
            None
        }
    }

    pub fn scale(&self, c: &Rational) -> PiPolynomial {
        if c.is_zero() {
            return PiPolynomial::zero();
        }
        PiPolynomial {
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    fn accumulate(&mut self, k: u32, c: Rational) {
        let slot = self.terms.entry(k).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&k);
        }
    }
}

/// Ball enclosure of `Σ c_k π^k`.
pub fn pipoly_eval(p: &PiPolynomial, ctx: &PrecisionCtx) -> RealBall {
    let prec = ctx.working_precision();
    if p.is_zero() {
        return RealBall::zero(prec);
    }
    let pi = pi_const(ctx);
    // Horner over the dense exponent range
    let top = p.degree().unwrap_or(0);
    let mut acc = RealBall::zero(prec);
    for k in (0..=top).rev() {
        acc = &acc * &pi;
        if let Some(c) = p.terms.get(&k) {
            acc = acc.add_rational(c);
        }
    }
    acc
}

impl Add<&PiPolynomial> for &PiPolynomial {
    type Output = PiPolynomial;
    fn add(self, rhs: &PiPolynomial) -> PiPolynomial {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.accumulate(*k, c.clone());
        }
        out
    }
}

impl Sub<&PiPolynomial> for &PiPolynomial {
    type Output = PiPolynomial;
    fn sub(self, rhs: &PiPolynomial) -> PiPolynomial {
        self + &(-rhs)
    }
}

impl Neg for &PiPolynomial {
    type Output = PiPolynomial;
    fn neg(self) -> PiPolynomial {
        self.scale(&-Rational::one())
    }
}

impl Mul<&PiPolynomial> for &PiPolynomial {
    type Output = PiPolynomial;
    fn mul(self, rhs: &PiPolynomial) -> PiPolynomial {
        let mut out = PiPolynomial::zero();
        for (i, a) in &self.terms {
            for (j, b) in &rhs.terms {
                out.accumulate(i + j, a * b);
            }
        }
        out
    }
}

impl std::iter::Sum for PiPolynomial {
    fn sum<I: Iterator<Item = PiPolynomial>>(iter: I) -> PiPolynomial {
        iter.fold(PiPolynomial::zero(), |acc, x| &acc + &x)
    }
}

impl fmt::Display for PiPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, c)| match k {
                0 => format!("{c}"),
                1 => format!("({c})*pi"),
                _ => format!("({c})*pi^{k}"),
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn cancellation_removes_terms() {
        let p = PiPolynomial::monomial(rat(1, 6), 2);
        let q = &p - &p;
        assert!(q.is_zero());
        assert_eq!(q, PiPolynomial::zero());
    }

    #[test]
    fn product_of_monomials() {
        let z2 = PiPolynomial::monomial(rat(1, 6), 2);
        let sq = &z2 * &z2;
        assert_eq!(sq, PiPolynomial::monomial(rat(1, 36), 4));
    }

    #[test]
    fn eval_examples() {
        let ctx = PrecisionCtx::from_bits(128).unwrap();
        assert!(pipoly_eval(&PiPolynomial::zero(), &ctx).is_exact());
        let c = pipoly_eval(&PiPolynomial::constant(rat(3, 4)), &ctx);
        assert!(c.is_exact());
        assert!(c.contains_rational(&rat(3, 4)));
        let z2 = pipoly_eval(&PiPolynomial::monomial(rat(1, 6), 2), &ctx);
        assert!((z2.to_f64() - 1.6449340668482264).abs() < 1e-15);
    }
}
