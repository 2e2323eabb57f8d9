//! Exact Bernoulli numbers and their convolution identities.
//!
//! Convention: `X/(e^X - 1) = Σ B_m X^m / m!`, so `B_1 = -1/2`.

use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{invalid, Result};
use crate::numerics::{binomial_int, integer, Rational};

/// Growable table `m -> B_m`, extended on demand.
///
/// Readers of already computed entries only take the read lock; extension
/// happens under the write lock so concurrent callers never see a partial
/// table.
#[derive(Debug)]
pub struct BernoulliCache {
    values: RwLock<Vec<Rational>>,
}

impl Default for BernoulliCache {
    fn default() -> Self {
        BernoulliCache::new()
    }
}

impl BernoulliCache {
    pub fn new() -> BernoulliCache {
        BernoulliCache {
            values: RwLock::new(vec![integer(1), Rational::new((-1).into(), 2.into())]),
        }
    }

    pub fn len(&self) -> usize {
        self.values.read().expect("bernoulli cache poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, m: usize) -> Rational {
        if let Some(b) = self
            .values
            .read()
            .expect("bernoulli cache poisoned")
            .get(m)
        {
            return b.clone();
        }
        let mut values = self.values.write().expect("bernoulli cache poisoned");
        while values.len() <= m {
            let next = next_bernoulli(&values);
            values.push(next);
        }
        values[m].clone()
    }
}

/// `B_n` from `Σ_{j=0}^{n} C(n+1, j) B_j = 0`, given `B_0..B_{n-1}`.
fn next_bernoulli(known: &[Rational]) -> Rational {
    let n = known.len();
    if n >= 3 && n % 2 == 1 {
        return Rational::zero();
    }
    let mut c = BigInt::from(1); // C(n+1, 0)
    let mut sum = Rational::zero();
    for (j, b) in known.iter().enumerate() {
        if !b.is_zero() {
            sum += b * Rational::from_integer(c.clone());
        }
        c = c * (n + 1 - j) / (j + 1);
    }
    -sum / integer(n as i64 + 1)
}

fn global() -> &'static BernoulliCache {
    static CACHE: OnceLock<BernoulliCache> = OnceLock::new();
    CACHE.get_or_init(BernoulliCache::new)
}

/// Exact `B_m` from the process-wide cache.
pub fn bernoulli(m: usize) -> Rational {
    global().get(m)
}

/// Outcome of an exact identity check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityVerdict {
    pub lhs: Rational,
    pub rhs: Rational,
    pub holds: bool,
    pub weight: u32,
    pub label: String,
}

impl IdentityVerdict {
    pub fn new(label: impl Into<String>, weight: u32, lhs: Rational, rhs: Rational) -> Self {
        IdentityVerdict {
            holds: lhs == rhs,
            lhs,
            rhs,
            weight,
            label: label.into(),
        }
    }
}

/// `Σ_{0<=j<=l, j ≡ residue (mod modulus)} C(l, j) B_j B_{l-j}`, no hypotheses.
pub fn restricted_convolution(l: u32, residue: u32, modulus: u32) -> Rational {
    assert!(modulus > 0, "modulus must be positive");
    let r = residue % modulus;
    (0..=l)
        .filter(|j| j % modulus == r)
        .map(|j| {
            let (bj, bk) = (bernoulli(j as usize), bernoulli((l - j) as usize));
            if bj.is_zero() || bk.is_zero() {
                return Rational::zero();
            }
            Rational::from_integer(binomial_int(u64::from(l), i64::from(j))) * bj * bk
        })
        .sum()
}

/// Euler: `Σ_{j even} C(l,j) B_j B_{l-j} = -(l-1) B_l` for even `l >= 4`.
pub fn euler_identity_check(l: u32) -> Result<IdentityVerdict> {
    if l < 4 || l % 2 == 1 {
        return Err(invalid(format!(
            "Euler's Bernoulli identity needs an even weight >= 4, got {l}"
        )));
    }
    let lhs = restricted_convolution(l, 0, 2);
    let rhs = -integer(i64::from(l) - 1) * bernoulli(l as usize);
    Ok(IdentityVerdict::new("euler-bernoulli", l, lhs, rhs))
}

fn check_gap_six_weight(l: u32) -> Result<()> {
    if l < 8 || l % 6 != 2 {
        return Err(invalid(format!(
            "gap-6 Bernoulli sums need l ≡ 2 (mod 6) and l >= 8, got {l}"
        )));
    }
    Ok(())
}

/// `Σ_{j ≡ m (mod 6)} C(l,j) B_j B_{l-j}` for `l ≡ 2 (mod 6)`, `l >= 8`.
pub fn ramanujan_sum(l: u32, m: u32) -> Result<Rational> {
    check_gap_six_weight(l)?;
    if !matches!(m, 0 | 2 | 4) {
        return Err(invalid(format!("residue must be 0, 2 or 4, got {m}")));
    }
    Ok(restricted_convolution(l, m, 6))
}

/// The three gap-6 identities, each against `-((l-1)/3) B_l`.
pub fn ramanujan_check(l: u32) -> Result<[IdentityVerdict; 3]> {
    check_gap_six_weight(l)?;
    let rhs = -Rational::new(BigInt::from(l - 1), BigInt::from(3)) * bernoulli(l as usize);
    let verdict = |m: u32| -> Result<IdentityVerdict> {
        Ok(IdentityVerdict::new(
            format!("ramanujan m={m}"),
            l,
            ramanujan_sum(l, m)?,
            rhs.clone(),
        ))
    };
    Ok([verdict(0)?, verdict(2)?, verdict(4)?])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rational;

    #[test]
    fn small_values() {
        assert_eq!(bernoulli(0), integer(1));
        assert_eq!(bernoulli(1), rational(-1, 2));
        assert_eq!(bernoulli(2), rational(1, 6));
        assert_eq!(bernoulli(4), rational(-1, 30));
        assert_eq!(bernoulli(6), rational(1, 42));
        assert_eq!(bernoulli(8), rational(-1, 30));
        assert_eq!(bernoulli(12), rational(-691, 2730));
        assert_eq!(bernoulli(14), rational(7, 6));
    }

    #[test]
    fn odd_and_signs() {
        for m in (3..120).step_by(2) {
            assert!(bernoulli(m).is_zero(), "B_{m}");
        }
        for k in 1..60usize {
            let b = bernoulli(2 * k);
            let positive = b > Rational::zero();
            assert_eq!(positive, k % 2 == 1, "sign of B_{}", 2 * k);
        }
    }

    /// von Staudt–Clausen: the denominator of `B_{2k}` is the product of the
    /// primes `p` with `(p - 1) | 2k`.
    #[test]
    fn von_staudt_clausen_denominators() {
        let is_prime = |p: u32| p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0);
        for k in 1..50u32 {
            let n = 2 * k;
            let expected: BigInt = (2..=n + 1)
                .filter(|&p| is_prime(p) && n % (p - 1) == 0)
                .map(BigInt::from)
                .product();
            assert_eq!(bernoulli(n as usize).denom(), &expected, "B_{n}");
        }
    }

    #[test]
    fn euler_examples() {
        let v = euler_identity_check(4).unwrap();
        assert_eq!(v.lhs, rational(1, 10));
        assert_eq!(v.rhs, rational(1, 10));
        assert!(v.holds);
        let v = euler_identity_check(6).unwrap();
        assert_eq!(v.lhs, rational(-5, 42));
        assert!(v.holds);
        assert!(euler_identity_check(3).is_err());
        assert!(euler_identity_check(2).is_err());
    }

    #[test]
    fn ramanujan_examples() {
        assert_eq!(ramanujan_sum(8, 4).unwrap(), rational(7, 90));
        assert_eq!(ramanujan_sum(8, 0).unwrap(), rational(7, 90));
        assert_eq!(ramanujan_sum(8, 2).unwrap(), rational(7, 90));
        for v in ramanujan_check(8).unwrap() {
            assert!(v.holds);
            assert_eq!(v.rhs, rational(7, 90));
        }
        assert!(ramanujan_check(14).unwrap().iter().all(|v| v.holds));
        assert!(ramanujan_check(10).is_err());
        assert!(ramanujan_sum(2, 0).is_err());
        assert!(ramanujan_sum(8, 1).is_err());
    }

    #[test]
    fn fresh_cache_is_deterministic() {
        let fresh = BernoulliCache::new();
        assert_eq!(fresh.get(60), bernoulli(60));
        assert_eq!(fresh.len(), 61);
        let again = BernoulliCache::new();
        for m in (0..=60).rev() {
            assert_eq!(again.get(m), fresh.get(m));
        }
    }
}
