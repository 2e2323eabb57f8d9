//! Double zeta values `ζ(l1, l2) = Σ_{m1>m2>0} m1^{-l1} m2^{-l2}` and the
//! generating polynomial `T_l(x, y) = Σ_{l1+l2=l} x^{l1-1} y^{l2-1} ζ(l1, l2)`.
//!
//! Evaluation splits the outer index at a cutoff `M`:
//!
//! ```text
//! ζ(l1, l2) = Σ_{m2<=M} m2^{-l2} Σ_{m2<m1<=M} m1^{-l1}
//!           + ζ(l1, M+1) · H_M^{(l2)}
//!           + Σ_{n>M} n^{-l2} ζ(l1, n+1)
//! ```
//!
//! The last sum is handled by expanding `ζ(l1, n+1)` with Euler–Maclaurin at
//! `b = n`, which leaves Hurwitz values at `M + 1`:
//!
//! ```text
//! ζ(w-1, M+1)/(l1-1) - ζ(w, M+1)/2 + Σ_{k=1}^{K} B_{2k}/(2k)! (l1)_{2k-1} ζ(w+2k-1, M+1) + E
//! |E| <= 4 (l1)_{2K-1} / (2π)^{2K} · M^{-(w+2K-2)} / (w+2K-2)
//! ```
//!
//! with `w = l1 + l2`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::bernoulli::bernoulli;
use crate::error::{invalid, Error, Result};
use crate::numerics::{ComplexBall, Dyadic, Mag, PrecisionCtx, Rational, RealBall};
use crate::zeta::{hurwitz_zeta_int, zeta_numeric};

/// Guard bits carried by table entries beyond the working precision.
pub const DZETA_GUARD_BITS: u32 = 32;

const MAX_ATTEMPTS: u32 = 10;

/// Index of a convergent double zeta value: `l1 >= 2`, `l2 >= 1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexPair {
    l1: u32,
    l2: u32,
}

impl IndexPair {
    pub fn new(l1: u32, l2: u32) -> Result<IndexPair> {
        if l1 < 2 || l2 < 1 {
            return Err(invalid(format!(
                "double zeta needs l1 >= 2 and l2 >= 1, got ({l1}, {l2})"
            )));
        }
        Ok(IndexPair { l1, l2 })
    }

    pub fn l1(self) -> u32 {
        self.l1
    }

    pub fn l2(self) -> u32 {
        self.l2
    }

    pub fn weight(self) -> u32 {
        self.l1 + self.l2
    }

    /// All pairs of weight `l`, ordered by `l1`.
    pub fn of_weight(l: u32) -> Vec<IndexPair> {
        (2..l).map(|l1| IndexPair { l1, l2: l - l1 }).collect()
    }
}

impl fmt::Debug for IndexPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.l1, self.l2)
    }
}

impl fmt::Display for IndexPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.l1, self.l2)
    }
}

/// Every `ζ(l1, l2)` of one weight, plus `ζ(weight)` at the same precision.
#[derive(Clone, Debug)]
pub struct DzvTable {
    weight: u32,
    entries: BTreeMap<IndexPair, RealBall>,
    zeta: RealBall,
    ctx: PrecisionCtx,
}

impl DzvTable {
    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn ctx(&self) -> &PrecisionCtx {
        &self.ctx
    }

    pub fn entries(&self) -> &BTreeMap<IndexPair, RealBall> {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, l1: u32, l2: u32) -> Option<&RealBall> {
        self.entries.get(&IndexPair { l1, l2 })
    }

    /// `ζ(weight)`.
    pub fn zeta_weight(&self) -> &RealBall {
        &self.zeta
    }

    /// Precision of the stored balls, working precision plus guard bits.
    pub fn ball_precision(&self) -> u32 {
        self.ctx.working_precision() + DZETA_GUARD_BITS
    }
}

/// `T_l(x, y)` at one point.
#[derive(Clone, Debug)]
pub struct GenPolyValue {
    pub weight: u32,
    pub x: ComplexBall,
    pub y: ComplexBall,
    pub value: ComplexBall,
}

fn inverse_power(m: u64, l: u32, prec: u32) -> RealBall {
    let den = num_traits::pow(BigInt::from(m), l as usize);
    RealBall::from_rational(&Rational::new(BigInt::from(1), den), prec)
}

/// `Σ_{n>M} n^{-l2} ζ(l1, n+1)`, or `None` when the expansion stops
/// improving before reaching `target`.
fn outer_tail(p: IndexPair, m: u64, hctx: &PrecisionCtx, target: Mag) -> Result<Option<RealBall>> {
    let prec = hctx.working_precision();
    let (l1, w) = (p.l1, p.weight());
    let mut acc = hurwitz_zeta_int(w - 1, m + 1, hctx)?
        .checked_div(&RealBall::from_int(l1 - 1, prec))
        .expect("l1 >= 2");
    acc = &acc - &hurwitz_zeta_int(w, m + 1, hctx)?.mul_2exp(-1);

    let step = Mag::from_u64(16).div(Mag::from_u64(625)); // (2π)^{-2} < (4/25)^2
    let m_inv = Mag::from_u64(1).div(Mag::from_u64(m));
    let m_inv2 = m_inv.mul(m_inv);
    // M^{-(w+2k-2)} for k = 1
    let mut m_pow = (0..w).fold(Mag::from_u64(1), |a, _| a.mul(m_inv));
    let mut inv_two_pi = Mag::from_u64(1);
    let mut poch = BigInt::from(l1); // (l1)_{2k-1}
    let mut fact = BigInt::from(2); // (2k)!
    let mut last: Option<Mag> = None;
    let k_max = 4 * prec;

    for k in 1..=k_max {
        let s = w + 2 * k - 1;
        let coeff = bernoulli(2 * k as usize) * Rational::new(poch.clone(), fact.clone());
        acc = &acc + &hurwitz_zeta_int(s, m + 1, hctx)?.mul_rational(&coeff);

        inv_two_pi = inv_two_pi.mul(step);
        let poch_mag = Mag::from_dyadic_upper(&Dyadic::from_int(poch.clone()));
        let bound = Mag::from_u64(4)
            .mul(poch_mag)
            .mul(inv_two_pi)
            .mul(m_pow)
            .div(Mag::from_u64(u64::from(s - 1)));
        if bound <= target {
            return Ok(Some(acc.add_error(bound)));
        }
        if last.is_some_and(|prev| bound > prev) {
            return Ok(None);
        }
        last = Some(bound);

        let (k2, l) = (2 * u64::from(k), u64::from(l1));
        poch *= BigInt::from(l + k2 - 1) * BigInt::from(l + k2);
        fact *= BigInt::from(k2 + 1) * BigInt::from(k2 + 2);
        m_pow = m_pow.mul(m_inv2);
    }
    Ok(None)
}

fn double_zeta_attempt(p: IndexPair, m: u64, hctx: &PrecisionCtx, target_bits: u32) -> Result<Option<RealBall>> {
    let prec = hctx.working_precision();
    // ζ(l1, l2) > 2^{-l1} from the term (m1, m2) = (2, 1)
    let target = Mag::pow2(-i64::from(p.l1) - i64::from(target_bits) - 4);
    let Some(tail) = outer_tail(p, m, hctx, target)? else {
        return Ok(None);
    };

    let mut suffix = RealBall::zero(prec); // Σ_{m2<m1<=M} m1^{-l1}
    let mut head = RealBall::zero(prec);
    let mut harmonic = RealBall::zero(prec); // H_M^{(l2)}
    for n in (1..=m).rev() {
        let inv2 = inverse_power(n, p.l2, prec);
        head = &head + &(&inv2 * &suffix);
        harmonic = &harmonic + &inv2;
        suffix = &suffix + &inverse_power(n, p.l1, prec);
    }
    let cut = hurwitz_zeta_int(p.l1, m + 1, hctx)?;
    Ok(Some(&(&head + &(&cut * &harmonic)) + &tail))
}

/// Certified ball for `ζ(l1, l2)` with radius at most `2^-p·ζ(l1, l2)`,
/// `p` the working precision.
pub fn double_zeta(p: IndexPair, ctx: &PrecisionCtx) -> Result<RealBall> {
    let bits = ctx.working_precision();
    let mut m = u64::from((bits / 2).max(32));
    let mut guard = DZETA_GUARD_BITS;
    for _ in 0..MAX_ATTEMPTS {
        let hctx = ctx.with_precision(bits + guard);
        match double_zeta_attempt(p, m, &hctx, bits)? {
            Some(v) if v.meets_relative(bits) => {
                return Ok(v.with_precision(bits + DZETA_GUARD_BITS));
            }
            Some(_) => guard += 32,
            None => m *= 2,
        }
    }
    Err(Error::PrecisionUnreachable(format!(
        "double zeta {p} at {bits} bits"
    )))
}

/// All `ζ(l1, l2)` with `l1 + l2 = l`, evaluated in parallel.
pub fn build_table(l: u32, ctx: &PrecisionCtx) -> Result<DzvTable> {
    if l < 3 {
        return Err(invalid(format!("no double zeta values of weight {l}")));
    }
    let pairs = IndexPair::of_weight(l);
    let values: Vec<RealBall> = pairs
        .par_iter()
        .map(|p| double_zeta(*p, ctx))
        .collect::<Result<_>>()?;
    let zctx = ctx.with_precision(ctx.working_precision() + DZETA_GUARD_BITS);
    Ok(DzvTable {
        weight: l,
        entries: pairs.into_iter().zip(values).collect(),
        zeta: zeta_numeric(l, &zctx)?,
        ctx: ctx.clone(),
    })
}

/// `[1, z, z^2, ..., z^n]`; `z^0 = 1` for every ball, zero included.
fn powers(z: &ComplexBall, n: u32, prec: u32) -> Vec<ComplexBall> {
    let mut out = Vec::with_capacity(n as usize + 1);
    out.push(ComplexBall::one(prec));
    for i in 0..n as usize {
        out.push(&out[i] * z);
    }
    out
}

/// Enclosure of `T_l(x, y)` over the table's pairs.
pub fn gen_poly_eval(t: &DzvTable, x: &ComplexBall, y: &ComplexBall) -> GenPolyValue {
    let prec = t.ball_precision();
    let n = t.weight - 2;
    let (xp, yp) = (powers(x, n, prec), powers(y, n, prec));
    let value = t
        .entries
        .iter()
        .map(|(p, z)| (&xp[p.l1 as usize - 1] * &yp[p.l2 as usize - 1]).mul_real(z))
        .fold(ComplexBall::zero(prec), |a, b| &a + &b);
    GenPolyValue {
        weight: t.weight,
        x: x.clone(),
        y: y.clone(),
        value,
    }
}

/// `T_l` at a real point.
pub fn gen_poly_eval_real(t: &DzvTable, x: &Rational, y: &Rational) -> RealBall {
    let prec = t.ball_precision();
    let xb = ComplexBall::from_rational(x, prec);
    let yb = ComplexBall::from_rational(y, prec);
    gen_poly_eval(t, &xb, &yb).value.re().clone()
}

/// `ζ(a)ζ(b) - ζ(a, b) - ζ(b, a) - ζ(a + b)`.
pub fn harmonic_check(a: u32, b: u32, ctx: &PrecisionCtx) -> Result<RealBall> {
    if a < 2 || b < 2 {
        return Err(invalid(format!(
            "harmonic relation needs a, b >= 2, got ({a}, {b})"
        )));
    }
    let zctx = ctx.with_precision(ctx.working_precision() + DZETA_GUARD_BITS);
    let product = &zeta_numeric(a, &zctx)? * &zeta_numeric(b, &zctx)?;
    let ab = double_zeta(IndexPair::new(a, b)?, ctx)?;
    let ba = double_zeta(IndexPair::new(b, a)?, ctx)?;
    Ok(&(&(&product - &ab) - &ba) - &zeta_numeric(a + b, &zctx)?)
}

/// `Σ ζ(l1, l2) - ζ(l)`.
pub fn sum_formula_check(t: &DzvTable) -> RealBall {
    let total = t
        .entries
        .values()
        .fold(RealBall::zero(t.ball_precision()), |a, b| &a + b);
    &total - &t.zeta
}

/// `Σ 2^{l1-1} ζ(l1, l2) - (l+1)/2 · ζ(l)`.
pub fn weighted_sum_check(t: &DzvTable) -> RealBall {
    let total = t
        .entries
        .iter()
        .fold(RealBall::zero(t.ball_precision()), |a, (p, z)| {
            &a + &z.mul_2exp(i64::from(p.l1) - 1)
        });
    let rhs = t
        .zeta
        .mul_rational(&Rational::new(BigInt::from(t.weight + 1), BigInt::from(2)));
    &total - &rhs
}

/// `Σ_{i+j=n} x^i y^j`, the divided difference `(x^{n+1} - y^{n+1})/(x - y)`
/// without the singularity at `x = y`.
pub fn homogeneous_sum(x: &ComplexBall, y: &ComplexBall, n: u32, prec: u32) -> ComplexBall {
    let (xp, yp) = (powers(x, n, prec), powers(y, n, prec));
    (0..=n as usize)
        .map(|i| &xp[i] * &yp[n as usize - i])
        .fold(ComplexBall::zero(prec), |a, b| &a + &b)
}

/// Both sides of `T(x+y, y) + T(y+x, x) = T(x, y) + T(y, x) + h(x, y) ζ(l)`
/// on a prebuilt table, `h` the homogeneous divided difference.
pub fn functional_eq26_sides(t: &DzvTable, x: &ComplexBall, y: &ComplexBall) -> (ComplexBall, ComplexBall) {
    let s = x + y;
    let t_val = |a: &ComplexBall, b: &ComplexBall| gen_poly_eval(t, a, b).value;
    let lhs = &t_val(&s, y) + &t_val(&s, x);
    let h = homogeneous_sum(x, y, t.weight - 2, t.ball_precision());
    let rhs = &(&t_val(x, y) + &t_val(y, x)) + &h.mul_real(&t.zeta);
    (lhs, rhs)
}

pub fn functional_eq26_residual(t: &DzvTable, x: &ComplexBall, y: &ComplexBall) -> ComplexBall {
    let (lhs, rhs) = functional_eq26_sides(t, x, y);
    &lhs - &rhs
}

/// Builds the weight-`l` table and returns the residual of the functional
/// equation at `(x, y)`.
pub fn functional_eq26_check(l: u32, x: &ComplexBall, y: &ComplexBall, ctx: &PrecisionCtx) -> Result<ComplexBall> {
    let t = build_table(l, ctx)?;
    Ok(functional_eq26_residual(&t, x, y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{pi_const, rational};

    fn ctx(bits: u32) -> PrecisionCtx {
        PrecisionCtx::from_bits(bits).unwrap()
    }

    fn pi_pow(k: u32, c: &PrecisionCtx) -> RealBall {
        pi_const(c).pow(k)
    }

    #[test]
    fn invalid_indices() {
        assert!(IndexPair::new(1, 2).is_err());
        assert!(IndexPair::new(2, 0).is_err());
        assert_eq!(IndexPair::new(3, 1).unwrap().weight(), 4);
    }

    #[test]
    fn weight_three_is_zeta_three() {
        let c = ctx(128);
        let v = double_zeta(IndexPair::new(2, 1).unwrap(), &c).unwrap();
        assert!(v.overlaps(&zeta_numeric(3, &c).unwrap()));
        assert!(v.meets_relative(128));
    }

    #[test]
    fn weight_four_closed_forms() {
        let c = ctx(128);
        let z22 = double_zeta(IndexPair::new(2, 2).unwrap(), &c).unwrap();
        let z31 = double_zeta(IndexPair::new(3, 1).unwrap(), &c).unwrap();
        let p4 = pi_pow(4, &ctx(192));
        assert!(z22.overlaps(&p4.mul_rational(&rational(1, 120))));
        assert!(z31.overlaps(&p4.mul_rational(&rational(1, 360))));
        assert!(!z31.overlaps(&p4.mul_rational(&rational(1, 359))));
    }

    #[test]
    fn table_shape() {
        let c = ctx(96);
        assert_eq!(build_table(3, &c).unwrap().len(), 1);
        let t = build_table(8, &c).unwrap();
        let pairs: Vec<_> = t.entries().keys().map(|p| (p.l1(), p.l2())).collect();
        assert_eq!(pairs, vec![(2, 6), (3, 5), (4, 4), (5, 3), (6, 2), (7, 1)]);
        assert!(build_table(2, &c).is_err());
    }

    #[test]
    fn generating_polynomial_examples() {
        let c = ctx(128);
        let t6 = build_table(6, &c).unwrap();
        let one = ComplexBall::one(160);
        assert!(gen_poly_eval(&t6, &one, &one)
            .value
            .overlaps(&ComplexBall::from_real(t6.zeta_weight().clone())));

        let t4 = build_table(4, &c).unwrap();
        let m = gen_poly_eval_real(&t4, &rational(-1, 1), &rational(1, 1));
        assert!(m.overlaps(&pi_pow(4, &ctx(192)).mul_rational(&rational(-1, 180))));
        let z = gen_poly_eval_real(&t4, &rational(0, 1), &rational(1, 1));
        assert!(z.is_exact() && z.contains_zero());
    }

    #[test]
    fn harmonic_examples() {
        let c = ctx(128);
        for (a, b) in [(2, 2), (4, 10), (2, 3)] {
            assert!(harmonic_check(a, b, &c).unwrap().contains_zero(), "({a}, {b})");
        }
        assert!(harmonic_check(1, 3, &c).is_err());
    }

    #[test]
    fn structural_relations_small_weights() {
        let c = ctx(128);
        for l in 3..=8 {
            let t = build_table(l, &c).unwrap();
            assert!(sum_formula_check(&t).contains_zero(), "sum l={l}");
            assert!(weighted_sum_check(&t).contains_zero(), "weighted l={l}");
        }
    }

    #[test]
    fn eq26_examples() {
        let c = ctx(128);
        let prec = 160;
        let b = |n: i64| ComplexBall::from_int(n, prec);
        let t4 = build_table(4, &c).unwrap();
        assert!(functional_eq26_residual(&t4, &b(1), &b(1)).contains_zero());
        let t5 = build_table(5, &c).unwrap();
        assert!(functional_eq26_residual(&t5, &b(1), &b(0)).contains_zero());
        let t6 = build_table(6, &c).unwrap();
        assert!(functional_eq26_residual(&t6, &b(1), &b(-1)).contains_zero());
    }

    #[test]
    fn homogeneous_sum_matches_quotient() {
        let prec = 128;
        let x = ComplexBall::from_int(3, prec);
        let y = ComplexBall::from_int(-2, prec);
        // (3^5 - (-2)^5) / 5 = 275 / 5
        let h = homogeneous_sum(&x, &y, 4, prec);
        assert!(h.overlaps(&ComplexBall::from_int(55, prec)));
        assert!(homogeneous_sum(&x, &x, 4, prec).overlaps(&ComplexBall::from_int(405, prec)));
    }
}
