use std::sync::OnceLock;

use proptest::prelude::*;

use dzv::bernoulli::restricted_convolution;
use dzv::dzeta::{build_table, double_zeta, DzvTable, IndexPair};
use dzv::identities::{
    corollary1_spec, gkz_parity_check, lemma1_check, lemma1_check_with, prop1_spec,
    restricted_sum, restricted_sum_by_terms, theorem1_check, CheckValue, Congruence,
    CongruenceFilter, SumSpec,
};
use dzv::numerics::{cube_root_of_unity, rational};
use dzv::zeta::{hurwitz_zeta_int, zeta_numeric};
use dzv::{ComplexBall, PiPolynomial, PrecisionCtx, Rational, RealBall};

fn ctx(bits: u32) -> PrecisionCtx {
    PrecisionCtx::from_bits(bits).unwrap()
}

fn tables() -> &'static Vec<DzvTable> {
    static T: OnceLock<Vec<DzvTable>> = OnceLock::new();
    T.get_or_init(|| (3..=20).map(|l| build_table(l, &ctx(128)).unwrap()).collect())
}

fn table(l: u32) -> &'static DzvTable {
    &tables()[(l - 3) as usize]
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-1000i64..1000, 1i64..200).prop_map(|(n, d)| rational(n, d))
}

fn pipoly() -> impl Strategy<Value = PiPolynomial> {
    prop::collection::vec((0u32..6, -20i64..20, 1i64..10), 0..4).prop_map(|terms| {
        terms
            .into_iter()
            .map(|(k, n, d)| PiPolynomial::monomial(rational(n, d), k))
            .sum()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Ball operations at two precisions both enclose the exact rational
    /// result, and the finer ball is never wider.
    #[test]
    fn ball_inclusion_two_precisions(a in small_rational(), b in small_rational(), c in small_rational()) {
        let exact = &(&a * &b) + &c;
        let eval = |prec: u32| {
            let (x, y, z) = (
                RealBall::from_rational(&a, prec),
                RealBall::from_rational(&b, prec),
                RealBall::from_rational(&c, prec),
            );
            &(&x * &y) + &z
        };
        let (lo, hi) = (eval(64), eval(160));
        prop_assert!(lo.contains_rational(&exact));
        prop_assert!(hi.contains_rational(&exact));
        prop_assert!(hi.radius() <= lo.radius());
        if b != rational(0, 1) {
            if let Some(q) = RealBall::from_rational(&a, 96).checked_div(&RealBall::from_rational(&b, 96)) {
                prop_assert!(q.contains_rational(&(&a / &b)));
            }
        }
    }

    #[test]
    fn pipoly_ring_laws(p in pipoly(), q in pipoly(), r in pipoly()) {
        prop_assert_eq!(&p + &q, &q + &p);
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert!((&p - &p).is_zero());
        prop_assert_eq!(&p * &PiPolynomial::constant(rational(1, 1)), p.clone());
    }

    /// `ζ(s, a) - ζ(s, a+1) = a^{-s}`.
    #[test]
    fn hurwitz_recurrence(s in 2u32..30, a in 1u64..60) {
        let c = ctx(96);
        let d = &hurwitz_zeta_int(s, a, &c).unwrap() - &hurwitz_zeta_int(s, a + 1, &c).unwrap();
        let term = Rational::new(1.into(), num_traits::pow(num_bigint::BigInt::from(a), s as usize));
        prop_assert!(d.contains_rational(&term));
    }

    /// `C(l,j) B_j B_{l-j}` is symmetric under `j -> l - j`.
    #[test]
    fn bernoulli_reflection(l in 2u32..120, m in prop::sample::select(vec![2u32, 3, 6]), r in 0u32..6) {
        let r = r % m;
        let reflected = (l % m + m - r) % m;
        prop_assert_eq!(restricted_convolution(l, r, m), restricted_convolution(l, reflected, m));
    }

    /// The six classes of `l1` mod 6 partition every table.
    #[test]
    fn filter_partition(l in 3u32..=20) {
        let t = table(l);
        let mut count = 0;
        for p in t.entries().keys() {
            let hits = (0..6)
                .filter(|&r| CongruenceFilter::on_first(Congruence::new(r, 6).unwrap()).matches(*p))
                .count();
            prop_assert_eq!(hits, 1);
            count += hits;
        }
        prop_assert_eq!(count, t.len());
        let all = (0..6).fold(SumSpec::new(), |s, r| {
            s.plus(CongruenceFilter::on_first(Congruence::new(r, 6).unwrap()))
        });
        let whole = restricted_sum(t, &SumSpec::new().plus(CongruenceFilter::all()));
        let parts = restricted_sum(t, &all);
        prop_assert_eq!(whole.midpoint(), parts.midpoint());
        prop_assert!(parts.overlaps(t.zeta_weight()));
    }

    /// Coefficient accumulation and term-by-term evaluation of the signed
    /// bracket agree.
    #[test]
    fn prop1_two_evaluations(l in 3u32..=20) {
        let t = table(l);
        let spec = prop1_spec(l);
        let a = restricted_sum(t, &spec);
        let b = restricted_sum_by_terms(t, &spec);
        prop_assert!(a.overlaps(&b));
        prop_assert!((&a - &b).radius() <= a.radius().add(b.radius()).mul_2exp(1));
    }
}

#[test]
fn table_positivity_and_harmonic_bound() {
    let c = ctx(128);
    for t in tables() {
        for (p, z) in t.entries() {
            assert!(z.is_positive(), "{p}");
            // ζ(l2) diverges for l2 = 1
            if p.l2() >= 2 {
                let bound = &zeta_numeric(p.l1(), &c).unwrap() * &zeta_numeric(p.l2(), &c).unwrap();
                assert!((&bound - z).is_positive(), "{p}");
            }
            assert!(z.meets_relative(128), "{p}");
        }
        assert_eq!(t.len() as u32, t.weight() - 2);
    }
}

#[test]
fn doubled_precision_refines_tables() {
    for l in [3, 7, 12] {
        let lo = build_table(l, &ctx(96)).unwrap();
        let hi = build_table(l, &ctx(192)).unwrap();
        for (p, z) in lo.entries() {
            let w = &hi.entries()[p];
            assert!(z.contains(w) || (z.overlaps(w) && w.radius() < z.radius()), "{p}");
        }
    }
}

#[test]
fn structural_relations_through_weight_thirty() {
    let c = ctx(192);
    for l in 3..=30 {
        let t = build_table(l, &c).unwrap();
        assert!(dzv::dzeta::sum_formula_check(&t).contains_zero(), "l={l}");
        assert!(dzv::dzeta::weighted_sum_check(&t).contains_zero(), "l={l}");
    }
}

/// Lemma sums over `{1, ω, ω²}` are unchanged when `ω` is replaced by
/// its conjugate `ω²`.
#[test]
fn lemma_conjugate_root_invariance() {
    for l in 3..=20 {
        let t = table(l);
        let omega = cube_root_of_unity(&ctx(t.ball_precision()));
        let a = lemma1_check(t).unwrap();
        let b = lemma1_check_with(t, &omega.conj()).unwrap();
        for (x, y) in a.iter().zip(b.iter()).take(4) {
            let (CheckValue::Complex(lx), CheckValue::Complex(ly)) = (&x.lhs, &y.lhs) else {
                panic!("complex sides expected");
            };
            assert!(lx.overlaps(ly), "l={l} {}", x.label);
            assert!(y.passed);
        }
    }
}

/// For `l ≡ 2 (mod 6)` the corollary's sum coincides with the theorem's, and
/// the theorem's right side reduces to `ζ(l)/12` through the odd-odd parity
/// formula.
#[test]
fn corollary_rederived_from_theorem() {
    for l in [8, 14, 20] {
        let t = table(l);
        let (_, cor, c) = corollary1_spec(l).unwrap();
        let thm = theorem1_check(t).unwrap();
        let CheckValue::Real(thm_lhs) = &thm.lhs else { panic!() };
        let diff = thm_lhs - &restricted_sum(t, &cor);
        assert!(diff.contains_zero() && diff.radius().to_f64() < 1e-30);

        let [_, odd] = gkz_parity_check(t).unwrap();
        assert!(odd.passed);
        let CheckValue::Real(odd_sum) = &odd.lhs else { panic!() };
        let rhs = &t.zeta_weight().mul_rational(&rational(1, 6)) - &odd_sum.mul_rational(&rational(1, 3));
        assert!(rhs.overlaps(&t.zeta_weight().mul_rational(&c)));
    }
}

#[test]
fn generating_polynomial_at_zero_argument() {
    let t = table(6);
    let prec = t.ball_precision();
    let v = dzv::dzeta::gen_poly_eval(t, &ComplexBall::one(prec), &ComplexBall::zero(prec)).value;
    // only l2 = 1 survives: ζ(5, 1)
    assert!(v.re().overlaps(t.get(5, 1).unwrap()));
    let single = double_zeta(IndexPair::new(5, 1).unwrap(), &ctx(128)).unwrap();
    assert!(v.re().overlaps(&single));
}
