mod common;

use common::*;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use thickening::monomial::monomials_of_multidegree;
use thickening::*;

fn fields() -> impl Strategy<Value = Field> {
    prop_oneof![
        Just(Field::Rational),
        Just(Field::prime(2).unwrap()),
        Just(Field::prime(3).unwrap()),
        Just(Field::prime(7).unwrap()),
    ]
}

proptest! {
    #[test]
    fn field_axioms((f, a, b, c) in fields().prop_flat_map(|f| (Just(f), scalar(f), scalar(f), scalar(f)))) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &(-&a), f.zero());
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.inv(), f.one());
        }
    }

    #[test]
    fn polynomial_ring_axioms((a, b, c) in fields().prop_flat_map(|f| (polynomial(f, 4, 2), polynomial(f, 4, 2), polynomial(f, 4, 2)))) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&(&(&a + &b) - &b) - &a).is_zero());
    }

    #[test]
    fn degrevlex_is_a_monomial_order(a in monomial(3), b in monomial(3), c in monomial(3)) {
        let order = MonomialOrder::default();
        prop_assert_eq!(a.cmp_in(&b, order), (a * c).cmp_in(&(b * c), order));
        prop_assert!(c.is_one() || (a * c).cmp_in(&a, order) == std::cmp::Ordering::Greater);
    }

    #[test]
    fn frobenius_is_additive(
        (p, e, f, g) in prop_oneof![Just(2u64), Just(3u64)]
            .prop_flat_map(|p| {
                let field = Field::prime(p).unwrap();
                (Just(p), 1u32..=2, polynomial(field, 3, 2), polynomial(field, 3, 2))
            })
    ) {
        let q = (p as u32).pow(e);
        prop_assert_eq!((&f + &g).pow(q), &f.pow(q) + &g.pow(q));
    }

    #[test]
    fn expr_and_parser_agree(f in polynomial(Field::Rational, 4, 2)) {
        let ctx = ExprContext::new(Field::Rational);
        let back = ctx.eval(&f.to_string()).unwrap();
        prop_assert_eq!(back, Fraction::from_poly(f));
    }
}

proptest! {
    #![proptest_config(Config { cases: 48, ..Config::default() })]

    /// Gröbner membership agrees with the linear-algebra oracle on random
    /// homogeneous elements, both arbitrary ones and genuine members.
    #[test]
    fn membership_matches_oracle(
        field in prop_oneof![Just(Field::Rational), Just(Field::prime(2).unwrap())],
        t in 1u32..=2,
        lead in monomial(2),
        coeffs in proptest::collection::vec(-3i64..=3, 1..8),
        member in any::<bool>(),
    ) {
        let data = build_determinantal(field);
        let power = ideal_power(&data.ideal(), t).unwrap();
        let gb = power.groebner();
        let f = if member {
            let gens = power.generators();
            let target = gens[coeffs.len() % gens.len()].multidegree().unwrap() + lead.multidegree();
            let mut acc = Polynomial::zero(field);
            let mut cs = coeffs.iter().cycle();
            for g in gens {
                for m in monomials_of_multidegree(target - g.multidegree().unwrap()) {
                    acc = &acc + &g.mul_term(&m, &field.from_int(*cs.next().unwrap()));
                }
            }
            acc
        } else {
            let d = (lead * lead).multidegree();
            let monos = monomials_of_multidegree(d);
            let terms = monos.iter().zip(coeffs.iter().cycle()).map(|(m, c)| (*m, field.from_int(*c)));
            Polynomial::from_terms(field, MonomialOrder::default(), terms)
        };
        let via_gb = membership(&f, &gb);
        prop_assert_eq!(via_gb, graded_membership_oracle(&f, &power).unwrap());
        if member {
            prop_assert!(via_gb);
        }
    }

    /// `a/s^k` equals `a·s^j / s^(k+j)`.
    #[test]
    fn localized_equality_is_well_defined(
        field in prop_oneof![Just(Field::Rational), Just(Field::prime(3).unwrap())],
        bits in 1u8..64,
        num in polynomial(Field::Rational, 3, 2),
        k in 0u32..=2,
        j in 0u32..=2,
    ) {
        let num = Polynomial::from_terms(field, MonomialOrder::default(),
            num.terms().iter().map(|(m, c)| (*m, field.parse_scalar(&c.to_string()).unwrap_or_else(|_| field.one()))));
        let th = thickening(field, 2);
        let s = VarSet::from_vars(&(0..6).filter(|i| bits >> i & 1 == 1).map(Var::from_index).collect::<Vec<_>>());
        let a = th.element(s, num.clone(), k);
        let b = th.element(s, num.mul_monomial(&s.product().pow(j as u16)), k + j);
        prop_assert!(loc_is_zero(&a.sub(&b).unwrap()));
    }

    /// Printed fractions parse back to the same element.
    #[test]
    fn element_text_round_trips(
        num in polynomial(Field::Rational, 3, 2),
        k in 0u32..=2,
        bits in 0u8..64,
    ) {
        let th = thickening(Field::Rational, 2);
        let s = VarSet::from_vars(&(0..6).filter(|i| bits >> i & 1 == 1).map(Var::from_index).collect::<Vec<_>>());
        let e = th.element(s, num, k);
        let back = th.parse_element(s, &e.to_string()).unwrap();
        prop_assert!(loc_is_zero(&back.sub(&e).unwrap()), "{}", e);
    }

    /// Restriction to a larger site is a ring homomorphism.
    #[test]
    fn restriction_is_a_homomorphism(
        a in polynomial(Field::Rational, 3, 2),
        b in polynomial(Field::Rational, 3, 2),
        (ka, kb) in (0u32..=2, 0u32..=2),
        (small, extra) in (1u8..64, 0u8..64),
    ) {
        let th = thickening(Field::Rational, 2);
        let vars = |m: u8| VarSet::from_vars(&(0..6).filter(|i| m >> i & 1 == 1).map(Var::from_index).collect::<Vec<_>>());
        let s = vars(small);
        let big = th.site(vars(small | extra));
        let x = th.element(s, a, ka);
        let y = th.element(s, b, kb);
        let r = |e: &LocalizedElement| e.restrict(&big).unwrap();
        prop_assert!(loc_is_zero(&r(&x.add(&y).unwrap()).sub(&r(&x).add(&r(&y)).unwrap()).unwrap()));
        prop_assert!(loc_is_zero(&r(&x.mul(&y).unwrap()).sub(&r(&x).mul(&r(&y)).unwrap()).unwrap()));
        prop_assert_eq!(r(&x).multidegree(), x.multidegree());
    }

    /// `d` keeps the multidegree of homogeneous cochains.
    #[test]
    fn differential_preserves_multidegree(
        k in 0usize..=4,
        d in (-1i32..=1, -1i32..=1, -1i32..=1, -1i32..=2),
        picks in proptest::collection::vec((0usize..20, 0u32..=2, 0usize..10, -3i64..=3), 1..4),
    ) {
        let th = thickening(Field::Rational, 2);
        let d = Multidegree::new(d.0, d.1, d.2, d.3);
        let c = homogeneous_cochain(&th, k, d, &picks);
        let dc = differential(&th, &c).unwrap();
        if let Some(m) = dc.multidegree().unwrap() {
            prop_assert_eq!(m, d);
        }
    }
}

/// `d∘d = 0` on 100 random sparse cochains for each `k ≤ 4` and both
/// characteristics.
#[test]
fn d_squared_vanishes() {
    for field in both_fields() {
        for k in 0..=4 {
            let th = thickening(field, 2);
            let mut runner = TestRunner::new(Config { cases: 100, ..Config::default() });
            runner
                .run(&sparse_cochain(field, 2, k), |c| {
                    let dd = differential(&th, &differential(&th, &c).unwrap()).unwrap();
                    prop_assert!(dd.is_zero(), "k={} {:?}", k, c.to_text());
                    Ok(())
                })
                .unwrap();
        }
    }
}

#[test]
fn rank_is_stable_under_cutoff_increase() {
    for t in [2, 3] {
        let th = thickening(Field::Rational, t);
        let d = Multidegree::new(0, 0, 0, 0);
        let a = cohomology_rank(&th, 3, d, 4).unwrap();
        let b = cohomology_rank(&th, 3, d, 5).unwrap();
        assert!(a.stable && b.stable);
        assert_eq!(a.rank, b.rank);
    }
}
