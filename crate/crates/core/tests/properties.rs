mod common;

use std::collections::BTreeMap;

use common::{descartes_root_count, eval, from_roots, int, ratio};
use num_bigint::BigInt;
use proptest::prelude::*;
use semiramsey::exactmath::{count_real_roots, sturm_sequence};
use semiramsey::geometry::{order_type_relation, orientation};
use semiramsey::relation::{count_distinct_sign_vectors, milnor_thom_bound, Formula};
use semiramsey::solvers::{longest_monotone_subsequence, MembershipTable};
use semiramsey::{
    eval_membership, MultivariatePolynomial, OrderedPointSet, Rational, SemiAlgebraicRelation,
};

fn rational() -> impl Strategy<Value = Rational> {
    (-40i64..=40, 1i64..=12).prop_map(|(n, d)| ratio(n, d))
}

fn univariate() -> impl Strategy<Value = Vec<Rational>> {
    prop_oneof![
        prop::collection::vec(rational(), 1..=9),
        (
            prop::collection::vec((-6i64..=6, 1i64..=3).prop_map(|(n, d)| ratio(n, d)), 0..=8),
            1i64..=5
        )
            .prop_map(|(roots, lead)| from_roots(&roots, int(lead))),
    ]
}

fn poly(vars: usize, max_deg: u32) -> impl Strategy<Value = MultivariatePolynomial> {
    prop::collection::vec((prop::collection::vec(0..=max_deg, vars), rational()), 0..6).prop_map(
        move |terms| {
            MultivariatePolynomial::from_terms(
                vars,
                terms
                    .into_iter()
                    .filter(|(e, _)| e.iter().sum::<u32>() <= max_deg),
            )
            .unwrap()
        },
    )
}

fn formula(polys: usize) -> impl Strategy<Value = Formula> {
    let leaf = (0..polys, 0..3u8).prop_map(|(p, c)| match c {
        0 => Formula::ge(p),
        1 => Formula::gt(p),
        _ => Formula::eq(p),
    });
    leaf.prop_recursive(4, 24, 4, |inner| {
        prop_oneof![
            prop::collection::vec(inner.clone(), 0..4).prop_map(Formula::and),
            prop::collection::vec(inner.clone(), 0..4).prop_map(Formula::or),
            inner.prop_map(Formula::not),
        ]
    })
}

fn dense_to_poly(c: &[Rational]) -> MultivariatePolynomial {
    MultivariatePolynomial::univariate(c)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn rational_arithmetic_is_exact(a in rational(), b in rational(), c in rational()) {
        prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!((&a + &b) - &b, a.clone());
        if b != int(0) {
            prop_assert_eq!(&a * &b / &b, a.clone());
        }
        prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
    }

    #[test]
    fn sturm_matches_descartes_oracle(g in univariate(), a in rational(), w in 1i64..=20) {
        let b = &a + ratio(w, 2);
        let p = dense_to_poly(&g);
        prop_assume!(!p.is_zero());
        let endpoint_root = eval(&g, &a) == int(0) || eval(&g, &b) == int(0);
        match count_real_roots(&p, &a, &b) {
            Ok(n) => {
                prop_assert!(!endpoint_root);
                prop_assert_eq!(n, descartes_root_count(&g, &a, &b));
            }
            Err(_) => prop_assert!(endpoint_root),
        }
    }

    #[test]
    fn sturm_signs_invariant_under_positive_scaling(g in univariate(), s in (1i64..=9, 1i64..=9), x in rational()) {
        let p = dense_to_poly(&g);
        prop_assume!(!p.is_zero());
        let scaled = p.scale(&ratio(s.0, s.1));
        prop_assert_eq!(sturm_sequence(&p).unwrap().signs_at(&x), sturm_sequence(&scaled).unwrap().signs_at(&x));
    }

    #[test]
    fn integer_sign_matches_rational_value(p in poly(4, 4), point in prop::collection::vec(rational(), 4)) {
        let v = p.eval(&point).unwrap();
        let want = if v > Rational::from_integer(0.into()) { 1 } else if v < Rational::from_integer(0.into()) { -1 } else { 0 };
        prop_assert_eq!(p.sign_at(&point).unwrap(), want);
    }

    #[test]
    fn restrict_then_evaluate_commutes(
        p in poly(4, 4),
        point in prop::collection::vec(rational(), 4),
        mask in 0u8..16,
    ) {
        let fixed: BTreeMap<usize, Rational> =
            (0..4).filter(|i| mask >> i & 1 == 1).map(|i| (i, point[i].clone())).collect();
        let rest: Vec<Rational> = (0..4).filter(|i| mask >> i & 1 == 0).map(|i| point[i].clone()).collect();
        let r = p.restrict(&fixed).unwrap();
        prop_assert_eq!(r.eval(&rest).unwrap(), p.eval(&point).unwrap());
    }

    #[test]
    fn double_negation_is_identity(
        f in formula(3),
        polys in prop::collection::vec(poly(2, 2), 3),
        pts in prop::collection::vec(prop::collection::vec(rational(), 2), 1..8),
    ) {
        let a = SemiAlgebraicRelation::new(2, 1, polys.clone(), f.clone()).unwrap();
        let b = SemiAlgebraicRelation::new(2, 1, polys, Formula::not(Formula::not(f))).unwrap();
        for p in &pts {
            prop_assert_eq!(a.evaluate(p).unwrap(), b.evaluate(p).unwrap());
        }
    }

    #[test]
    fn membership_ignores_other_points(
        polys in prop::collection::vec(poly(3, 2), 2),
        f in formula(2),
        values in prop::collection::vec(rational(), 5),
        extra in prop::collection::vec(rational(), 0..4),
    ) {
        let rel = SemiAlgebraicRelation::new(3, 1, polys, f).unwrap();
        let base = OrderedPointSet::from_scalars(values.iter().cloned());
        let longer = OrderedPointSet::from_scalars(values.iter().cloned().chain(extra));
        for t in [[0, 1, 2], [1, 3, 4], [0, 2, 4]] {
            prop_assert_eq!(
                eval_membership(&rel, &base, &t).unwrap(),
                eval_membership(&rel, &longer, &t).unwrap()
            );
        }
    }

    #[test]
    fn sign_vectors_within_milnor_thom(
        family in prop::collection::vec(poly(2, 3), 2..=6),
        pts in prop::collection::vec(prop::collection::vec(rational(), 2), 1..60),
    ) {
        let count = count_distinct_sign_vectors(&family, &pts).unwrap();
        let bound = milnor_thom_bound(3, family.len() as u64, 2).unwrap();
        prop_assert!(num_bigint::BigUint::from(count) <= bound);
    }

    #[test]
    fn equal_sign_vectors_give_equal_membership(
        polys in prop::collection::vec(poly(3, 2), 3),
        f in formula(3),
        a in prop::collection::vec(-3i64..=3, 3),
        b in prop::collection::vec(-3i64..=3, 3),
    ) {
        let rel = SemiAlgebraicRelation::new(3, 1, polys.clone(), f).unwrap();
        let a: Vec<Rational> = a.into_iter().map(int).collect();
        let b: Vec<Rational> = b.into_iter().map(int).collect();
        let sa = semiramsey::relation::sign_vector(&polys, &a).unwrap();
        let sb = semiramsey::relation::sign_vector(&polys, &b).unwrap();
        if sa == sb {
            prop_assert_eq!(rel.evaluate(&a).unwrap(), rel.evaluate(&b).unwrap());
        }
    }

    #[test]
    fn orientation_alternates_and_is_invariant(
        pts in prop::collection::vec(prop::collection::vec(rational(), 2), 3),
        i in 0usize..3, j in 0usize..3,
        shift in prop::collection::vec(rational(), 2),
        s in (1i64..=7, 1i64..=7),
    ) {
        let refs: Vec<&[Rational]> = pts.iter().map(|p| p.as_slice()).collect();
        let o = orientation(&refs).unwrap();
        let mut swapped = refs.clone();
        swapped.swap(i, j);
        let expect = if i == j { o } else { -o };
        prop_assert_eq!(orientation(&swapped).unwrap(), expect);
        let scale = ratio(s.0, s.1);
        let moved: Vec<Vec<Rational>> =
            pts.iter().map(|p| p.iter().zip(&shift).map(|(x, t)| x * &scale + t).collect()).collect();
        let refs: Vec<&[Rational]> = moved.iter().map(|p| p.as_slice()).collect();
        prop_assert_eq!(orientation(&refs).unwrap(), o);
    }

    #[test]
    fn order_type_relation_is_positive_orientation(pts in prop::collection::vec(prop::collection::vec(-9i64..=9, 3), 4)) {
        let rel = order_type_relation(3).unwrap();
        let pts: Vec<Vec<Rational>> = pts.into_iter().map(|p| p.into_iter().map(int).collect()).collect();
        let refs: Vec<&[Rational]> = pts.iter().map(|p| p.as_slice()).collect();
        let o = orientation(&refs).unwrap();
        prop_assume!(o != 0);
        let set = OrderedPointSet::new(3, pts.clone()).unwrap();
        prop_assert_eq!(eval_membership(&rel, &set, &[0, 1, 2, 3]).unwrap(), o == 1);
    }

    #[test]
    fn erdos_szekeres(perm in Just((0..120i64).collect::<Vec<_>>()).prop_shuffle(), len in 1usize..=120) {
        let seq: Vec<Rational> = perm[..len].iter().map(|&v| int(v)).collect();
        let s = longest_monotone_subsequence(&seq).unwrap();
        let need = (1..).find(|m| m * m >= len).unwrap();
        prop_assert!(s.len() >= need);
        let vals: Vec<&Rational> = s.indices.iter().map(|&i| &seq[i]).collect();
        prop_assert!(vals.windows(2).all(|w| (w[0] < w[1]) == s.increasing));
    }

    #[test]
    fn membership_table_matches_direct(values in prop::collection::btree_set(-30i64..30, 3..9), f in formula(3)) {
        let x = |i| MultivariatePolynomial::var(3, i);
        let polys = vec![&x(1) - &x(0), &(&x(0) + &x(2)) - &x(1).scale(&int(2)), &x(2) * &x(0)];
        let rel = SemiAlgebraicRelation::new(3, 1, polys, f).unwrap();
        let pts = OrderedPointSet::from_scalars(values.into_iter().map(|v| Rational::from_integer(BigInt::from(v))));
        let table = MembershipTable::build(&pts, &rel, 1 << 20).unwrap();
        for (t, m) in common::membership_map(&pts, &rel) {
            prop_assert_eq!(table.get(&t), m);
        }
    }
}
