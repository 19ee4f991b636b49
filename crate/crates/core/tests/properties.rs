//! Randomized algebraic properties of the scalar field and the polynomial
//! layer.

use proptest::prelude::*;

use rbalg::{
    build_rbo, monomials_up_to, rat, rational_root, rb_check, FieldElement, Monomial, RBFamily,
    Rational, SparsePoly, Window,
};

fn rational_strategy() -> impl Strategy<Value = FieldElement> {
    (-40i64..=40, 1i64..=12).prop_map(|(p, q)| FieldElement::from_rat(p, q))
}

/// Elements of one fixed quadratic extension (so every pair is composable).
fn quad_strategy(d: i64) -> impl Strategy<Value = FieldElement> {
    (-9i64..=9, -9i64..=9, 1i64..=5)
        .prop_map(move |(a, b, den)| FieldElement::quad(rat(a, den), rat(b, den), rat(d, 1)))
}

fn small_poly() -> impl Strategy<Value = SparsePoly> {
    proptest::collection::vec(((0i64..=3, 0i64..=3), -5i64..=5), 0..6).prop_map(|terms| {
        let mut p = SparsePoly::zero();
        for ((n, m), c) in terms {
            p.add_term(&FieldElement::from_int(c), Monomial::new(n, m));
        }
        p
    })
}

proptest! {
    #[test]
    fn rational_field_axioms(x in rational_strategy(), y in rational_strategy(), z in rational_strategy()) {
        let xy = x.try_mul(&y).unwrap();
        prop_assert_eq!(&xy, &y.try_mul(&x).unwrap());
        prop_assert_eq!(
            xy.try_mul(&z).unwrap(),
            x.try_mul(&y.try_mul(&z).unwrap()).unwrap()
        );
        // distributivity
        prop_assert_eq!(
            x.try_mul(&y.try_add(&z).unwrap()).unwrap(),
            xy.try_add(&x.try_mul(&z).unwrap()).unwrap()
        );
        if !x.is_zero() {
            prop_assert_eq!(x.try_mul(&x.inv().unwrap()).unwrap(), FieldElement::one());
        }
    }

    #[test]
    fn quadratic_field_axioms(x in quad_strategy(7), y in quad_strategy(7), z in quad_strategy(7)) {
        prop_assert_eq!(x.try_mul(&y).unwrap(), y.try_mul(&x).unwrap());
        prop_assert_eq!(
            x.try_mul(&y).unwrap().try_mul(&z).unwrap(),
            x.try_mul(&y.try_mul(&z).unwrap()).unwrap()
        );
        prop_assert_eq!(
            x.try_mul(&y.try_add(&z).unwrap()).unwrap(),
            x.try_mul(&y).unwrap().try_add(&x.try_mul(&z).unwrap()).unwrap()
        );
        if !x.is_zero() {
            prop_assert_eq!(x.try_mul(&x.inv().unwrap()).unwrap(), FieldElement::one());
        }
        // subtraction inverts addition
        prop_assert_eq!(x.try_add(&y).unwrap().try_sub(&y).unwrap(), x.clone());
    }

    #[test]
    fn rational_roots_invert_powers(p in 1i64..=20, q in 1i64..=10, r in 1u32..=4) {
        let base = Rational::from(rat(p, q));
        let mut power = Rational::from(rat(1, 1));
        for _ in 0..r {
            power *= &base;
        }
        prop_assert_eq!(rational_root(&power, r), Some(base));
    }

    #[test]
    fn poly_ring_axioms(p in small_poly(), q in small_poly(), r in small_poly()) {
        prop_assert_eq!(p.mul(&q), q.mul(&p));
        prop_assert_eq!(p.mul(&q).mul(&r), p.mul(&q.mul(&r)));
        prop_assert_eq!(
            p.mul(&q.add(&r)),
            p.mul(&q).add(&p.mul(&r))
        );
        prop_assert_eq!(p.add(&q).sub(&q), p.clone());
    }

    #[test]
    fn operator_application_is_linear(p in small_poly(), q in small_poly()) {
        let rule = build_rbo(&RBFamily::Fibonacci {
            a: FieldElement::from_int(0),
            b: FieldElement::from_int(1),
        }).unwrap();
        prop_assert_eq!(
            rule.apply(&p.add(&q)),
            rule.apply(&p).add(&rule.apply(&q))
        );
        let c = FieldElement::from_rat(3, 2);
        prop_assert_eq!(rule.apply(&p.scale(&c)), rule.apply(&p).scale(&c));
    }

    #[test]
    fn degrees_add_under_products(p in small_poly(), q in small_poly()) {
        if let (Some(dp), Some(dq)) = (p.total_deg(), q.total_deg()) {
            // over a field there are no zero divisors
            prop_assert_eq!(p.mul(&q).total_deg(), Some(dp + dq));
        } else {
            prop_assert!(p.mul(&q).is_zero());
        }
    }
}

#[test]
fn reports_identical_across_worker_counts() {
    let rule = build_rbo(&RBFamily::R1Q0EqQ2 {
        q0: FieldElement::from_int(1),
        q1: FieldElement::from_int(2),
    })
    .unwrap();
    let weight = FieldElement::one();
    let sequential = rb_check(&rule, &weight, Window::Poly, 9, 1).unwrap();
    for workers in [2, 3, 8] {
        let parallel = rb_check(&rule, &weight, Window::Poly, 9, workers).unwrap();
        assert_eq!(sequential.to_json(), parallel.to_json(), "workers = {workers}");
    }
}

#[test]
fn monomial_window_is_complete_and_sorted() {
    let monos = monomials_up_to(Window::Poly, 7);
    assert_eq!(monos.len(), 36);
    let mut sorted = monos.clone();
    sorted.sort();
    sorted.dedup();
    assert_eq!(monos, sorted);
}
