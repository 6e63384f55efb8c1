mod common;

use std::cmp::Ordering;

use common::{mono_eval, sorted_display, vanishing_ideal};
use prm::geometry::affine_coords;
use prm::monomial::{
    box_monomials, monomials_up_to_degree, GroebnerSet, Monomial, MonomialOrder, Polynomial,
};
use prm::{Fe, Field};
use proptest::prelude::*;

/// Degree first, then the exponent of the highest-index variable decides,
/// smaller first.
fn reference_cmp(a: &Monomial, b: &Monomial) -> Ordering {
    let (da, db): (u32, u32) = (
        a.0.iter().map(|&x| x as u32).sum(),
        b.0.iter().map(|&x| x as u32).sum(),
    );
    da.cmp(&db).then_with(|| {
        for j in (0..a.0.len()).rev() {
            if a.0[j] != b.0[j] {
                return a.0[j].cmp(&b.0[j]);
            }
        }
        Ordering::Equal
    })
}

#[test]
fn order_is_a_graded_monomial_order() {
    for nvars in 1..=3 {
        let monos = monomials_up_to_degree(nvars, 4);
        for w in monos.windows(2) {
            assert_eq!(w[0].cmp(&w[1]), Ordering::Less);
        }
        for a in &monos {
            assert!(Monomial::one(nvars) <= *a);
            for b in &monos {
                assert_eq!(a.cmp(b), reference_cmp(a, b), "{a:?} {b:?}");
                assert_eq!(MonomialOrder.compare(a, b).unwrap(), reference_cmp(a, b));
                if a < b {
                    for c in monos.iter().take(10) {
                        assert!(a.mul(c) < b.mul(c));
                    }
                }
            }
        }
    }
    assert!(MonomialOrder
        .compare(&Monomial::one(2), &Monomial::one(3))
        .is_err());
}

#[test]
fn box_listing_is_sorted_and_complete() {
    let b = box_monomials(3, 2);
    assert_eq!(b.len(), 27);
    assert!(b.windows(2).all(|w| w[0] < w[1]));
    assert!(b.iter().all(|m| m.0.iter().all(|&a| a <= 2)));
}

fn field() -> Field {
    Field::new(5, 1).unwrap()
}

fn poly_strategy(nvars: usize) -> impl Strategy<Value = Polynomial> {
    proptest::collection::vec((proptest::collection::vec(0u16..7, nvars), 1u8..5), 0..8).prop_map(
        move |terms| {
            let f = field();
            Polynomial::from_terms(
                &f,
                nvars,
                terms.into_iter().map(|(e, c)| (Monomial(e), Fe(c))),
            )
        },
    )
}

fn field_equations(f: &Field, nvars: usize) -> GroebnerSet {
    let q = f.q() as u16;
    let gens = (0..nvars)
        .map(|j| {
            let mut p = Polynomial::term(f, Monomial::var(nvars, j, q), Fe::ONE);
            p.add_term(Monomial::var(nvars, j, 1), f.neg(Fe::ONE));
            p
        })
        .collect();
    GroebnerSet::new(f, nvars, gens)
}

proptest! {
    #[test]
    fn evaluation_is_a_ring_map(a in poly_strategy(2), b in poly_strategy(2), x in 0u8..5, y in 0u8..5) {
        let f = field();
        let pt = [Fe(x), Fe(y)];
        prop_assert_eq!(a.mul(&b).evaluate(&pt), f.mul(a.evaluate(&pt), b.evaluate(&pt)));
        prop_assert_eq!(a.add(&b).evaluate(&pt), f.add(a.evaluate(&pt), b.evaluate(&pt)));
        prop_assert_eq!(a.sub(&a), Polynomial::zero(&f, 2));
    }

    #[test]
    fn division_keeps_values_and_reduces(a in poly_strategy(2)) {
        let f = field();
        let g = field_equations(&f, 2);
        prop_assert!(g.is_groebner());
        let (r, normal) = g.divide(&a);
        for k in 0..25 {
            let p = affine_coords(k, 2, 5);
            prop_assert_eq!(r.evaluate(&p), a.evaluate(&p));
        }
        let lms = g.leading_monomials();
        for (m, _) in r.terms() {
            prop_assert!(!lms.iter().any(|l| l.divides(m)));
        }
        prop_assert_eq!(normal, r == a);
        let (r2, normal2) = g.divide(&r);
        prop_assert!(normal2);
        prop_assert_eq!(r2, r);
    }

    #[test]
    fn text_round_trip(a in poly_strategy(3)) {
        let f = field();
        let s = a.display(1);
        prop_assert_eq!(Polynomial::parse(&s, &f, 3, 1).unwrap(), a);
    }

    #[test]
    fn footprint_counts_points(raw in proptest::collection::btree_set(0usize..25, 1..10)) {
        let f = field();
        let pts: Vec<Vec<Fe>> = raw.iter().map(|&k| affine_coords(k, 2, 5)).collect();
        let (standard, g) = vanishing_ideal(&f, 2, &pts);
        prop_assert!(g.is_groebner());
        prop_assert!(g.is_autoreduced());
        prop_assert_eq!(g.footprint().unwrap(), standard.clone());
        prop_assert_eq!(standard.len(), pts.len());
        for gen in &g.generators {
            for p in &pts {
                prop_assert!(gen.evaluate(p).is_zero());
            }
        }
        prop_assert_eq!(sorted_display(&g.reduced()), sorted_display(&g));
    }
}

#[test]
fn oracle_evaluation_helper() {
    let f = field();
    let m = Monomial(vec![2, 1]);
    assert_eq!(mono_eval(&f, &m, &[Fe(2), Fe(3)]), Fe(2));
}
