use std::sync::Arc;

use proptest::prelude::*;
use tricycle_algebra::groebner::{buchberger, normal_form, s_polynomial};
use tricycle_algebra::{rat, AlgebraError, MonomialOrder, MultiPoly, Ring};

fn ring(order: MonomialOrder) -> Arc<Ring> {
    Arc::new(Ring::new(&["x", "y", "z"], order).unwrap())
}

/// Random polynomial with up to `n` terms of degree at most `deg` and small coefficients.
fn poly(r: Arc<Ring>, n: usize, deg: u16) -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec(((0..=deg, 0..=deg, 0..=deg), -5i64..=5, 1i64..=3), 1..=n).prop_map(move |terms| {
        MultiPoly::from_terms(
            &r,
            terms.into_iter().map(|((a, b, c), num, den)| {
                let mut e = [0u16; tricycle_algebra::ring::MAX_VARS];
                e[..3].copy_from_slice(&[a, b, c]);
                (e, rat(num, den))
            }),
        )
    })
}

#[test]
fn adding_zero_changes_nothing() {
    let r = ring(MonomialOrder::GrevLex);
    let p = MultiPoly::var(&r, 0) * MultiPoly::var(&r, 2) + MultiPoly::constant(&r, rat(3, 7));
    assert_eq!(&p + &MultiPoly::zero(&r), p);
}

#[test]
fn generators_reduce_to_zero_against_their_basis() {
    let r = ring(MonomialOrder::GrevLex);
    let (x, y, z) = (MultiPoly::var(&r, 0), MultiPoly::var(&r, 1), MultiPoly::var(&r, 2));
    let gens = [&x * &y - &z, &y * &z - &x, &x * &x + &z * &z - MultiPoly::one(&r)];
    let gb = buchberger(&gens).unwrap();
    for g in gens.iter().chain(gb.polys()) {
        assert!(gb.reduce(g).is_zero());
    }
}

#[test]
fn empty_generator_list_is_rejected() {
    assert!(buchberger(&[]).is_err());
}

#[test]
fn mixed_rings_are_rejected() {
    let (a, b) = (ring(MonomialOrder::GrevLex), ring(MonomialOrder::Lex));
    let (x, y) = (MultiPoly::var(&a, 0), MultiPoly::var(&b, 0));
    assert!(matches!(x.checked_add(&y), Err(AlgebraError::RingMismatch(..))));
    assert!(matches!(buchberger(&[x, y]), Err(AlgebraError::RingMismatch(..))));
}

#[test]
fn criteria_prune_pairs() {
    // the leading terms x^2, y^2, z^2 are pairwise coprime
    let r = ring(MonomialOrder::GrevLex);
    let (x, y, z) = (MultiPoly::var(&r, 0), MultiPoly::var(&r, 1), MultiPoly::var(&r, 2));
    let gb = buchberger(&[&x * &x - &y, &y * &y - &z, &z * &z - &x]).unwrap();
    assert_eq!(gb.stats().skipped_product, 3);
    assert_eq!(gb.stats().pairs_reduced, 0);
    assert_eq!(gb.len(), 3);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_laws(
        a in poly(ring(MonomialOrder::GrevLex), 4, 3),
        b in poly(ring(MonomialOrder::GrevLex), 4, 3),
        c in poly(ring(MonomialOrder::GrevLex), 4, 3),
    ) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
        prop_assert_eq!((&a * &b) * &c, &a * (&b * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert!(a.terms().all(|(_, q)| *q != rat(0, 1)));
    }

    #[test]
    fn terms_are_strictly_decreasing(a in poly(ring(MonomialOrder::GrevLex), 6, 3)) {
        let r = a.ring().clone();
        let keys: Vec<_> = a.terms().map(|(e, _)| r.key(&e)).collect();
        prop_assert!(keys.windows(2).all(|w| w[0] > w[1]));
    }

    #[test]
    fn buchberger_output_is_a_reduced_basis(
        order in prop_oneof![Just(MonomialOrder::Lex), Just(MonomialOrder::GrevLex)],
        seed in prop::collection::vec(poly(ring(MonomialOrder::GrevLex), 3, 2), 2..=3),
    ) {
        let r = ring(order);
        // rebuild the generators in the ring under test
        let gens: Vec<MultiPoly> = seed.iter().map(|p| MultiPoly::from_terms(&r, p.terms().map(|(e, q)| (e, q.clone())))).collect();
        let gens: Vec<MultiPoly> = gens.into_iter().filter(|g| !g.is_zero()).collect();
        prop_assume!(!gens.is_empty());
        let gb = buchberger(&gens).unwrap();
        let g = gb.polys();
        for i in 0..g.len() {
            for j in 0..i {
                prop_assert!(normal_form(&s_polynomial(&g[i], &g[j]), g).is_zero());
            }
            prop_assert_eq!(g[i].leading().unwrap().1, &rat(1, 1));
            let (lead, _) = g[i].leading().unwrap();
            for (j, h) in g.iter().enumerate() {
                if j != i {
                    let hk = h.leading().unwrap().0;
                    prop_assert!(g[i].terms().all(|(e, _)| !r.divides(&hk, &r.key(&e))), "{} not reduced by {}", g[i], h);
                    prop_assert!(!r.divides(&lead, &hk));
                }
            }
        }
        for f in &gens {
            prop_assert!(gb.contains(f));
        }
    }

    #[test]
    fn normal_form_is_idempotent_and_linear(
        f in poly(ring(MonomialOrder::GrevLex), 6, 4),
        h in poly(ring(MonomialOrder::GrevLex), 6, 4),
    ) {
        let r = f.ring().clone();
        let (x, y, z) = (MultiPoly::var(&r, 0), MultiPoly::var(&r, 1), MultiPoly::var(&r, 2));
        let gb = buchberger(&[&x * &x + &y * &y - MultiPoly::one(&r), &x * &z - &y]).unwrap();
        let nf = gb.reduce(&f);
        prop_assert_eq!(gb.reduce(&nf), nf.clone());
        prop_assert_eq!(gb.reduce(&(&f + &h)), &nf + &gb.reduce(&h));
        // f and its normal form differ by an ideal element
        prop_assert!(gb.contains(&(&f - &nf)));
    }
}
