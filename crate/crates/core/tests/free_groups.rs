use johnson_core::hall::hall_basis_of_rank;
use johnson_core::lie::bracket;
use johnson_core::word::{commutator, Letter};
use johnson_core::{
    induced_lie_map, lie_class_at, magnus, witt, Alphabet, GroupEndomorphism, HallTree, Int, LieElement, Word,
};
use proptest::prelude::*;

fn word(rank: usize, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((0..rank, any::<bool>()), 0..=max_len)
        .prop_map(|ls| Word::reduce(ls.into_iter().map(|(g, inv)| if inv { Letter::inv(g) } else { Letter::gen(g) })))
}

fn endomorphism(rank: usize, max_len: usize) -> impl Strategy<Value = GroupEndomorphism> {
    prop::collection::vec(word(rank, max_len), rank).prop_map(|ws| GroupEndomorphism::new(ws).unwrap())
}

fn lie(rank: usize, k: usize) -> impl Strategy<Value = LieElement> {
    let n = hall_basis_of_rank(k, rank).len();
    prop::collection::vec((0..n, -4i64..=4), 0..4).prop_map(move |terms| {
        let basis = hall_basis_of_rank(k, rank);
        let mut e = LieElement::zero(k);
        for (i, c) in terms {
            e.add_term(basis.trees()[i].clone(), Int::from(c));
        }
        e
    })
}

fn all_hall(e: &LieElement) -> bool {
    e.terms().all(|(t, c)| t.is_hall() && *c != Int::from(0))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reduce_is_idempotent(ls in prop::collection::vec((0..3usize, any::<bool>()), 0..30)) {
        let letters: Vec<Letter> = ls.iter().map(|&(g, inv)| if inv { Letter::inv(g) } else { Letter::gen(g) }).collect();
        let w = Word::reduce(letters.clone());
        prop_assert!(w.len() <= letters.len());
        prop_assert_eq!(Word::reduce(w.letters().iter().copied()), w.clone());
        prop_assert!(w.letters().windows(2).all(|p| p[0] != p[1].inverted()));
    }

    #[test]
    fn commutator_with_self_is_trivial(w in word(3, 12)) {
        prop_assert!(commutator(&w, &w).is_empty());
        prop_assert!(commutator(&w, &w.inverse()).is_empty());
        prop_assert!(w.mul(&w.inverse()).is_empty());
    }

    #[test]
    fn composition_is_substitution(phi in endomorphism(3, 4), psi in endomorphism(3, 4), w in word(3, 8)) {
        let composed = phi.compose(&psi).unwrap();
        prop_assert_eq!(composed.apply(&w).unwrap(), phi.apply(&psi.apply(&w).unwrap()).unwrap());
    }

    #[test]
    fn parse_format_round_trip(w in word(4, 12)) {
        let a = Alphabet::surface(2);
        prop_assert_eq!(a.parse_word(&a.format_word(&w)).unwrap(), w);
    }

    #[test]
    fn bracket_is_skew((x, y) in (1..4usize, 1..3usize).prop_flat_map(|(i, j)| (lie(3, i), lie(3, j)))) {
        let xy = bracket(&x, &y);
        prop_assert!(all_hall(&xy));
        prop_assert_eq!(xy.add(&bracket(&y, &x)), LieElement::zero(x.weight() + y.weight()));
        prop_assert!(bracket(&x, &x).is_zero());
    }

    #[test]
    fn jacobi_identity(x in lie(3, 1), y in lie(3, 2), z in lie(3, 2)) {
        let s = bracket(&bracket(&x, &y), &z)
            .add(&bracket(&bracket(&y, &z), &x))
            .add(&bracket(&bracket(&z, &x), &y));
        prop_assert!(s.is_zero());
    }

    #[test]
    fn jacobi_on_generators(a in 0..3usize, b in 0..3usize, c in 0..3usize, d in 0..3usize) {
        let x = LieElement::generator(a);
        let y = bracket(&LieElement::generator(b), &LieElement::generator(c));
        let z = LieElement::generator(d);
        let s = bracket(&bracket(&x, &y), &z)
            .add(&bracket(&bracket(&y, &z), &x))
            .add(&bracket(&bracket(&z, &x), &y));
        prop_assert!(s.is_zero());
    }

    #[test]
    fn magnus_is_multiplicative(u in word(3, 10), v in word(3, 10), cap in 1..6usize) {
        prop_assert_eq!(magnus(&u.mul(&v), 3, cap), magnus(&u, 3, cap).mul(&magnus(&v, 3, cap)));
        prop_assert!(magnus(&u.inverse(), 3, cap).mul(&magnus(&u, 3, cap)).is_one());
    }

    #[test]
    fn inner_automorphisms_act_trivially(u in word(3, 6), k in 1..=4usize, idx in any::<prop::sample::Index>()) {
        let basis = hall_basis_of_rank(k, 3);
        let e = LieElement::basis(basis.trees()[idx.index(basis.len())].clone());
        let phi = GroupEndomorphism::inner(3, &u);
        prop_assert_eq!(induced_lie_map(&phi, &e, 4).unwrap(), e);
    }

    #[test]
    fn induced_maps_respect_brackets(perm in Just(vec![0usize, 1, 2]).prop_shuffle(), x in lie(3, 1), y in lie(3, 2)) {
        let phi = GroupEndomorphism::new(perm.iter().map(|&g| Word::generator(g)).collect()).unwrap();
        let lhs = induced_lie_map(&phi, &bracket(&x, &y), 3).unwrap();
        let rhs = bracket(&induced_lie_map(&phi, &x, 3).unwrap(), &induced_lie_map(&phi, &y, 3).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn lie_class_of_commutator_is_bracket(u in word(3, 6), v in word(3, 6)) {
        // Both factors of weight one with independent classes give a weight-two bracket.
        let cu = lie_class_at(&u, 1, 2);
        let cv = lie_class_at(&v, 1, 2);
        if let (Ok(cu), Ok(cv)) = (cu, cv) {
            let b = bracket(&cu, &cv);
            if !b.is_zero() {
                prop_assert_eq!(lie_class_at(&commutator(&u, &v), 2, 2).unwrap(), b);
            }
        }
    }

    #[test]
    fn witt_is_monotone_in_weight(k in 2..12u64, m in 2..8u64) {
        prop_assert!(witt(k + 1, m) >= witt(k, m));
    }
}

#[test]
fn hall_lifts_round_trip() {
    for k in 1..=5 {
        for t in hall_basis_of_rank(k, 3).trees() {
            assert_eq!(lie_class_at(&t.lift(), k, k).unwrap(), LieElement::basis(t.clone()), "{t:?}");
        }
    }
    for t in hall_basis_of_rank(6, 2).trees() {
        assert_eq!(lie_class_at(&t.lift(), 6, 6).unwrap(), LieElement::basis(t.clone()));
    }
}

#[test]
fn hall_trees_parse_back() {
    let a = Alphabet::new(["x", "y", "z"]).unwrap();
    for k in 1..=4 {
        for t in hall_basis_of_rank(k, 3).trees() {
            assert_eq!(&HallTree::parse(&t.format(&a), &a).unwrap(), t);
        }
    }
}

#[test]
fn zero_map_example() {
    let (x, y) = (Word::generator(0), Word::generator(1));
    let yx = commutator(&y, &x);
    let phi = GroupEndomorphism::new(vec![commutator(&yx, &x), commutator(&yx, &y)]).unwrap();
    for k in 1..=4 {
        for t in hall_basis_of_rank(k, 2).trees() {
            assert!(induced_lie_map(&phi, &LieElement::basis(t.clone()), 4).unwrap().is_zero());
        }
    }
    let id = GroupEndomorphism::identity(2);
    let e = LieElement::basis(hall_basis_of_rank(3, 2).trees()[0].clone());
    assert_eq!(induced_lie_map(&id, &e, 3).unwrap(), e);
}
