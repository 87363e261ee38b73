mod common;

use common::{genus_three_commutators, lambdas};
use johnson_core::hall::hall_basis_of_rank;
use johnson_core::johnson::{
    boundary_twist, boundary_twist_about, braid_automorphism, eta, eta_inverse, johnson_depth, jprime_depth, point_push_tau,
    surface_reduce, tau, tau1, HomValue, MappingClassData, TauKind,
};
use johnson_core::surface::{braid_boundary, SurfaceModel};
use johnson_core::{Depth, GroupEndomorphism, Int, LieElement, Word};
use proptest::prelude::*;

fn lie(rank: usize, k: usize) -> impl Strategy<Value = LieElement> {
    let n = hall_basis_of_rank(k, rank).len();
    prop::collection::vec((0..n, -3i64..=3), 0..3).prop_map(move |terms| {
        let basis = hall_basis_of_rank(k, rank);
        let mut e = LieElement::zero(k);
        for (i, c) in terms {
            e.add_term(basis.trees()[i].clone(), Int::from(c));
        }
        e
    })
}

fn hom_value() -> impl Strategy<Value = HomValue> {
    (1..=3usize, 1..=4usize, any::<bool>()).prop_flat_map(|(g, k, free)| {
        prop::collection::vec(lie(2 * g, k), 2 * g).prop_map(move |values| {
            let kind = if free { TauKind::Free } else { TauKind::Surface };
            let mut h = HomValue::zero(g, k, kind);
            h.values = values;
            h
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn eta_is_invertible(h in hom_value()) {
        let t = eta_inverse(&h);
        prop_assert_eq!(eta(&t), h);
        prop_assert_eq!(eta_inverse(&eta(&t)), t);
    }
}

fn w_twist(g: usize) -> common::Invertible {
    let w = braid_boundary(g);
    common::Invertible {
        f: boundary_twist_about(g, &w).unwrap(),
        inv: MappingClassData::with_boundary(g, GroupEndomorphism::inner(2 * g, &w.inverse()), w).unwrap(),
    }
}

#[test]
fn tau_is_additive_on_depth_three_maps() {
    let model = SurfaceModel::with_relator(3, braid_boundary(3)).unwrap();
    let (_, mut pool) = genus_three_commutators();
    pool.push(w_twist(3));
    let mut nonzero = 0;
    for x in &pool {
        for y in &pool {
            let fh = x.f.compose(&y.f).unwrap();
            let lhs = tau(&model, &fh, 3).unwrap();
            assert_eq!(lhs, tau(&model, &x.f, 3).unwrap().add(&tau(&model, &y.f, 3).unwrap()).unwrap());
            let free = tau1(&fh, 3).unwrap();
            assert_eq!(free, tau1(&x.f, 3).unwrap().add(&tau1(&y.f, 3).unwrap()).unwrap());
            assert_eq!(surface_reduce(&model, &free), lhs);
            nonzero += usize::from(!lhs.is_zero());
        }
    }
    assert!(nonzero > 0);
}

#[test]
fn kernel_of_free_tau_is_the_next_subgroup() {
    let (depth2, depth3) = genus_three_commutators();
    let twist = w_twist(3);
    let mut twice = vec![];
    for x in depth3.iter().chain([&twist]) {
        twice.push(x.compose(x));
        twice.push(x.compose(&x.inverse()));
    }
    for x in depth3.iter().chain([&twist]).chain(&twice) {
        let d = johnson_depth(&x.f, 4);
        assert!(d.at_least(3));
        assert_eq!(tau1(&x.f, 3).unwrap().is_zero(), d.at_least(4), "depth {d}");
    }
    for x in &depth2 {
        let d = johnson_depth(&x.f, 3);
        assert_eq!(d, Depth::Exact(2));
        assert!(!tau1(&x.f, 2).unwrap().is_zero());
    }
}

#[test]
fn point_push_formula_matches_tau() {
    let model = SurfaceModel::with_relator(3, braid_boundary(3)).unwrap();
    let (depth2, depth3) = genus_three_commutators();
    for x in &depth2 {
        let lam = lambdas(&x.f);
        assert_eq!(braid_automorphism(&lam).unwrap().map(), x.f.map());
        assert_eq!(point_push_tau(&model, &lam, 2).unwrap(), tau(&model, &x.f, 2).unwrap());
    }
    for x in &depth3 {
        let lam = lambdas(&x.f);
        assert_eq!(point_push_tau(&model, &lam, 3).unwrap(), tau(&model, &x.f, 3).unwrap());
    }
}

#[test]
fn twist_jprime_depth() {
    for g in 1..=3 {
        let model = SurfaceModel::new(g);
        let t = boundary_twist(g);
        assert!(jprime_depth(&model, &t, 5).unwrap().at_least(5));
        let bb = SurfaceModel::with_relator(g, braid_boundary(g)).unwrap();
        assert!(jprime_depth(&bb, &w_twist(g).f, 5).unwrap().at_least(5));
        assert!(jprime_depth(&bb, &t, 5).is_err());
    }
}

#[test]
fn point_push_rejects_shallow_words() {
    let model = SurfaceModel::with_relator(2, braid_boundary(2)).unwrap();
    let p = Word::generator(2).mul(&Word::generator(3));
    assert!(point_push_tau(&model, &[p.clone(), p], 2).is_err());
}
