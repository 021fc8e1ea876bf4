mod common;

use num_traits::Zero;
use tdual_core::abgroup::{AbGroup, ExtensionResult};
use tdual_core::gysin::{gysin_cohomology, CircleBundle, GysinResult};
use tdual_core::space::{kunneth_groups, make_space, SpaceModel};
use tdual_core::twistk::k_of_bundle;

use common::CATALOG;

/// All Chern classes with coordinates in `[-bound, bound]`.
fn chern_classes(base: &SpaceModel, bound: i64) -> Vec<Vec<i64>> {
    let n = base.group(2).num_generators();
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out.into_iter().flat_map(|v| (-bound..=bound).map(move |x| [v.clone(), vec![x]].concat())).collect();
    }
    out
}

fn bundle(base: &SpaceModel, c: &[i64]) -> GysinResult {
    gysin_cohomology(&CircleBundle::new(base.clone(), base.class(2, c.iter().copied()).unwrap()).unwrap())
}

/// Rank adds across `0 → coker → H^n(E) → ker → 0`; the torsion order
/// multiplies when the cokernel part is finite and divides the product
/// otherwise.
fn check_accounting(e: &GysinResult, label: &str) {
    for d in e.degrees() {
        let (a, b) = (d.coker_part(), d.ker_part());
        let r = d.assembled();
        assert_eq!(r.rank(), a.rank() + b.rank(), "{label} H^{}", d.degree());
        let bound = a.torsion_order() * b.torsion_order();
        for g in r.candidates() {
            if a.rank() == 0 {
                assert_eq!(g.torsion_order(), bound, "{label} H^{}", d.degree());
            } else {
                assert!((&bound % g.torsion_order()).is_zero(), "{label} H^{}", d.degree());
            }
        }
    }
}

#[test]
fn exactness_accounting_on_the_catalog() {
    for desc in CATALOG {
        let base = make_space(desc).unwrap();
        for c in chern_classes(&base, 5) {
            let e = bundle(&base, &c);
            let label = format!("{desc} c={c:?}");
            check_accounting(&e, &label);
            // a circle bundle over a closed manifold has Euler characteristic 0
            let chi: i64 = e.degrees().iter().map(|d| if d.degree() % 2 == 0 { 1 } else { -1 } * d.assembled().rank() as i64).sum();
            assert_eq!(chi, 0, "{label}");
        }
    }
}

#[test]
fn manifold_bases_resolve_completely() {
    for desc in ["s2", "surface:g=1", "surface:g=2", "cp:r=1", "cp:r=2", "cp:r=3", "cp:r=4", "lens:k=2,r=1", "lens:k=3,r=2", "lens:k=5,r=3"] {
        let base = make_space(desc).unwrap();
        for c in chern_classes(&base, 5) {
            assert!(bundle(&base, &c).is_fully_resolved(), "{desc} c={c:?}");
        }
    }
}

#[test]
fn opposite_chern_classes_give_isomorphic_cohomology() {
    for desc in CATALOG {
        let base = make_space(desc).unwrap();
        for c in chern_classes(&base, 3) {
            let neg: Vec<i64> = c.iter().map(|x| -x).collect();
            let (e, f) = (bundle(&base, &c), bundle(&base, &neg));
            for n in 0..=e.total_dimension() {
                assert_ne!(e.assembled(n).is_isomorphic(&f.assembled(n)), Some(false), "{desc} c={c:?} H^{n}");
            }
        }
    }
}

#[test]
fn pushforward_kills_pullbacks() {
    for desc in ["s2", "surface:g=2", "cp:r=2", "torus:n=2", "torus:n=3", "lens:k=3,r=2"] {
        let base = make_space(desc).unwrap();
        for c in chern_classes(&base, 2) {
            let e = bundle(&base, &c);
            for n in 1..=base.dimension() {
                for i in 0..base.group(n).num_generators() {
                    let Ok(up) = e.apply_pullback(&base.generator(n, i)) else { continue };
                    assert!(e.pushforward(&up).unwrap().is_zero(), "{desc} c={c:?} deg {n}");
                }
            }
        }
    }
}

#[test]
fn trivial_bundles_match_kunneth() {
    let s1 = make_space("s1").unwrap();
    for desc in CATALOG {
        let base = make_space(desc).unwrap();
        let zero = vec![0; base.group(2).num_generators()];
        let e = bundle(&base, &zero);
        let expected = kunneth_groups(&base, &s1);
        for (n, g) in expected.iter().enumerate() {
            assert_eq!(e.assembled(n), ExtensionResult::Resolved(g.clone()), "{desc} H^{n}");
        }
    }
}

#[test]
fn product_k_theory_matches_kunneth() {
    // K^*(X × S^1) = K^*(X) ⊕ K^{*+1}(X), and K^0(CP^r) = Z^{r+1}, K^1(CP^r) = 0
    for r in 1..=4usize {
        let base = make_space(&format!("cp:r={r}")).unwrap();
        let k = k_of_bundle(&bundle(&base, &[0])).unwrap();
        assert_eq!(k.k0.resolved(), Some(&AbGroup::free(r + 1)));
        assert_eq!(k.k1.resolved(), Some(&AbGroup::free(r + 1)));
    }
    let k = k_of_bundle(&bundle(&make_space("s2").unwrap(), &[0])).unwrap();
    assert_eq!(k.k0.resolved(), Some(&AbGroup::free(2)));
    assert_eq!(k.k1.resolved(), Some(&AbGroup::free(2)));
}

#[test]
fn hopf_fibrations() {
    // S^{2r+1} → CP^r
    for r in 1..=4 {
        let e = bundle(&make_space(&format!("cp:r={r}")).unwrap(), &[1]);
        for n in 0..=2 * r + 1 {
            let want = if n == 0 || n == 2 * r + 1 { AbGroup::free(1) } else { AbGroup::trivial() };
            assert_eq!(e.group(n), Some(want), "r={r} H^{n}");
        }
    }
}
