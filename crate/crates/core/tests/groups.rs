mod common;

use proptest::prelude::*;
use synchro_core::{catalog_groups, conjugacy_classes, FiniteGroup, PermGroup, Permutation};

#[test]
fn catalog_group_laws() {
    for (name, g) in catalog_groups(64) {
        let n = g.order();
        let e = g.identity();
        for a in 0..n {
            assert_eq!(g.mul(e, a), a, "{name}");
            assert_eq!(g.mul(a, e), a, "{name}");
            assert_eq!(g.mul(a, g.inv(a)), e, "{name}");
            for b in 0..n {
                let ab = g.mul(a, b);
                for c in 0..n {
                    assert_eq!(g.mul(ab, c), g.mul(a, g.mul(b, c)), "{name}");
                }
            }
        }
    }
}

#[test]
fn class_sizes_divide_the_order() {
    for (name, g) in catalog_groups(64) {
        let c = conjugacy_classes(&g);
        assert_eq!(c.sizes.iter().sum::<usize>(), g.order(), "{name}");
        for (s, z) in c.sizes.iter().zip(&c.centralizer_orders) {
            assert_eq!(g.order() % s, 0, "{name}");
            assert_eq!(s * z, g.order(), "{name}");
        }
    }
}

/// Every 2-subgroup is reached by adding one 2-element at a time.
fn brute_sylow2_cyclic(g: &FiniteGroup) -> bool {
    let n = g.order();
    let two: Vec<usize> = (0..n).filter(|&x| g.element_order(x).is_power_of_two()).collect();
    let mut seen: Vec<Vec<usize>> = vec![vec![g.identity()]];
    let mut frontier = seen.clone();
    while let Some(p) = frontier.pop() {
        for &x in &two {
            if p.contains(&x) {
                continue;
            }
            let mut gens = p.clone();
            gens.push(x);
            let q: Vec<usize> = g.subgroup_closure(&gens).iter().collect();
            if q.len().is_power_of_two() && !seen.contains(&q) {
                seen.push(q.clone());
                frontier.push(q);
            }
        }
    }
    let sylow = seen.iter().max_by_key(|s| s.len()).unwrap();
    assert_eq!(sylow.len(), g.two_part());
    sylow.iter().any(|&x| g.element_order(x) == sylow.len())
}

#[test]
fn sylow2_cyclicity_matches_subgroup_search() {
    for (name, g) in catalog_groups(24) {
        assert_eq!(g.sylow2_is_cyclic(), brute_sylow2_cyclic(&g), "{name}");
    }
}

fn perm_strategy(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(v).unwrap())
}

fn generated_group() -> impl Strategy<Value = PermGroup> {
    (2usize..8, 1usize..4).prop_flat_map(|(n, k)| {
        prop::collection::vec(perm_strategy(n), k).prop_map(move |gens| PermGroup::new(n, gens).unwrap())
    })
}

proptest! {
    #![proptest_config(common::config(64))]

    #[test]
    fn orbit_stabilizer(g in generated_group(), point_seed in 0usize..100) {
        let point = point_seed % g.degree();
        let (orbit, stab) = g.orbit_and_stabilizer(point);
        prop_assert_eq!(orbit.len() * stab.order(10_000).unwrap(), g.order(10_000).unwrap());
    }
}
