mod common;

use proptest::prelude::*;
use synchro_core::witness::{
    factorisation_pipeline, group_elements, left_right_group, right_regular_elements, verify_sep_witness,
    witness_to_factorisation, SepWitness,
};
use synchro_core::{catalog_groups, FiniteGroup};

fn groups() -> Vec<(String, FiniteGroup)> {
    catalog_groups(16).into_iter().filter(|(_, g)| g.order() >= 4).collect()
}

fn divisor_split(n: usize, pick: usize) -> usize {
    let ds: Vec<usize> = (2..n).filter(|d| n.is_multiple_of(*d)).collect();
    if ds.is_empty() {
        n
    } else {
        ds[pick % ds.len()]
    }
}

/// Number of right translates `A g` meeting `B` in exactly one point.
fn good_translates(h: &FiniteGroup, a: &[usize], b: &[usize]) -> usize {
    (0..h.order())
        .filter(|&g| a.iter().filter(|&&x| b.contains(&h.mul(x, g))).count() == 1)
        .count()
}

fn exact(h: &FiniteGroup, a: &[usize], b: &[usize]) -> bool {
    let mut hit = vec![false; h.order()];
    a.iter().all(|&x| b.iter().all(|&y| !std::mem::replace(&mut hit[h.mul(x, y)], true)))
}

proptest! {
    #![proptest_config(common::config(256))]

    #[test]
    fn separation_agrees_with_counting(gi in 0..groups().len(), pick in any::<usize>(),
                                       perm in Just((0..16usize).collect::<Vec<_>>()).prop_shuffle(),
                                       perm2 in Just((0..16usize).collect::<Vec<_>>()).prop_shuffle()) {
        let gs = groups();
        let h = &gs[gi].1;
        let n = h.order();
        let ka = divisor_split(n, pick);
        prop_assume!(ka < n);
        let a: Vec<usize> = perm.into_iter().filter(|&x| x < n).take(ka).collect();
        let b: Vec<usize> = perm2.into_iter().filter(|&x| x < n).take(n / ka).collect();
        let w = SepWitness::new(&a, &b, n).unwrap();
        let verified = verify_sep_witness(&right_regular_elements(h), n, &w).is_ok();
        // Σ_g |A g ∩ B| = |A| |B| = n, so every translate meets B once iff none misses.
        prop_assert_eq!(verified, good_translates(h, &a, &b) == n);
        let a_inv: Vec<usize> = a.iter().map(|&x| h.inv(x)).collect();
        prop_assert_eq!(verified, exact(h, &a_inv, &b));
        prop_assert_eq!(verified, witness_to_factorisation(h, &w).is_ok());
    }

    #[test]
    fn subgroup_times_transversal_round_trips(gi in 0..groups().len(), pick in any::<usize>()) {
        let gs = groups();
        let h = &gs[gi].1;
        let normals: Vec<Vec<usize>> = h.normal_subgroups().into_iter()
            .filter(|k| k.len() > 1 && k.len() < h.order()).collect();
        prop_assume!(!normals.is_empty());
        let k = &normals[pick % normals.len()];
        let mut seen = vec![false; h.order()];
        let mut t = Vec::new();
        for x in 0..h.order() {
            if !seen[x] {
                k.iter().for_each(|&s| seen[h.mul(s, x)] = true);
                t.push(x);
            }
        }
        prop_assert!(exact(h, k, &t));
        let a_inv: Vec<usize> = k.iter().map(|&x| h.inv(x)).collect();
        let w = SepWitness::new(&a_inv, &t, h.order()).unwrap();
        let elements = group_elements(&left_right_group(h)).unwrap();
        let report = factorisation_pipeline(h, &elements, &w).unwrap();
        prop_assert!(exact(h, &report.factor_a, &report.factor_b));
        prop_assert_eq!(report.sync.parts.len(), t.len());
        prop_assert_eq!(report.sep.a.len() * report.sep.b.len(), h.order());
    }
}
