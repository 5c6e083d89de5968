//! Seeded random exact factorisations `H = X Y` with `X` a normal subgroup
//! and `Y` a random transversal (or the mirror image), run through the
//! separating-pair / synchronizing-witness round trip.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use synchro_core::witness::{
    factorisation_pipeline, group_elements, left_right_group, verify_sep_witness, verify_sync_witness, ExactFactorisation,
    SepWitness, WitnessError,
};
use synchro_core::{catalog_groups, FiniteGroup};

pub const DEFAULT_SEED: u64 = 0x5eed;
pub const MAX_ORDER: usize = 60;

#[derive(Clone, Debug, Serialize)]
pub struct CaseReport {
    pub group: String,
    pub order: usize,
    pub abelian: bool,
    /// `true` when `X` is the subgroup, `false` when `Y` is.
    pub subgroup_first: bool,
    pub x: Vec<usize>,
    pub y: Vec<usize>,
    pub sync_ok: bool,
    pub sep_ok: bool,
    pub error: Option<String>,
}

/// `(description, group, nontrivial proper normal subgroups)` of the catalog
/// up to `max_order`, keeping only groups that have one.
pub fn candidate_groups(max_order: usize) -> Vec<(String, FiniteGroup, Vec<Vec<usize>>)> {
    catalog_groups(max_order)
        .into_iter()
        .filter_map(|(name, g)| {
            let n = g.order();
            let normals: Vec<Vec<usize>> = g
                .normal_subgroups()
                .into_iter()
                .filter(|k| k.len() > 1 && k.len() < n)
                .collect();
            (!normals.is_empty()).then_some((name, g, normals))
        })
        .collect()
}

/// Cosets of `k`, each with a uniformly chosen representative.
fn random_transversal(g: &FiniteGroup, k: &[usize], rng: &mut impl Rng) -> Vec<usize> {
    let mut seen = vec![false; g.order()];
    let mut reps = Vec::new();
    for x in 0..g.order() {
        if seen[x] {
            continue;
        }
        let coset: Vec<usize> = k.iter().map(|&s| g.mul(s, x)).collect();
        for &c in &coset {
            seen[c] = true;
        }
        reps.push(*coset.choose(rng).expect("nonempty coset"));
    }
    reps
}

pub fn run_case(name: &str, g: &FiniteGroup, x: &[usize], y: &[usize], subgroup_first: bool) -> CaseReport {
    let result = (|| -> Result<(bool, bool), WitnessError> {
        let f = ExactFactorisation::new(g, x, y)?;
        let a_inv: Vec<usize> = f.a().iter().map(|&a| g.inv(a)).collect();
        let w = SepWitness::new(&a_inv, f.b(), g.order())?;
        let elements = group_elements(&left_right_group(g))?;
        let report = factorisation_pipeline(g, &elements, &w)?;
        let sync_ok = verify_sync_witness(&elements, g.order(), &report.sync).is_ok();
        let sep_ok = verify_sep_witness(&elements, g.order(), &report.sep).is_ok();
        Ok((sync_ok, sep_ok))
    })();
    let (sync_ok, sep_ok, error) = match result {
        Ok((s, p)) => (s, p, None),
        Err(e) => (false, false, Some(e.to_string())),
    };
    CaseReport {
        group: name.to_string(),
        order: g.order(),
        abelian: g.is_abelian(),
        subgroup_first,
        x: x.to_vec(),
        y: y.to_vec(),
        sync_ok,
        sep_ok,
        error,
    }
}

/// `count` cases drawn with a ChaCha8 stream from `seed`; the same seed
/// gives the same cases.
pub fn random_cases(count: usize, seed: u64, max_order: usize) -> Vec<CaseReport> {
    let pool = candidate_groups(max_order);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let (name, g, normals) = &pool[rng.gen_range(0..pool.len())];
            let k = &normals[rng.gen_range(0..normals.len())];
            let t = random_transversal(g, k, &mut rng);
            let subgroup_first = rng.gen_bool(0.5);
            if subgroup_first {
                run_case(name, g, k, &t, true)
            } else {
                run_case(name, g, &t, k, false)
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_cases_are_reproducible_and_pass() {
        let a = random_cases(6, 7, 24);
        let b = random_cases(6, 7, 24);
        assert_eq!(
            a.iter().map(|c| (&c.group, &c.x, &c.y)).collect::<Vec<_>>(),
            b.iter().map(|c| (&c.group, &c.x, &c.y)).collect::<Vec<_>>()
        );
        for c in &a {
            assert!(c.sync_ok && c.sep_ok, "{c:?}");
        }
    }

    #[test]
    fn pool_mixes_abelian_and_nonabelian() {
        let pool = candidate_groups(24);
        assert!(pool.iter().any(|(_, g, _)| g.is_abelian()));
        assert!(pool.iter().any(|(_, g, _)| !g.is_abelian()));
    }
}
