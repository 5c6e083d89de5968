use std::path::Path;

use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};
use synchro::actions::fixture_actions;
use synchro::formats::ctbl::load_character_table;
use synchro::formats::grid::{parse_grid, write_grid};
use synchro::formats::group::{parse_group, parse_permutations, resolve_group, write_group, write_permutations};
use synchro::formats::matrix::{parse_matrix_file, write_matrix_file};
use synchro::formats::sets::{parse_mapping, write_mapping};
use synchro_core::chartab::{CharacterTable, StructureConstants};
use synchro_core::matrep::BitMatrix;
use synchro_core::orbitals::{
    collapsed_adjacency, intersection_algebra_expand, orbital_decomposition, rank_and_selfpaired,
    CollapsedAdjacency, OrbitalDecomposition,
};
use synchro_core::{catalog_groups, PermGroup, Permutation};

fn config(cases: u32) -> Config {
    let seed = std::env::var("SYNCHRO_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(0x5eed);
    Config {
        cases,
        rng_seed: RngSeed::Fixed(seed),
        failure_persistence: None,
        ..Config::default()
    }
}

fn all_matrices(dec: &OrbitalDecomposition) -> Vec<CollapsedAdjacency> {
    (0..dec.rank()).map(|i| collapsed_adjacency(dec, i).unwrap()).collect()
}

/// Orbits of the point stabilizer, from the full element list.
fn stabilizer_orbit_count(elements: &[Permutation], base: usize, degree: usize) -> usize {
    let stab: Vec<&Permutation> = elements.iter().filter(|g| g.image(base) == base).collect();
    let mut seen = vec![false; degree];
    let mut count = 0;
    for x in 0..degree {
        if !seen[x] {
            count += 1;
            stab.iter().for_each(|g| seen[g.image(x)] = true);
        }
    }
    count
}

/// `A_i[j][k]` by brute force: points `z` of suborbit `k` with `(y_j, z)` in
/// the orbital of `(base, O_i)`, where `y_j` is the least point of suborbit `j`.
fn brute_entry(elements: &[Permutation], dec: &OrbitalDecomposition, i: usize, j: usize, k: usize) -> u64 {
    let y = dec.suborbits[j][0];
    let g = elements.iter().find(|g| g.image(y) == dec.base).unwrap();
    dec.suborbits[k].iter().filter(|&&z| dec.suborbit_of[g.image(z)] == i).count() as u64
}

#[test]
fn orbital_invariants_on_fixtures() {
    for (name, g) in fixture_actions() {
        let elements = g.elements(5000).unwrap();
        let n = g.degree();
        for base in [0, n / 2, n - 1] {
            let dec = orbital_decomposition(&g, base).unwrap();
            assert_eq!(dec.subdegrees.iter().sum::<usize>(), n, "{name}");
            assert_eq!(dec.rank(), stabilizer_orbit_count(&elements, base, n), "{name}");
            let ms = all_matrices(&dec);
            for (i, m) in ms.iter().enumerate() {
                assert!(m.is_well_formed(), "{name} A{i}");
                assert_eq!(m.subdegree(), dec.subdegrees[i] as u64, "{name}");
                assert_eq!(m.paired_index(), Some(dec.pairing[i]), "{name}");
                let p = &ms[dec.pairing[i]];
                for j in 0..dec.rank() {
                    for k in 0..dec.rank() {
                        let kj = dec.subdegrees[j] as u64;
                        let kk = dec.subdegrees[k] as u64;
                        assert_eq!(kj * m.matrix[j][k], kk * p.matrix[k][j], "{name}");
                        assert_eq!(m.matrix[j][k], brute_entry(&elements, &dec, i, j, k), "{name}");
                    }
                }
            }
            assert_eq!(intersection_algebra_expand(&ms, dec.rank()).unwrap(), ms, "{name}");
        }
    }
}

#[test]
fn regular_actions_give_permutation_matrices() {
    for (name, g) in fixture_actions().into_iter().filter(|(n, _)| n.ends_with("regular")) {
        let dec = orbital_decomposition(&g, 0).unwrap();
        assert_eq!(dec.rank(), g.degree(), "{name}");
        for m in all_matrices(&dec) {
            assert!(m.matrix.iter().all(|r| r.iter().sum::<u64>() == 1), "{name}");
        }
    }
}

#[test]
fn rank_from_multiplicities() {
    let mut mult = vec![1u64; 12];
    mult.extend([2, 2]);
    assert_eq!(rank_and_selfpaired(&mult, &[1; 14]).unwrap(), (20, 16));
}

fn tables() -> Vec<CharacterTable> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/tables");
    ["S3", "D8", "A4", "S4", "A5"]
        .iter()
        .map(|n| load_character_table(&std::fs::read_to_string(dir.join(format!("{n}.json"))).unwrap()).unwrap())
        .collect()
}

fn square_matrix() -> impl Strategy<Value = BitMatrix> {
    (1usize..12, 0u32..2).prop_flat_map(|(n, p)| {
        let q = [2u32, 3][p as usize];
        prop::collection::vec(prop::collection::vec(0..q, n), n)
            .prop_map(move |rows| BitMatrix::from_rows(q, &rows).unwrap())
    })
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn hat_is_symmetric(ti in 0usize..5, a in 0usize..8, b in 0usize..8, c in 0usize..8) {
        let ts = tables();
        let t = &ts[ti];
        let k = t.class_count();
        let (a, b, c) = (a % k, b % k, c % k);
        let mut sc = StructureConstants::new(t).unwrap();
        let v = sc.hat(&[a, b, c]).unwrap();
        for p in [[a, c, b], [b, a, c], [b, c, a], [c, a, b], [c, b, a]] {
            prop_assert_eq!(&sc.hat(&p).unwrap(), &v);
        }
    }

    #[test]
    fn mapping_round_trip(v in Just((0..30usize).collect::<Vec<_>>()).prop_shuffle()) {
        prop_assert_eq!(parse_mapping(&write_mapping(&v)).unwrap(), v);
    }

    #[test]
    fn matrix_file_round_trip(ms in prop::collection::vec(square_matrix(), 1..3)) {
        let p = ms[0].characteristic();
        let d = ms[0].dim();
        let same: Vec<BitMatrix> = ms.into_iter().filter(|m| m.characteristic() == p && m.dim() == d).collect();
        prop_assert_eq!(parse_matrix_file(&write_matrix_file(&same).unwrap()).unwrap(), same);
    }

    #[test]
    fn grid_round_trip(fi in 0usize..10, i in 0usize..20) {
        let (_, g) = &fixture_actions()[fi];
        let dec = orbital_decomposition(g, 0).unwrap();
        let m = collapsed_adjacency(&dec, i % dec.rank()).unwrap();
        prop_assert_eq!(parse_grid(&write_grid(&m)).unwrap().matrix, m.matrix);
    }
}

#[test]
fn group_and_permutation_round_trips() {
    for (name, g) in catalog_groups(24) {
        let back = parse_group(&write_group(&g)).unwrap();
        assert_eq!(back.order(), g.order(), "{name}");
        for a in 0..g.order() {
            for b in 0..g.order() {
                assert_eq!(back.mul(a, b), g.mul(a, b), "{name}");
            }
        }
    }
    for (name, g) in fixture_actions() {
        let back: PermGroup = parse_permutations(&write_permutations(&g)).unwrap();
        assert_eq!(back.generators(), g.generators(), "{name}");
    }
    assert!(resolve_group("D8").is_ok());
}
