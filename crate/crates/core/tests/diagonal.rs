mod common;

use proptest::prelude::*;
use synchro_core::diagonal::{certify, diagonal_group_generators, DiagonalGraph, HammingGraph};
use synchro_core::graph::{Graph, LatinSquareGraph};
use synchro_core::{catalog_groups, find_complete_mapping, FiniteGroup, SearchOptions};

fn small_groups() -> Vec<(String, FiniteGroup)> {
    catalog_groups(8).into_iter().filter(|(_, g)| g.order() > 1).collect()
}

/// Independent adjacency from the coordinate description.
fn oracle_adjacent(t: &FiniteGroup, u: &[usize], v: &[usize]) -> bool {
    let differ = u.iter().zip(v).filter(|(a, b)| a != b).count();
    if differ == 0 {
        return false;
    }
    differ == 1 || (0..t.order()).any(|x| u.iter().zip(v).all(|(&a, &b)| t.mul(x, a) == b))
}

#[test]
fn generators_preserve_adjacency() {
    for (name, t) in small_groups().into_iter().filter(|(_, t)| t.order() <= 6) {
        for n in 2..=3 {
            let d = DiagonalGraph::new(&t, n).unwrap();
            let gens = diagonal_group_generators(&t, n, &[]).unwrap();
            let m = d.vertex_count();
            for s in gens.generators() {
                for u in 0..m {
                    for v in u + 1..m {
                        assert_eq!(d.adjacent(u, v), d.adjacent(s.image(u), s.image(v)), "{name} n={n}");
                    }
                }
            }
        }
    }
}

#[test]
fn latin_square_correspondence() {
    for (name, t) in small_groups() {
        let d = DiagonalGraph::new(&t, 3).unwrap();
        let l = LatinSquareGraph::new(&t);
        let q = t.order();
        let cell = |v: usize| {
            let c = d.coords(v);
            t.inv(c[0]) * q + c[1]
        };
        for u in 0..d.vertex_count() {
            for v in 0..d.vertex_count() {
                assert_eq!(d.adjacent(u, v), l.adjacent(cell(u), cell(v)), "{name}");
            }
        }
    }
}

#[test]
fn colourings_are_equitable() {
    for (name, t) in small_groups().into_iter().filter(|(_, t)| t.order() <= 6) {
        let mapping = find_complete_mapping(&t, SearchOptions::default());
        for n in 3..=5 {
            let d = DiagonalGraph::new(&t, n).unwrap();
            let coloring = if n % 2 == 0 {
                d.coloring_even().unwrap()
            } else if let Some(m) = mapping.mapping() {
                d.coloring_odd(m).unwrap()
            } else {
                continue;
            };
            let fibres = coloring.partition();
            assert_eq!(fibres.len(), t.order(), "{name} n={n}");
            assert!(fibres.iter().all(|f| f.len() * t.order() == d.vertex_count()), "{name} n={n}");
            let clique = d.canonical_cliques(0)[0].clone();
            certify(&d, clique, coloring).unwrap();
        }
    }
}

fn instance() -> impl Strategy<Value = (usize, usize, usize)> {
    let count = small_groups().len();
    (0..count, 2usize..6, any::<usize>())
}

proptest! {
    #![proptest_config(common::config(96))]

    #[test]
    fn adjacency_matches_oracle((gi, n, seed) in instance(), other in any::<usize>()) {
        let groups = small_groups();
        let t = &groups[gi].1;
        let d = DiagonalGraph::new(t, n).unwrap();
        let (u, v) = (seed % d.vertex_count(), other % d.vertex_count());
        prop_assert_eq!(d.adjacent(u, v), oracle_adjacent(t, &d.coords(u), &d.coords(v)));
        prop_assert_eq!(d.without_a2().adjacent(u, v), HammingGraph::new(n - 1, t.order()).unwrap().adjacent(u, v));
    }

    #[test]
    fn neighbourhood_is_union_of_cliques((gi, n, seed) in instance()) {
        prop_assume!(n >= 3);
        let groups = small_groups();
        let t = &groups[gi].1;
        let d = DiagonalGraph::new(t, n).unwrap();
        let v = seed % d.vertex_count();
        let nb = d.neighbours(v);
        prop_assert_eq!(nb.len(), n * (t.order() - 1));
        let cliques = d.canonical_cliques(v);
        prop_assert_eq!(cliques.len(), n);
        let mut union: Vec<usize> = cliques.iter().flatten().copied().filter(|&w| w != v).collect();
        let before = union.len();
        union.sort_unstable();
        union.dedup();
        prop_assert_eq!(before, union.len());
        prop_assert_eq!(&union, &nb);
        for (a, ca) in cliques.iter().enumerate() {
            prop_assert!(ca.contains(&v));
            for &x in ca {
                for &y in ca {
                    prop_assert_eq!(x != y, d.adjacent(x, y));
                }
            }
            if n > 3 {
                for cb in &cliques[a + 1..] {
                    for &x in ca.iter().filter(|&&x| x != v) {
                        for &y in cb.iter().filter(|&&y| y != v) {
                            prop_assert!(!d.adjacent(x, y));
                        }
                    }
                }
            }
        }
    }
}
