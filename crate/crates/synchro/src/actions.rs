//! Permutation actions built from names, files and catalog groups.

use synchro_core::graph::pairs_of;
use synchro_core::{FiniteGroup, PermGroup, Permutation};

use crate::formats::group::{expand_short_name, parse_permutations, resolve_group};
use crate::formats::{content_lines, FormatError};

/// `S_n` (`alternating = false`) or `A_n` on `0..n`.
pub fn natural_action(n: usize, alternating: bool) -> PermGroup {
    let mut gens = Vec::new();
    if alternating {
        for k in 2..n {
            gens.push(Permutation::from_cycles(n, &[vec![0, 1, k]]).expect("points in range"));
        }
    } else if n > 1 {
        gens.push(Permutation::from_cycles(n, &[vec![0, 1]]).expect("points in range"));
        gens.push(Permutation::from_cycles(n, &[(0..n).collect()]).expect("points in range"));
    }
    PermGroup::new(n, gens).expect("generators share the degree")
}

/// Induced action on the 2-subsets, indexed as in [`pairs_of`].
pub fn on_pairs(g: &PermGroup) -> PermGroup {
    let pairs = pairs_of(g.degree());
    let index = |mut p: [usize; 2]| {
        p.sort_unstable();
        pairs.binary_search(&p).expect("image is a pair")
    };
    let gens = g
        .generators()
        .iter()
        .map(|s| {
            let images = pairs.iter().map(|&[x, y]| index([s.image(x), s.image(y)])).collect();
            Permutation::from_images(images).expect("induced map is a bijection")
        })
        .collect();
    PermGroup::new(pairs.len(), gens).expect("generators share the degree")
}

/// Right multiplication action of an explicit group on itself.
pub fn right_regular_action(h: &FiniteGroup) -> PermGroup {
    let gens = h.generating_set().into_iter().map(|g| h.right_regular(g)).collect();
    PermGroup::new(h.order(), gens).expect("generators share the degree")
}

fn looks_like_permutations(text: &str) -> bool {
    match content_lines(text).next() {
        Some((_, l)) => l.starts_with("degree") || l.starts_with('(') || l.starts_with('['),
        None => false,
    }
}

/// A permutation file, `S<n>` / `A<n>` in their natural action, or any other
/// group (table file or catalog name) acting on itself by right
/// multiplication. Returns the text read from disk, if any.
pub fn resolve_action(spec: &str) -> Result<(PermGroup, Option<String>), FormatError> {
    let path = std::path::Path::new(spec);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| FormatError::whole(format!("{spec}: {e}")))?;
        if looks_like_permutations(&text) {
            let g = parse_permutations(&text).map_err(|e| FormatError::whole(format!("{spec}: {e}")))?;
            return Ok((g, Some(text)));
        }
        let h = resolve_group(spec)?;
        return Ok((right_regular_action(&h), Some(text)));
    }
    let long = expand_short_name(spec);
    let mut words = long.split_whitespace();
    if let (Some(kind @ ("symmetric" | "alternating")), Some(n), None) = (words.next(), words.next(), words.next()) {
        if let Ok(n) = n.parse::<usize>() {
            return Ok((natural_action(n, kind == "alternating"), None));
        }
    }
    Ok((right_regular_action(&resolve_group(spec)?), None))
}

/// Ten small transitive actions for the orbital-engine invariants.
pub fn fixture_actions() -> Vec<(String, PermGroup)> {
    let regular = |name: &str| {
        let h = resolve_group(name).expect("catalog group");
        (format!("{name} regular"), right_regular_action(&h))
    };
    vec![
        ("S4 natural".into(), natural_action(4, false)),
        ("A4 natural".into(), natural_action(4, true)),
        ("S5 natural".into(), natural_action(5, false)),
        ("A5 on pairs".into(), on_pairs(&natural_action(5, true))),
        ("S5 on pairs".into(), on_pairs(&natural_action(5, false))),
        ("S6 on pairs".into(), on_pairs(&natural_action(6, false))),
        ("A6 on pairs".into(), on_pairs(&natural_action(6, true))),
        regular("S3"),
        regular("D8"),
        regular("Q8"),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders_and_degrees() {
        assert_eq!(natural_action(5, true).order(200).unwrap(), 60);
        assert_eq!(natural_action(4, false).order(200).unwrap(), 24);
        let p = on_pairs(&natural_action(5, true));
        assert_eq!(p.degree(), 10);
        assert!(p.is_transitive());
        assert_eq!(p.order(200).unwrap(), 60);
        let (q8, _) = resolve_action("Q8").unwrap();
        assert_eq!((q8.degree(), q8.order(100).unwrap()), (8, 8));
        let (s5, _) = resolve_action("S5").unwrap();
        assert_eq!(s5.degree(), 5);
    }

    #[test]
    fn fixtures_are_transitive() {
        for (name, g) in fixture_actions() {
            assert!(g.is_transitive(), "{name}");
        }
    }
}
