//! Multiplication-table group files and permutation generator files.
//!
//! Group file:
//!
//! ```text
//! order 3
//! 0 1 2
//! 1 2 0
//! 2 0 1
//! labels
//! e a a2
//! ```
//!
//! Labels are whitespace separated, or one per line when there are exactly
//! `order` label lines (needed for labels such as `(0 1)`).
//!
//! Permutation file: an optional `degree n` line, then one generator per
//! line as an image list `[1,0,2]` or cycles `(0 1)(2 3)`.

use synchro_core::{make_group, FiniteGroup, PermGroup, Permutation};

use super::{content_lines, parse_num, FormatError};

pub fn parse_group(text: &str) -> Result<FiniteGroup, FormatError> {
    let mut lines = content_lines(text);
    let (l0, header) = lines.next().ok_or_else(|| FormatError::whole("empty group file"))?;
    let n = match header.split_whitespace().collect::<Vec<_>>()[..] {
        ["order", n] => parse_num::<usize>(n, l0, "group order")?,
        _ => return Err(FormatError::at(l0, "expected `order n`")),
    };
    let mut table = Vec::with_capacity(n * n);
    let mut last = l0;
    for _ in 0..n {
        let (ln, row) = lines
            .next()
            .ok_or_else(|| FormatError::at(last + 1, format!("table has fewer than {n} rows")))?;
        last = ln;
        let entries = row
            .split_whitespace()
            .map(|t| parse_num::<u32>(t, ln, "element index"))
            .collect::<Result<Vec<_>, _>>()?;
        if entries.len() != n {
            return Err(FormatError::at(ln, format!("row has {} entries, expected {n}", entries.len())));
        }
        table.extend(entries);
    }
    let labels = match lines.next() {
        None => None,
        Some((ln, "labels")) => {
            let rest: Vec<&str> = lines.by_ref().map(|(_, l)| l).collect();
            let labels: Vec<String> = if rest.len() == n {
                rest.iter().map(|l| l.to_string()).collect()
            } else {
                rest.iter().flat_map(|l| l.split_whitespace()).map(str::to_string).collect()
            };
            if labels.len() != n {
                return Err(FormatError::at(ln, format!("{} labels for {n} elements", labels.len())));
            }
            Some(labels)
        }
        Some((ln, _)) => return Err(FormatError::at(ln, "unexpected content after the table")),
    };
    FiniteGroup::from_table(n, table, labels).map_err(|e| FormatError::whole(e.to_string()))
}

pub fn write_group(g: &FiniteGroup) -> String {
    let n = g.order();
    let mut out = format!("order {n}\n");
    for row in g.table().chunks(n) {
        let row: Vec<String> = row.iter().map(u32::to_string).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    if let Some(labels) = g.labels() {
        out.push_str("labels\n");
        let sep = if labels.iter().any(|l| l.contains(char::is_whitespace)) { "\n" } else { " " };
        out.push_str(&labels.join(sep));
        out.push('\n');
    }
    out
}

pub fn parse_permutations(text: &str) -> Result<PermGroup, FormatError> {
    let mut degree = None;
    let mut raw = Vec::new();
    for (ln, l) in content_lines(text) {
        if let Some(rest) = l.strip_prefix("degree") {
            if degree.is_some() || !raw.is_empty() {
                return Err(FormatError::at(ln, "`degree` must be the first line"));
            }
            degree = Some(parse_num::<usize>(rest.trim(), ln, "degree")?);
        } else {
            raw.push((ln, l));
        }
    }
    let mut perms = Vec::with_capacity(raw.len());
    for &(ln, l) in &raw {
        perms.push(Permutation::parse(l, degree).map_err(|e| FormatError::at(ln, e.to_string()))?);
    }
    let n = degree.unwrap_or_else(|| perms.iter().map(Permutation::degree).max().unwrap_or(0));
    let perms = perms
        .into_iter()
        .map(|p| {
            let mut images: Vec<usize> = p.images().collect();
            images.extend(images.len()..n);
            Permutation::from_images(images)
        })
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| FormatError::whole(e.to_string()))?;
    PermGroup::new(n, perms).map_err(|e| FormatError::whole(e.to_string()))
}

pub fn write_permutations(g: &PermGroup) -> String {
    let mut out = format!("degree {}\n", g.degree());
    for p in g.generators() {
        let images: Vec<String> = p.images().map(|i| i.to_string()).collect();
        out.push_str(&format!("[{}]\n", images.join(",")));
    }
    out
}

/// A file path holding a group table, or a catalog descriptor such as
/// `symmetric 4`, `S4`, `Z3`, `A5`, `D8`, `Q8`.
pub fn resolve_group(spec: &str) -> Result<FiniteGroup, FormatError> {
    let path = std::path::Path::new(spec);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| FormatError::whole(format!("{spec}: {e}")))?;
        return parse_group(&text).map_err(|e| FormatError::whole(format!("{spec}: {e}")));
    }
    make_group(&expand_short_name(spec)).map_err(|e| FormatError::whole(format!("{spec}: {e}")))
}

/// `S4 -> symmetric 4`, `A5 -> alternating 5`, `Z6`/`C6 -> cyclic 6`,
/// `D8 -> dihedral 8`; anything else is passed through.
pub fn expand_short_name(spec: &str) -> String {
    let s = spec.trim();
    let mut chars = s.chars();
    let head = chars.next();
    let tail: String = chars.collect();
    if !tail.is_empty() && tail.chars().all(|c| c.is_ascii_digit()) {
        let kind = match head {
            Some('S') => Some("symmetric"),
            Some('A') => Some("alternating"),
            Some('Z' | 'C') => Some("cyclic"),
            Some('D') => Some("dihedral"),
            _ => None,
        };
        if let Some(kind) = kind {
            return format!("{kind} {tail}");
        }
    }
    s.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z3_round_trip() {
        let text = "order 3\n0 1 2\n1 2 0\n2 0 1\nlabels\ne a a2\n";
        let g = parse_group(text).unwrap();
        assert_eq!(g.order(), 3);
        assert_eq!(g.label(1), "a");
        assert_eq!(write_group(&g), text);
    }

    #[test]
    fn group_errors_carry_lines() {
        let e = parse_group("order 2\n0 1\n1\n").unwrap_err();
        assert_eq!(e.line, 3);
        let e = parse_group("order 2\n0 1\n").unwrap_err();
        assert_eq!(e.line, 3);
        assert_eq!(parse_group("ord 2").unwrap_err().line, 1);
        assert!(parse_group("order 2\n0 1\n1 1\n").is_err());
    }

    #[test]
    fn permutation_files() {
        let g = parse_permutations("# S4\ndegree 4\n(0 1)\n[1,2,3,0]\n").unwrap();
        assert_eq!(g.degree(), 4);
        assert_eq!(g.order(100).unwrap(), 24);
        let again = parse_permutations(&write_permutations(&g)).unwrap();
        assert_eq!(again.generators(), g.generators());
        let padded = parse_permutations("(0 1)\n(2 3 4)\n").unwrap();
        assert_eq!(padded.degree(), 5);
        assert_eq!(parse_permutations("degree 3\n(0 5)\n").unwrap_err().line, 2);
    }

    #[test]
    fn short_names() {
        assert_eq!(expand_short_name("S4"), "symmetric 4");
        assert_eq!(expand_short_name("Z3"), "cyclic 3");
        assert_eq!(expand_short_name("Q8"), "Q8");
        assert_eq!(resolve_group("A5").unwrap().order(), 60);
        assert_eq!(resolve_group("D8").unwrap().order(), 8);
    }
}
