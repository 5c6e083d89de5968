//! Orbital representative tables: one row per orbital,
//!
//! ```text
//! # nr pair word class d1 d2 d1p d2p s1 s2
//! 1 self identity 1A 50 0 50 50 1 21799895040
//! 8 9 t^{c^{12}d^{31}} 4B 89 58 72 75 3548160 6144
//! ```
//!
//! `y = a^{t_i}` with `t_i` the word; `pair` is `self` or the paired
//! orbital's number. Numbers are 1-based here and 0-based in memory.

use synchro_core::matrep::{Fingerprint, FingerprintTable, GroupWord};

use super::{content_lines, parse_num, FormatError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitalRow {
    /// 0-based orbital index.
    pub index: usize,
    /// 0-based index of the paired orbital.
    pub pair: usize,
    pub word_text: String,
    pub word: GroupWord,
    pub class: String,
    pub fingerprint: Fingerprint,
    pub s1: u64,
    pub s2: u64,
}

pub fn parse_orbital_table(text: &str) -> Result<Vec<OrbitalRow>, FormatError> {
    let mut rows = Vec::new();
    for (ln, l) in content_lines(text) {
        let t: Vec<&str> = l.split_whitespace().collect();
        if t.len() != 10 {
            return Err(FormatError::at(ln, format!("expected 10 fields, found {}", t.len())));
        }
        let nr: usize = parse_num(t[0], ln, "orbital number")?;
        if nr != rows.len() + 1 {
            return Err(FormatError::at(ln, format!("orbital {nr} out of sequence")));
        }
        let pair = if t[1] == "self" { nr } else { parse_num(t[1], ln, "paired orbital")? };
        let word = if t[2] == "identity" {
            GroupWord::identity()
        } else {
            GroupWord::parse(t[2]).map_err(|e| FormatError::at(ln, e.to_string()))?
        };
        let d: Vec<usize> = t[4..8]
            .iter()
            .map(|x| parse_num(x, ln, "dimension"))
            .collect::<Result<_, _>>()?;
        rows.push(OrbitalRow {
            index: nr - 1,
            pair: pair.checked_sub(1).ok_or_else(|| FormatError::at(ln, "orbital numbers start at 1"))?,
            word_text: t[2].to_string(),
            word,
            class: t[3].to_string(),
            fingerprint: Fingerprint::new(d[0], d[1], d[2], d[3]),
            s1: parse_num(t[8], ln, "s1")?,
            s2: parse_num(t[9], ln, "s2")?,
        });
    }
    let n = rows.len();
    for r in &rows {
        if r.pair >= n || rows[r.pair].pair != r.index {
            return Err(FormatError::whole(format!("orbital {} has an inconsistent pair", r.index + 1)));
        }
    }
    Ok(rows)
}

pub fn fingerprint_table(rows: &[OrbitalRow]) -> Result<FingerprintTable, FormatError> {
    FingerprintTable::new(rows.iter().map(|r| (r.fingerprint, r.index)).collect())
        .map_err(|e| FormatError::whole(e.to_string()))
}

/// Pairing as a 0-based involution on orbital indices.
pub fn pairing(rows: &[OrbitalRow]) -> Vec<usize> {
    rows.iter().map(|r| r.pair).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rows_parse() {
        let t = "1 self identity 1A 50 0 50 50 1 20\n2 3 t^{c^2} 4B 89 58 72 75 2 10\n3 2 t^c 4B 89 58 75 72 2 10\n";
        let rows = parse_orbital_table(t).unwrap();
        assert_eq!(pairing(&rows), vec![0, 2, 1]);
        assert_eq!(rows[1].fingerprint, Fingerprint::new(89, 58, 72, 75));
        assert_eq!(rows[0].word, GroupWord::identity());
        let ft = fingerprint_table(&rows).unwrap();
        assert_eq!(ft.lookup(&Fingerprint::new(89, 58, 75, 72)), Some(2));
    }

    #[test]
    fn inconsistent_rows() {
        assert_eq!(parse_orbital_table("2 self t 1A 1 1 1 1 1 1\n").unwrap_err().line, 1);
        assert!(parse_orbital_table("1 2 t 1A 1 1 1 1 1 1\n2 self t 1A 1 2 1 1 1 1\n").is_err());
        assert!(parse_orbital_table("1 self t 1A 1 1 1\n").is_err());
    }
}
