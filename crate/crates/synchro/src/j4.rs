//! Shipped J4 reference data and discovery of the user-supplied inputs
//! (character table and 112-dimensional generators over F_2).

use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use num_rational::BigRational;
use synchro_core::matrep::BitMatrix;
use synchro_core::orbitals::CollapsedAdjacency;

use crate::formats::grid::parse_grid;
use crate::formats::matrix::{parse_matrix_file, parse_meataxe};
use crate::formats::orbital_table::{parse_orbital_table, OrbitalRow};
use crate::formats::FormatError;

pub const A2_TEXT: &str = include_str!("../data/j4/A2.txt");
pub const A4_TEXT: &str = include_str!("../data/j4/A4.txt");
pub const ORBITALS_TEXT: &str = include_str!("../data/j4/orbitals.txt");
pub const TABLE1_TEXT: &str = include_str!("../data/j4/table1.txt");
pub const ENTRIES_TEXT: &str = include_str!("../data/j4/entries.txt");

/// Order of the centralizer of a 2A involution.
pub const CENTRALIZER_ORDER: u128 = 21_799_895_040;
pub const RANK: usize = 20;

/// Classes outside the nonzero rows, checked to give 0.
pub const SAMPLED_ZERO_CLASSES: [&str; 3] = ["6A", "7A", "37A"];

/// File names looked up in the data directory.
pub const TABLE_FILE: &str = "J4.json";
pub const GENERATOR_FILE: &str = "J4-f2r112.txt";
pub const MEATAXE_FILES: [&str; 2] = ["J4G1-f2r112B0.m1", "J4G1-f2r112B0.m2"];

/// SHA-256 of the two MeatAxe files as distributed.
pub const MEATAXE_SHA256: [&str; 2] = [
    "6320ac1b9801abc409f5ca77ad417da980131003be2cb07d39b2453de3e2c87b",
    "4988c24906fabbe00a58a914cfe2d739df26264021d19d9fec168529d64d03f2",
];

pub fn printed_a2() -> CollapsedAdjacency {
    parse_grid(A2_TEXT).expect("shipped A2 grid parses")
}

pub fn printed_a4() -> CollapsedAdjacency {
    parse_grid(A4_TEXT).expect("shipped A4 grid parses")
}

pub fn orbital_rows() -> Vec<OrbitalRow> {
    parse_orbital_table(ORBITALS_TEXT).expect("shipped orbital table parses")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table1Row {
    pub class: String,
    pub scaled: u64,
    pub xi: BigRational,
}

pub fn table1_rows() -> Vec<Table1Row> {
    crate::formats::content_lines(TABLE1_TEXT)
        .map(|(_, l)| {
            let t: Vec<&str> = l.split_whitespace().collect();
            let (n, d) = t[2].split_once('/').expect("fraction");
            Table1Row {
                class: t[0].to_string(),
                scaled: t[1].parse().expect("integer"),
                xi: BigRational::new(n.parse::<BigInt>().unwrap(), d.parse::<BigInt>().unwrap()),
            }
        })
        .collect()
}

/// `(A_i)[i][i*]` and `(A_i)[i][i]` for `i = 0..20`.
pub fn entry_lists() -> (Vec<u64>, Vec<u64>) {
    let mut paired = Vec::new();
    let mut diagonal = Vec::new();
    for (_, l) in crate::formats::content_lines(ENTRIES_TEXT) {
        let mut t = l.split_whitespace();
        let target = match t.next() {
            Some("paired") => &mut paired,
            Some("diagonal") => &mut diagonal,
            _ => continue,
        };
        target.extend(t.map(|x| x.parse::<u64>().expect("integer")));
    }
    (paired, diagonal)
}

/// `--data-dir`, then `$SYNCHRO_DATA`, then `./data/external`, then the
/// workspace's `data/external`.
pub fn data_dirs(explicit: Option<&Path>) -> Vec<PathBuf> {
    let mut dirs = Vec::new();
    if let Some(d) = explicit {
        dirs.push(d.to_path_buf());
    }
    if let Some(d) = std::env::var_os("SYNCHRO_DATA") {
        dirs.push(PathBuf::from(d));
    }
    dirs.push(PathBuf::from("data/external"));
    dirs.push(Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data/external"));
    dirs
}

pub fn find_table(explicit: Option<&Path>) -> Option<PathBuf> {
    data_dirs(explicit).into_iter().map(|d| d.join(TABLE_FILE)).find(|p| p.is_file())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GeneratorSource {
    Native(PathBuf),
    MeatAxe(PathBuf, PathBuf),
}

impl GeneratorSource {
    pub fn paths(&self) -> Vec<&Path> {
        match self {
            GeneratorSource::Native(p) => vec![p.as_path()],
            GeneratorSource::MeatAxe(a, b) => vec![a.as_path(), b.as_path()],
        }
    }
}

pub fn find_generators(explicit: Option<&Path>) -> Option<GeneratorSource> {
    for d in data_dirs(explicit) {
        let native = d.join(GENERATOR_FILE);
        if native.is_file() {
            return Some(GeneratorSource::Native(native));
        }
        let [m1, m2] = MEATAXE_FILES.map(|f| d.join(f));
        if m1.is_file() && m2.is_file() {
            return Some(GeneratorSource::MeatAxe(m1, m2));
        }
    }
    None
}

/// The standard generator pair `(a, b)`.
pub fn load_generators(src: &GeneratorSource) -> Result<(BitMatrix, BitMatrix), FormatError> {
    let read = |p: &Path| std::fs::read_to_string(p).map_err(|e| FormatError::whole(format!("{}: {e}", p.display())));
    let context = |p: &Path, e: FormatError| FormatError::at(e.line, format!("{}: {}", p.display(), e.message));
    match src {
        GeneratorSource::Native(p) => {
            let mut mats = parse_matrix_file(&read(p)?).map_err(|e| context(p, e))?;
            if mats.len() != 2 {
                return Err(FormatError::whole(format!("{}: expected 2 matrices, found {}", p.display(), mats.len())));
            }
            let b = mats.pop().unwrap();
            let a = mats.pop().unwrap();
            Ok((a, b))
        }
        GeneratorSource::MeatAxe(pa, pb) => Ok((
            parse_meataxe(&read(pa)?).map_err(|e| context(pa, e))?,
            parse_meataxe(&read(pb)?).map_err(|e| context(pb, e))?,
        )),
    }
}

/// Digest mismatches of a MeatAxe pair, as `(file, expected, found)`.
/// Native files carry no pinned digest; both kinds are still checked
/// against the standard generator conditions.
pub fn digest_mismatches(src: &GeneratorSource) -> std::io::Result<Vec<(PathBuf, &'static str, String)>> {
    let mut out = Vec::new();
    if let GeneratorSource::MeatAxe(a, b) = src {
        for (p, want) in [a, b].into_iter().zip(MEATAXE_SHA256) {
            let found = crate::manifest::sha256_hex(&std::fs::read(p)?);
            if found != want {
                out.push((p.clone(), want, found));
            }
        }
    }
    Ok(out)
}

pub fn missing_generators_message() -> String {
    format!(
        "J4 generators not found: place the MeatAxe pair {} (sha256 {}) and {} (sha256 {}), \
         or {} (two matrices, `2 2 112 112` header), in data/external or $SYNCHRO_DATA",
        MEATAXE_FILES[0], MEATAXE_SHA256[0], MEATAXE_FILES[1], MEATAXE_SHA256[1], GENERATOR_FILE
    )
}

pub fn missing_table_message() -> String {
    format!(
        "J4 character table not found: export it with tools/export_ctbl.g as {} in data/external or $SYNCHRO_DATA",
        TABLE_FILE
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_data_is_consistent() {
        let a2 = printed_a2();
        let a4 = printed_a4();
        assert_eq!((a2.orbital, a2.subdegree()), (1, 1386));
        assert_eq!((a4.orbital, a4.subdegree()), (3, 18480));
        assert!(a2.is_well_formed() && a4.is_well_formed());
        let rows = orbital_rows();
        assert_eq!(rows.len(), RANK);
        assert!(rows.iter().all(|r| r.s1 as u128 * r.s2 as u128 == CENTRALIZER_ORDER));
        assert_eq!(rows[1].s1, a2.subdegree());
        assert_eq!(rows[3].s1, a4.subdegree());
        let t1 = table1_rows();
        assert_eq!(t1.len(), 14);
        for r in &t1 {
            let scaled = &r.xi * BigRational::from_integer(BigInt::from(CENTRALIZER_ORDER));
            assert_eq!(scaled, BigRational::from_integer(BigInt::from(r.scaled)), "{}", r.class);
        }
        let (p, d) = entry_lists();
        assert_eq!((p.len(), d.len()), (RANK, RANK));
    }

    #[test]
    fn table1_rows_sum_over_orbitals() {
        // Each nonzero row is the total s1 over orbitals whose product class it names.
        let rows = orbital_rows();
        for t in table1_rows() {
            let s: u64 = rows.iter().filter(|r| r.class == t.class).map(|r| r.s1).sum();
            assert_eq!(s, t.scaled, "{}", t.class);
        }
    }
}
