use alloc::string::String;
use alloc::vec::Vec;

use super::expr::{ExprError, ValueExpr};
use super::numeric::{F64Arith, C64};

/// Tolerance for the orthogonality relations evaluated in `f64`.
pub const ORTHOGONALITY_TOLERANCE: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassInfo {
    pub name: String,
    pub size: u128,
    pub centralizer_order: u128,
    pub element_order: u32,
}

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum TableError {
    #[error("table has no classes")]
    Empty,
    #[error("{characters} characters for {classes} classes")]
    NotSquare { characters: usize, classes: usize },
    #[error("character {row} has {len} values, expected {expected}")]
    RowLength { row: usize, len: usize, expected: usize },
    #[error("class {class}: size {size} times centralizer order {centralizer} is not the group order {order}")]
    CentralizerMismatch {
        class: String,
        size: u128,
        centralizer: u128,
        order: u128,
    },
    #[error("class sizes sum to {sum}, group order is {order}")]
    SizeSum { sum: u128, order: u128 },
    #[error("first class {0} is not the identity class")]
    FirstClass(String),
    #[error("character {row}: degree {value} is not a positive integer")]
    Degree { row: usize, value: String },
    #[error("characters {row} and {other}: inner product {re}+{im}i, expected {expected}")]
    Orthogonality {
        row: usize,
        other: usize,
        re: f64,
        im: f64,
        expected: u8,
    },
    #[error("{found} indicators for {expected} characters")]
    IndicatorCount { found: usize, expected: usize },
    #[error("character {row}, class {class}: {source}")]
    Value {
        row: usize,
        class: usize,
        source: ExprError,
    },
    #[error("duplicate class name {0}")]
    DuplicateClass(String),
    #[error("unknown class {0}")]
    UnknownClass(String),
    #[error("structure constant for {classes:?} is {value}, not within 1e-3 of a nonnegative integer")]
    NotIntegral { classes: Vec<String>, value: String },
    #[error("high-precision arithmetic unavailable")]
    Precision,
    #[error("group has order {0}, brute force is limited to 2000")]
    GroupTooLarge(usize),
    #[error("tables disagree at {classes:?}: formula {formula}, brute force {brute}")]
    OracleMismatch {
        classes: [usize; 3],
        formula: String,
        brute: u64,
    },
    #[error("no class correspondence between table and group")]
    NoCorrespondence,
}

/// Ordinary character table; `characters[r][k]` is the value of the `r`-th
/// irreducible on class `k`.
#[derive(Clone, Debug)]
pub struct CharacterTable {
    name: String,
    group_order: u128,
    classes: Vec<ClassInfo>,
    characters: Vec<Vec<ValueExpr>>,
    approx: Vec<Vec<C64>>,
    indicators: Option<Vec<i8>>,
}

impl CharacterTable {
    /// Checks the size laws, integral degrees and the orthogonality relations.
    pub fn new(
        name: impl Into<String>,
        group_order: u128,
        classes: Vec<ClassInfo>,
        characters: Vec<Vec<ValueExpr>>,
        indicators: Option<Vec<i8>>,
    ) -> Result<Self, TableError> {
        let k = classes.len();
        if k == 0 {
            return Err(TableError::Empty);
        }
        if characters.len() != k {
            return Err(TableError::NotSquare {
                characters: characters.len(),
                classes: k,
            });
        }
        for (i, c) in classes.iter().enumerate() {
            if classes[..i].iter().any(|d| d.name.eq_ignore_ascii_case(&c.name)) {
                return Err(TableError::DuplicateClass(c.name.clone()));
            }
        }
        if classes[0].size != 1 || classes[0].element_order != 1 {
            return Err(TableError::FirstClass(classes[0].name.clone()));
        }
        let mut sum: u128 = 0;
        for c in &classes {
            if c.size.checked_mul(c.centralizer_order) != Some(group_order) {
                return Err(TableError::CentralizerMismatch {
                    class: c.name.clone(),
                    size: c.size,
                    centralizer: c.centralizer_order,
                    order: group_order,
                });
            }
            sum = sum.saturating_add(c.size);
        }
        if sum != group_order {
            return Err(TableError::SizeSum { sum, order: group_order });
        }
        if let Some(ind) = &indicators {
            if ind.len() != k {
                return Err(TableError::IndicatorCount {
                    found: ind.len(),
                    expected: k,
                });
            }
        }
        let mut approx = Vec::with_capacity(k);
        for (r, row) in characters.iter().enumerate() {
            if row.len() != k {
                return Err(TableError::RowLength {
                    row: r,
                    len: row.len(),
                    expected: k,
                });
            }
            if !row[0].as_int().is_some_and(|d| d > 0) {
                return Err(TableError::Degree {
                    row: r,
                    value: alloc::format!("{}", row[0]),
                });
            }
            let values = row
                .iter()
                .enumerate()
                .map(|(class, e)| e.evaluate(&mut F64Arith).map_err(|source| TableError::Value { row: r, class, source }))
                .collect::<Result<Vec<_>, _>>()?;
            approx.push(values);
        }
        let table = Self {
            name: name.into(),
            group_order,
            classes,
            characters,
            approx,
            indicators,
        };
        table.check_orthogonality()?;
        Ok(table)
    }

    /// `sum_k chi_r(g_k) conj(chi_s(g_k)) / |C_G(g_k)| = delta_rs`.
    fn check_orthogonality(&self) -> Result<(), TableError> {
        let k = self.classes.len();
        for r in 0..k {
            for s in r..k {
                let mut acc = C64::new(0.0, 0.0);
                for (c, info) in self.classes.iter().enumerate() {
                    let t = self.approx[r][c].mul(self.approx[s][c].conj());
                    let w = info.centralizer_order as f64;
                    acc.re += t.re / w;
                    acc.im += t.im / w;
                }
                let expected = u8::from(r == s);
                if (acc.re - expected as f64).abs() > ORTHOGONALITY_TOLERANCE || acc.im.abs() > ORTHOGONALITY_TOLERANCE {
                    return Err(TableError::Orthogonality {
                        row: r,
                        other: s,
                        re: acc.re,
                        im: acc.im,
                        expected,
                    });
                }
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn group_order(&self) -> u128 {
        self.group_order
    }

    pub fn classes(&self) -> &[ClassInfo] {
        &self.classes
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn characters(&self) -> &[Vec<ValueExpr>] {
        &self.characters
    }

    pub fn approximate_values(&self) -> &[Vec<C64>] {
        &self.approx
    }

    pub fn indicators(&self) -> Option<&[i8]> {
        self.indicators.as_deref()
    }

    /// Degree of each irreducible.
    pub fn degrees(&self) -> Vec<i64> {
        self.characters.iter().map(|row| row[0].as_int().unwrap_or(0)).collect()
    }

    /// Case-insensitive lookup: `2A` and `2a` name the same class.
    pub fn class_index(&self, name: &str) -> Result<usize, TableError> {
        self.classes
            .iter()
            .position(|c| c.name.eq_ignore_ascii_case(name))
            .ok_or_else(|| TableError::UnknownClass(name.into()))
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;
    use alloc::string::ToString;

    fn class(name: &str, size: u128, centralizer: u128, order: u32) -> ClassInfo {
        ClassInfo {
            name: name.to_string(),
            size,
            centralizer_order: centralizer,
            element_order: order,
        }
    }

    fn rows(text: &[&[&str]]) -> Vec<Vec<ValueExpr>> {
        text.iter()
            .map(|r| r.iter().map(|v| ValueExpr::parse(v).unwrap()).collect())
            .collect()
    }

    pub fn s3() -> CharacterTable {
        CharacterTable::new(
            "S3",
            6,
            alloc::vec![class("1a", 1, 6, 1), class("2a", 3, 2, 2), class("3a", 2, 3, 3)],
            rows(&[&["1", "1", "1"], &["1", "-1", "1"], &["2", "0", "-1"]]),
            Some(alloc::vec![1, 1, 1]),
        )
        .unwrap()
    }

    pub fn a5() -> CharacterTable {
        let b = "-E(5)-E(5)^4";
        let c = "-E(5)^2-E(5)^3";
        CharacterTable::new(
            "A5",
            60,
            alloc::vec![
                class("1a", 1, 60, 1),
                class("2a", 15, 4, 2),
                class("3a", 20, 3, 3),
                class("5a", 12, 5, 5),
                class("5b", 12, 5, 5),
            ],
            rows(&[
                &["1", "1", "1", "1", "1"],
                &["3", "-1", "0", c, b],
                &["3", "-1", "0", b, c],
                &["4", "0", "1", "-1", "-1"],
                &["5", "1", "-1", "0", "0"],
            ]),
            None,
        )
        .unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    #[test]
    fn fixtures_validate() {
        assert_eq!(s3().class_count(), 3);
        assert_eq!(a5().degrees(), vec![1, 3, 3, 4, 5]);
        assert_eq!(a5().class_index("5B").unwrap(), 4);
        assert!(matches!(a5().class_index("7a"), Err(TableError::UnknownClass(_))));
    }

    fn s3_parts() -> (Vec<ClassInfo>, Vec<Vec<ValueExpr>>) {
        let t = s3();
        (t.classes().to_vec(), t.characters().to_vec())
    }

    #[test]
    fn size_mismatch_is_rejected() {
        let (mut classes, chars) = s3_parts();
        classes[1].size = 2;
        let err = CharacterTable::new("bad", 6, classes, chars, None).unwrap_err();
        assert!(matches!(err, TableError::CentralizerMismatch { ref class, .. } if class == "2a"));
    }

    #[test]
    fn size_sum_is_checked() {
        let (mut classes, chars) = s3_parts();
        classes[2].size = 1;
        classes[2].centralizer_order = 6;
        let err = CharacterTable::new("bad", 6, classes, chars, None).unwrap_err();
        assert_eq!(err, TableError::SizeSum { sum: 5, order: 6 });
    }

    #[test]
    fn orthogonality_failure_names_rows() {
        let (classes, mut chars) = s3_parts();
        chars[2][1] = ValueExpr::int(1);
        let err = CharacterTable::new("bad", 6, classes, chars, None).unwrap_err();
        assert!(matches!(err, TableError::Orthogonality { row: 0, other: 2, .. }));
    }

    #[test]
    fn shape_errors() {
        let (classes, mut chars) = s3_parts();
        chars[1].pop();
        assert!(matches!(
            CharacterTable::new("bad", 6, classes.clone(), chars, None),
            Err(TableError::RowLength { row: 1, len: 2, expected: 3 })
        ));
        let (_, mut chars) = s3_parts();
        chars[0][0] = ValueExpr::parse("E(3)").unwrap();
        assert!(matches!(
            CharacterTable::new("bad", 6, classes.clone(), chars, None),
            Err(TableError::Degree { row: 0, .. })
        ));
        let (_, chars) = s3_parts();
        assert!(matches!(
            CharacterTable::new("bad", 6, classes, chars, Some(vec![1])),
            Err(TableError::IndicatorCount { found: 1, expected: 3 })
        ));
        assert_eq!(
            CharacterTable::new("bad", 1, vec![], vec![], None).unwrap_err().to_string(),
            "table has no classes"
        );
    }
}
