//! Character-table JSON, as written by `tools/export_ctbl.g`:
//!
//! ```json
//! {"name": "S3", "order": "6",
//!  "classes": [{"name": "1a", "size": "1", "centralizer": "6", "element_order": 1}, ...],
//!  "characters": [["1", "1", "1"], ...],
//!  "indicators": [1, 1, 1]}
//! ```
//!
//! Large integers may be JSON numbers or decimal strings. Character values
//! are integers or cyclotomic expressions in `E(n)`, `ER(n)`, `sqrt(n)`.

use serde::{Deserialize, Serialize};
use synchro_core::chartab::{CharacterTable, ClassInfo, ValueExpr};

use super::FormatError;

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(untagged)]
pub enum Integer {
    Number(u64),
    Text(String),
}

impl Integer {
    fn value(&self, what: &str) -> Result<u128, FormatError> {
        match self {
            Integer::Number(n) => Ok(*n as u128),
            Integer::Text(s) => s
                .trim()
                .parse()
                .map_err(|_| FormatError::whole(format!("{what}: {s:?} is not a nonnegative integer"))),
        }
    }
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(untagged)]
pub enum Value {
    Int(i64),
    Text(String),
}

#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct ClassEntry {
    pub name: String,
    pub size: Integer,
    pub centralizer: Integer,
    pub element_order: u32,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct TableFile {
    #[serde(default)]
    pub name: String,
    pub order: Integer,
    pub classes: Vec<ClassEntry>,
    pub characters: Vec<Vec<Value>>,
    #[serde(default)]
    pub indicators: Option<Vec<i8>>,
}

/// Parses and validates (size laws, orthogonality).
pub fn load_character_table(text: &str) -> Result<CharacterTable, FormatError> {
    let file: TableFile = serde_json::from_str(text).map_err(|e| FormatError::at(e.line(), e.to_string()))?;
    let order = file.order.value("order")?;
    let classes = file
        .classes
        .iter()
        .map(|c| {
            Ok(ClassInfo {
                name: c.name.clone(),
                size: c.size.value(&format!("class {} size", c.name))?,
                centralizer_order: c.centralizer.value(&format!("class {} centralizer", c.name))?,
                element_order: c.element_order,
            })
        })
        .collect::<Result<Vec<_>, FormatError>>()?;
    let characters = file
        .characters
        .iter()
        .enumerate()
        .map(|(r, row)| {
            row.iter()
                .enumerate()
                .map(|(k, v)| match v {
                    Value::Int(i) => Ok(ValueExpr::int(*i)),
                    Value::Text(s) => ValueExpr::parse(s)
                        .map_err(|e| FormatError::whole(format!("character {r}, class {k}: {e}"))),
                })
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    CharacterTable::new(file.name, order, classes, characters, file.indicators)
        .map_err(|e| FormatError::whole(e.to_string()))
}

pub fn read_character_table(path: &std::path::Path) -> Result<CharacterTable, FormatError> {
    let text = std::fs::read_to_string(path).map_err(|e| FormatError::whole(format!("{}: {e}", path.display())))?;
    load_character_table(&text).map_err(|e| FormatError::at(e.line, format!("{}: {}", path.display(), e.message)))
}

#[cfg(test)]
mod tests {
    use super::*;

    const S3: &str = r#"{"name":"S3","order":6,
        "classes":[{"name":"1a","size":1,"centralizer":6,"element_order":1},
                   {"name":"2a","size":"3","centralizer":"2","element_order":2},
                   {"name":"3a","size":2,"centralizer":3,"element_order":3}],
        "characters":[[1,1,1],["1","-1","1"],[2,0,-1]]}"#;

    #[test]
    fn mixed_number_forms() {
        let t = load_character_table(S3).unwrap();
        assert_eq!(t.group_order(), 6);
        assert_eq!(t.degrees(), vec![1, 1, 2]);
    }

    #[test]
    fn size_mismatch_is_reported() {
        let bad = S3.replace(r#""size":"3""#, r#""size":"4""#);
        let e = load_character_table(&bad).unwrap_err();
        assert!(e.message.contains("2a"), "{e}");
    }

    #[test]
    fn malformed_json_reports_line() {
        let e = load_character_table("{\n\"order\": 6,\n\"classes\": oops}").unwrap_err();
        assert_eq!(e.line, 3);
    }
}
