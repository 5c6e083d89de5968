//! JSON encodings: complete mappings `{"phi": [...]}`, sets as arrays of
//! point indices, partitions as arrays of arrays.

use serde::{Deserialize, Serialize};

use super::FormatError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MappingFile {
    pub phi: Vec<usize>,
}

pub fn parse_mapping(text: &str) -> Result<Vec<usize>, FormatError> {
    serde_json::from_str::<MappingFile>(text)
        .map(|m| m.phi)
        .map_err(|e| FormatError::at(e.line(), e.to_string()))
}

pub fn write_mapping(phi: &[usize]) -> String {
    serde_json::to_string(&MappingFile { phi: phi.to_vec() }).expect("plain data serializes")
}

pub fn parse_set(text: &str) -> Result<Vec<usize>, FormatError> {
    serde_json::from_str(text).map_err(|e| FormatError::at(e.line(), e.to_string()))
}

pub fn parse_partition(text: &str) -> Result<Vec<Vec<usize>>, FormatError> {
    serde_json::from_str(text).map_err(|e| FormatError::at(e.line(), e.to_string()))
}

/// Inline JSON, or a path to a file holding it.
pub fn read_inline_or_file(arg: &str) -> Result<String, FormatError> {
    let t = arg.trim_start();
    if t.starts_with('[') || t.starts_with('{') {
        return Ok(arg.to_string());
    }
    std::fs::read_to_string(arg).map_err(|e| FormatError::whole(format!("{arg}: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_shapes() {
        assert_eq!(parse_mapping(r#"{"phi": [0, 2, 1]}"#).unwrap(), vec![0, 2, 1]);
        assert_eq!(write_mapping(&[1, 0]), r#"{"phi":[1,0]}"#);
        assert_eq!(parse_set("[3,1]").unwrap(), vec![3, 1]);
        assert_eq!(parse_partition("[[0,1],[2]]").unwrap(), vec![vec![0, 1], vec![2]]);
        assert_eq!(parse_set("[1,\n-2]").unwrap_err().line, 2);
        assert_eq!(read_inline_or_file("[1]").unwrap(), "[1]");
    }
}
