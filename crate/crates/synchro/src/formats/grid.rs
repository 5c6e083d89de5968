//! Collapsed adjacency matrices as integer grids under a `rank r orbital i`
//! header. The orbital number in the header is 1-based; the in-memory
//! [`CollapsedAdjacency::orbital`] is 0-based.

use synchro_core::orbitals::CollapsedAdjacency;

use super::{content_lines, parse_num, FormatError};

pub fn parse_grid(text: &str) -> Result<CollapsedAdjacency, FormatError> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or_else(|| FormatError::whole("empty grid file"))?;
    let (rank, orbital) = match header.split_whitespace().collect::<Vec<_>>()[..] {
        ["rank", r, "orbital", i] => (parse_num::<usize>(r, hl, "rank")?, parse_num::<usize>(i, hl, "orbital")?),
        _ => return Err(FormatError::at(hl, "expected `rank r orbital i`")),
    };
    if orbital == 0 || orbital > rank {
        return Err(FormatError::at(hl, format!("orbital {orbital} outside 1..={rank}")));
    }
    let mut matrix = Vec::with_capacity(rank);
    let mut last = hl;
    for (ln, l) in lines {
        last = ln;
        if matrix.len() == rank {
            return Err(FormatError::at(ln, format!("more than {rank} rows")));
        }
        let row = l
            .split_whitespace()
            .map(|t| parse_num::<u64>(t, ln, "matrix entry"))
            .collect::<Result<Vec<_>, _>>()?;
        if row.len() != rank {
            return Err(FormatError::at(ln, format!("row has {} entries, expected {rank}", row.len())));
        }
        matrix.push(row);
    }
    if matrix.len() != rank {
        return Err(FormatError::at(last + 1, format!("{} rows, expected {rank}", matrix.len())));
    }
    Ok(CollapsedAdjacency {
        orbital: orbital - 1,
        matrix,
    })
}

/// Right-aligned columns of a common width.
pub fn write_grid(m: &CollapsedAdjacency) -> String {
    let width = m.matrix.iter().flatten().map(|v| v.to_string().len()).max().unwrap_or(1);
    let mut out = format!("rank {} orbital {}\n", m.rank(), m.orbital + 1);
    for row in &m.matrix {
        let cells: Vec<String> = row.iter().map(|v| format!("{v:>width$}")).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let text = "rank 3 orbital 2\n0 3 0\n1 0 2\n0 1 2\n";
        let m = parse_grid(text).unwrap();
        assert_eq!(m.orbital, 1);
        assert_eq!(m.matrix, vec![vec![0, 3, 0], vec![1, 0, 2], vec![0, 1, 2]]);
        assert_eq!(write_grid(&m), text);
    }

    #[test]
    fn shape_errors() {
        assert_eq!(parse_grid("rank 2 orbital 1\n1 0\n0\n").unwrap_err().line, 3);
        assert_eq!(parse_grid("rank 2 orbital 1\n1 0\n").unwrap_err().line, 3);
        assert_eq!(parse_grid("rank 2 orbital 3\n").unwrap_err().line, 1);
        assert_eq!(parse_grid("rank 1 orbital 1\n1\n1\n").unwrap_err().line, 3);
    }
}
