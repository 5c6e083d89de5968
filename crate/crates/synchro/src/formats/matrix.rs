//! Matrix files and MeatAxe text import.
//!
//! Native format: a header `p nmats dim dim`, then each matrix as `dim` lines.
//! For `p <= 10` a line is `dim` digits with no separators; larger fields
//! separate entries by whitespace.
//!
//! MeatAxe text: header `1 q rows cols` (or `matrix field=q rows=r cols=c`)
//! followed by `rows * cols` digits with arbitrary line breaks.

use synchro_core::matrep::BitMatrix;

use super::{parse_num, FormatError};

pub fn parse_matrix_file(text: &str) -> Result<Vec<BitMatrix>, FormatError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty());
    let (hl, header) = lines.next().ok_or_else(|| FormatError::whole("empty matrix file"))?;
    let h: Vec<&str> = header.split_whitespace().collect();
    if h.len() != 4 {
        return Err(FormatError::at(hl, "expected header `p nmats dim dim`"));
    }
    let p: u32 = parse_num(h[0], hl, "characteristic")?;
    let count: usize = parse_num(h[1], hl, "matrix count")?;
    let dim: usize = parse_num(h[2], hl, "dimension")?;
    let dim2: usize = parse_num(h[3], hl, "dimension")?;
    if dim != dim2 {
        return Err(FormatError::at(hl, format!("matrices must be square, header says {dim}x{dim2}")));
    }
    let mut out = Vec::with_capacity(count);
    let mut last = hl;
    for m in 0..count {
        let mut rows = Vec::with_capacity(dim);
        for r in 0..dim {
            let (ln, line) = lines.next().ok_or_else(|| {
                FormatError::at(last + 1, format!("file ends in matrix {} at row {}", m + 1, r + 1))
            })?;
            last = ln;
            rows.push(parse_row(line, p, dim, ln)?);
        }
        out.push(BitMatrix::from_rows(p, &rows).map_err(|e| FormatError::at(last, e.to_string()))?);
    }
    if let Some((ln, _)) = lines.next() {
        return Err(FormatError::at(ln, format!("content after the {count} declared matrices")));
    }
    Ok(out)
}

fn parse_row(line: &str, p: u32, dim: usize, ln: usize) -> Result<Vec<u32>, FormatError> {
    let row: Vec<u32> = if p <= 10 && !line.contains(char::is_whitespace) {
        line.chars()
            .map(|c| c.to_digit(10).ok_or_else(|| FormatError::at(ln, format!("bad digit {c:?}"))))
            .collect::<Result<_, _>>()?
    } else {
        line.split_whitespace()
            .map(|t| parse_num::<u32>(t, ln, "matrix entry"))
            .collect::<Result<_, _>>()?
    };
    if row.len() != dim {
        return Err(FormatError::at(ln, format!("row has {} entries, expected {dim}", row.len())));
    }
    if let Some(v) = row.iter().find(|&&v| v >= p) {
        return Err(FormatError::at(ln, format!("entry {v} is not reduced mod {p}")));
    }
    Ok(row)
}

pub fn write_matrix_file(mats: &[BitMatrix]) -> Result<String, FormatError> {
    let first = mats.first().ok_or_else(|| FormatError::whole("no matrices to write"))?;
    let (p, dim) = (first.characteristic(), first.dim());
    if mats.iter().any(|m| m.characteristic() != p || m.dim() != dim || !m.is_square()) {
        return Err(FormatError::whole("matrices differ in field or dimension"));
    }
    let mut out = format!("{p} {} {dim} {dim}\n", mats.len());
    for m in mats {
        for r in 0..dim {
            let entries = (0..dim).map(|c| m.get(r, c));
            if p <= 10 {
                out.extend(entries.map(|v| char::from_digit(v, 10).unwrap()));
            } else {
                out.push_str(&entries.map(|v| v.to_string()).collect::<Vec<_>>().join(" "));
            }
            out.push('\n');
        }
    }
    Ok(out)
}

/// One matrix in MeatAxe text format over a prime field.
pub fn parse_meataxe(text: &str) -> Result<BitMatrix, FormatError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty());
    let (hl, header) = lines.next().ok_or_else(|| FormatError::whole("empty MeatAxe file"))?;
    let (q, rows, cols) = parse_meataxe_header(header, hl)?;
    let wide = q > 10;
    let mut entries = Vec::with_capacity(rows * cols);
    let mut last = hl;
    for (ln, line) in lines {
        last = ln;
        if wide {
            for t in line.split_whitespace() {
                entries.push(parse_num::<u32>(t, ln, "matrix entry")?);
            }
        } else {
            for c in line.chars().filter(|c| !c.is_whitespace()) {
                entries.push(c.to_digit(10).ok_or_else(|| FormatError::at(ln, format!("bad digit {c:?}")))?);
            }
        }
    }
    if entries.len() != rows * cols {
        return Err(FormatError::at(
            last,
            format!("{} entries for a {rows}x{cols} matrix", entries.len()),
        ));
    }
    if let Some(v) = entries.iter().find(|&&v| v >= q) {
        return Err(FormatError::whole(format!("entry {v} is not reduced mod {q}")));
    }
    let rows: Vec<Vec<u32>> = entries.chunks(cols).map(<[u32]>::to_vec).collect();
    BitMatrix::from_rows(q, &rows).map_err(|e| FormatError::whole(e.to_string()))
}

fn parse_meataxe_header(header: &str, ln: usize) -> Result<(u32, usize, usize), FormatError> {
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.first() == Some(&"matrix") {
        let mut field = None;
        let mut rows = None;
        let mut cols = None;
        for t in &toks[1..] {
            match t.split_once('=') {
                Some(("field", v)) => field = Some(parse_num(v, ln, "field")?),
                Some(("rows", v)) => rows = Some(parse_num(v, ln, "row count")?),
                Some(("cols", v)) => cols = Some(parse_num(v, ln, "column count")?),
                _ => return Err(FormatError::at(ln, format!("unknown header item {t:?}"))),
            }
        }
        return match (field, rows, cols) {
            (Some(q), Some(r), Some(c)) => Ok((q, r, c)),
            _ => Err(FormatError::at(ln, "header needs field=, rows= and cols=")),
        };
    }
    match toks[..] {
        [mode, q, r, c] => {
            let mode: u32 = parse_num(mode, ln, "mode")?;
            if !matches!(mode, 1 | 3 | 4 | 5 | 6) {
                return Err(FormatError::at(ln, format!("mode {mode} is not a matrix")));
            }
            Ok((parse_num(q, ln, "field")?, parse_num(r, ln, "row count")?, parse_num(c, ln, "column count")?))
        }
        _ => Err(FormatError::at(ln, "expected `mode q rows cols`")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_over_f2() {
        let m = parse_matrix_file("2 1 2 2\n10\n01\n").unwrap();
        assert_eq!(m.len(), 1);
        assert!(m[0].is_identity());
    }

    #[test]
    fn truncated_row_reports_line() {
        let e = parse_matrix_file("2 1 2 2\n10\n0\n").unwrap_err();
        assert_eq!(e.line, 3);
        let e = parse_matrix_file("2 2 2 2\n10\n01\n").unwrap_err();
        assert_eq!(e.line, 4);
        assert_eq!(parse_matrix_file("2 1 2 2\n12\n01\n").unwrap_err().line, 2);
    }

    #[test]
    fn round_trip_f2_and_f11() {
        let a = BitMatrix::from_rows(2, &[vec![0, 1, 1], vec![1, 0, 0], vec![1, 1, 1]]).unwrap();
        let b = BitMatrix::identity(2, 3).unwrap();
        let text = write_matrix_file(&[a.clone(), b.clone()]).unwrap();
        assert_eq!(text, "2 2 3 3\n011\n100\n111\n100\n010\n001\n");
        assert_eq!(parse_matrix_file(&text).unwrap(), vec![a, b]);
        let c = BitMatrix::from_rows(11, &[vec![10, 3], vec![0, 7]]).unwrap();
        let text = write_matrix_file(std::slice::from_ref(&c)).unwrap();
        assert_eq!(parse_matrix_file(&text).unwrap(), vec![c]);
    }

    #[test]
    fn meataxe_headers_and_wrapping() {
        let old = parse_meataxe("1 2 3 3\n0110\n0\n0111\n").unwrap();
        let new = parse_meataxe("matrix field=2 rows=3 cols=3\n011\n000\n111\n").unwrap();
        assert_eq!(old, new);
        assert!(parse_meataxe("1 2 2 2\n101\n").is_err());
        assert!(parse_meataxe("2 2 2 2\n1010\n").is_err());
    }
}
