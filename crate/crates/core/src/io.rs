//! Text formats.
//!
//! Cayley table: the first line is `m`, followed by `m` lines of `m`
//! whitespace-separated 0-based indices, optionally followed by a `labels:`
//! line and one label per line.
//!
//! Transformation generators: the first line is the degree `n`, followed by
//! one generator per line as `n` 1-based images.
//!
//! `E`-set: whitespace-separated 0-based indices. Blank lines and lines
//! starting with `#` are ignored everywhere.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::semigroup::{FiniteSemigroup, Transformation};

fn parse_error(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Non-blank, non-comment lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end()))
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
}

/// Whitespace-separated tokens with their 1-based columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices().chain(std::iter::once((line.len(), ' '))) {
        match (ch.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((line[..s].chars().count() + 1, &line[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    out
}

fn parse_usize(token: &str, line: usize, column: usize) -> Result<usize> {
    token
        .parse()
        .map_err(|_| parse_error(line, column, format!("expected a non-negative integer, found {token:?}")))
}

fn single_number(line_no: usize, line: &str, what: &str) -> Result<usize> {
    let toks = tokens(line);
    match toks.as_slice() {
        [(col, tok)] => parse_usize(tok, line_no, *col),
        [_, (col, _), ..] => Err(parse_error(line_no, *col, format!("expected only the {what} on this line"))),
        [] => Err(parse_error(line_no, 1, format!("expected the {what}"))),
    }
}

pub fn parse_cayley_table(text: &str) -> Result<FiniteSemigroup> {
    let mut lines = content_lines(text);
    let (first, header) = lines.next().ok_or_else(|| parse_error(1, 1, "empty input"))?;
    let m = single_number(first, header, "table size")?;
    if m == 0 {
        return Err(parse_error(first, 1, "table size must be positive"));
    }
    let mut rows = Vec::with_capacity(m);
    let mut last_line = first;
    for r in 0..m {
        let (line_no, line) = lines
            .next()
            .ok_or_else(|| parse_error(last_line + 1, 1, format!("expected {m} rows, found {r}")))?;
        last_line = line_no;
        let toks = tokens(line);
        if toks.len() != m {
            let column = toks.get(m).map_or(line.chars().count() + 1, |t| t.0);
            return Err(parse_error(line_no, column, format!("expected {m} entries, found {}", toks.len())));
        }
        let mut row = Vec::with_capacity(m);
        for (col, tok) in toks {
            let v = parse_usize(tok, line_no, col)?;
            if v >= m {
                return Err(parse_error(line_no, col, format!("entry {v} out of range for size {m}")));
            }
            row.push(v);
        }
        rows.push(row);
    }
    let labels = match lines.next() {
        None => None,
        Some((line_no, line)) if line.trim() == "labels:" => {
            let labels: Vec<String> = lines.map(|(_, l)| l.trim().to_string()).collect();
            if labels.len() != m {
                return Err(parse_error(line_no, 1, format!("expected {m} labels, found {}", labels.len())));
            }
            Some(labels)
        }
        Some((line_no, line)) => {
            let col = tokens(line).first().map_or(1, |t| t.0);
            return Err(parse_error(line_no, col, "unexpected content after the table"));
        }
    };
    FiniteSemigroup::from_cayley_table(&rows, labels)
}

pub fn parse_transformations(text: &str) -> Result<Vec<Transformation>> {
    let mut lines = content_lines(text);
    let (first, header) = lines.next().ok_or_else(|| parse_error(1, 1, "empty input"))?;
    let n = single_number(first, header, "degree")?;
    if n == 0 {
        return Err(parse_error(first, 1, "degree must be positive"));
    }
    let mut out = Vec::new();
    for (line_no, line) in lines {
        let toks = tokens(line);
        if toks.len() != n {
            return Err(parse_error(line_no, 1, format!("expected {n} images, found {}", toks.len())));
        }
        let mut images = Vec::with_capacity(n);
        for (col, tok) in toks {
            let v = parse_usize(tok, line_no, col)?;
            if v == 0 || v > n {
                return Err(parse_error(line_no, col, format!("image {v} outside [1, {n}]")));
            }
            images.push(v);
        }
        out.push(Transformation::new(images)?);
    }
    if out.is_empty() {
        return Err(parse_error(first + 1, 1, "no generators"));
    }
    Ok(out)
}

/// Parses an `E`-set for a semigroup of the given size; duplicates are
/// removed and the result sorted.
pub fn parse_e_set(text: &str, size: usize) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for (line_no, line) in content_lines(text) {
        for (col, tok) in tokens(line) {
            let v = parse_usize(tok, line_no, col)?;
            if v >= size {
                return Err(parse_error(line_no, col, format!("index {v} out of range for size {size}")));
            }
            out.push(v);
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// Inverse of [`parse_cayley_table`].
pub fn write_cayley_table(s: &FiniteSemigroup) -> String {
    let mut out = format!("{}\n", s.size());
    for row in s.rows() {
        let cells: Vec<String> = row.iter().map(usize::to_string).collect();
        let _ = writeln!(out, "{}", cells.join(" "));
    }
    if let Some(labels) = s.labels() {
        out.push_str("labels:\n");
        for l in labels {
            let _ = writeln!(out, "{l}");
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalan::generate_catalan;

    #[test]
    fn empty_input_is_a_parse_error() {
        assert_eq!(
            parse_cayley_table("").unwrap_err(),
            Error::Parse {
                line: 1,
                column: 1,
                message: "empty input".into()
            }
        );
        assert!(matches!(parse_transformations("\n\n"), Err(Error::Parse { .. })));
    }

    #[test]
    fn reports_position_of_bad_token() {
        let err = parse_cayley_table("2\n0 1\n1 x\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, column: 3, .. }), "{err:?}");
        let err = parse_cayley_table("2\n0 1\n1 2\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, column: 3, .. }), "{err:?}");
        let err = parse_cayley_table("2\n0 1 1\n1 0\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, column: 5, .. }), "{err:?}");
        let err = parse_cayley_table("2\n0 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err:?}");
    }

    #[test]
    fn non_associative_table_is_rejected_after_parsing() {
        assert_eq!(
            parse_cayley_table("2\n1 0\n0 0\n").unwrap_err(),
            Error::NonAssociative { a: 0, b: 0, c: 1 }
        );
    }

    #[test]
    fn round_trip_with_labels() {
        let m = generate_catalan(3).unwrap();
        let text = write_cayley_table(m.semigroup());
        let parsed = parse_cayley_table(&text).unwrap();
        assert_eq!(parsed.rows(), m.semigroup().rows());
        assert_eq!(parsed.labels(), m.semigroup().labels());
        assert_eq!(write_cayley_table(&parsed), text);
    }

    #[test]
    fn generators_and_comments() {
        let gens = parse_transformations("# e1 and e2\n3\n2 2 3\n1 3 3\n").unwrap();
        assert_eq!(gens.len(), 2);
        assert_eq!(gens[0].to_string(), "[2,2,3]");
        let err = parse_transformations("3\n2 2 4\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, column: 5, .. }), "{err:?}");
        assert!(matches!(parse_transformations("3\n"), Err(Error::Parse { .. })));
    }

    #[test]
    fn e_set_parsing() {
        assert_eq!(parse_e_set("3 0\n0\n", 4).unwrap(), vec![0, 3]);
        assert!(matches!(parse_e_set("0 4", 4), Err(Error::Parse { line: 1, column: 3, .. })));
    }
}
