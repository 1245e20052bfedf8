//! Plain-text plane format.
//!
//! ```text
//! plane projective
//! order 2
//! points 7
//! lines 7
//! L 0 1 2
//! ...
//! ```
//!
//! One `L` record per line with strictly increasing 0-based point indices.
//! Lines starting with `#` are comments. Output is canonical: header fields
//! in this order, single spaces, `\n` after every record.

use std::fmt::Write as _;
use std::path::Path;

use super::{verify_axioms, IncidenceStructure, PlaneError, PlaneKind, Provenance};

pub fn to_text(s: &IncidenceStructure) -> String {
    let mut out = String::new();
    writeln!(out, "plane {}", s.kind()).unwrap();
    writeln!(out, "order {}", s.order()).unwrap();
    writeln!(out, "points {}", s.point_count()).unwrap();
    writeln!(out, "lines {}", s.line_count()).unwrap();
    for l in s.lines() {
        out.push('L');
        for p in l {
            write!(out, " {p}").unwrap();
        }
        out.push('\n');
    }
    out
}

pub fn save(s: &IncidenceStructure, path: impl AsRef<Path>) -> Result<(), PlaneError> {
    std::fs::write(path, to_text(s))?;
    Ok(())
}

struct Cursor<'a> {
    lines: std::iter::Peekable<std::iter::Enumerate<std::str::Lines<'a>>>,
}

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> PlaneError {
    PlaneError::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Splits a record into `(column, token)` pairs with 1-based columns.
fn tokens(text: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in text.char_indices() {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push((s + 1, &text[s..i]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &text[s..]));
    }
    out
}

impl<'a> Cursor<'a> {
    /// Next non-comment, non-blank record as `(line number, tokens)`.
    fn record(&mut self) -> Option<(usize, Vec<(usize, &'a str)>)> {
        for (i, text) in self.lines.by_ref() {
            if text.starts_with('#') || text.trim().is_empty() {
                continue;
            }
            return Some((i + 1, tokens(text)));
        }
        None
    }
}

fn number(line: usize, (col, tok): (usize, &str)) -> Result<usize, PlaneError> {
    tok.parse()
        .map_err(|_| parse_err(line, col, format!("expected a non-negative integer, found `{tok}`")))
}

fn header(cur: &mut Cursor<'_>, key: &str, last_line: usize) -> Result<(usize, Vec<(usize, String)>), PlaneError> {
    let (ln, toks) = cur
        .record()
        .ok_or_else(|| parse_err(last_line + 1, 1, format!("missing `{key}` header")))?;
    match toks.first() {
        Some((_, k)) if *k == key => {}
        Some((col, k)) => return Err(parse_err(ln, *col, format!("expected `{key}`, found `{k}`"))),
        None => unreachable!("blank records are skipped"),
    }
    if toks.len() != 2 {
        let col = toks.get(2).map_or(1, |t| t.0);
        return Err(parse_err(ln, col, format!("`{key}` takes exactly one value")));
    }
    Ok((ln, toks.into_iter().map(|(c, t)| (c, t.to_string())).collect()))
}

/// Parses a plane without checking its axioms.
pub fn parse_str(text: &str) -> Result<IncidenceStructure, PlaneError> {
    let mut cur = Cursor {
        lines: text.lines().enumerate().peekable(),
    };
    let (ln, toks) = header(&mut cur, "plane", 0)?;
    let kind = match toks[1].1.as_str() {
        "projective" => PlaneKind::Projective,
        "affine" => PlaneKind::Affine,
        other => {
            return Err(parse_err(ln, toks[1].0, format!("unknown plane kind `{other}`")));
        }
    };
    let (ln, toks) = header(&mut cur, "order", ln)?;
    let order = number(ln, (toks[1].0, &toks[1].1))?;
    let (ln, toks) = header(&mut cur, "points", ln)?;
    let points = number(ln, (toks[1].0, &toks[1].1))?;
    let (mut ln, toks) = header(&mut cur, "lines", ln)?;
    let line_count = number(ln, (toks[1].0, &toks[1].1))?;

    let mut lines = Vec::with_capacity(line_count.min(1 << 20));
    while let Some((rec_ln, toks)) = cur.record() {
        ln = rec_ln;
        let (col, tag) = toks[0];
        if tag != "L" {
            return Err(parse_err(ln, col, format!("expected `L`, found `{tag}`")));
        }
        if lines.len() == line_count {
            return Err(parse_err(ln, col, format!("more than the declared {line_count} lines")));
        }
        let pts = toks[1..]
            .iter()
            .map(|&t| number(ln, t))
            .collect::<Result<Vec<_>, _>>()?;
        lines.push(pts);
    }
    if lines.len() != line_count {
        return Err(parse_err(
            ln + 1,
            1,
            format!("declared {line_count} lines, found {}", lines.len()),
        ));
    }
    IncidenceStructure::from_lines(kind, order, points, lines, Provenance::File)
}

/// Parses and verifies a plane; structures failing the axioms are rejected.
pub fn parse_verified(text: &str) -> Result<IncidenceStructure, PlaneError> {
    let s = parse_str(text)?;
    let report = verify_axioms(&s);
    if report.pass {
        Ok(s)
    } else {
        Err(PlaneError::Axiom(Box::new(report)))
    }
}

pub fn load(path: impl AsRef<Path>) -> Result<IncidenceStructure, PlaneError> {
    parse_verified(&std::fs::read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FiniteField;
    use crate::planes::build_desarguesian_projective;

    #[test]
    fn fano_round_trip() {
        let pg2 = build_desarguesian_projective(&FiniteField::of_order(2).unwrap()).unwrap();
        let text = to_text(&pg2);
        assert!(text.starts_with("plane projective\norder 2\npoints 7\nlines 7\nL "));
        let back = parse_verified(&text).unwrap();
        assert_eq!(back, pg2);
        assert_eq!(to_text(&back), text);

        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("pg2.plane");
        save(&pg2, &path).unwrap();
        assert_eq!(load(&path).unwrap(), pg2);
    }

    #[test]
    fn comments_are_ignored() {
        let text = "# hello\nplane affine\norder 2\n# mid\npoints 4\nlines 6\nL 0 1\nL 2 3\n# x\nL 0 2\nL 1 3\nL 0 3\nL 1 2\n";
        let s = parse_verified(text).unwrap();
        assert_eq!(s.line_count(), 6);
    }

    #[test]
    fn oversized_line_is_an_axiom_error() {
        let mut text = String::from("plane projective\norder 3\npoints 13\nlines 13\n");
        text.push_str("L 0 1 2 3 4\n");
        for _ in 0..12 {
            text.push_str("L 0 1 2 3\n");
        }
        assert!(matches!(parse_verified(&text), Err(PlaneError::Axiom(_))));
    }

    #[test]
    fn non_numeric_token_has_location() {
        let text = "plane projective\norder 2\npoints 7\nlines 7\nL 0 1 x\n";
        match parse_str(text) {
            Err(PlaneError::Parse { line, column, .. }) => assert_eq!((line, column), (5, 7)),
            other => panic!("unexpected {other:?}"),
        }
        match parse_str("plane flat\n") {
            Err(PlaneError::Parse { line, column, .. }) => assert_eq!((line, column), (1, 7)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn missing_lines_and_bad_indices() {
        let text = "plane projective\norder 2\npoints 7\nlines 7\nL 0 1 2\n";
        assert!(matches!(parse_str(text), Err(PlaneError::Parse { .. })));
        let text = "plane affine\norder 2\npoints 4\nlines 1\nL 0 9\n";
        assert!(matches!(parse_str(text), Err(PlaneError::Axiom(_))));
    }
}
