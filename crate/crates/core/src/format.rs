//! Plain-text automaton format.
//!
//! ```text
//! n k
//! delta(0, 0) ... delta(0, k-1)
//! ...
//! delta(n-1, 0) ... delta(n-1, k-1)
//! ```
//!
//! States and letters are 0-based and fields are whitespace separated. Blank
//! lines are skipped and the trailing newline is optional. [`serialize`]
//! writes single spaces and a trailing newline.

use std::fmt::Write;

use crate::automaton::Automaton;
use crate::error::{ParseError, ParseErrorKind};

pub fn parse(text: &str) -> Result<Automaton, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());

    let err = |line, kind| ParseError { line, kind };

    let (header_line, header) = lines.next().ok_or(err(1, ParseErrorKind::MissingHeader))?;
    let dims = parse_fields(header_line, header)?;
    if dims.len() != 2 {
        return Err(err(header_line, ParseErrorKind::HeaderArity(dims.len())));
    }
    let (n, k) = (dims[0], dims[1]);
    if n == 0 {
        return Err(err(header_line, ParseErrorKind::ZeroDimension("n")));
    }
    if k == 0 {
        return Err(err(header_line, ParseErrorKind::ZeroDimension("k")));
    }

    let mut table = Vec::with_capacity(n * k);
    let mut rows = 0;
    let mut last_line = header_line;
    for (line, content) in lines {
        last_line = line;
        if rows == n {
            return Err(err(
                line,
                ParseErrorKind::RowCount {
                    expected: n,
                    actual: rows + 1,
                },
            ));
        }
        let row = parse_fields(line, content)?;
        if row.len() != k {
            return Err(err(
                line,
                ParseErrorKind::RowLength {
                    expected: k,
                    actual: row.len(),
                },
            ));
        }
        if let Some(&state) = row.iter().find(|&&q| q >= n) {
            return Err(err(line, ParseErrorKind::StateOutOfRange { state, n }));
        }
        table.extend(row);
        rows += 1;
    }
    if rows != n {
        return Err(err(
            last_line,
            ParseErrorKind::RowCount {
                expected: n,
                actual: rows,
            },
        ));
    }
    Ok(Automaton::from_table(n, k, table).expect("table validated while parsing"))
}

fn parse_fields(line: usize, content: &str) -> Result<Vec<usize>, ParseError> {
    content
        .split_whitespace()
        .map(|field| {
            field.parse().map_err(|_| ParseError {
                line,
                kind: ParseErrorKind::InvalidInteger(field.to_string()),
            })
        })
        .collect()
}

pub fn serialize(automaton: &Automaton) -> String {
    let (n, k) = (automaton.states(), automaton.letters());
    let mut out = String::with_capacity(8 + n * k * 4);
    writeln!(out, "{n} {k}").unwrap();
    for q in 0..n {
        for a in 0..k {
            if a > 0 {
                out.push(' ');
            }
            write!(out, "{}", automaton.next(q, a)).unwrap();
        }
        out.push('\n');
    }
    out
}
