//! Text formats.
//!
//! * MAT1: first line `rows cols`, then `rows` lines of whitespace-separated
//!   signed integers.
//! * GMAT1: the same layout with Gaussian rationals such as `3`, `-1/2`,
//!   `2i`, `1/3-5/2i`.
//! * BGW1: first line `size group_order`, then `size` lines where `0` is the
//!   zero element and `i` stands for `g^i`.
//! * Vertex sets: one line of 0-based indices. Partitions: one part per line.
//!
//! Blank lines are ignored everywhere. Parse errors carry 1-based line and
//! column positions.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::bgw::GroupRingMatrix;
use crate::error::{Error, Result};
use crate::gauss::{GaussMatrix, GaussRational, Rational};
use crate::matrix::IntMatrix;

struct Token<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

fn parse_error(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Non-blank lines split into tokens with their positions.
fn tokenized_lines(text: &str) -> Vec<(usize, Vec<Token<'_>>)> {
    text.lines()
        .enumerate()
        .filter_map(|(idx, line)| {
            let mut tokens = Vec::new();
            let mut rest = line;
            let mut offset = 0;
            while let Some(start) = rest.find(|c: char| !c.is_whitespace()) {
                let after = &rest[start..];
                let len = after.find(char::is_whitespace).unwrap_or(after.len());
                tokens.push(Token {
                    text: &after[..len],
                    line: idx + 1,
                    column: offset + start + 1,
                });
                offset += start + len;
                rest = &after[len..];
            }
            (!tokens.is_empty()).then_some((idx + 1, tokens))
        })
        .collect()
}

fn parse_token<T: FromStr>(t: &Token<'_>, what: &str) -> Result<T> {
    t.text
        .parse()
        .map_err(|_| parse_error(t.line, t.column, format!("invalid {what} `{}`", t.text)))
}

/// Header `a b` followed by `rows` lines of `cols` tokens each.
fn parse_grid<'a, T>(
    text: &'a str,
    rows_of: impl Fn(usize, usize) -> (usize, usize),
    mut cell: impl FnMut(&Token<'a>) -> Result<T>,
) -> Result<(usize, usize, Vec<T>)> {
    let lines = tokenized_lines(text);
    let Some((header_line, header)) = lines.first() else {
        return Err(parse_error(1, 1, "missing header line"));
    };
    if header.len() != 2 {
        return Err(parse_error(*header_line, 1, "header must contain exactly two numbers"));
    }
    let a: usize = parse_token(&header[0], "dimension")?;
    let b: usize = parse_token(&header[1], "dimension")?;
    let (rows, cols) = rows_of(a, b);
    let body = &lines[1..];
    let mut data = Vec::with_capacity(rows * cols);
    for (line, tokens) in body.iter().take(rows) {
        if tokens.len() != cols {
            let column = tokens.get(cols).map_or(1, |t| t.column);
            return Err(parse_error(
                *line,
                column,
                format!("expected {cols} entries, found {}", tokens.len()),
            ));
        }
        for t in tokens {
            data.push(cell(t)?);
        }
    }
    if body.len() != rows {
        let line = body.get(rows).map_or(header_line + body.len() + 1, |(l, _)| *l);
        return Err(parse_error(
            line,
            1,
            format!("expected {rows} data lines, found {}", body.len()),
        ));
    }
    Ok((a, b, data))
}

pub fn parse_int_matrix(text: &str) -> Result<IntMatrix> {
    let (rows, cols, data) = parse_grid(text, |r, c| (r, c), |t| parse_token::<i64>(t, "integer"))?;
    IntMatrix::new(rows, cols, data)
}

pub fn write_int_matrix(m: &IntMatrix) -> String {
    let mut out = format!("{} {}\n", m.rows(), m.cols());
    for i in 0..m.rows() {
        let line: Vec<String> = m.row(i).iter().map(i64::to_string).collect();
        let _ = writeln!(out, "{}", line.join(" "));
    }
    out
}

fn parse_rational(s: &str) -> Option<Rational> {
    match s.split_once('/') {
        None => s.parse::<i128>().ok().map(Rational::from_integer),
        Some((num, den)) => {
            let num: i128 = num.parse().ok()?;
            let den: i128 = den.parse().ok()?;
            (den != 0).then(|| Rational::new(num, den))
        }
    }
}

/// Parses `a`, `a/b`, `ci`, `c/di`, `i`, `-i`, `a+ci`, `a/b-c/di` and the
/// like.
pub fn parse_gauss(s: &str) -> Option<GaussRational> {
    let Some(body) = s.strip_suffix('i') else {
        return parse_rational(s).map(|re| GaussRational::new(re, Rational::from_integer(0)));
    };
    // The imaginary part starts at the last sign that is not the first char.
    let split = body
        .char_indices()
        .skip(1)
        .filter(|&(_, c)| c == '+' || c == '-')
        .map(|(i, _)| i)
        .last();
    let (re_text, im_text) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("", body),
    };
    let re = if re_text.is_empty() {
        Rational::from_integer(0)
    } else {
        parse_rational(re_text)?
    };
    let im = match im_text {
        "" | "+" => Rational::from_integer(1),
        "-" => Rational::from_integer(-1),
        t => parse_rational(t.strip_prefix('+').unwrap_or(t))?,
    };
    Some(GaussRational::new(re, im))
}

pub fn parse_gauss_matrix(text: &str) -> Result<GaussMatrix> {
    let (rows, cols, data) = parse_grid(
        text,
        |r, c| (r, c),
        |t| {
            parse_gauss(t.text)
                .ok_or_else(|| parse_error(t.line, t.column, format!("invalid Gaussian rational `{}`", t.text)))
        },
    )?;
    GaussMatrix::new(rows, cols, data)
}

pub fn write_gauss_matrix(m: &GaussMatrix) -> String {
    let mut out = format!("{} {}\n", m.rows(), m.cols());
    for i in 0..m.rows() {
        let line: Vec<String> = m.row(i).iter().map(ToString::to_string).collect();
        let _ = writeln!(out, "{}", line.join(" "));
    }
    out
}

pub fn parse_group_ring(text: &str) -> Result<GroupRingMatrix> {
    let (size, order, data) = parse_grid(text, |s, _| (s, s), |t| parse_token::<u32>(t, "group element"))?;
    let order = u32::try_from(order).map_err(|_| parse_error(1, 1, "group order too large"))?;
    GroupRingMatrix::new(size, order, data)
}

pub fn write_group_ring(w: &GroupRingMatrix) -> String {
    let mut out = format!("{} {}\n", w.size(), w.group_order());
    for row in w.to_rows() {
        let line: Vec<String> = row.iter().map(u32::to_string).collect();
        let _ = writeln!(out, "{}", line.join(" "));
    }
    out
}

fn parse_indices(tokens: &[Token<'_>]) -> Result<Vec<usize>> {
    tokens.iter().map(|t| parse_token(t, "vertex index")).collect()
}

/// All indices in the file, across lines.
pub fn parse_vertex_set(text: &str) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for (_, tokens) in tokenized_lines(text) {
        out.extend(parse_indices(&tokens)?);
    }
    Ok(out)
}

pub fn parse_partition(text: &str) -> Result<Vec<Vec<usize>>> {
    tokenized_lines(text)
        .iter()
        .map(|(_, tokens)| parse_indices(tokens))
        .collect()
}

pub fn write_partition(parts: &[Vec<usize>]) -> String {
    let mut out = String::new();
    for part in parts {
        let line: Vec<String> = part.iter().map(usize::to_string).collect();
        let _ = writeln!(out, "{}", line.join(" "));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bgw::w10;
    use proptest::prelude::*;

    #[test]
    fn int_matrix_round_trip() {
        let m = IntMatrix::from_rows(&[vec![1, -2, 3], vec![0, 5, -6]]).unwrap();
        let text = write_int_matrix(&m);
        assert_eq!(text, "2 3\n1 -2 3\n0 5 -6\n");
        assert_eq!(parse_int_matrix(&text).unwrap(), m);
        assert_eq!(parse_int_matrix("\n2 3\n\n1 -2 3\n0 5 -6\n\n").unwrap(), m);
    }

    #[test]
    fn parse_errors_have_positions() {
        assert_eq!(
            parse_int_matrix("2 2\n1 x\n0 1\n").unwrap_err(),
            Error::Parse {
                line: 2,
                column: 3,
                message: "invalid integer `x`".into()
            }
        );
        assert!(matches!(
            parse_int_matrix("2 2\n1 0 1\n0 1\n").unwrap_err(),
            Error::Parse { line: 2, column: 5, .. }
        ));
        assert!(matches!(
            parse_int_matrix("2 2\n1 0\n").unwrap_err(),
            Error::Parse { .. }
        ));
        assert!(matches!(
            parse_int_matrix("").unwrap_err(),
            Error::Parse { line: 1, .. }
        ));
        assert!(matches!(
            parse_int_matrix("2\n").unwrap_err(),
            Error::Parse { line: 1, .. }
        ));
    }

    #[test]
    fn gauss_tokens() {
        let f = GaussRational::frac;
        let cases = [
            ("3", f(3, 1)),
            ("-1/2", f(-1, 2)),
            ("2i", GaussRational::imag_frac(2, 1)),
            ("-3/4i", GaussRational::imag_frac(-3, 4)),
            ("i", GaussRational::i()),
            ("-i", GaussRational::imag_frac(-1, 1)),
            (
                "1+i",
                GaussRational::from_int(1).checked_add(&GaussRational::i()).unwrap(),
            ),
            (
                "1/3-5/2i",
                f(1, 3).checked_add(&GaussRational::imag_frac(-5, 2)).unwrap(),
            ),
        ];
        for (text, value) in cases {
            assert_eq!(parse_gauss(text), Some(value), "{text}");
        }
        for bad in ["", "1/0", "x", "1+2", "ii", "1/2/3"] {
            assert_eq!(parse_gauss(bad), None, "{bad}");
        }
    }

    #[test]
    fn gauss_matrix_round_trip() {
        let m = GaussMatrix::from_rows(vec![
            vec![GaussRational::one(), GaussRational::imag_frac(-5, 3)],
            vec![
                GaussRational::frac(7, 2).checked_add(&GaussRational::i()).unwrap(),
                GaussRational::zero(),
            ],
        ])
        .unwrap();
        assert_eq!(parse_gauss_matrix(&write_gauss_matrix(&m)).unwrap(), m);
    }

    #[test]
    fn group_ring_round_trip() {
        let w = w10();
        let text = write_group_ring(&w);
        assert!(text.starts_with("10 8\n0 8 8"));
        assert_eq!(parse_group_ring(&text).unwrap(), w);
        assert!(parse_group_ring("2 4\n0 9\n1 0\n").is_err());
    }

    #[test]
    fn partitions() {
        assert_eq!(parse_vertex_set("0 1\n 5\n").unwrap(), vec![0, 1, 5]);
        let parts = vec![vec![0, 1], vec![2, 3]];
        assert_eq!(parse_partition(&write_partition(&parts)).unwrap(), parts);
        assert!(matches!(
            parse_partition("0 1\n2 -3\n").unwrap_err(),
            Error::Parse { line: 2, column: 3, .. }
        ));
    }

    proptest! {
        #[test]
        fn gauss_display_parses_back(a in -50i64..50, b in 1i64..20, c in -50i64..50, d in 1i64..20) {
            let g = GaussRational::frac(a, b).checked_add(&GaussRational::imag_frac(c, d)).unwrap();
            prop_assert_eq!(parse_gauss(&g.to_string()), Some(g));
        }

        #[test]
        fn int_matrix_text_round_trip(rows in 0usize..5, cols in 1usize..5, seed in proptest::collection::vec(-1000i64..1000, 25)) {
            let m = IntMatrix::from_fn(rows, cols, |i, j| seed[i * 5 + j]);
            prop_assert_eq!(parse_int_matrix(&write_int_matrix(&m)).unwrap(), m);
        }
    }
}
