//! Text file format for matrices and vectors, and the exp/ln isomorphism
//! between the max-plus and max-times realizations.
//!
//! Matrix files are UTF-8 text:
//!
//! ```text
//! # comment lines start with '#' and may appear anywhere
//! semiring: maxplus      (optional; default maxplus; alternative maxtimes)
//! 3
//! 0 -1 -inf
//! -2 0 -1
//! -1 -2 0
//! ```
//!
//! The token `-inf` denotes the max-plus zero; in maxtimes files the token
//! `0` denotes the zero and entries must be nonnegative. Vector files carry
//! the same header followed by a single line of n tokens.

use std::fmt::Write as _;

use crate::error::{MpError, Result};
use crate::matrix::{MpMatrix, MpVector};
use crate::scalar::MpScalar;

/// Which realization of max algebra a file is written in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Semiring {
    #[default]
    MaxPlus,
    MaxTimes,
}

impl Semiring {
    pub fn as_str(self) -> &'static str {
        match self {
            Semiring::MaxPlus => "maxplus",
            Semiring::MaxTimes => "maxtimes",
        }
    }
}

/// Converts a nonnegative max-times matrix to max-plus by elementwise ln;
/// 0 maps to -inf.
pub fn to_maxplus(rows: &[Vec<f64>]) -> Result<MpMatrix> {
    let n = rows.len();
    if n == 0 {
        return Err(MpError::DimensionMismatch {
            expected: 1,
            found: 0,
        });
    }
    let mut out = MpMatrix::zero(n);
    for (i, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(MpError::DimensionMismatch {
                expected: n,
                found: row.len(),
            });
        }
        for (j, &v) in row.iter().enumerate() {
            out.set(i, j, MpScalar::from_maxtimes(v)?);
        }
    }
    Ok(out)
}

/// Converts a max-plus matrix to max-times by elementwise exp; -inf maps to 0.
pub fn to_maxtimes(m: &MpMatrix) -> Vec<Vec<f64>> {
    (0..m.dim())
        .map(|i| m.row(i).iter().map(|s| s.to_maxtimes()).collect())
        .collect()
}

struct Lines<'a> {
    /// (1-based line number, line content) with comments and blanks dropped.
    items: std::vec::IntoIter<(usize, &'a str)>,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Lines<'a> {
        let items: Vec<(usize, &str)> = text
            .lines()
            .enumerate()
            .map(|(idx, line)| (idx + 1, line))
            .filter(|(_, line)| {
                let t = line.trim_start();
                !t.is_empty() && !t.starts_with('#')
            })
            .collect();
        Lines {
            items: items.into_iter(),
        }
    }

    fn next(&mut self, what: &str) -> Result<(usize, &'a str)> {
        self.items.next().ok_or_else(|| MpError::Parse {
            line: 0,
            column: 0,
            message: format!("unexpected end of file, expected {what}"),
        })
    }
}

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> MpError {
    MpError::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Parses the optional `semiring:` line; returns the semiring and whether a
/// line was consumed.
fn parse_header(first: &str, line_no: usize) -> Result<Option<Semiring>> {
    let trimmed = first.trim();
    if let Some(rest) = trimmed.strip_prefix("semiring:") {
        match rest.trim() {
            "maxplus" => Ok(Some(Semiring::MaxPlus)),
            "maxtimes" => Ok(Some(Semiring::MaxTimes)),
            other => Err(parse_err(
                line_no,
                first.find(':').map_or(1, |p| p + 2),
                format!("unknown semiring `{other}`"),
            )),
        }
    } else {
        Ok(None)
    }
}

fn parse_dim(line: &str, line_no: usize) -> Result<usize> {
    let t = line.trim();
    let n: usize = t
        .parse()
        .map_err(|_| parse_err(line_no, column_of(line, t), format!("invalid dimension `{t}`")))?;
    if n == 0 {
        return Err(parse_err(line_no, column_of(line, t), "dimension must be at least 1"));
    }
    Ok(n)
}

fn column_of(line: &str, token: &str) -> usize {
    let base = line.as_ptr() as usize;
    let tok = token.as_ptr() as usize;
    if tok >= base && tok <= base + line.len() {
        tok - base + 1
    } else {
        1
    }
}

fn parse_row(
    line: &str,
    line_no: usize,
    n: usize,
    semiring: Semiring,
) -> Result<Vec<MpScalar>> {
    let tokens: Vec<&str> = line.split_whitespace().collect();
    if tokens.len() != n {
        return Err(MpError::DimensionMismatch {
            expected: n,
            found: tokens.len(),
        });
    }
    let mut out = Vec::with_capacity(n);
    for tok in tokens {
        let col = column_of(line, tok);
        let scalar = match semiring {
            Semiring::MaxPlus => {
                if tok == "-inf" {
                    MpScalar::ZERO
                } else {
                    let v: f64 = tok
                        .parse()
                        .map_err(|_| parse_err(line_no, col, format!("invalid number `{tok}`")))?;
                    MpScalar::new(v)
                        .map_err(|_| parse_err(line_no, col, format!("value `{tok}` outside carrier")))?
                }
            }
            Semiring::MaxTimes => {
                let v: f64 = tok
                    .parse()
                    .map_err(|_| parse_err(line_no, col, format!("invalid number `{tok}`")))?;
                MpScalar::from_maxtimes(v)?
            }
        };
        out.push(scalar);
    }
    Ok(out)
}

/// Reads a matrix file; the result is always max-plus internally.
/// Returns the matrix with the semiring the file declared.
pub fn read_matrix(text: &str) -> Result<(MpMatrix, Semiring)> {
    let mut lines = Lines::new(text);
    let (line_no, first) = lines.next("semiring or dimension")?;
    let (semiring, dim_line) = match parse_header(first, line_no)? {
        Some(s) => (s, lines.next("dimension")?),
        None => (Semiring::MaxPlus, (line_no, first)),
    };
    let n = parse_dim(dim_line.1, dim_line.0)?;
    let mut m = MpMatrix::zero(n);
    for i in 0..n {
        let (row_no, row_line) = lines.next("matrix row")?;
        let row = parse_row(row_line, row_no, n, semiring)?;
        for (j, s) in row.into_iter().enumerate() {
            m.set(i, j, s);
        }
    }
    Ok((m, semiring))
}

/// Reads a vector file: same header as a matrix, then one line of n tokens.
pub fn read_vector(text: &str) -> Result<(MpVector, Semiring)> {
    let mut lines = Lines::new(text);
    let (line_no, first) = lines.next("semiring or dimension")?;
    let (semiring, dim_line) = match parse_header(first, line_no)? {
        Some(s) => (s, lines.next("dimension")?),
        None => (Semiring::MaxPlus, (line_no, first)),
    };
    let n = parse_dim(dim_line.1, dim_line.0)?;
    let (row_no, row_line) = lines.next("vector entries")?;
    let row = parse_row(row_line, row_no, n, semiring)?;
    Ok((MpVector::from_scalars(row), semiring))
}

fn scalar_token(s: MpScalar, semiring: Semiring) -> String {
    match semiring {
        Semiring::MaxPlus => s.to_string(),
        Semiring::MaxTimes => {
            let v = s.to_maxtimes();
            format!("{v}")
        }
    }
}

/// Renders a matrix in the file format, including the semiring line.
pub fn write_matrix(m: &MpMatrix, semiring: Semiring) -> String {
    let mut out = String::new();
    writeln!(out, "semiring: {}", semiring.as_str()).unwrap();
    writeln!(out, "{}", m.dim()).unwrap();
    for i in 0..m.dim() {
        let row: Vec<String> = m.row(i).iter().map(|&s| scalar_token(s, semiring)).collect();
        writeln!(out, "{}", row.join(" ")).unwrap();
    }
    out
}

/// Renders a vector in the file format.
pub fn write_vector(v: &MpVector, semiring: Semiring) -> String {
    let mut out = String::new();
    writeln!(out, "semiring: {}", semiring.as_str()).unwrap();
    writeln!(out, "{}", v.len()).unwrap();
    let row: Vec<String> = v.iter().map(|s| scalar_token(s, semiring)).collect();
    writeln!(out, "{}", row.join(" ")).unwrap();
    out
}
