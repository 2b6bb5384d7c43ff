//! Plain-text matrix files.
//!
//! ```text
//! # comments and blank lines are ignored
//! altmatspace n m q
//! <m blocks of n lines, n integers in [0, q) each>
//! ```
//!
//! Rectangular tuples (for `stable` and `adjoint`) use the header
//! `matrixtuple s t r q` followed by `r` blocks of `s` lines of `t` integers.

use std::fmt::Write as _;
use std::path::Path;

use altiso_core::tensor::{AlternatingTuple, MatrixTuple};
use altiso_core::{Matrix, PrimeField};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: {source}")]
    Invalid {
        line: usize,
        source: altiso_core::Error,
    },
    #[error("unexpected end of file: {0}")]
    Eof(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

#[derive(Clone, Debug)]
pub enum SpaceFile {
    Alt(AlternatingTuple),
    Tuple(MatrixTuple),
}

impl SpaceFile {
    pub fn kind(&self) -> &'static str {
        match self {
            SpaceFile::Alt(_) => "altmatspace",
            SpaceFile::Tuple(_) => "matrixtuple",
        }
    }
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> Lines<'a> {
    /// Next meaningful line as (1-based number, tokens).
    fn next(&mut self) -> Option<(usize, Vec<&'a str>)> {
        for (i, raw) in self.inner.by_ref() {
            let text = raw.split('#').next().unwrap_or("").trim();
            if !text.is_empty() {
                return Some((i + 1, text.split_whitespace().collect()));
            }
        }
        None
    }
}

fn syntax(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Syntax {
        line,
        msg: msg.into(),
    }
}

fn parse_usize(line: usize, tok: &str, what: &str) -> Result<usize, FormatError> {
    tok.parse()
        .map_err(|_| syntax(line, format!("{what}: expected a non-negative integer, got {tok:?}")))
}

fn read_block(
    lines: &mut Lines<'_>,
    rows: usize,
    cols: usize,
    field: PrimeField,
    index: usize,
) -> Result<(usize, Matrix), FormatError> {
    let mut data = Vec::with_capacity(rows * cols);
    let mut first = 0;
    for row in 0..rows {
        let (line, toks) = lines.next().ok_or_else(|| {
            FormatError::Eof(format!("matrix {index} needs {rows} rows, found {row}"))
        })?;
        if row == 0 {
            first = line;
        }
        if toks.len() != cols {
            return Err(syntax(
                line,
                format!("expected {cols} entries, found {}", toks.len()),
            ));
        }
        for tok in toks {
            let v: u32 = tok
                .parse()
                .map_err(|_| syntax(line, format!("not an integer: {tok:?}")))?;
            if v >= field.p() as u32 {
                return Err(syntax(
                    line,
                    format!("entry {v} is outside [0, {})", field.p()),
                ));
            }
            data.push(v as u16);
        }
    }
    let m = Matrix::from_vec(rows, cols, field, data)
        .map_err(|source| FormatError::Invalid { line: first, source })?;
    Ok((first, m))
}

fn parse_field(line: usize, tok: &str) -> Result<PrimeField, FormatError> {
    let q = parse_usize(line, tok, "q")?;
    let q = u32::try_from(q).map_err(|_| syntax(line, format!("q = {q} is too large")))?;
    PrimeField::new(q).map_err(|source| FormatError::Invalid { line, source })
}

pub fn parse(text: &str) -> Result<SpaceFile, FormatError> {
    let mut lines = Lines {
        inner: text.lines().enumerate(),
    };
    let (hline, header) = lines
        .next()
        .ok_or_else(|| FormatError::Eof("missing header".into()))?;
    let out = match header.as_slice() {
        ["altmatspace", n, m, q] => {
            let n = parse_usize(hline, n, "n")?;
            let m = parse_usize(hline, m, "m")?;
            let field = parse_field(hline, q)?;
            let mut mats = Vec::with_capacity(m);
            for index in 0..m {
                let (line, a) = read_block(&mut lines, n, n, field, index)?;
                // validate block by block so the error points at the right place
                AlternatingTuple::new(n, field, vec![a.clone()]).map_err(|source| {
                    FormatError::Invalid {
                        line,
                        source: match source {
                            altiso_core::Error::NotAlternating { reason, .. } => {
                                altiso_core::Error::NotAlternating { index, reason }
                            }
                            e => e,
                        },
                    }
                })?;
                mats.push(a);
            }
            let g = AlternatingTuple::new(n, field, mats)
                .map_err(|source| FormatError::Invalid { line: hline, source })?;
            SpaceFile::Alt(g)
        }
        ["matrixtuple", s, t, r, q] => {
            let s = parse_usize(hline, s, "s")?;
            let t = parse_usize(hline, t, "t")?;
            let r = parse_usize(hline, r, "r")?;
            let field = parse_field(hline, q)?;
            let mut mats = Vec::with_capacity(r);
            for index in 0..r {
                mats.push(read_block(&mut lines, s, t, field, index)?.1);
            }
            let b = MatrixTuple::new(s, t, field, mats)
                .map_err(|source| FormatError::Invalid { line: hline, source })?;
            SpaceFile::Tuple(b)
        }
        _ => {
            return Err(syntax(
                hline,
                "expected header \"altmatspace n m q\" or \"matrixtuple s t r q\"",
            ))
        }
    };
    if let Some((line, _)) = lines.next() {
        return Err(syntax(line, "trailing data after the last matrix"));
    }
    Ok(out)
}

pub fn read(path: &Path) -> Result<SpaceFile, FormatError> {
    let text = std::fs::read_to_string(path).map_err(|source| FormatError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse(&text)
}

fn write_matrix(out: &mut String, a: &Matrix) {
    for i in 0..a.rows() {
        let row: Vec<String> = a.row(i).iter().map(|v| v.to_string()).collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
}

pub fn write_alt(g: &AlternatingTuple) -> String {
    let mut out = format!("altmatspace {} {} {}\n", g.n(), g.m(), g.field().p());
    for (i, a) in g.mats().iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        write_matrix(&mut out, a);
    }
    out
}

pub fn write_tuple(b: &MatrixTuple) -> String {
    let mut out = format!(
        "matrixtuple {} {} {} {}\n",
        b.s(),
        b.t(),
        b.len(),
        b.field().p()
    );
    for (i, a) in b.mats().iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        write_matrix(&mut out, a);
    }
    out
}

pub fn write(file: &SpaceFile) -> String {
    match file {
        SpaceFile::Alt(g) => write_alt(g),
        SpaceFile::Tuple(b) => write_tuple(b),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const J: &str = "altmatspace 2 1 2\n0 1\n1 0\n";

    #[test]
    fn roundtrip() {
        let SpaceFile::Alt(g) = parse(J).unwrap() else {
            panic!()
        };
        assert_eq!(g.n(), 2);
        assert_eq!(write_alt(&g), J);
        let t = "matrixtuple 2 3 2 5\n0 1 4\n2 2 2\n\n1 0 0\n0 0 3\n";
        assert_eq!(write(&parse(t).unwrap()), t);
    }

    #[test]
    fn comments_and_zero_space() {
        let g = parse("# nothing here\n\naltmatspace 3 0 7 # trailing\n").unwrap();
        match g {
            SpaceFile::Alt(g) => assert_eq!((g.n(), g.m()), (3, 0)),
            _ => panic!(),
        }
    }

    fn line_of(text: &str) -> usize {
        match parse(text).unwrap_err() {
            FormatError::Syntax { line, .. } | FormatError::Invalid { line, .. } => line,
            e => panic!("{e}"),
        }
    }

    #[test]
    fn errors_carry_line_numbers() {
        assert_eq!(line_of("altmatspace 2 1 4\n0 1\n1 0\n"), 1); // 4 is not prime
        assert_eq!(line_of("altmatspace 2 1 3\n0 1\n1 0\n"), 2); // 1 != -1 mod 3
        assert_eq!(line_of("altmatspace 2 1 3\n0 1\n2\n"), 3);
        assert_eq!(line_of("altmatspace 2 1 3\n0 1\n2 x\n"), 3);
        assert_eq!(line_of("altmatspace 2 1 3\n0 1\n2 3\n"), 3);
        assert_eq!(line_of("altmatspace 2 1 3\n0 1\n2 0\n0 0\n"), 4);
        assert_eq!(line_of("altmat 2 1 3\n"), 1);
        assert_eq!(line_of("\n\naltmatspace 2 2 2\n0 1\n1 0\n\n1 1\n1 0\n"), 7);
        assert!(matches!(parse("altmatspace 2 2 2\n0 1\n1 0\n"), Err(FormatError::Eof(_))));
    }
}
