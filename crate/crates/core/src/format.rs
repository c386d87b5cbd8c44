//! Text formats: matrix files and result reports.
//!
//! A matrix file is a header line `adjmat v1 <domain> <n>` (domain `int` or
//! `poly`) followed by `n` lines of `n` whitespace-separated elements.
//! Blank lines and lines starting with `#` are ignored.

use std::fmt::Write as _;

use num_bigint::BigInt;

use crate::domain::{Domain, Polynomial};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::paradj::{Mode, RunStats};

pub const MAGIC: &str = "adjmat";
pub const VERSION: &str = "v1";

/// A parsed matrix file of either domain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnyMatrix {
    Int(Matrix<BigInt>),
    Poly(Matrix<Polynomial>),
}

impl AnyMatrix {
    pub fn order(&self) -> usize {
        match self {
            AnyMatrix::Int(m) => m.rows(),
            AnyMatrix::Poly(m) => m.rows(),
        }
    }

    pub fn tag(&self) -> &'static str {
        match self {
            AnyMatrix::Int(_) => BigInt::TAG,
            AnyMatrix::Poly(_) => Polynomial::TAG,
        }
    }
}

fn syntax(line: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        message: message.into(),
    }
}

/// Parse a matrix file, dispatching on the header's domain.
pub fn parse_matrix_file(text: &str) -> Result<AnyMatrix> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hl, header) = lines.next().ok_or_else(|| syntax(1, "missing header"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let [magic, version, domain, n] = fields[..] else {
        return Err(syntax(hl, "header must be `adjmat v1 <domain> <n>`"));
    };
    if magic != MAGIC || version != VERSION {
        return Err(syntax(
            hl,
            format!("unsupported header `{magic} {version}`"),
        ));
    }
    let n: usize = n
        .parse()
        .map_err(|_| syntax(hl, format!("bad order `{n}`")))?;
    if n == 0 {
        return Err(syntax(hl, "order must be at least 1"));
    }
    let body: Vec<(usize, &str)> = lines.collect();
    match domain {
        "int" => parse_body::<BigInt>(&body, n, hl).map(AnyMatrix::Int),
        "poly" => parse_body::<Polynomial>(&body, n, hl).map(AnyMatrix::Poly),
        other => Err(syntax(hl, format!("unknown domain `{other}`"))),
    }
}

/// Parse a matrix file whose domain must be `D`.
pub fn parse_matrix_file_as<D: Domain>(text: &str) -> Result<Matrix<D>> {
    let any = parse_matrix_file(text)?;
    if any.tag() != D::TAG {
        return Err(syntax(
            1,
            format!("expected domain `{}`, found `{}`", D::TAG, any.tag()),
        ));
    }
    let rows: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .skip(1)
        .collect();
    parse_body(&rows, any.order(), 1)
}

fn parse_body<D: Domain>(
    body: &[(usize, &str)],
    n: usize,
    header_line: usize,
) -> Result<Matrix<D>> {
    if body.len() != n {
        let line = body.last().map_or(header_line, |(l, _)| *l);
        return Err(syntax(
            line,
            format!("expected {n} rows, found {}", body.len()),
        ));
    }
    let mut rows = Vec::with_capacity(n);
    for &(line, text) in body {
        let row = text
            .split_whitespace()
            .map(|tok| D::parse_element(tok).map_err(|e| syntax(line, format!("`{tok}`: {e}"))))
            .collect::<Result<Vec<D>>>()?;
        if row.len() != n {
            return Err(syntax(
                line,
                format!("expected {n} entries, found {}", row.len()),
            ));
        }
        rows.push(row);
    }
    Matrix::from_rows(rows)
}

/// Serialize a square matrix as a matrix file.
pub fn write_matrix_file<D: Domain>(m: &Matrix<D>) -> Result<String> {
    let n = m.order()?;
    Ok(format!("{MAGIC} {VERSION} {} {n}\n{m}\n", D::TAG))
}

/// Output of one `adj`/`det` run.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultReport<D> {
    pub determinant: D,
    pub adjugate: Option<Matrix<D>>,
    pub stats: RunStats,
    pub wall_time_ms: f64,
    pub mode: Mode,
    pub seed: u64,
    pub attempts: usize,
    /// `recursive`, `oracle`.
    pub method: &'static str,
}

impl<D: Domain> ResultReport<D> {
    /// Determinant and adjugate sections, independent of timing.
    pub fn render_result(&self) -> String {
        let mut out = format!("determinant {}\n", self.determinant);
        if let Some(adj) = &self.adjugate {
            let _ = writeln!(out, "adjugate {}", adj.rows());
            let _ = writeln!(out, "{adj}");
        }
        out
    }

    /// `key value` lines.
    pub fn render_stats(&self) -> String {
        let s = &self.stats;
        let mut out = String::new();
        for (k, v) in [
            ("method", self.method.to_string()),
            ("mode", self.mode.to_string()),
            ("seed", self.seed.to_string()),
            ("attempts", self.attempts.to_string()),
            ("matmul_count", s.matmul_count.to_string()),
            ("exact_div_count", s.exact_div_count.to_string()),
            ("recursion_calls", s.recursion_calls.to_string()),
            ("critical_path_stages", s.critical_path_stages.to_string()),
            ("wall_time_ms", format!("{:.3}", self.wall_time_ms)),
        ] {
            let _ = writeln!(out, "{k} {v}");
        }
        out
    }

    pub fn adjugate_file(&self) -> Option<Result<String>> {
        self.adjugate.as_ref().map(write_matrix_file)
    }
}

/// Parse `key value` lines into pairs.
pub fn parse_key_values(text: &str) -> Vec<(String, String)> {
    text.lines()
        .filter_map(|l| {
            let mut it = l.splitn(2, ' ');
            Some((it.next()?.to_string(), it.next()?.trim().to_string()))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const WORKED_FILE: &str = "adjmat v1 int 4\n0 2 -2 2\n1 -3 1 -2\n3 0 -3 0\n-1 3 -1 1\n";

    #[test]
    fn parse_integer_file() {
        let AnyMatrix::Int(m) = parse_matrix_file(WORKED_FILE).unwrap() else {
            panic!("wrong domain");
        };
        assert_eq!(m.get(1, 1), &BigInt::from(-3));
        assert_eq!(write_matrix_file(&m).unwrap(), WORKED_FILE);
    }

    #[test]
    fn parse_polynomial_file_with_comments() {
        let text = "# test\nadjmat v1 poly 2\n\nx 1\n1   x\n";
        let m = parse_matrix_file_as::<Polynomial>(text).unwrap();
        assert_eq!(m.get(0, 0), &Polynomial::x());
        assert!(parse_matrix_file_as::<BigInt>(text).is_err());
    }

    #[test]
    fn malformed_files() {
        let cases = [
            ("", 1),
            ("adjmat v2 int 1\n1\n", 1),
            ("adjmat v1 real 1\n1\n", 1),
            ("adjmat v1 int 0\n", 1),
            ("adjmat v1 int two\n", 1),
            ("adjmat v1 int 2\n1 2\n3\n", 3),
            ("adjmat v1 int 2\n1 2\n", 2),
            ("adjmat v1 int 1\nx\n", 2),
            ("adjmat v1 int 1\n1\n2\n", 3),
        ];
        for (text, line) in cases {
            match parse_matrix_file(text) {
                Err(Error::Syntax { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }

    #[test]
    fn report_sections() {
        let m = Matrix::<BigInt>::identity(2);
        let r = ResultReport {
            determinant: BigInt::from(1),
            adjugate: Some(m.clone()),
            stats: RunStats::default(),
            wall_time_ms: 0.5,
            mode: Mode::Sequential,
            seed: 3,
            attempts: 1,
            method: "recursive",
        };
        assert_eq!(r.render_result(), "determinant 1\nadjugate 2\n1 0\n0 1\n");
        let kv = parse_key_values(&r.render_stats());
        assert!(kv.contains(&("mode".into(), "seq".into())));
        assert!(kv.contains(&("seed".into(), "3".into())));
        let back = parse_matrix_file_as::<BigInt>(&r.adjugate_file().unwrap().unwrap()).unwrap();
        assert_eq!(back, m);
    }
}
