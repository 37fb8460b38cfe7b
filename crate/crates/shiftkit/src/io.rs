//! Graph file ingestion.
//!
//! Three encodings of a square shift matrix are accepted:
//!
//! * edge list: one `src dst [weight]` triple per line, zero-indexed, weight
//!   defaulting to 1, `#` comments; the entry lands at `A[dst][src]` (values
//!   flow from source to destination, matching shift semantics);
//! * Matrix Market: `%%MatrixMarket matrix coordinate integer|real general`,
//!   one-indexed `i j v` with `A[i-1][j-1] = v`;
//! * dense text: n lines of n whitespace-separated tokens.
//!
//! Every token is parsed into a float view and, when it is an integer or a
//! `p/q` literal, an exact rational view. Exact commands reject float
//! literals outright; a denominator-limited rationalization can be opted
//! into. Duplicate coordinates are summed in both views.

use num::bigint::BigInt;
use num::traits::{FromPrimitive, Signed, ToPrimitive, Zero};
use num::Integer;

use crate::error::{Error, Result};
use crate::filterbank::SparseMat;
use crate::mat::Mat;
use crate::{MatQ, Rat, SparseMatF};

/// Format selector; `Auto` sniffs the content.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphFormat {
    Auto,
    EdgeList,
    MatrixMarket,
    DenseText,
}

/// Format actually used after sniffing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SourceFormat {
    EdgeList,
    MatrixMarket,
    DenseText,
}

impl SourceFormat {
    pub fn as_str(&self) -> &'static str {
        match self {
            SourceFormat::EdgeList => "edge-list",
            SourceFormat::MatrixMarket => "matrix-market",
            SourceFormat::DenseText => "dense-text",
        }
    }
}

#[derive(Clone, Debug)]
struct Entry {
    row: usize,
    col: usize,
    line: usize,
    col_pos: usize,
    exact: Option<Rat>,
    float: f64,
}

/// A parsed graph file holding both views of the same matrix.
#[derive(Clone, Debug)]
pub struct GraphInput {
    n: usize,
    source_format: SourceFormat,
    entries: Vec<Entry>,
}

impl GraphInput {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn source_format(&self) -> SourceFormat {
        self.source_format
    }

    /// Dense exact matrix; fails on any entry that only has a float view.
    pub fn to_exact(&self) -> Result<MatQ> {
        let mut m: MatQ = Mat::zero(self.n);
        for e in &self.entries {
            let Some(exact) = &e.exact else {
                return Err(Error::Parse {
                    line: e.line,
                    col: e.col_pos,
                    msg: "float literal in exact mode; pass --rationalize-denominator-limit to opt in".into(),
                });
            };
            let v = m[(e.row, e.col)].clone() + exact.clone();
            m[(e.row, e.col)] = v;
        }
        Ok(m)
    }

    /// Sparse float matrix (duplicates summed during construction).
    pub fn to_sparse(&self) -> Result<SparseMatF> {
        let triplets: Vec<(usize, usize, f64)> = self
            .entries
            .iter()
            .map(|e| (e.row, e.col, e.float))
            .collect();
        SparseMat::from_triplets(self.n, &triplets)
    }
}

/// Parses one graph file.
pub fn parse_graph(
    text: &str,
    format: GraphFormat,
    rationalize_limit: Option<u64>,
) -> Result<GraphInput> {
    let format = match format {
        GraphFormat::Auto => sniff(text),
        GraphFormat::EdgeList => SourceFormat::EdgeList,
        GraphFormat::MatrixMarket => SourceFormat::MatrixMarket,
        GraphFormat::DenseText => SourceFormat::DenseText,
    };
    match format {
        SourceFormat::EdgeList => parse_edge_list(text, rationalize_limit),
        SourceFormat::MatrixMarket => parse_matrix_market(text, rationalize_limit),
        SourceFormat::DenseText => parse_dense(text, rationalize_limit),
    }
}

fn sniff(text: &str) -> SourceFormat {
    for line in text.lines() {
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if trimmed.starts_with("%%MatrixMarket") {
            return SourceFormat::MatrixMarket;
        }
        break;
    }
    // a square grid of tokens reads as a dense matrix, anything else as edges
    let rows: Vec<usize> = content_lines(text)
        .map(|(_, line)| tokenize(line).len())
        .collect();
    let n = rows.len();
    if n > 0 && rows.iter().all(|&w| w == n) {
        SourceFormat::DenseText
    } else {
        SourceFormat::EdgeList
    }
}

/// Non-empty lines with `#` comments stripped, keeping 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            None
        } else {
            Some((i + 1, line))
        }
    })
}

/// Whitespace-separated tokens with their 1-based starting columns.
fn tokenize(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start: Option<usize> = None;
    for (i, ch) in line
        .char_indices()
        .chain(std::iter::once((line.len(), ' ')))
    {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s + 1, &line[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    out
}

fn parse_err(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        col,
        msg: msg.into(),
    }
}

/// Parses one numeric token into its dual views.
fn parse_value(
    token: &str,
    line: usize,
    col: usize,
    rationalize_limit: Option<u64>,
) -> Result<(Option<Rat>, f64)> {
    if token.contains('/') {
        let rat: Rat = token
            .parse()
            .map_err(|_| parse_err(line, col, format!("malformed rational '{token}'")))?;
        let float = rat
            .to_f64()
            .ok_or_else(|| parse_err(line, col, format!("rational '{token}' overflows f64")))?;
        return Ok((Some(rat), float));
    }
    if let Ok(int) = token.parse::<BigInt>() {
        let rat = Rat::from_integer(int);
        let float = rat
            .to_f64()
            .ok_or_else(|| parse_err(line, col, format!("integer '{token}' overflows f64")))?;
        return Ok((Some(rat), float));
    }
    let float: f64 = token
        .parse()
        .map_err(|_| parse_err(line, col, format!("unrecognized numeric token '{token}'")))?;
    if !float.is_finite() {
        return Err(parse_err(line, col, format!("non-finite value '{token}'")));
    }
    let exact = rationalize_limit.map(|limit| limit_denominator(float, limit));
    Ok((exact, float))
}

fn parse_index(token: &str, line: usize, col: usize, what: &str) -> Result<usize> {
    token
        .parse()
        .map_err(|_| parse_err(line, col, format!("malformed {what} index '{token}'")))
}

fn parse_edge_list(text: &str, rationalize_limit: Option<u64>) -> Result<GraphInput> {
    let mut entries = Vec::new();
    let mut max_index = None::<usize>;
    for (line_no, line) in content_lines(text) {
        let tokens = tokenize(line);
        if tokens.len() != 2 && tokens.len() != 3 {
            return Err(parse_err(
                line_no,
                tokens.first().map_or(1, |t| t.0),
                format!("expected 'src dst [weight]', found {} tokens", tokens.len()),
            ));
        }
        let src = parse_index(tokens[0].1, line_no, tokens[0].0, "source")?;
        let dst = parse_index(tokens[1].1, line_no, tokens[1].0, "destination")?;
        let (col_pos, exact, float) = match tokens.get(2) {
            Some(&(col, tok)) => {
                let (exact, float) = parse_value(tok, line_no, col, rationalize_limit)?;
                (col, exact, float)
            }
            None => (tokens[1].0, Some(Rat::from_integer(1.into())), 1.0),
        };
        max_index = Some(max_index.map_or(src.max(dst), |m| m.max(src).max(dst)));
        entries.push(Entry {
            row: dst,
            col: src,
            line: line_no,
            col_pos,
            exact,
            float,
        });
    }
    let n = max_index.map(|m| m + 1).ok_or(Error::ZeroDimension)?;
    Ok(GraphInput {
        n,
        source_format: SourceFormat::EdgeList,
        entries,
    })
}

fn parse_matrix_market(text: &str, rationalize_limit: Option<u64>) -> Result<GraphInput> {
    let mut lines = text.lines().enumerate();
    let Some((_, header)) = lines.next() else {
        return Err(parse_err(1, 1, "empty file"));
    };
    let header_fields: Vec<&str> = header.split_whitespace().collect();
    if header_fields.len() < 5
        || header_fields[0] != "%%MatrixMarket"
        || header_fields[1] != "matrix"
        || header_fields[2] != "coordinate"
    {
        return Err(parse_err(
            1,
            1,
            "expected '%%MatrixMarket matrix coordinate <field> general' header",
        ));
    }
    let field = header_fields[3];
    if field != "integer" && field != "real" {
        return Err(parse_err(
            1,
            1,
            format!("unsupported field '{field}' (only integer and real)"),
        ));
    }
    if header_fields[4] != "general" {
        return Err(parse_err(
            1,
            1,
            format!("unsupported symmetry '{}' (only general)", header_fields[4]),
        ));
    }

    let mut data = lines.filter_map(|(i, line)| {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('%') {
            None
        } else {
            Some((i + 1, line))
        }
    });

    let Some((size_line_no, size_line)) = data.next() else {
        return Err(parse_err(1, 1, "missing size line"));
    };
    let size_tokens = tokenize(size_line);
    if size_tokens.len() != 3 {
        return Err(parse_err(
            size_line_no,
            size_tokens.first().map_or(1, |t| t.0),
            "size line must read 'rows cols nnz'",
        ));
    }
    let rows: usize = parse_index(size_tokens[0].1, size_line_no, size_tokens[0].0, "row count")?;
    let cols: usize = parse_index(size_tokens[1].1, size_line_no, size_tokens[1].0, "col count")?;
    let nnz: usize = parse_index(size_tokens[2].1, size_line_no, size_tokens[2].0, "entry count")?;
    if rows != cols {
        return Err(parse_err(
            size_line_no,
            size_tokens[0].0,
            format!("matrix must be square, got {rows} x {cols}"),
        ));
    }
    if rows == 0 {
        return Err(Error::ZeroDimension);
    }

    let mut entries = Vec::with_capacity(nnz);
    for (line_no, line) in data {
        let tokens = tokenize(line);
        if tokens.len() != 3 {
            return Err(parse_err(
                line_no,
                tokens.first().map_or(1, |t| t.0),
                "entry line must read 'i j value'",
            ));
        }
        let i = parse_index(tokens[0].1, line_no, tokens[0].0, "row")?;
        let j = parse_index(tokens[1].1, line_no, tokens[1].0, "column")?;
        if i == 0 || j == 0 || i > rows || j > rows {
            return Err(parse_err(
                line_no,
                tokens[0].0,
                format!("entry ({i}, {j}) outside 1..={rows}"),
            ));
        }
        if field == "integer" && tokens[2].1.parse::<BigInt>().is_err() {
            return Err(parse_err(
                line_no,
                tokens[2].0,
                format!("field is integer but value is '{}'", tokens[2].1),
            ));
        }
        let (exact, float) = parse_value(tokens[2].1, line_no, tokens[2].0, rationalize_limit)?;
        entries.push(Entry {
            row: i - 1,
            col: j - 1,
            line: line_no,
            col_pos: tokens[2].0,
            exact,
            float,
        });
    }
    if entries.len() != nnz {
        return Err(parse_err(
            1,
            1,
            format!("size line promised {} entries, found {}", nnz, entries.len()),
        ));
    }
    Ok(GraphInput {
        n: rows,
        source_format: SourceFormat::MatrixMarket,
        entries,
    })
}

fn parse_dense(text: &str, rationalize_limit: Option<u64>) -> Result<GraphInput> {
    let rows: Vec<(usize, &str)> = content_lines(text).collect();
    let n = rows.len();
    if n == 0 {
        return Err(Error::ZeroDimension);
    }
    let mut entries = Vec::with_capacity(n * n);
    for (r, (line_no, line)) in rows.into_iter().enumerate() {
        let tokens = tokenize(line);
        if tokens.len() != n {
            return Err(parse_err(
                line_no,
                tokens.first().map_or(1, |t| t.0),
                format!("expected {n} entries in row, found {}", tokens.len()),
            ));
        }
        for (c, (col, tok)) in tokens.into_iter().enumerate() {
            let (exact, float) = parse_value(tok, line_no, col, rationalize_limit)?;
            entries.push(Entry {
                row: r,
                col: c,
                line: line_no,
                col_pos: col,
                exact,
                float,
            });
        }
    }
    Ok(GraphInput {
        n,
        source_format: SourceFormat::DenseText,
        entries,
    })
}

/// Best rational approximation of `x` with denominator at most `max_den`,
/// by walking the continued-fraction convergents of the exact binary value.
pub fn limit_denominator(x: f64, max_den: u64) -> Rat {
    let max_den = BigInt::from(max_den.max(1));
    let exact = Rat::from_f64(x).expect("finite float");
    if exact.denom() <= &max_den {
        return exact;
    }
    let (mut p0, mut q0, mut p1, mut q1) = (
        BigInt::zero(),
        BigInt::from(1),
        BigInt::from(1),
        BigInt::zero(),
    );
    let mut n = exact.numer().clone();
    let mut d = exact.denom().clone();
    loop {
        let a = n.div_floor(&d);
        let q2 = &q0 + &a * &q1;
        if q2 > max_den {
            break;
        }
        let p2 = &p0 + &a * &p1;
        p0 = std::mem::replace(&mut p1, p2);
        q0 = std::mem::replace(&mut q1, q2);
        let r = &n - &a * &d;
        n = std::mem::replace(&mut d, r);
        if d.is_zero() {
            return Rat::new(p1, q1);
        }
    }
    let k = (&max_den - &q0).div_floor(&q1);
    let bound1 = Rat::new(&p0 + &k * &p1, &q0 + &k * &q1);
    let bound2 = Rat::new(p1, q1);
    if (&bound2 - &exact).abs() <= (&bound1 - &exact).abs() {
        bound2
    } else {
        bound1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rat {
        Rat::from_integer(n.into())
    }

    #[test]
    fn dense_text_round_trip() {
        let input = parse_graph("0 1 1\n0 0 0\n0 0 0\n", GraphFormat::Auto, None).unwrap();
        assert_eq!(input.source_format(), SourceFormat::DenseText);
        let m = input.to_exact().unwrap();
        assert_eq!(m[(0, 1)], q(1));
        assert_eq!(m[(0, 2)], q(1));
        assert_eq!(m[(1, 1)], q(0));
    }

    #[test]
    fn edge_list_orientation_and_default_weight() {
        // cycle 0 -> 1 -> 2 -> 0 lands weights at A[dst][src]
        let input = parse_graph("0 1\n1 2\n2 0\n", GraphFormat::EdgeList, None).unwrap();
        let m = input.to_exact().unwrap();
        assert_eq!(m[(1, 0)], q(1));
        assert_eq!(m[(2, 1)], q(1));
        assert_eq!(m[(0, 2)], q(1));
        assert_eq!(input.n(), 3);
    }

    #[test]
    fn edge_list_sniffed_when_grid_not_square() {
        let input = parse_graph("1 0 1\n2 0 1\n", GraphFormat::Auto, None).unwrap();
        assert_eq!(input.source_format(), SourceFormat::EdgeList);
        let m = input.to_exact().unwrap();
        assert_eq!(m[(0, 1)], q(1));
        assert_eq!(m[(0, 2)], q(1));
    }

    #[test]
    fn comments_and_rational_weights() {
        let text = "# a half edge\n0 1 1/2\n";
        let m = parse_graph(text, GraphFormat::Auto, None)
            .unwrap()
            .to_exact()
            .unwrap();
        assert_eq!(m[(1, 0)], Rat::new(1.into(), 2.into()));
    }

    #[test]
    fn duplicate_edges_are_summed() {
        let input = parse_graph("0 1 2\n0 1 3\n", GraphFormat::EdgeList, None).unwrap();
        assert_eq!(input.to_exact().unwrap()[(1, 0)], q(5));
        let sparse = input.to_sparse().unwrap();
        assert_eq!(sparse.nnz(), 1);
    }

    #[test]
    fn matrix_market_integer() {
        let text = "%%MatrixMarket matrix coordinate integer general\n% comment\n3 3 2\n1 2 1\n1 3 1\n";
        let input = parse_graph(text, GraphFormat::Auto, None).unwrap();
        assert_eq!(input.source_format(), SourceFormat::MatrixMarket);
        let m = input.to_exact().unwrap();
        assert_eq!(m[(0, 1)], q(1));
        assert_eq!(m[(0, 2)], q(1));
    }

    #[test]
    fn matrix_market_rejects_non_square_and_bad_fields() {
        let bad = "%%MatrixMarket matrix coordinate integer general\n2 3 0\n";
        assert!(matches!(
            parse_graph(bad, GraphFormat::Auto, None),
            Err(Error::Parse { .. })
        ));
        let pattern = "%%MatrixMarket matrix coordinate pattern general\n2 2 0\n";
        assert!(parse_graph(pattern, GraphFormat::Auto, None).is_err());
    }

    #[test]
    fn float_rejected_in_exact_mode_with_position() {
        let input = parse_graph("0 1 0.5\n", GraphFormat::EdgeList, None).unwrap();
        match input.to_exact() {
            Err(Error::Parse { line, col, .. }) => {
                assert_eq!(line, 1);
                assert_eq!(col, 5);
            }
            other => panic!("expected positioned parse error, got {other:?}"),
        }
        // the float view still works
        assert_eq!(input.to_sparse().unwrap().nnz(), 1);
    }

    #[test]
    fn rationalize_limit_opts_in() {
        let input = parse_graph("0 1 0.5\n", GraphFormat::EdgeList, Some(64)).unwrap();
        assert_eq!(input.to_exact().unwrap()[(1, 0)], Rat::new(1.into(), 2.into()));
    }

    #[test]
    fn limit_denominator_walks_convergents() {
        let pi_ish = limit_denominator(std::f64::consts::PI, 10);
        assert_eq!(pi_ish, Rat::new(22.into(), 7.into()));
        let pi_better = limit_denominator(std::f64::consts::PI, 1000);
        assert_eq!(pi_better, Rat::new(355.into(), 113.into()));
        assert_eq!(limit_denominator(0.25, 100), Rat::new(1.into(), 4.into()));
        assert_eq!(limit_denominator(-1.5, 10), Rat::new((-3).into(), 2.into()));
    }

    #[test]
    fn zero_dimension_inputs_are_rejected() {
        assert_eq!(
            parse_graph("", GraphFormat::EdgeList, None).unwrap_err(),
            Error::ZeroDimension
        );
        assert_eq!(
            parse_graph("# only comments\n", GraphFormat::DenseText, None).unwrap_err(),
            Error::ZeroDimension
        );
    }

    #[test]
    fn malformed_tokens_report_positions() {
        match parse_graph("0 0 oops\n", GraphFormat::EdgeList, None) {
            Err(Error::Parse { line: 1, col: 5, .. }) => {}
            other => panic!("expected parse error at 1:5, got {other:?}"),
        }
        match parse_graph("1 x\n", GraphFormat::EdgeList, None) {
            Err(Error::Parse { line: 1, col: 3, .. }) => {}
            other => panic!("expected parse error at 1:3, got {other:?}"),
        }
    }
}
