//! Edge lists and distance matrices.

use std::fmt::Write as _;
use std::path::Path;

use oscsolve_core::{DistanceMatrix, Graph};

use crate::error::{Result, ShellError};

fn parse_err(line: usize, message: impl Into<String>) -> ShellError {
    ShellError::Parse { line, message: message.into() }
}

/// Reads the G-set style edge list: a header `n m`, then `m` lines `i j [w]`
/// with 1-based nodes. Lines starting with `%` or `#` are skipped.
///
/// Weights are read as magnitudes. Without `weighted` every edge gets weight 1.
pub fn parse_edge_list(text: &str, weighted: bool) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('%') && !l.starts_with('#'));
    let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "missing header `n m`"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 2 {
        return Err(parse_err(hline, "header must be `n m`"));
    }
    let n: usize = fields[0].parse().map_err(|_| parse_err(hline, "node count is not an integer"))?;
    let m: usize = fields[1].parse().map_err(|_| parse_err(hline, "edge count is not an integer"))?;
    let mut edges = Vec::with_capacity(m);
    for (line, text) in lines {
        let f: Vec<&str> = text.split_whitespace().collect();
        if f.len() != 2 && f.len() != 3 {
            return Err(parse_err(line, "expected `i j` or `i j w`"));
        }
        let node = |s: &str| -> Result<usize> {
            let v: usize = s.parse().map_err(|_| parse_err(line, format!("bad node index `{s}`")))?;
            if v == 0 || v > n {
                return Err(parse_err(line, format!("node {v} outside 1..={n}")));
            }
            Ok(v - 1)
        };
        let (i, j) = (node(f[0])?, node(f[1])?);
        let w: f64 = match f.get(2) {
            Some(s) => s.parse().map_err(|_| parse_err(line, format!("bad weight `{s}`")))?,
            None => 1.0,
        };
        if !w.is_finite() {
            return Err(parse_err(line, "weight must be finite"));
        }
        if w == 0.0 {
            return Err(parse_err(line, "zero weight"));
        }
        let w = if weighted { w.abs() } else { 1.0 };
        edges.push((i, j, w));
    }
    if edges.len() != m {
        return Err(ShellError::EdgeCount { declared: m, found: edges.len() });
    }
    Ok(Graph::new(n, &edges)?)
}

/// Writes a graph in the format read by [`parse_edge_list`].
pub fn format_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.node_count(), g.edge_count());
    for &(i, j, w) in g.edges() {
        let _ = writeln!(out, "{} {} {}", i + 1, j + 1, w);
    }
    out
}

/// Reads a square CSV matrix. Blank lines and `#` comments are skipped.
pub fn parse_distance_matrix(text: &str) -> Result<DistanceMatrix> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line() as usize);
            parse_err(line, e.to_string())
        })?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        let row = record
            .iter()
            .map(|s| s.parse::<f64>().map_err(|_| parse_err(line, format!("bad number `{s}`"))))
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    Ok(DistanceMatrix::from_rows(&rows)?)
}

pub fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| ShellError::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle() {
        let g = parse_edge_list("3 3\n1 2 1\n2 3 1\n1 3 1\n", false).unwrap();
        assert_eq!(g, Graph::complete(3));
    }

    #[test]
    fn comments_and_missing_weights() {
        let g = parse_edge_list("% gset\n# note\n\n2 1\n1 2\n", false).unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn count_mismatch() {
        let err = parse_edge_list("3 3\n1 2 1\n2 3 1\n", false).unwrap_err();
        assert!(matches!(err, ShellError::EdgeCount { declared: 3, found: 2 }));
    }

    #[test]
    fn malformed_line_reports_its_number() {
        let err = parse_edge_list("3 2\n1 2 1\n2 x 1\n", false).unwrap_err();
        assert!(matches!(err, ShellError::Parse { line: 3, .. }), "{err}");
        let err = parse_edge_list("3 1\n1 4 1\n", false).unwrap_err();
        assert!(matches!(err, ShellError::Parse { line: 2, .. }));
    }

    #[test]
    fn weights_are_clamped_unless_weighted() {
        let g = parse_edge_list("2 1\n1 2 -3\n", false).unwrap();
        assert_eq!(g.edges()[0].2, 1.0);
        let g = parse_edge_list("2 1\n1 2 -3\n", true).unwrap();
        assert_eq!(g.edges()[0].2, 3.0);
    }

    #[test]
    fn edge_list_round_trip() {
        let g = Graph::mobius_ladder(8).unwrap();
        assert_eq!(parse_edge_list(&format_edge_list(&g), false).unwrap(), g);
    }

    #[test]
    fn matrices() {
        let d = parse_distance_matrix("0,5\n5,0\n").unwrap();
        assert_eq!(d.get(1, 0), 5.0);
        assert!(parse_distance_matrix("0.1,1\n1,0\n").is_err());
        assert!(parse_distance_matrix("0,1\n2,0\n").is_err());
        assert!(parse_distance_matrix("0,1\n1\n").is_err());
        assert!(parse_distance_matrix("0,-1\n-1,0\n").is_err());
    }
}
