//! Weighted directed graphs, the canonical cycle generators, and file I/O.
//!
//! Edge-list format: one `src dst weight` triple per line, 0-indexed, `#`
//! starts a comment. [`save_edge_list`] writes a `# nodes N` header so that
//! isolated trailing nodes survive a round trip; without it the node count is
//! one past the largest index seen. Repeated edges accumulate.
//!
//! Matrix Market: `coordinate` storage with `real`, `integer` or `pattern`
//! fields and `general` or `symmetric` symmetry, 1-indexed.

use std::fs;
use std::io::Write;
use std::path::Path;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;
use crate::scalar::Real;

/// Dense weighted digraph, `A[i][j] = w(i, j) ≥ 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct DirectedGraph<T> {
    n: usize,
    weights: Vec<T>,
}

/// Row sums of the adjacency.
#[derive(Debug, Clone, PartialEq)]
pub struct OutDegrees<T> {
    pub degrees: Vec<T>,
}

impl<T: Real> OutDegrees<T> {
    /// First node with zero out-degree, if any.
    pub fn first_sink(&self) -> Option<usize> {
        self.degrees.iter().position(|&d| d <= T::zero())
    }
}

impl<T: Real> DirectedGraph<T> {
    /// Graph from a row-major `n×n` weight table.
    pub fn from_weights(n: usize, weights: Vec<T>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidSize("graph needs at least one node".into()));
        }
        if weights.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: format!("{} weights", n * n),
                found: format!("{} weights", weights.len()),
            });
        }
        if let Some(pos) = weights.iter().position(|w| !w.is_finite() || *w < T::zero()) {
            return Err(Error::InvalidParameter(format!(
                "weight ({}, {}) must be finite and nonnegative",
                pos / n,
                pos % n
            )));
        }
        Ok(Self { n, weights })
    }

    pub fn from_rows(rows: &[Vec<T>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidSize("adjacency rows must form a square table".into()));
        }
        Self::from_weights(n, rows.iter().flatten().copied().collect())
    }

    pub fn empty(n: usize) -> Result<Self> {
        Self::from_weights(n, vec![T::zero(); n * n])
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn weight(&self, i: usize, j: usize) -> T {
        self.weights[i * self.n + j]
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    /// Adjacency as a (real-valued) dense complex matrix.
    pub fn adjacency(&self) -> DenseMatrix<T> {
        DenseMatrix::from_fn(self.n, self.n, |i, j| Complex::new(self.weight(i, j), T::zero()))
    }

    pub fn out_degrees(&self) -> OutDegrees<T> {
        OutDegrees {
            degrees: self.weights.chunks(self.n).map(|row| row.iter().fold(T::zero(), |a, &b| a + b)).collect(),
        }
    }

    /// Nonzero edges in row-major order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, T)> + '_ {
        self.weights
            .iter()
            .enumerate()
            .filter(|(_, &w)| w != T::zero())
            .map(move |(pos, &w)| (pos / self.n, pos % self.n, w))
    }

    fn check_node(&self, node: usize) -> Result<()> {
        if node < self.n {
            Ok(())
        } else {
            Err(Error::InvalidNode { node, n: self.n })
        }
    }

    fn add_weight(&mut self, i: usize, j: usize, w: T) {
        self.weights[i * self.n + j] += w;
    }
}

fn check_cycle_size(n: usize) -> Result<()> {
    if n < 3 {
        Err(Error::InvalidSize(format!("cycle needs n >= 3, got {n}")))
    } else {
        Ok(())
    }
}

/// `A[i][(i+1) mod n] = A[(i+1) mod n][i] = 1`.
pub fn undirected_cycle<T: Real>(n: usize) -> Result<DirectedGraph<T>> {
    check_cycle_size(n)?;
    let mut g = DirectedGraph::empty(n)?;
    for i in 0..n {
        let j = (i + 1) % n;
        g.weights[i * n + j] = T::one();
        g.weights[j * n + i] = T::one();
    }
    Ok(g)
}

/// `A[i][(i+1) mod n] = 1`: the cyclic shift.
pub fn directed_cycle<T: Real>(n: usize) -> Result<DirectedGraph<T>> {
    check_cycle_size(n)?;
    let mut g = DirectedGraph::empty(n)?;
    for i in 0..n {
        g.weights[i * n + (i + 1) % n] = T::one();
    }
    Ok(g)
}

/// Copy of `g` with `eps` added to `A[i][j]`.
pub fn add_directed_chord<T: Real>(g: &DirectedGraph<T>, eps: T, i: usize, j: usize) -> Result<DirectedGraph<T>> {
    g.check_node(i)?;
    g.check_node(j)?;
    if i == j {
        return Err(Error::InvalidParameter(format!("chord endpoints must differ, got {i} -> {j}")));
    }
    if !eps.is_finite() || eps < T::zero() {
        return Err(Error::InvalidParameter(format!("chord weight must be nonnegative, got {eps}")));
    }
    let mut out = g.clone();
    out.add_weight(i, j, eps);
    Ok(out)
}

/// Directed cycle on `n` nodes with a chord `0 → n/2` of weight `eps`.
pub fn perturbed_cycle<T: Real>(n: usize, eps: T) -> Result<DirectedGraph<T>> {
    add_directed_chord(&directed_cycle(n)?, eps, 0, n / 2)
}

pub fn write_edge_list<T: Real>(g: &DirectedGraph<T>, mut out: impl Write) -> Result<()> {
    writeln!(out, "# nodes {}", g.n)?;
    for (i, j, w) in g.edges() {
        writeln!(out, "{i} {j} {w}")?;
    }
    Ok(())
}

pub fn save_edge_list<T: Real>(g: &DirectedGraph<T>, path: impl AsRef<Path>) -> Result<()> {
    let mut buf = Vec::new();
    write_edge_list(g, &mut buf)?;
    fs::write(path, buf)?;
    Ok(())
}

pub fn load_edge_list<T: Real>(path: impl AsRef<Path>) -> Result<DirectedGraph<T>> {
    parse_edge_list(&fs::read_to_string(path)?)
}

pub fn parse_edge_list<T: Real>(text: &str) -> Result<DirectedGraph<T>> {
    let mut declared: Option<usize> = None;
    let mut edges: Vec<(usize, usize, T, usize)> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let trimmed = raw.trim();
        if let Some(comment) = trimmed.strip_prefix('#') {
            let mut parts = comment.split_whitespace();
            if parts.next() == Some("nodes") {
                let n = parts
                    .next()
                    .and_then(|s| s.parse::<usize>().ok())
                    .ok_or_else(|| parse_err(line, "malformed '# nodes N' header"))?;
                declared = Some(n);
            }
            continue;
        }
        let content = trimmed.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(parse_err(line, &format!("expected 'src dst weight', got {content:?}")));
        }
        let src = parse_index(fields[0], line)?;
        let dst = parse_index(fields[1], line)?;
        let w: T = fields[2].parse().map_err(|_| parse_err(line, &format!("bad weight {:?}", fields[2])))?;
        if !w.is_finite() || w < T::zero() {
            return Err(parse_err(line, &format!("weight must be finite and nonnegative, got {}", fields[2])));
        }
        edges.push((src, dst, w, line));
    }
    let inferred = edges.iter().map(|&(i, j, _, _)| i.max(j) + 1).max().unwrap_or(0);
    let n = match declared {
        Some(n) => {
            if let Some(&(_, _, _, line)) = edges.iter().find(|e| e.0.max(e.1) >= n) {
                return Err(parse_err(line, &format!("edge index exceeds declared node count {n}")));
            }
            n
        }
        None => inferred,
    };
    if n == 0 {
        return Err(Error::Parse { line: 0, message: "edge list contains no nodes".into() });
    }
    let mut g = DirectedGraph::empty(n)?;
    for (i, j, w, _) in edges {
        g.add_weight(i, j, w);
    }
    Ok(g)
}

pub fn load_matrix_market<T: Real>(path: impl AsRef<Path>) -> Result<DirectedGraph<T>> {
    parse_matrix_market(&fs::read_to_string(path)?)
}

pub fn parse_matrix_market<T: Real>(text: &str) -> Result<DirectedGraph<T>> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or_else(|| parse_err(1, "empty file"))?;
    let tokens: Vec<String> = header.split_whitespace().map(str::to_ascii_lowercase).collect();
    if tokens.len() != 5 || tokens[0] != "%%matrixmarket" || tokens[1] != "matrix" {
        return Err(parse_err(1, "expected '%%MatrixMarket matrix coordinate <field> <symmetry>'"));
    }
    if tokens[2] != "coordinate" {
        return Err(parse_err(1, "only coordinate storage is supported"));
    }
    let pattern = match tokens[3].as_str() {
        "real" | "integer" | "double" => false,
        "pattern" => true,
        other => return Err(parse_err(1, &format!("unsupported field {other:?}"))),
    };
    let symmetric = match tokens[4].as_str() {
        "general" => false,
        "symmetric" => true,
        other => return Err(parse_err(1, &format!("unsupported symmetry {other:?}"))),
    };

    let mut size: Option<(usize, usize)> = None;
    let mut graph: Option<DirectedGraph<T>> = None;
    let mut seen = 0usize;
    for (idx, raw) in lines {
        let line = idx + 1;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('%') {
            continue;
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        match size {
            None => {
                if fields.len() != 3 {
                    return Err(parse_err(line, "expected size line 'rows cols nnz'"));
                }
                let rows = parse_count(fields[0], line)?;
                let cols = parse_count(fields[1], line)?;
                let nnz = parse_count(fields[2], line)?;
                if rows != cols || rows == 0 {
                    return Err(parse_err(line, &format!("adjacency must be square and nonempty, got {rows}x{cols}")));
                }
                size = Some((rows, nnz));
                graph = Some(DirectedGraph::empty(rows)?);
            }
            Some((n, _)) => {
                let expected = if pattern { 2 } else { 3 };
                if fields.len() != expected {
                    return Err(parse_err(line, &format!("expected {expected} fields, got {}", fields.len())));
                }
                let i = parse_count(fields[0], line)?;
                let j = parse_count(fields[1], line)?;
                if i == 0 || j == 0 || i > n || j > n {
                    return Err(parse_err(line, &format!("index ({i}, {j}) outside 1..={n}")));
                }
                let w: T = if pattern {
                    T::one()
                } else {
                    fields[2].parse().map_err(|_| parse_err(line, &format!("bad value {:?}", fields[2])))?
                };
                if !w.is_finite() || w < T::zero() {
                    return Err(parse_err(line, "edge weights must be finite and nonnegative"));
                }
                let g = graph.as_mut().unwrap();
                g.add_weight(i - 1, j - 1, w);
                if symmetric && i != j {
                    g.add_weight(j - 1, i - 1, w);
                }
                seen += 1;
            }
        }
    }
    let (_, nnz) = size.ok_or_else(|| parse_err(0, "missing size line"))?;
    if seen != nnz {
        return Err(Error::Parse { line: 0, message: format!("header declares {nnz} entries, found {seen}") });
    }
    Ok(graph.unwrap())
}

pub fn write_matrix_market<T: Real>(g: &DirectedGraph<T>, mut out: impl Write) -> Result<()> {
    let edges: Vec<_> = g.edges().collect();
    writeln!(out, "%%MatrixMarket matrix coordinate real general")?;
    writeln!(out, "{} {} {}", g.n, g.n, edges.len())?;
    for (i, j, w) in edges {
        writeln!(out, "{} {} {w}", i + 1, j + 1)?;
    }
    Ok(())
}

pub fn save_matrix_market<T: Real>(g: &DirectedGraph<T>, path: impl AsRef<Path>) -> Result<()> {
    let mut buf = Vec::new();
    write_matrix_market(g, &mut buf)?;
    fs::write(path, buf)?;
    Ok(())
}

fn parse_err(line: usize, message: &str) -> Error {
    Error::Parse { line, message: message.to_string() }
}

fn parse_index(s: &str, line: usize) -> Result<usize> {
    s.parse().map_err(|_| parse_err(line, &format!("bad node index {s:?}")))
}

fn parse_count(s: &str, line: usize) -> Result<usize> {
    s.parse().map_err(|_| parse_err(line, &format!("bad integer {s:?}")))
}
