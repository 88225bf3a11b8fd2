//! Simple digraphs and graphs, their derived structures (subdivision,
//! line digraph/graph) and standard matrices.
//!
//! Vertices are 0-indexed. Arcs are kept sorted lexicographically by
//! (tail, head); this fixed ordering is the arc ordering e_1,…,e_m used by
//! incidence matrices and by corona copy indexing, so that assembled
//! product matrices match their block forms without permutation.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Digraph {
    n: usize,
    arcs: Vec<(usize, usize)>,
}

/// Matrix kinds attached to a digraph.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum DigraphMatrixKind {
    Adjacency,
    /// L = D_out − A
    Laplacian,
    /// Q = D_out + A
    SignlessLaplacian,
    OutDegree,
    InDegree,
    /// n×m, marks each arc's head
    InIncidence,
    /// n×m, marks each arc's tail
    OutIncidence,
}

impl Digraph {
    /// Builds a digraph on `n` vertices from an arc list; arcs are sorted
    /// into canonical order and validated.
    pub fn new(n: usize, arcs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParams("digraph needs at least one vertex".into()));
        }
        let mut arcs: Vec<(usize, usize)> = arcs.into_iter().collect();
        for &(u, v) in &arcs {
            if u >= n {
                return Err(Error::VertexOutOfRange { vertex: u, n });
            }
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            if u == v {
                return Err(Error::LoopArc(u));
            }
        }
        arcs.sort_unstable();
        if let Some(w) = arcs.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateArc(w[0].0, w[0].1));
        }
        Ok(Digraph { n, arcs })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.arcs.len()
    }

    /// Arcs in canonical (tail, head) order.
    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.arcs.binary_search(&(u, v)).is_ok()
    }

    pub fn out_degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for &(u, _) in &self.arcs {
            d[u] += 1;
        }
        d
    }

    pub fn in_degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for &(_, v) in &self.arcs {
            d[v] += 1;
        }
        d
    }

    /// δ⁺: minimum out-degree.
    pub fn min_out_degree(&self) -> usize {
        self.out_degrees().into_iter().min().unwrap_or(0)
    }

    /// δ⁻: minimum in-degree.
    pub fn min_in_degree(&self) -> usize {
        self.in_degrees().into_iter().min().unwrap_or(0)
    }

    pub fn is_out_regular(&self, r: usize) -> bool {
        self.out_degrees().iter().all(|&d| d == r)
    }

    /// The common out-degree, when one exists.
    pub fn out_regularity(&self) -> Option<usize> {
        let d = self.out_degrees();
        let r = d[0];
        d.iter().all(|&x| x == r).then_some(r)
    }

    /// Strong connectivity via Kosaraju's two-pass traversal.
    pub fn is_strongly_connected(&self) -> bool {
        let n = self.n;
        if n == 1 {
            return true;
        }
        let mut fwd = vec![Vec::new(); n];
        let mut rev = vec![Vec::new(); n];
        for &(u, v) in &self.arcs {
            fwd[u].push(v);
            rev[v].push(u);
        }
        // one DFS per direction from vertex 0 suffices: strongly connected
        // iff 0 reaches everything in both orientations
        let reachable = |adj: &[Vec<usize>]| {
            let mut seen = vec![false; n];
            let mut stack = vec![0];
            seen[0] = true;
            let mut count = 1;
            while let Some(u) = stack.pop() {
                for &v in &adj[u] {
                    if !seen[v] {
                        seen[v] = true;
                        count += 1;
                        stack.push(v);
                    }
                }
            }
            count == n
        };
        reachable(&fwd) && reachable(&rev)
    }

    /// Replaces each arc by a directed path of length two. The subdivision
    /// vertex of arc e_{j+1} gets id n+j, after all original vertices.
    pub fn subdivision(&self) -> Result<Digraph> {
        if self.arcs.is_empty() {
            return Err(Error::EmptyArcSet);
        }
        let n = self.n;
        let mut arcs = Vec::with_capacity(2 * self.m());
        for (j, &(u, v)) in self.arcs.iter().enumerate() {
            arcs.push((u, n + j));
            arcs.push((n + j, v));
        }
        Digraph::new(n + self.m(), arcs)
    }

    /// One vertex per arc (canonical order); arc j→k iff head(e_{j+1}) =
    /// tail(e_{k+1}).
    pub fn line_digraph(&self) -> Result<Digraph> {
        if self.arcs.is_empty() {
            return Err(Error::EmptyArcSet);
        }
        let mut arcs = Vec::new();
        for (j, &(_, v)) in self.arcs.iter().enumerate() {
            for (k, &(w, _)) in self.arcs.iter().enumerate() {
                if v == w {
                    arcs.push((j, k));
                }
            }
        }
        Digraph::new(self.m(), arcs)
    }

    pub fn adjacency(&self) -> IntMatrix {
        let mut a = IntMatrix::zeros(self.n, self.n);
        for &(u, v) in &self.arcs {
            a.set(u, v, 1);
        }
        a
    }

    pub fn out_degree_matrix(&self) -> IntMatrix {
        let mut d = IntMatrix::zeros(self.n, self.n);
        for (i, deg) in self.out_degrees().into_iter().enumerate() {
            d.set(i, i, deg as i64);
        }
        d
    }

    pub fn in_degree_matrix(&self) -> IntMatrix {
        let mut d = IntMatrix::zeros(self.n, self.n);
        for (i, deg) in self.in_degrees().into_iter().enumerate() {
            d.set(i, i, deg as i64);
        }
        d
    }

    pub fn laplacian(&self) -> IntMatrix {
        self.out_degree_matrix()
            .sub(&self.adjacency())
            .expect("same shape")
    }

    pub fn signless_laplacian(&self) -> IntMatrix {
        self.out_degree_matrix()
            .add(&self.adjacency())
            .expect("same shape")
    }

    /// B_out: n×m, entry (i, j) = 1 iff vertex i is the tail of e_{j+1}.
    pub fn out_incidence(&self) -> Result<IntMatrix> {
        if self.arcs.is_empty() {
            return Err(Error::EmptyArcSet);
        }
        let mut b = IntMatrix::zeros(self.n, self.m());
        for (j, &(u, _)) in self.arcs.iter().enumerate() {
            b.set(u, j, 1);
        }
        Ok(b)
    }

    /// B_in: n×m, entry (i, j) = 1 iff vertex i is the head of e_{j+1}.
    pub fn in_incidence(&self) -> Result<IntMatrix> {
        if self.arcs.is_empty() {
            return Err(Error::EmptyArcSet);
        }
        let mut b = IntMatrix::zeros(self.n, self.m());
        for (j, &(_, v)) in self.arcs.iter().enumerate() {
            b.set(v, j, 1);
        }
        Ok(b)
    }

    pub fn matrix(&self, kind: DigraphMatrixKind) -> Result<IntMatrix> {
        use DigraphMatrixKind::*;
        Ok(match kind {
            Adjacency => self.adjacency(),
            Laplacian => self.laplacian(),
            SignlessLaplacian => self.signless_laplacian(),
            OutDegree => self.out_degree_matrix(),
            InDegree => self.in_degree_matrix(),
            InIncidence => self.in_incidence()?,
            OutIncidence => self.out_incidence()?,
        })
    }

    /// Text format: first line `n m`, then one `tail head` line per arc.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.n, self.m());
        for &(u, v) in &self.arcs {
            let _ = writeln!(s, "{u} {v}");
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let (n, pairs) = parse_pair_lines(text)?;
        Digraph::new(n, pairs)
    }

    /// One-line description used in verification reports.
    pub fn describe(&self) -> String {
        let arcs: Vec<String> = self.arcs.iter().map(|&(u, v)| format!("{u} {v}")).collect();
        format!("{} {}; {}", self.n, self.m(), arcs.join("; "))
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GraphMatrixKind {
    Adjacency,
    /// Q = D + A
    SignlessLaplacian,
    /// n×m vertex-edge incidence
    Incidence,
}

impl Graph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParams("graph needs at least one vertex".into()));
        }
        let mut canon: Vec<(usize, usize)> = Vec::new();
        for (a, b) in edges {
            if a >= n {
                return Err(Error::VertexOutOfRange { vertex: a, n });
            }
            if b >= n {
                return Err(Error::VertexOutOfRange { vertex: b, n });
            }
            if a == b {
                return Err(Error::LoopArc(a));
            }
            canon.push((a.min(b), a.max(b)));
        }
        canon.sort_unstable();
        if let Some(w) = canon.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateArc(w[0].0, w[0].1));
        }
        Ok(Graph { n, edges: canon })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Edges as (u, v) with u < v, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for &(u, v) in &self.edges {
            d[u] += 1;
            d[v] += 1;
        }
        d
    }

    /// New vertex n+j sits on edge e_{j+1}.
    pub fn subdivision(&self) -> Result<Graph> {
        if self.edges.is_empty() {
            return Err(Error::EmptyEdgeSet);
        }
        let n = self.n;
        let mut edges = Vec::with_capacity(2 * self.m());
        for (j, &(u, v)) in self.edges.iter().enumerate() {
            edges.push((u, n + j));
            edges.push((n + j, v));
        }
        Graph::new(n + self.m(), edges)
    }

    /// One vertex per edge; adjacency iff the edges share an endpoint.
    pub fn line_graph(&self) -> Result<Graph> {
        if self.edges.is_empty() {
            return Err(Error::EmptyEdgeSet);
        }
        let mut edges = Vec::new();
        for j in 0..self.m() {
            for k in j + 1..self.m() {
                let (a, b) = self.edges[j];
                let (c, d) = self.edges[k];
                if a == c || a == d || b == c || b == d {
                    edges.push((j, k));
                }
            }
        }
        Graph::new(self.m(), edges)
    }

    pub fn adjacency(&self) -> IntMatrix {
        let mut a = IntMatrix::zeros(self.n, self.n);
        for &(u, v) in &self.edges {
            a.set(u, v, 1);
            a.set(v, u, 1);
        }
        a
    }

    pub fn degree_matrix(&self) -> IntMatrix {
        let mut d = IntMatrix::zeros(self.n, self.n);
        for (i, deg) in self.degrees().into_iter().enumerate() {
            d.set(i, i, deg as i64);
        }
        d
    }

    pub fn signless_laplacian(&self) -> IntMatrix {
        self.degree_matrix().add(&self.adjacency()).expect("same shape")
    }

    /// B(G): n×m, entry (i, j) = 1 iff vertex i is an endpoint of e_{j+1}.
    pub fn incidence(&self) -> Result<IntMatrix> {
        if self.edges.is_empty() {
            return Err(Error::EmptyEdgeSet);
        }
        let mut b = IntMatrix::zeros(self.n, self.m());
        for (j, &(u, v)) in self.edges.iter().enumerate() {
            b.set(u, j, 1);
            b.set(v, j, 1);
        }
        Ok(b)
    }

    pub fn matrix(&self, kind: GraphMatrixKind) -> Result<IntMatrix> {
        use GraphMatrixKind::*;
        Ok(match kind {
            Adjacency => self.adjacency(),
            SignlessLaplacian => self.signless_laplacian(),
            Incidence => self.incidence()?,
        })
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.n, self.m());
        for &(u, v) in &self.edges {
            let _ = writeln!(s, "{u} {v}");
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let (n, pairs) = parse_pair_lines(text)?;
        Graph::new(n, pairs)
    }

    pub fn describe(&self) -> String {
        let edges: Vec<String> = self.edges.iter().map(|&(u, v)| format!("{u} {v}")).collect();
        format!("{} {}; {}", self.n, self.m(), edges.join("; "))
    }
}

fn parse_pair_lines(text: &str) -> Result<(usize, Vec<(usize, usize)>)> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines.next().ok_or_else(|| Error::Parse("empty input".into()))?;
    let mut it = header.split_whitespace();
    let n: usize = parse_token(it.next(), "vertex count")?;
    let m: usize = parse_token(it.next(), "arc count")?;
    if it.next().is_some() {
        return Err(Error::Parse("header must be `n m`".into()));
    }
    let mut pairs = Vec::with_capacity(m);
    for line in lines {
        let mut it = line.split_whitespace();
        let u: usize = parse_token(it.next(), "tail")?;
        let v: usize = parse_token(it.next(), "head")?;
        if it.next().is_some() {
            return Err(Error::Parse(format!("arc line `{line}` has extra fields")));
        }
        pairs.push((u, v));
    }
    if pairs.len() != m {
        return Err(Error::Parse(format!(
            "header declares {m} arcs but {} lines follow",
            pairs.len()
        )));
    }
    Ok((n, pairs))
}

fn parse_token(tok: Option<&str>, what: &str) -> Result<usize> {
    tok.ok_or_else(|| Error::Parse(format!("missing {what}")))?
        .parse()
        .map_err(|_| Error::Parse(format!("bad {what}")))
}
