//! Small simple graphs on at most 64 vertices.
//!
//! Adjacency is one `u64` bitset per vertex. Vertex indices are 0-based.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};

pub const MAX_VERTICES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl Graph {
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices(n));
        }
        Ok(Graph { n, adj: vec![0; n] })
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n)?;
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// `K_{m,n}`: vertices `0..m` on the left, `m..m+n` on the right.
    pub fn complete_bipartite(m: usize, n: usize) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::InvalidParams(format!("complete bipartite sides must be positive, got ({m}, {n})")));
        }
        let mut g = Graph::empty(m + n)?;
        for u in 0..m {
            for v in m..m + n {
                g.add_edge(u, v)?;
            }
        }
        Ok(g)
    }

    pub fn path(n: usize) -> Result<Self> {
        Graph::from_edges(n, (1..n).map(|v| (v - 1, v)))
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidParams(format!("cycle needs 3 vertices, got {n}")));
        }
        Graph::from_edges(n, (0..n).map(|v| (v, (v + 1) % n)))
    }

    /// Vertex-disjoint union; `other` is relabelled after `self`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Self> {
        let n = self.n + other.n;
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices(n));
        }
        let shift = self.n;
        let mut adj = self.adj.clone();
        adj.extend(other.adj.iter().map(|&row| row << shift));
        Ok(Graph { n, adj })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u] >> v & 1 == 1
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if u == v || u >= self.n || v >= self.n || self.has_edge(u, v) {
            return Err(Error::InvalidEdge(u, v));
        }
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
        Ok(())
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if !self.has_edge(u, v) {
            return Err(Error::InvalidEdge(u, v));
        }
        self.adj[u] &= !(1 << v);
        self.adj[v] &= !(1 << u);
        Ok(())
    }

    pub fn degree(&self, v: usize) -> u32 {
        self.adj[v].count_ones()
    }

    pub fn degrees(&self) -> Vec<u32> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn max_degree(&self) -> u32 {
        self.degrees().into_iter().max().unwrap_or(0)
    }

    pub fn neighbor_mask(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        bits(self.adj[v])
    }

    /// All edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n).flat_map(|u| bits(self.adj[u] >> u).map(move |d| (u, u + d))).filter(|&(u, v)| u != v).collect()
    }

    /// Vertex sets of the connected components, each sorted.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = 0u64;
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen >> s & 1 == 1 {
                continue;
            }
            let mut comp = 1u64 << s;
            let mut frontier = comp;
            while frontier != 0 {
                let mut next = 0u64;
                for v in bits(frontier) {
                    next |= self.adj[v];
                }
                frontier = next & !comp;
                comp |= next;
            }
            seen |= comp;
            out.push(bits(comp).collect());
        }
        out
    }

    /// Subgraph induced on `vertices`, relabelled to `0..vertices.len()` in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Result<Graph> {
        let mut g = Graph::empty(vertices.len())?;
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j)?;
                }
            }
        }
        Ok(g)
    }

    /// `Some((m, n))` with `m >= n` when the graph is exactly `K_{m,n}` (no isolated vertices).
    pub fn as_complete_bipartite(&self) -> Option<(usize, usize)> {
        if self.n < 2 || self.components().len() != 1 {
            return None;
        }
        let mut side = vec![None; self.n];
        side[0] = Some(false);
        let mut stack = vec![0];
        while let Some(u) = stack.pop() {
            let s = side[u]?;
            for v in self.neighbors(u) {
                match side[v] {
                    None => {
                        side[v] = Some(!s);
                        stack.push(v);
                    }
                    Some(sv) if sv == s => return None,
                    _ => {}
                }
            }
        }
        let left = side.iter().filter(|s| **s == Some(false)).count();
        let right = self.n - left;
        (self.edge_count() == left * right).then_some((left.max(right), left.min(right)))
    }

    pub fn degree_profile(&self) -> DegreeProfile {
        let deg = self.degrees();
        let mut v = BTreeMap::new();
        for &d in &deg {
            *v.entry(d).or_insert(0) += 1;
        }
        let mut m = BTreeMap::new();
        for (a, b) in self.edges() {
            let (x, y) = (deg[a].min(deg[b]), deg[a].max(deg[b]));
            *m.entry((x, y)).or_insert(0) += 1;
        }
        DegreeProfile { v, m, max_degree: deg.into_iter().max().unwrap_or(0) }
    }

    /// Text form: `"n m"` then one `"u v"` line per edge with `u < v`.
    pub fn to_text(&self) -> String {
        let edges = self.edges();
        let mut s = format!("{} {}\n", self.n, edges.len());
        for (u, v) in edges {
            let _ = writeln!(s, "{u} {v}");
        }
        s
    }

    pub fn parse_text(text: &str) -> Result<Graph> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().ok_or_else(|| Error::Parse("missing header line \"n m\"".into()))?;
        let (n, m) = parse_pair(header)?;
        let mut g = Graph::empty(n)?;
        let mut count = 0;
        for line in lines {
            let (u, v) = parse_pair(line)?;
            g.add_edge(u, v).map_err(|_| Error::Parse(format!("invalid edge line {line:?}")))?;
            count += 1;
        }
        if count != m {
            return Err(Error::Parse(format!("header announces {m} edges, found {count}")));
        }
        Ok(g)
    }

    pub fn read_file(path: &Path) -> Result<Graph> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Graph::parse_text(&text)
    }

    /// Build a graph from a generator spec:
    /// `kbip:M,N`, `union:<spec>+<spec>[+...]`, `file:<path>`,
    /// and the extras `empty:N`, `path:N`, `cycle:N`.
    pub fn from_spec(spec: &str) -> Result<Graph> {
        let spec = spec.trim();
        let (kind, arg) =
            spec.split_once(':').ok_or_else(|| Error::Parse(format!("graph spec needs a kind prefix: {spec:?}")))?;
        match kind {
            "kbip" => {
                let (m, n) =
                    arg.split_once(',').ok_or_else(|| Error::Parse(format!("expected kbip:M,N, got {spec:?}")))?;
                Graph::complete_bipartite(parse_usize(m)?, parse_usize(n)?)
            }
            "union" => {
                let mut parts = arg.split('+');
                let first = parts.next().unwrap_or_default();
                let mut g = Graph::from_spec(first)?;
                for part in parts {
                    g = g.disjoint_union(&Graph::from_spec(part)?)?;
                }
                Ok(g)
            }
            "file" => Graph::read_file(Path::new(arg)),
            "empty" => Graph::empty(parse_usize(arg)?),
            "path" => Graph::path(parse_usize(arg)?),
            "cycle" => Graph::cycle(parse_usize(arg)?),
            _ => Err(Error::Parse(format!("unknown graph kind {kind:?}"))),
        }
    }
}

fn parse_usize(s: &str) -> Result<usize> {
    s.trim().parse().map_err(|_| Error::Parse(format!("expected a nonnegative integer, got {s:?}")))
}

fn parse_pair(line: &str) -> Result<(usize, usize)> {
    let mut it = line.split_whitespace();
    match (it.next(), it.next(), it.next()) {
        (Some(a), Some(b), None) => Ok((parse_usize(a)?, parse_usize(b)?)),
        _ => Err(Error::Parse(format!("expected two integers, got {line:?}"))),
    }
}

pub(crate) fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}

/// Vertex-degree tallies `v[a]` and edge-type tallies `m[(a, b)]` with `a <= b`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DegreeProfile {
    pub v: BTreeMap<u32, usize>,
    pub m: BTreeMap<(u32, u32), usize>,
    pub max_degree: u32,
}

impl DegreeProfile {
    pub fn vertex_count(&self) -> usize {
        self.v.values().sum()
    }

    pub fn edge_count(&self) -> usize {
        self.m.values().sum()
    }

    /// `sum_a a * v[a]`, which equals twice the edge count.
    pub fn degree_sum(&self) -> usize {
        self.v.iter().map(|(&a, &c)| a as usize * c).sum()
    }

    /// Pointwise sum; the profile of a disjoint union.
    pub fn merged(&self, other: &DegreeProfile) -> DegreeProfile {
        let mut out = self.clone();
        for (&a, &c) in &other.v {
            *out.v.entry(a).or_insert(0) += c;
        }
        for (&ab, &c) in &other.m {
            *out.m.entry(ab).or_insert(0) += c;
        }
        out.max_degree = self.max_degree.max(other.max_degree);
        out
    }
}

/// `ex(n, S_t) = floor((t-1) n / 2)`: most edges with maximum degree below `t`.
pub fn star_turan(n: u64, t: u32) -> u64 {
    u64::from(t.saturating_sub(1)) * n / 2
}
