//! Exact counts of `r`-edge-colorings with no vertex carrying `t` edges of one color.

use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_traits::{One, Pow};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::par::{self, Execution};
use crate::params::ForbidParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    Brute,
    Backtrack,
    Dp,
}

impl std::fmt::Display for Engine {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Engine::Brute => "brute",
            Engine::Backtrack => "backtrack",
            Engine::Dp => "dp",
        })
    }
}

#[derive(Debug, Clone)]
pub struct CountOptions {
    /// Largest edge count the backtracking engine accepts.
    pub edge_budget: usize,
    /// Brute force is refused when `r^|E|` exceeds `2^brute_log2_budget`.
    pub brute_log2_budget: f64,
    pub exec: Execution,
}

impl Default for CountOptions {
    fn default() -> Self {
        CountOptions { edge_budget: 40, brute_log2_budget: 34.0, exec: Execution::default() }
    }
}

#[derive(Debug, Clone)]
pub struct CountResult {
    pub vertices: usize,
    pub edges: usize,
    pub max_degree: u32,
    pub params: ForbidParams,
    pub count: BigUint,
    pub engine: Engine,
    pub elapsed: Duration,
}

impl CountResult {
    fn new(g: &Graph, p: &ForbidParams, count: BigUint, engine: Engine, start: Instant) -> Self {
        debug_assert!(count <= Pow::pow(BigUint::from(p.r()), g.edge_count()));
        CountResult {
            vertices: g.vertex_count(),
            edges: g.edge_count(),
            max_degree: g.max_degree(),
            params: *p,
            count,
            engine,
            elapsed: start.elapsed(),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "n": self.vertices,
            "edges": self.edges,
            "max_degree": self.max_degree,
            "r": self.params.r(),
            "t": self.params.t(),
            "count": self.count.to_string(),
            "engine": self.engine,
            "elapsed_ms": self.elapsed.as_secs_f64() * 1e3,
        })
    }
}

/// Edge order for the search: descending `min(deg u, deg v)`, then lexicographic.
fn search_order(g: &Graph) -> Vec<(usize, usize)> {
    let deg = g.degrees();
    let mut edges = g.edges();
    edges.sort_by_key(|&(u, v)| (std::cmp::Reverse(deg[u].min(deg[v])), u, v));
    edges
}

struct Search<'a> {
    edges: &'a [(usize, usize)],
    r: usize,
    limit: u32,
    /// `counts[v * r + c]`: edges of color `c` at `v`.
    counts: Vec<u32>,
    /// Uncolored edges at each vertex.
    remaining: Vec<u32>,
    /// `sum_c (limit - counts[v * r + c])`.
    slack: Vec<u32>,
}

impl<'a> Search<'a> {
    fn new(g: &Graph, edges: &'a [(usize, usize)], p: &ForbidParams) -> Self {
        let r = p.r() as usize;
        let limit = p.t() - 1;
        Search {
            edges,
            r,
            limit,
            counts: vec![0; g.vertex_count() * r],
            remaining: g.degrees(),
            slack: vec![p.saturation_degree(); g.vertex_count()],
        }
    }

    fn fits(&self, v: usize) -> bool {
        self.remaining[v] <= self.slack[v]
    }

    fn free(&self, u: usize, v: usize, c: usize) -> bool {
        self.counts[u * self.r + c] < self.limit && self.counts[v * self.r + c] < self.limit
    }

    fn apply(&mut self, u: usize, v: usize, c: usize) {
        for w in [u, v] {
            self.counts[w * self.r + c] += 1;
            self.remaining[w] -= 1;
            self.slack[w] -= 1;
        }
    }

    fn undo(&mut self, u: usize, v: usize, c: usize) {
        for w in [u, v] {
            self.counts[w * self.r + c] -= 1;
            self.remaining[w] += 1;
            self.slack[w] += 1;
        }
    }

    /// Colorings of `edges[i..]` extending the current partial coloring.
    fn run(&mut self, i: usize) -> u128 {
        let (u, v) = self.edges[i];
        if i + 1 == self.edges.len() {
            return (0..self.r).filter(|&c| self.free(u, v, c)).count() as u128;
        }
        let mut total = 0;
        for c in 0..self.r {
            if !self.free(u, v, c) {
                continue;
            }
            self.apply(u, v, c);
            if self.fits(u) && self.fits(v) {
                total += self.run(i + 1);
            }
            self.undo(u, v, c);
        }
        total
    }

    /// Apply a prefix coloring; `false` if it is already invalid.
    fn seed(&mut self, prefix: &[u32]) -> bool {
        for (&(u, v), &c) in self.edges.iter().zip(prefix) {
            let c = c as usize;
            if !self.free(u, v, c) {
                return false;
            }
            self.apply(u, v, c);
        }
        true
    }
}

/// All color vectors of length `len`.
fn prefixes(r: usize, len: usize) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..r as u32).map(move |c| {
                    let mut q = p.clone();
                    q.push(c);
                    q
                })
            })
            .collect();
    }
    out
}

fn count_component(g: &Graph, p: &ForbidParams, exec: Execution) -> u128 {
    let edges = search_order(g);
    if edges.is_empty() {
        return 1;
    }
    let root = Search::new(g, &edges, p);
    if (0..g.vertex_count()).any(|v| !root.fits(v)) {
        return 0;
    }
    let workers = exec.workers();
    if workers <= 1 || edges.len() < 8 {
        let mut s = root;
        return s.run(0);
    }
    // Split on the colors of the first few edges; a few extra levels over
    // ceil(log_r(workers)) keep the subtrees balanced.
    let r = p.r() as usize;
    let mut depth = 0;
    while r.pow(depth as u32) < workers {
        depth += 1;
    }
    let depth = (depth + 2).min(edges.len() - 1);
    let tasks = prefixes(r, depth);
    par::map_reduce(
        exec,
        &tasks,
        0u128,
        |prefix| {
            let mut s = Search::new(g, &edges, p);
            if s.seed(prefix) && (0..g.vertex_count()).all(|v| s.fits(v)) {
                s.run(depth)
            } else {
                0
            }
        },
        |a, b| a + b,
    )
}

pub fn count_star_free(g: &Graph, p: &ForbidParams) -> Result<CountResult> {
    count_star_free_with(g, p, &CountOptions::default())
}

/// Pruned depth-first count, factored over connected components.
///
/// A branch dies as soon as some vertex would carry `t` edges of one color, or
/// when a vertex has more uncolored edges than remaining color capacity.
pub fn count_star_free_with(g: &Graph, p: &ForbidParams, opts: &CountOptions) -> Result<CountResult> {
    let start = Instant::now();
    if g.edge_count() > opts.edge_budget {
        return Err(Error::Budget(format!(
            "{} edges exceed the backtracking budget of {}",
            g.edge_count(),
            opts.edge_budget
        )));
    }
    let mut count = BigUint::one();
    for comp in g.components() {
        if comp.len() < 2 {
            continue;
        }
        let sub = g.induced(&comp)?;
        count *= BigUint::from(count_component(&sub, p, opts.exec));
    }
    Ok(CountResult::new(g, p, count, Engine::Backtrack, start))
}

pub fn brute_force_count(g: &Graph, p: &ForbidParams) -> Result<CountResult> {
    brute_force_count_with(g, p, &CountOptions::default())
}

/// Enumerate all `r^|E|` colorings and keep those with no monochromatic `S_t`.
pub fn brute_force_count_with(g: &Graph, p: &ForbidParams, opts: &CountOptions) -> Result<CountResult> {
    let start = Instant::now();
    let edges = g.edges();
    let r = p.r() as usize;
    let log2 = edges.len() as f64 * (r as f64).log2();
    if log2 > opts.brute_log2_budget {
        return Err(Error::Budget(format!("{}^{} colorings exceed 2^{}", r, edges.len(), opts.brute_log2_budget)));
    }
    // Fix the colors of the last `split` edges per task.
    let mut split = 0;
    let want = opts.exec.workers() * 8;
    while split < edges.len() && r.pow(split as u32) < want && opts.exec.workers() > 1 {
        split += 1;
    }
    let tasks = prefixes(r, split);
    let total =
        par::map_reduce(opts.exec, &tasks, 0u64, |fixed| brute_chunk(g.vertex_count(), &edges, p, fixed), |a, b| a + b);
    Ok(CountResult::new(g, p, BigUint::from(total), Engine::Brute, start))
}

/// Odometer over the free edges, tracking how many `(vertex, color)` pairs are at `t` or more.
fn brute_chunk(n: usize, edges: &[(usize, usize)], p: &ForbidParams, fixed: &[u32]) -> u64 {
    let r = p.r() as usize;
    let t = p.t();
    let free = edges.len() - fixed.len();
    let mut counts = vec![0u32; n * r];
    let mut violations = 0u32;
    let add = |counts: &mut Vec<u32>, violations: &mut u32, (u, v): (usize, usize), c: usize| {
        for w in [u, v] {
            counts[w * r + c] += 1;
            if counts[w * r + c] == t {
                *violations += 1;
            }
        }
    };
    for (i, &c) in fixed.iter().enumerate() {
        add(&mut counts, &mut violations, edges[free + i], c as usize);
    }
    for &e in &edges[..free] {
        add(&mut counts, &mut violations, e, 0);
    }
    let mut digits = vec![0usize; free];
    let mut total = 0u64;
    loop {
        if violations == 0 {
            total += 1;
        }
        let mut i = 0;
        loop {
            if i == free {
                return total;
            }
            let (u, v) = edges[i];
            let old = digits[i];
            for w in [u, v] {
                if counts[w * r + old] == t {
                    violations -= 1;
                }
                counts[w * r + old] -= 1;
            }
            let new = if old + 1 == r { 0 } else { old + 1 };
            digits[i] = new;
            add(&mut counts, &mut violations, edges[i], new);
            if new != 0 {
                break;
            }
            i += 1;
        }
    }
}
