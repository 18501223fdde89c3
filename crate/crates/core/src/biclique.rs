//! Profile DP over complete bipartite graphs and the lower bounds it yields.
//!
//! Left vertices are processed one at a time. A state records, for every
//! right vertex, how many edges of each color it has received so far. A left
//! vertex contributes one "row" of `n` colors, which must itself use no color
//! more than `t-1` times.
//!
//! In canonical mode the right profiles are kept sorted, since right vertices
//! with equal profiles are interchangeable. A transition then only decides how
//! many members of each group of equal profiles get each color, weighted by
//! the multinomial number of ways to pick them.

use std::cmp::Ordering;
use std::collections::HashMap;

use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::combin::multinomial_u128;
use crate::error::{Error, Result};
use crate::numeric::{RealPower, DEFAULT_DIGIT_BUDGET};
use crate::par::{self, Execution};
use crate::params::ForbidParams;

/// Default cap on the number of stored states per layer.
pub const DEFAULT_STATE_BUDGET: usize = 10_000_000;

#[derive(Debug, Clone)]
pub struct DpOptions {
    pub state_budget: usize,
    /// Merge states whose right profiles agree up to permutation.
    pub canonical: bool,
    pub exec: Execution,
}

impl Default for DpOptions {
    fn default() -> Self {
        DpOptions { state_budget: DEFAULT_STATE_BUDGET, canonical: true, exec: Execution::default() }
    }
}

impl DpOptions {
    /// Defaults, with the budget taken from `STARFREE_STATE_BUDGET` when set.
    pub fn from_env() -> Self {
        let mut opts = DpOptions::default();
        if let Some(b) = std::env::var("STARFREE_STATE_BUDGET").ok().and_then(|s| s.trim().parse::<usize>().ok()) {
            opts.state_budget = b;
        }
        opts
    }
}

type Key = Vec<u16>;
type Table = HashMap<Key, BigUint>;

pub fn count_biclique(m: usize, n: usize, p: &ForbidParams) -> Result<BigUint> {
    count_biclique_with(m, n, p, &DpOptions::default())
}

/// Star-free `r`-colorings of `K_{m,n}`.
pub fn count_biclique_with(m: usize, n: usize, p: &ForbidParams, opts: &DpOptions) -> Result<BigUint> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidParams(format!("sides must be positive, got ({m}, {n})")));
    }
    let (m, n) = if n > m { (n, m) } else { (m, n) };
    // A vertex of degree above r(t-1) cannot be colored at all.
    let sat = p.saturation_degree() as usize;
    if m > sat {
        return Ok(BigUint::zero());
    }
    let limit = (p.t() - 1).min(m as u32);
    if limit > u32::from(u16::MAX) {
        return Err(Error::InvalidParams(format!("profile entries up to {limit} do not fit")));
    }
    let r = p.r() as usize;
    if opts.canonical && (n as f64) * (r as f64).log2() >= 127.0 {
        return Err(Error::Budget(format!("row multiplicities {r}^{n} overflow the 128-bit accumulator")));
    }
    let ctx = Ctx { r, n, limit: limit as u16 };
    let rows = if opts.canonical { Vec::new() } else { ctx.rows(opts.state_budget)? };

    let mut table: Table = HashMap::new();
    table.insert(vec![0; n * r], BigUint::one());
    for layer in 1..=m {
        let states: Vec<(Key, BigUint)> = table.into_iter().collect();
        let chunk = (states.len() / (8 * opts.exec.workers())).clamp(64, 4096);
        let chunks: Vec<&[(Key, BigUint)]> = states.chunks(chunk).collect();
        table = par::map_reduce(
            opts.exec,
            &chunks,
            Table::new(),
            |part| {
                let mut out = Table::new();
                for (key, w) in part.iter() {
                    if opts.canonical {
                        ctx.canonical_step(key, w, &mut out);
                    } else {
                        ctx.ordered_step(key, w, &rows, &mut out);
                    }
                }
                out
            },
            merge,
        );
        if table.len() > opts.state_budget {
            return Err(Error::Budget(format!(
                "K_{{{m},{n}}}: {} reachable states after {layer} left vertices exceed the budget of {}",
                table.len(),
                opts.state_budget
            )));
        }
        if table.is_empty() {
            return Ok(BigUint::zero());
        }
    }
    Ok(table.into_values().sum())
}

fn merge(mut a: Table, mut b: Table) -> Table {
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    for (k, v) in b {
        *a.entry(k).or_default() += v;
    }
    a
}

struct Ctx {
    r: usize,
    n: usize,
    limit: u16,
}

impl Ctx {
    /// Every row of `n` colors using no color more than `limit` times.
    fn rows(&self, budget: usize) -> Result<Vec<Vec<u8>>> {
        if (self.n as f64) * (self.r as f64).log2() > (budget as f64).log2().max(20.0) + 4.0 {
            return Err(Error::Budget(format!("{}^{} candidate rows", self.r, self.n)));
        }
        let mut out = Vec::new();
        let mut row = vec![0u8; self.n];
        let mut used = vec![0u16; self.r];
        self.rows_rec(0, &mut row, &mut used, &mut out);
        Ok(out)
    }

    fn rows_rec(&self, i: usize, row: &mut [u8], used: &mut [u16], out: &mut Vec<Vec<u8>>) {
        if i == self.n {
            out.push(row.to_vec());
            return;
        }
        for c in 0..self.r {
            if used[c] < self.limit {
                used[c] += 1;
                row[i] = c as u8;
                self.rows_rec(i + 1, row, used, out);
                used[c] -= 1;
            }
        }
    }

    fn ordered_step(&self, key: &Key, w: &BigUint, rows: &[Vec<u8>], out: &mut Table) {
        'rows: for row in rows {
            let mut next = key.clone();
            for (i, &c) in row.iter().enumerate() {
                let slot = &mut next[i * self.r + c as usize];
                if *slot == self.limit {
                    continue 'rows;
                }
                *slot += 1;
            }
            *out.entry(next).or_default() += w;
        }
    }

    fn canonical_step(&self, key: &Key, w: &BigUint, out: &mut Table) {
        // Groups of equal profiles, in key order.
        let mut groups: Vec<(&[u16], u32)> = Vec::new();
        for prof in key.chunks(self.r) {
            match groups.last_mut() {
                Some((q, g)) if *q == prof => *g += 1,
                _ => groups.push((prof, 1)),
            }
        }
        let mut walk =
            Walk { ctx: self, groups: &groups, used: vec![0; self.r], profiles: Vec::with_capacity(self.n), w, out };
        walk.group(0, 1);
    }
}

/// Enumerates per-group color splits for one canonical transition.
struct Walk<'a> {
    ctx: &'a Ctx,
    groups: &'a [(&'a [u16], u32)],
    /// Colors spent by the current row so far.
    used: Vec<u16>,
    profiles: Vec<Vec<u16>>,
    w: &'a BigUint,
    out: &'a mut Table,
}

impl Walk<'_> {
    fn group(&mut self, gi: usize, mult: u128) {
        if gi == self.groups.len() {
            let mut sorted = self.profiles.clone();
            sorted.sort_unstable();
            let key: Key = sorted.concat();
            *self.out.entry(key).or_default() += self.w * mult;
            return;
        }
        let size = self.groups[gi].1;
        let mut parts = vec![0; self.ctx.r];
        self.split(gi, 0, size, mult, &mut parts);
    }

    /// Distribute the `left` remaining members of group `gi` over colors `c..`.
    fn split(&mut self, gi: usize, c: usize, left: u32, mult: u128, parts: &mut [u32]) {
        let r = self.ctx.r;
        let limit = self.ctx.limit;
        let prof = self.groups[gi].0;
        if c + 1 == r || left == 0 {
            if left > 0 && (prof[c] == limit || u32::from(self.used[c]) + left > u32::from(limit)) {
                return;
            }
            parts[c] = left;
            for rest in &mut parts[c + 1..] {
                *rest = 0;
            }
            let size = self.groups[gi].1;
            // Cannot overflow: the product of all group factors is at most r^n < 2^127.
            let factor = multinomial_u128(parts).expect("multiplicity fits in u128");
            let base = self.profiles.len();
            for (color, &k) in parts.iter().enumerate() {
                for _ in 0..k {
                    let mut q = prof.to_vec();
                    q[color] += 1;
                    self.profiles.push(q);
                }
                self.used[color] += k as u16;
            }
            debug_assert_eq!(self.profiles.len() - base, size as usize);
            self.group(gi + 1, mult * factor);
            for (color, &k) in parts.iter().enumerate() {
                self.used[color] -= k as u16;
            }
            self.profiles.truncate(base);
            return;
        }
        let cap = if prof[c] == limit { 0 } else { u32::from(limit - self.used[c]).min(left) };
        for k in 0..=cap {
            parts[c] = k;
            self.split(gi, c + 1, left - k, mult, parts);
        }
    }
}

/// `count^(1/n_vertices)`: disjoint copies of one graph grow at this rate.
pub fn lower_bound_from_count(count: &BigUint, n_vertices: usize) -> Result<RealPower> {
    if count.is_zero() || n_vertices == 0 {
        return Err(Error::InvalidParams("need a positive count and at least one vertex".into()));
    }
    RealPower::from_integer(count.clone(), Ratio::new(1, n_vertices as u64))
}

#[derive(Debug, Clone)]
pub struct SweepRow {
    pub m: usize,
    pub n: usize,
    pub count: Option<BigUint>,
    /// Absent when the count is zero or was not computed.
    pub bound: Option<RealPower>,
    pub skipped: Option<String>,
}

impl SweepRow {
    pub fn to_json(&self) -> Value {
        json!({
            "m": self.m,
            "n": self.n,
            "count": self.count.as_ref().map(|c| c.to_string()),
            "bound": self.bound.as_ref().map(|b| b.to_string()),
            "value": self.bound.as_ref().and_then(|b| b.to_fixed(4).ok()),
            "skipped": self.skipped,
        })
    }
}

#[derive(Debug, Clone)]
pub struct Sweep {
    pub params: ForbidParams,
    pub max_vertices: usize,
    pub rows: Vec<SweepRow>,
    /// Index into `rows` of the largest bound; ties keep the earlier row.
    pub best: Option<usize>,
}

impl Sweep {
    pub fn best_row(&self) -> Option<&SweepRow> {
        self.best.map(|i| &self.rows[i])
    }

    pub fn to_json(&self) -> Value {
        json!({
            "r": self.params.r(),
            "t": self.params.t(),
            "max_vertices": self.max_vertices,
            "rows": self.rows.iter().map(SweepRow::to_json).collect::<Vec<_>>(),
            "best": self.best_row().map(SweepRow::to_json),
        })
    }
}

pub fn sweep_lower_bounds(p: &ForbidParams, max_vertices: usize) -> Result<Sweep> {
    sweep_lower_bounds_with(p, max_vertices, &DpOptions::default())
}

/// Every `K_{m,n}` with `1 <= n <= m` and `m + n <= max_vertices`, ordered by
/// `(m + n, m)`. Rows over budget are recorded as skipped.
pub fn sweep_lower_bounds_with(p: &ForbidParams, max_vertices: usize, opts: &DpOptions) -> Result<Sweep> {
    if max_vertices < 2 {
        return Err(Error::InvalidParams(format!("max_vertices must be at least 2, got {max_vertices}")));
    }
    let mut rows = Vec::new();
    let mut best: Option<usize> = None;
    for total in 2..=max_vertices {
        for m in total.div_ceil(2)..total {
            let n = total - m;
            let row = match count_biclique_with(m, n, p, opts) {
                Ok(count) => {
                    let bound = if count.is_zero() { None } else { Some(lower_bound_from_count(&count, total)?) };
                    SweepRow { m, n, count: Some(count), bound, skipped: None }
                }
                Err(e @ Error::Budget(_)) => SweepRow { m, n, count: None, bound: None, skipped: Some(e.to_string()) },
                Err(e) => return Err(e),
            };
            if let Some(b) = &row.bound {
                let better = match best.and_then(|i| rows.get(i)).and_then(|r: &SweepRow| r.bound.as_ref()) {
                    None => true,
                    Some(cur) => b.compare(cur, DEFAULT_DIGIT_BUDGET)? == Ordering::Greater,
                };
                if better {
                    best = Some(rows.len());
                }
            }
            rows.push(row);
        }
    }
    Ok(Sweep { params: *p, max_vertices, rows, best })
}
