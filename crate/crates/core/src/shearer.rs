//! Entropy upper bounds.
//!
//! Each edge `uv` with endpoint degrees `a, b` contributes the factor
//! `g(a, b) = r^(2r(t-1)-1-(a+b)) f(a) f(b)` to the Shearer product, in which
//! every edge is covered `k = 2r(t-1)-3` times. Since `g(a,b)^2 = g(a,a) g(b,b)`,
//! a graph whose vertices all have degree `a` is the worst case and the growth
//! rate is at most `max_a g(a,a)^(a/(2k))` over the admissible degree range.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_rational::{BigRational, Ratio};
use num_traits::{One, Pow, Zero};
use serde_json::{json, Value};

use crate::combin::{binomial, factorial};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::numeric::{format_ratio_u64, format_rational, RealPower, DEFAULT_DIGIT_BUDGET};
use crate::par::{self, Execution};
use crate::params::ForbidParams;
use crate::star::f_star;

/// `f(a)` for every `a` in `0..=max_a` (entry 0 is zero).
///
/// Counts colorings of `n` labelled free edges color by color:
/// `L'[n] = sum_s C(n, s) L[n-s]` with `s` bounded by the color's cap. One
/// pass serves every star size at once.
pub fn f_table(p: &ForbidParams, max_a: u32) -> Vec<BigUint> {
    let len = max_a as usize;
    let mut labelled = vec![BigUint::zero(); len.max(1)];
    labelled[0] = BigUint::one();
    for color in 0..p.r() {
        let cap = if color == 0 { p.t() - 2 } else { p.t() - 1 } as usize;
        let mut next = vec![BigUint::zero(); labelled.len()];
        for (n, slot) in next.iter_mut().enumerate() {
            let mut c = BigUint::one();
            for s in 0..=cap.min(n) {
                if s > 0 {
                    c = c * (n + 1 - s) / s;
                }
                if !labelled[n - s].is_zero() {
                    *slot += &c * &labelled[n - s];
                }
            }
        }
        labelled = next;
    }
    let mut out = vec![BigUint::zero()];
    out.extend(labelled.into_iter().take(len));
    out
}

fn r_power(p: &ForbidParams, exponent: i64) -> BigRational {
    let r = BigInt::from(p.r());
    if exponent >= 0 {
        BigRational::from_integer(Pow::pow(r, exponent as u64))
    } else {
        BigRational::new(BigInt::one(), Pow::pow(r, (-exponent) as u64))
    }
}

fn edge_exponent(p: &ForbidParams, a: u32, b: u32) -> i64 {
    2 * i64::from(p.saturation_degree()) - 1 - i64::from(a) - i64::from(b)
}

/// `g(a, b) = r^(2r(t-1)-1-(a+b)) f(a) f(b)`, exact. The exponent may be negative.
pub fn g_edge(p: &ForbidParams, a: u32, b: u32) -> Result<BigRational> {
    let fa = f_star(p, a)?;
    if fa.is_zero() {
        return Err(Error::DegenerateDegree { degree: a });
    }
    let fb = f_star(p, b)?;
    if fb.is_zero() {
        return Err(Error::DegenerateDegree { degree: b });
    }
    let f = BigRational::from_integer(BigInt::from(fa * fb));
    Ok(r_power(p, edge_exponent(p, a, b)) * f)
}

/// `g(a) = g(a, a)^a`.
///
/// Outside `[ceil(r/2)(t-1), r(t-1)-1]` the value is still computed; callers
/// can check [`in_degree_range`].
pub fn g_vertex(p: &ForbidParams, a: u32) -> Result<BigRational> {
    let x = g_edge(p, a, a)?;
    Ok(BigRational::new_raw(Pow::pow(x.numer(), a), Pow::pow(x.denom(), a)))
}

pub fn in_degree_range(p: &ForbidParams, a: u32) -> bool {
    p.degree_range().contains(&a)
}

/// `2 C(2t-3, t-2)^2` raised to `(2t-3) / (2(4t-7))`: the `r = 2` bound when the
/// maximum sits at `a = 2t-3`.
pub fn closed_form_b2t(t: u32) -> Result<RealPower> {
    if t < 3 {
        return Err(Error::InvalidParams(format!("need t >= 3, got {t}")));
    }
    let t = u64::from(t);
    let c = binomial(2 * t - 3, (t - 2) as i64);
    let base = &c * &c * 2u32;
    RealPower::from_integer(base, Ratio::new(2 * t - 3, 2 * (4 * t - 7)))
}

/// `r (2r-1)!^2 / 2^(2r-2)` raised to `(2r-1)/(8r-6)`: the `t = 3` bound when
/// the maximum sits at `a = 2r-1`.
pub fn closed_form_br3(r: u32) -> Result<RealPower> {
    if r < 2 {
        return Err(Error::InvalidParams(format!("need r >= 2, got {r}")));
    }
    let r = u64::from(r);
    let fact = factorial(2 * r - 1);
    let num = BigInt::from(&fact * &fact * r);
    let den = BigInt::one() << (2 * r - 2);
    RealPower::new(BigRational::new(num, den), Ratio::new(2 * r - 1, 8 * r - 6))
}

#[derive(Debug, Clone)]
pub struct BoundOptions {
    /// Exact cross-power comparisons are attempted up to this many decimal digits.
    pub digit_budget: u64,
    /// Significant digits of the reported decimal value.
    pub precision: usize,
    pub exec: Execution,
}

impl Default for BoundOptions {
    fn default() -> Self {
        BoundOptions { digit_budget: DEFAULT_DIGIT_BUDGET, precision: 30, exec: Execution::default() }
    }
}

/// The optimized Shearer bound for one parameter pair.
#[derive(Debug, Clone)]
pub struct BoundReport {
    pub params: ForbidParams,
    pub k: u32,
    /// Maximizing degree; ties resolve to the largest degree.
    pub a_star: u32,
    /// Other degrees whose candidate equals the maximum exactly.
    pub ties: Vec<u32>,
    /// `g(a, a)` for each admissible degree `a`.
    pub edge_weights: BTreeMap<u32, BigUint>,
    /// `g(a*, a*)^(a* / (2k))`.
    pub bound: RealPower,
    /// `bound` to `precision` significant digits.
    pub value: String,
    pub precision: usize,
    /// `r^((t-1)/2)`, the per-vertex form of `r^ex(n, S_t)`.
    pub trivial_lower: RealPower,
    /// `r^(r(t-1)/2)`, the per-vertex form of `r^(r ex(n, S_t))`.
    pub trivial_upper: RealPower,
}

impl BoundReport {
    pub fn base(&self) -> &BigRational {
        self.bound.base()
    }

    pub fn exponent(&self) -> Ratio<u64> {
        self.bound.exponent()
    }

    /// `g(a) = g(a, a)^a`, exact.
    pub fn g(&self, a: u32) -> Option<BigUint> {
        self.edge_weights.get(&a).map(|x| Pow::pow(x, a))
    }

    /// Degree at which the maximum is expected for large parameters, where known.
    pub fn asymptotic_degree(&self) -> Option<u32> {
        let (r, t) = (self.params.r(), self.params.t());
        if t == 3 {
            Some(2 * r - 1)
        } else if r == 2 && t >= 3 {
            Some(2 * t - 3)
        } else {
            None
        }
    }

    pub fn to_json(&self, include_g: bool) -> Value {
        let mut v = json!({
            "r": self.params.r(),
            "t": self.params.t(),
            "k": self.k,
            "a_star": self.a_star,
            "ties": self.ties,
            "base": format_rational(self.base()),
            "exponent": format_ratio_u64(&self.exponent()),
            "value": self.value,
            "trivial_lower": self.trivial_lower.to_significant(self.precision).ok(),
            "trivial_upper": self.trivial_upper.to_significant(self.precision).ok(),
            "asymptotic_a": self.asymptotic_degree(),
        });
        if include_g {
            let g: serde_json::Map<String, Value> = self
                .edge_weights
                .keys()
                .filter_map(|&a| self.g(a).map(|g| (a.to_string(), Value::String(g.to_string()))))
                .collect();
            v["g"] = Value::Object(g);
        }
        v
    }
}

pub fn upper_bound_b(p: &ForbidParams) -> Result<BoundReport> {
    upper_bound_b_with(p, &BoundOptions::default())
}

/// Maximize `g(a)^(1/a)` over the admissible degrees and report the bound.
pub fn upper_bound_b_with(p: &ForbidParams, opts: &BoundOptions) -> Result<BoundReport> {
    let degrees: Vec<u32> = p.degree_range().collect();
    let f = f_table(p, p.max_degree());
    let weights: Vec<BigUint> = par::map(opts.exec, &degrees, |&a| {
        let e = edge_exponent(p, a, a) as u64;
        Pow::pow(BigUint::from(p.r()), e) * &f[a as usize] * &f[a as usize]
    });
    // Candidates share the outer 1/(2k), so compare g(a) = X_a^a directly.
    let candidate = |i: usize| -> Result<RealPower> {
        RealPower::from_integer(weights[i].clone(), Ratio::from_integer(u64::from(degrees[i])))
    };
    let mut best = 0;
    let mut ties = Vec::new();
    for i in 1..degrees.len() {
        let ord = candidate(i)?
            .compare(&candidate(best)?, opts.digit_budget)
            .map_err(|_| Error::Indistinguishable(degrees[i], degrees[best]))?;
        match ord {
            Ordering::Greater => {
                best = i;
                ties.clear();
            }
            Ordering::Equal => {
                ties.push(degrees[best]);
                best = i;
            }
            Ordering::Less => {}
        }
    }
    let a_star = degrees[best];
    let k = p.k();
    let bound = RealPower::from_integer(weights[best].clone(), Ratio::new(u64::from(a_star), 2 * u64::from(k)))?;
    let value = bound.to_significant(opts.precision)?;
    let r = BigUint::from(p.r());
    let t1 = u64::from(p.t() - 1);
    Ok(BoundReport {
        params: *p,
        k,
        a_star,
        ties,
        edge_weights: degrees.iter().copied().zip(weights).collect(),
        bound,
        value,
        precision: opts.precision,
        trivial_lower: RealPower::from_integer(r.clone(), Ratio::new(t1, 2))?,
        trivial_upper: RealPower::from_integer(r, Ratio::new(u64::from(p.r()) * t1, 2))?,
    })
}

/// Shearer bound for one concrete graph: `count^k <= product`.
#[derive(Debug, Clone)]
pub struct GraphBound {
    pub k: u32,
    /// `prod_{uv in E} g(deg u, deg v)`, an integer on the admissible degrees.
    pub product: BigUint,
    /// `product^(1/k)`.
    pub bound: RealPower,
}

impl GraphBound {
    /// Exact check of `count^k <= product`.
    pub fn dominates(&self, count: &BigUint) -> bool {
        Pow::pow(count, self.k) <= self.product
    }
}

pub fn graph_count_upper_bound(g: &Graph, p: &ForbidParams) -> Result<GraphBound> {
    let max_degree = g.max_degree();
    if max_degree > p.max_degree() {
        return Err(Error::DegreeTooHigh { max_degree, bound: p.max_degree() });
    }
    let f = f_table(p, p.max_degree());
    let deg = g.degrees();
    let mut product = BigUint::one();
    for (u, v) in g.edges() {
        let (a, b) = (deg[u], deg[v]);
        let e = edge_exponent(p, a, b) as u64;
        product *= Pow::pow(BigUint::from(p.r()), e) * &f[a as usize] * &f[b as usize];
    }
    let k = p.k();
    let bound = RealPower::from_integer(product.clone(), Ratio::new(1, u64::from(k)))?;
    Ok(GraphBound { k, product, bound })
}
