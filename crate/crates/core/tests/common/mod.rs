#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use starfree::Graph;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random simple graph on `n` vertices with at most `max_edges` edges and
/// maximum degree at most `max_degree`.
pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, max_edges: usize, max_degree: u32) -> Graph {
    let mut g = Graph::empty(n).unwrap();
    if n < 2 {
        return g;
    }
    let target = rng.random_range(0..=max_edges);
    for _ in 0..target * 4 {
        if g.edge_count() == target {
            break;
        }
        let u = rng.random_range(0..n);
        let v = rng.random_range(0..n);
        if u == v || g.has_edge(u, v) || g.degree(u) >= max_degree || g.degree(v) >= max_degree {
            continue;
        }
        g.add_edge(u, v).unwrap();
    }
    g
}

/// Star count by decoding every integer below `r^(a-1)` as a color word.
pub fn oracle_f(r: u32, t: u32, a: u32) -> u64 {
    let free = a - 1;
    let total = u64::from(r).pow(free);
    let mut good = 0;
    for code in 0..total {
        let mut hist = vec![0u32; r as usize];
        hist[0] = 1;
        let mut x = code;
        for _ in 0..free {
            hist[(x % u64::from(r)) as usize] += 1;
            x /= u64::from(r);
        }
        if hist.iter().all(|&h| h < t) {
            good += 1;
        }
    }
    good
}

/// Valid colorings of `g`, one integer per coloring.
pub fn oracle_count(g: &Graph, r: u32, t: u32) -> u64 {
    let edges = g.edges();
    let n = g.vertex_count();
    let total = u64::from(r).pow(edges.len() as u32);
    let mut good = 0;
    for code in 0..total {
        let mut hist = vec![0u32; n * r as usize];
        let mut x = code;
        let mut ok = true;
        for &(u, v) in &edges {
            let c = (x % u64::from(r)) as usize;
            x /= u64::from(r);
            for w in [u, v] {
                hist[w * r as usize + c] += 1;
                ok &= hist[w * r as usize + c] < t;
            }
        }
        good += u64::from(ok);
    }
    good
}
