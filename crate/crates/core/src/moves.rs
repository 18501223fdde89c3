//! Degree-preserving switches and the reductions that bound the degree range.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::params::ForbidParams;

/// Replace `uv, xy` by `ux, vy`.
///
/// Requires the four endpoints to be distinct, `deg(u) = deg(x)`,
/// `deg(v) = deg(y)` and `ux, vy` absent. Every vertex keeps its degree.
pub fn ab_switch(g: &Graph, e: (usize, usize), f: (usize, usize)) -> Result<Graph> {
    let ((u, v), (x, y)) = (e, f);
    let fail = |what: &str| Err(Error::SwitchPrecondition(what.to_string()));
    if !g.has_edge(u, v) {
        return fail(&format!("uv = ({u}, {v}) is not an edge"));
    }
    if !g.has_edge(x, y) {
        return fail(&format!("xy = ({x}, {y}) is not an edge"));
    }
    if [x, y].contains(&u) || [x, y].contains(&v) {
        return fail("the two edges share an endpoint");
    }
    if g.degree(u) != g.degree(x) {
        return fail(&format!("deg(u) = {} differs from deg(x) = {}", g.degree(u), g.degree(x)));
    }
    if g.degree(v) != g.degree(y) {
        return fail(&format!("deg(v) = {} differs from deg(y) = {}", g.degree(v), g.degree(y)));
    }
    if g.has_edge(u, x) {
        return fail(&format!("ux = ({u}, {x}) is already an edge"));
    }
    if g.has_edge(v, y) {
        return fail(&format!("vy = ({v}, {y}) is already an edge"));
    }
    let mut out = g.clone();
    out.remove_edge(u, v)?;
    out.remove_edge(x, y)?;
    out.add_edge(u, x)?;
    out.add_edge(v, y)?;
    Ok(out)
}

/// One step of the degree reduction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DegreeMove {
    /// Delete `edge` at `vertex`, whose degree is at least `r(t-1)`.
    DeleteEdge { vertex: usize, edge: (usize, usize) },
    /// Join two nonadjacent vertices of degree below `ceil(r/2)(t-1)`.
    AddEdge(usize, usize),
}

/// The next move, or `None` at a fixpoint. Ties go to the lowest vertex index.
pub fn degree_step(g: &Graph, p: &ForbidParams) -> Option<(Graph, DegreeMove)> {
    let deg = g.degrees();
    if let Some(v) = (0..g.vertex_count()).find(|&v| deg[v] >= p.saturation_degree()) {
        let w = g.neighbors(v).next()?;
        let mut out = g.clone();
        out.remove_edge(v, w).ok()?;
        let edge = (v.min(w), v.max(w));
        return Some((out, DegreeMove::DeleteEdge { vertex: v, edge }));
    }
    let low: Vec<usize> = (0..g.vertex_count()).filter(|&v| deg[v] < p.low_degree()).collect();
    for (i, &u) in low.iter().enumerate() {
        for &v in &low[i + 1..] {
            if !g.has_edge(u, v) {
                let mut out = g.clone();
                out.add_edge(u, v).ok()?;
                return Some((out, DegreeMove::AddEdge(u, v)));
            }
        }
    }
    None
}

/// Apply [`degree_step`] until it no longer applies.
///
/// The result has maximum degree at most `r(t-1) - 1` and its vertices of
/// degree below `ceil(r/2)(t-1)` form a clique. Deletions come first and never
/// recur: additions only touch vertices of degree below `ceil(r/2)(t-1) < r(t-1)`.
pub fn degree_reduce(g: &Graph, p: &ForbidParams) -> Graph {
    let mut cur = g.clone();
    while let Some((next, _)) = degree_step(&cur, p) {
        cur = next;
    }
    cur
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(r: u32, t: u32) -> ForbidParams {
        ForbidParams::new(r, t).unwrap()
    }

    #[test]
    fn switch_two_disjoint_edges() {
        let g = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        let h = ab_switch(&g, (0, 1), (2, 3)).unwrap();
        assert!(h.has_edge(0, 2) && h.has_edge(1, 3));
        assert_eq!(h.edge_count(), 2);
        assert_eq!(h.degrees(), g.degrees());
    }

    #[test]
    fn switch_on_six_cycle() {
        let g = Graph::cycle(6).unwrap();
        // Antipodal edges 0-1 and 3-4; switch to 0-3 and 1-4.
        let h = ab_switch(&g, (0, 1), (3, 4)).unwrap();
        assert_eq!(h.degrees(), vec![2; 6]);
        assert_eq!(h.degree_profile(), g.degree_profile());
        // Orientation 0-1 with 4-3 yields two triangles.
        let h = ab_switch(&g, (0, 1), (4, 3)).unwrap();
        assert_eq!(h.components().len(), 2);
        assert_eq!(h.degrees(), vec![2; 6]);
    }

    #[test]
    fn switch_moves_ab_edges_to_aa_and_bb() {
        // Two disjoint paths a-b-c: middle degree 2, ends degree 1.
        let g = Graph::from_edges(6, [(0, 1), (1, 2), (3, 4), (4, 5)]).unwrap();
        let before = g.degree_profile();
        let h = ab_switch(&g, (1, 0), (4, 3)).unwrap();
        let after = h.degree_profile();
        assert_eq!(before.m[&(1, 2)] - 2, after.m[&(1, 2)]);
        assert_eq!(after.m[&(1, 1)], 1);
        assert_eq!(after.m[&(2, 2)], 1);
    }

    #[test]
    fn switch_preconditions() {
        let g = Graph::path(4).unwrap();
        let err = ab_switch(&g, (0, 1), (1, 2)).unwrap_err();
        assert!(err.to_string().contains("share"));
        let g = Graph::from_edges(5, [(0, 1), (2, 3), (3, 4)]).unwrap();
        let err = ab_switch(&g, (0, 1), (3, 2)).unwrap_err();
        assert!(err.to_string().contains("deg(u)"));
        let g = Graph::from_edges(4, [(0, 1), (2, 3), (0, 2)]).unwrap();
        assert!(ab_switch(&g, (0, 1), (2, 3)).is_err());
        assert!(ab_switch(&g, (1, 3), (0, 2)).is_err());
    }

    #[test]
    fn reduce_star_k14() {
        let g = Graph::complete_bipartite(1, 4).unwrap();
        let (h, mv) = degree_step(&g, &p(2, 3)).unwrap();
        assert_eq!(mv, DegreeMove::DeleteEdge { vertex: 0, edge: (0, 1) });
        assert_eq!(h.degree(0), 3);
        assert_eq!(h.edge_count(), 3);
        assert_eq!(h.induced(&[0, 2, 3, 4]).unwrap().as_complete_bipartite(), Some((3, 1)));
    }

    #[test]
    fn reduce_isolated_pair() {
        let g = Graph::empty(2).unwrap();
        let h = degree_reduce(&g, &p(2, 3));
        assert_eq!(h, Graph::complete_bipartite(1, 1).unwrap());
    }

    #[test]
    fn reduce_fixpoint() {
        let g = Graph::complete_bipartite(3, 3).unwrap();
        assert!(degree_step(&g, &p(2, 3)).is_none());
        assert_eq!(degree_reduce(&g, &p(2, 3)), g);
    }

    #[test]
    fn reduce_postconditions() {
        let params = p(3, 3);
        let g = Graph::from_spec("union:kbip:1,9+empty:4+path:3").unwrap();
        let h = degree_reduce(&g, &params);
        assert!(h.max_degree() <= params.max_degree());
        let low: Vec<usize> = (0..h.vertex_count()).filter(|&v| h.degree(v) < params.low_degree()).collect();
        for (i, &u) in low.iter().enumerate() {
            for &v in &low[i + 1..] {
                assert!(h.has_edge(u, v));
            }
        }
    }
}
