mod common;

use std::cmp::Ordering;

use num_bigint::BigUint;
use proptest::prelude::*;

use starfree::biclique::sweep_lower_bounds;
use starfree::count::{brute_force_count, count_star_free};
use starfree::numeric::DEFAULT_DIGIT_BUDGET;
use starfree::shearer::{f_table, upper_bound_b};
use starfree::star::{f_star_brute, f_star_t3_profile_sum, f_star_two_colors};
use starfree::{ab_switch, f_star, f_star_t3_closed, ForbidParams, Graph};

fn params(r: u32, t: u32) -> ForbidParams {
    ForbidParams::new(r, t).unwrap()
}

prop_compose! {
    fn graph_with(max_n: usize, max_edges: usize, max_degree: u32)(seed in any::<u64>(), n in 2..=max_n) -> Graph {
        common::random_graph(&mut common::rng(seed), n, max_edges, max_degree)
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn handshake(g in graph_with(20, 40, 8)) {
        let sum: u32 = g.degrees().iter().sum();
        prop_assert_eq!(sum as usize, 2 * g.edge_count());
        let prof = g.degree_profile();
        prop_assert_eq!(prof.edge_count(), g.edge_count());
        prop_assert_eq!(prof.vertex_count(), g.vertex_count());
    }

    #[test]
    fn text_round_trip(g in graph_with(16, 30, 6)) {
        prop_assert_eq!(Graph::parse_text(&g.to_text()).unwrap(), g);
    }

    #[test]
    fn switches_keep_degrees(g in graph_with(12, 24, 5), i in any::<usize>(), j in any::<usize>()) {
        let edges = g.edges();
        prop_assume!(edges.len() >= 2);
        let (u, v) = edges[i % edges.len()];
        let (x, y) = edges[j % edges.len()];
        for (e, f) in [((u, v), (x, y)), ((v, u), (x, y)), ((u, v), (y, x))] {
            if let Ok(h) = ab_switch(&g, e, f) {
                prop_assert_eq!(h.degrees(), g.degrees());
                prop_assert_eq!(h.edge_count(), g.edge_count());
            }
        }
    }

    #[test]
    fn star_routes_agree(r in 2u32..=6, a in 1u32..=12) {
        let p = params(r, 3);
        let dp = f_star(&p, a).unwrap();
        prop_assert_eq!(&f_star_t3_profile_sum(r, a).unwrap(), &dp);
        prop_assert_eq!(&f_table(&p, a)[a as usize], &dp);
        if (2 * r).saturating_sub(3) <= a && a < 2 * r {
            prop_assert_eq!(&f_star_t3_closed(r, a).unwrap(), &dp);
        }
    }

    #[test]
    fn two_colors_agree(t in 3u32..=12, a in 1u32..=24) {
        prop_assert_eq!(f_star_two_colors(t, a).unwrap(), f_star(&params(2, t), a).unwrap());
    }

    #[test]
    fn star_matches_oracle(r in 2u32..=4, t in 2u32..=4, a in 1u32..=9) {
        let want = BigUint::from(common::oracle_f(r, t, a));
        prop_assert_eq!(&f_star(&params(r, t), a).unwrap(), &want);
        prop_assert_eq!(&f_star_brute(&params(r, t), a).unwrap(), &want);
    }

    #[test]
    fn star_capacity_and_envelope(r in 2u32..=6, t in 2u32..=6) {
        let p = params(r, t);
        let sat = p.saturation_degree();
        prop_assert!(f_star(&p, sat).unwrap() > BigUint::from(0u32));
        prop_assert_eq!(f_star(&p, sat + 1).unwrap(), BigUint::from(0u32));
        for a in 1..=sat {
            let f = f_star(&p, a).unwrap();
            prop_assert!(f <= BigUint::from(r).pow(a - 1));
            if r == 2 {
                prop_assert!(f <= BigUint::from(2u32).pow(a - 1));
            }
        }
    }

    #[test]
    fn counts_match_oracle(g in graph_with(8, 10, 5), r in 2u32..=3, t in 2u32..=4) {
        prop_assume!((r as f64).powi(g.edge_count() as i32) < 2e5);
        let want = BigUint::from(common::oracle_count(&g, r, t));
        let p = params(r, t);
        prop_assert_eq!(&count_star_free(&g, &p).unwrap().count, &want);
        prop_assert_eq!(&brute_force_count(&g, &p).unwrap().count, &want);
    }
}

#[test]
fn bicliques_match_oracle() {
    for (r, t) in [(2, 3), (2, 4), (3, 3)] {
        let p = params(r, t);
        for m in 1..=3usize {
            for n in 1..=m {
                let g = Graph::complete_bipartite(m, n).unwrap();
                let want = BigUint::from(common::oracle_count(&g, r, t));
                assert_eq!(starfree::count_biclique(m, n, &p).unwrap(), want, "K_{m},{n} r={r} t={t}");
            }
        }
    }
}

#[test]
fn sweep_stays_below_upper_bound() {
    for (r, t, max) in [(2, 3, 8), (2, 4, 10), (3, 3, 7), (3, 2, 6)] {
        let p = params(r, t);
        let upper = upper_bound_b(&p).unwrap().bound;
        let sweep = sweep_lower_bounds(&p, max).unwrap();
        for row in &sweep.rows {
            if let Some(b) = &row.bound {
                assert_ne!(
                    b.compare(&upper, DEFAULT_DIGIT_BUDGET).unwrap(),
                    Ordering::Greater,
                    "K_{},{}",
                    row.m,
                    row.n
                );
            }
        }
    }
}
