// SPDX-License-Identifier: Apache-2.0

mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;
use tipdecomp::butterfly::count_per_vertex_traced;
use tipdecomp::{build_graph, count_naive, count_per_vertex, BipartiteGraph, PeelableView, Side};

use common::{dense_graphs, edge_lists};

fn support_by_id(g: &BipartiteGraph, side: Side) -> Vec<(u64, u64)> {
    let s = count_per_vertex(g).unwrap();
    let vals = match side {
        Side::U => &s.u,
        Side::V => &s.v,
    };
    let mut out: Vec<(u64, u64)> = g
        .ids(side)
        .iter()
        .copied()
        .zip(vals.iter().copied())
        .collect();
    out.sort_unstable();
    out
}

proptest! {
    #[test]
    fn fast_count_matches_naive(edges in edge_lists(12, 12, 80)) {
        let g = build_graph(&edges).unwrap();
        prop_assert_eq!(count_per_vertex(&g).unwrap(), count_naive(&g));
    }

    #[test]
    fn both_sides_sum_to_twice_the_butterflies(g in dense_graphs()) {
        let s = count_per_vertex(&g).unwrap();
        let su: u64 = s.u.iter().sum();
        let sv: u64 = s.v.iter().sum();
        prop_assert_eq!(su, sv);
        prop_assert_eq!(su % 2, 0);
        prop_assert_eq!(s.butterflies(), su / 2);
    }

    #[test]
    fn counts_ignore_input_order_and_labels(edges in edge_lists(10, 10, 60), shift in 1u64..1000) {
        let g = build_graph(&edges).unwrap();
        let mut shuffled: Vec<(u64, u64)> = edges.iter().rev().map(|&(u, v)| (u * 7 + shift, v + 3 * shift)).collect();
        shuffled.rotate_left(edges.len() / 3);
        let h = build_graph(&shuffled).unwrap();
        let relabel = |pairs: Vec<(u64, u64)>, f: &dyn Fn(u64) -> u64| -> Vec<(u64, u64)> {
            let mut out: Vec<_> = pairs.into_iter().map(|(id, s)| (f(id), s)).collect();
            out.sort_unstable();
            out
        };
        prop_assert_eq!(relabel(support_by_id(&g, Side::U), &|id| id * 7 + shift), support_by_id(&h, Side::U));
        prop_assert_eq!(relabel(support_by_id(&g, Side::V), &|id| id + 3 * shift), support_by_id(&h, Side::V));
    }

    #[test]
    fn transposing_swaps_sides(g in dense_graphs()) {
        let s = count_per_vertex(&g).unwrap();
        let t = count_per_vertex(&g.transposed()).unwrap();
        prop_assert_eq!(s.u, t.v);
        prop_assert_eq!(s.v, t.u);
    }

    #[test]
    fn removing_an_edge_never_raises_support(edges in edge_lists(8, 8, 50), pick in any::<prop::sample::Index>()) {
        let g = build_graph(&edges).unwrap();
        let all = g.original_edges();
        prop_assume!(all.len() >= 2);
        let drop = all[pick.index(all.len())];
        let rest: Vec<_> = all.iter().copied().filter(|&e| e != drop).collect();
        let h = build_graph(&rest).unwrap();
        let before: std::collections::HashMap<_, _> = support_by_id(&g, Side::U).into_iter().collect();
        for (id, s) in support_by_id(&h, Side::U) {
            prop_assert!(s <= before[&id]);
        }
        prop_assert!(count_per_vertex(&h).unwrap().butterflies() <= count_per_vertex(&g).unwrap().butterflies());
    }

    #[test]
    fn wedge_trace_matches_priority_wedges(g in dense_graphs()) {
        // Every traced wedge satisfies the rank constraint, so the traversal is
        // bounded by the total number of wedges with either endpoint.
        let traced = count_per_vertex_traced(&g).unwrap();
        let bound = g.wedge_counts(Side::U).total() + g.wedge_counts(Side::V).total();
        prop_assert!(traced.wedges <= bound);
    }

    #[test]
    fn induced_parts_cover_the_graph(g in dense_graphs(), cut in 0usize..9) {
        let n = g.u_count();
        let cut = cut.min(n);
        let left: Vec<u32> = (0..cut as u32).collect();
        let right: Vec<u32> = (cut as u32..n as u32).collect();
        let mut union = BTreeSet::new();
        for part in [&left, &right] {
            let h = g.induce_subgraph(part).unwrap();
            prop_assert_eq!(h.u_count(), part.len());
            prop_assert_eq!(h.v_count(), g.v_count());
            for (u, v) in h.original_edges() {
                prop_assert!(union.insert((u, v)));
            }
        }
        let all: BTreeSet<_> = g.original_edges().into_iter().collect();
        prop_assert_eq!(union, all);
    }

    #[test]
    fn induced_subgraph_keeps_inner_butterflies(g in dense_graphs(), mask in prop::collection::vec(any::<bool>(), 9)) {
        let subset: Vec<u32> = (0..g.u_count() as u32).filter(|&u| mask[u as usize]).collect();
        let h = g.induce_subgraph(&subset).unwrap();
        let sub_ids: BTreeSet<u64> = subset.iter().map(|&u| g.ids(Side::U)[u as usize]).collect();
        let edges: Vec<_> = g.original_edges().into_iter().filter(|(u, _)| sub_ids.contains(u)).collect();
        if edges.is_empty() {
            prop_assert_eq!(count_per_vertex(&h).unwrap().butterflies(), 0);
        } else {
            let direct = build_graph(&edges).unwrap();
            prop_assert_eq!(count_per_vertex(&h).unwrap().butterflies(), count_per_vertex(&direct).unwrap().butterflies());
            prop_assert_eq!(support_by_id(&h, Side::U), support_by_id(&direct, Side::U));
        }
    }

    #[test]
    fn compaction_filters_dead_and_is_idempotent(g in dense_graphs(), mask in prop::collection::vec(any::<bool>(), 9)) {
        let mut view = PeelableView::new(&g);
        for u in 0..g.u_count() as u32 {
            if mask[u as usize] {
                view.kill(u);
            }
        }
        let expected: Vec<(u32, u32)> = {
            let mut e: Vec<_> = g.edges().filter(|&(u, _)| view.is_alive(u)).collect();
            e.sort_unstable();
            e
        };
        prop_assert_eq!(view.effective_edges(), expected.clone());
        view.compact();
        let once: Vec<Vec<u32>> = (0..g.v_count() as u32).map(|v| view.v_storage(v).to_vec()).collect();
        for (v, list) in once.iter().enumerate() {
            prop_assert!(list.iter().all(|&u| view.is_alive(u)));
            let want: Vec<u32> = g.v_neighbors(v as u32).iter().copied().filter(|&u| view.is_alive(u)).collect();
            prop_assert_eq!(list, &want);
        }
        view.compact();
        let twice: Vec<Vec<u32>> = (0..g.v_count() as u32).map(|v| view.v_storage(v).to_vec()).collect();
        prop_assert_eq!(once, twice);
        prop_assert_eq!(view.effective_edges(), expected);
    }
}

#[test]
fn every_edge_once_in_both_directions() {
    let g = build_graph(&[(3, 1), (1, 1), (3, 2), (8, 1)]).unwrap();
    let mut from_u: Vec<(u32, u32)> = g.edges().collect();
    let mut from_v: Vec<(u32, u32)> = (0..g.v_count() as u32)
        .flat_map(|v| g.v_neighbors(v).iter().map(move |&u| (u, v)))
        .collect();
    from_u.sort_unstable();
    from_v.sort_unstable();
    assert_eq!(from_u, from_v);
    assert_eq!(from_u.len(), 4);
}

#[test]
fn live_graph_labels_point_back_to_the_view() {
    let g = build_graph(&[(0, 0), (0, 1), (1, 0), (1, 1), (2, 0), (2, 1)]).unwrap();
    let mut view = PeelableView::new(&g);
    view.kill(1);
    let live = view.live_graph().unwrap();
    let mut ids = live.ids(Side::U).to_vec();
    ids.sort_unstable();
    assert_eq!(ids, vec![0, 2]);
    assert_eq!(count_per_vertex(&live).unwrap().butterflies(), 1);
}
