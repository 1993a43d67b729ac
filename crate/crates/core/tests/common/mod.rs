// SPDX-License-Identifier: Apache-2.0
#![allow(dead_code)]

use proptest::prelude::*;
use tipdecomp::io::write_tips;
use tipdecomp::{BipartiteGraph, Side, TipResult};

/// Tip output exactly as the CLI writes it.
pub fn tip_text(g: &BipartiteGraph, side: Side, tips: &TipResult) -> String {
    let mut out = Vec::new();
    write_tips(tips, g.ids(side), &mut out).unwrap();
    String::from_utf8(out).unwrap()
}

/// Random small edge lists with possible duplicates.
pub fn edge_lists(
    max_u: u64,
    max_v: u64,
    max_edges: usize,
) -> impl Strategy<Value = Vec<(u64, u64)>> {
    prop::collection::vec((0..max_u, 0..max_v), 1..max_edges)
}

/// Dense-ish random graphs, which actually contain butterflies.
pub fn dense_graphs() -> impl Strategy<Value = BipartiteGraph> {
    (2u64..9, 2u64..9, prop::collection::vec(any::<bool>(), 64)).prop_filter_map(
        "no edges",
        |(a, b, bits)| {
            let edges: Vec<(u64, u64)> = (0..a)
                .flat_map(|u| (0..b).map(move |v| (u, v)))
                .filter(|&(u, v)| bits[(u * 8 + v) as usize])
                .collect();
            tipdecomp::build_graph(&edges).ok()
        },
    )
}

pub fn both_sides() -> [Side; 2] {
    [Side::U, Side::V]
}
