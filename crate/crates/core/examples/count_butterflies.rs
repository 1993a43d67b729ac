// SPDX-License-Identifier: Apache-2.0

//! Per-vertex butterfly counts on a small random graph, checked against
//! naive pairwise enumeration.

use tipdecomp::butterfly::count_per_vertex_traced;
use tipdecomp::genbench::{generate, GenSpec};
use tipdecomp::{count_naive, Side};

fn main() -> tipdecomp::Result<()> {
    let g = generate(&GenSpec::RandomBipartite {
        u: 12,
        v: 10,
        p: 0.4,
        seed: 3,
    })?;
    let counted = count_per_vertex_traced(&g)?;
    assert_eq!(counted.support, count_naive(&g));

    println!(
        "|U| = {}, |V| = {}, |E| = {}",
        g.u_count(),
        g.v_count(),
        g.edge_count()
    );
    println!(
        "butterflies: {} (wedges traversed: {})",
        counted.support.butterflies(),
        counted.wedges
    );
    let mut rows: Vec<(u64, u64)> = g
        .ids(Side::U)
        .iter()
        .copied()
        .zip(counted.support.u.iter().copied())
        .collect();
    rows.sort_unstable();
    for (id, s) in rows {
        println!("u{id}: {s}");
    }
    Ok(())
}
