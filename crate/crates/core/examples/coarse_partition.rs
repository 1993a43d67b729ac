// SPDX-License-Identifier: Apache-2.0

//! Splits the vertices into tip-number ranges and shows that every exact tip
//! number lands inside its subset's range.

use tipdecomp::genbench::{generate, GenSpec};
use tipdecomp::{coarse_decompose, tip_decompose_bup, ReceiptOptions, Side};

fn main() -> tipdecomp::Result<()> {
    let g = generate(&GenSpec::RandomBipartite {
        u: 60,
        v: 40,
        p: 0.2,
        seed: 17,
    })?;
    let opts = ReceiptOptions {
        partitions: 5,
        workers: 2,
        ..Default::default()
    };
    let (part, stats) = coarse_decompose(&g, Side::U, &opts)?;
    let exact = tip_decompose_bup(&g, Side::U)?.0.theta;

    for (i, subset) in part.subsets.iter().enumerate() {
        let (lo, hi) = part.range(i);
        let tips: Vec<u64> = subset.iter().map(|&u| exact[u as usize]).collect();
        assert!(tips.iter().all(|&t| lo <= t && t < hi));
        println!(
            "subset {i}: range [{lo}, {hi}), {} vertices, wedge estimate {}",
            subset.len(),
            part.subset_wedges[i]
        );
    }
    println!(
        "{} synchronization rounds, {} recounts",
        stats.sync_rounds, stats.recount_invocations
    );
    Ok(())
}
