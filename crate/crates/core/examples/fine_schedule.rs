// SPDX-License-Identifier: Apache-2.0

//! Which worker peeled which subset, heaviest first.

use tipdecomp::genbench::{generate, GenSpec};
use tipdecomp::{tip_decompose_receipt, ReceiptOptions, Side};

fn main() -> tipdecomp::Result<()> {
    let g = generate(&GenSpec::RandomBipartite {
        u: 80,
        v: 60,
        p: 0.15,
        seed: 23,
    })?;
    let opts = ReceiptOptions {
        partitions: 6,
        workers: 3,
        ..Default::default()
    };
    let run = tip_decompose_receipt(&g, Side::U, &opts)?;
    for a in &run.trace.assignments {
        println!(
            "pop {}: subset {} on worker {} (estimate {}, traversed {})",
            a.pop_order, a.subset_id, a.worker, a.wedges_estimate, a.wedges_actual
        );
    }
    Ok(())
}
