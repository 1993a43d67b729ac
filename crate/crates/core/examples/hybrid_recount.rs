// SPDX-License-Identifier: Apache-2.0

//! Work saved by recounting instead of peeling a wide low-support layer, and
//! by compacting peeled vertices out of the adjacency.

use tipdecomp::genbench::{generate, GenSpec};
use tipdecomp::{tip_decompose_receipt, ReceiptOptions, Side};

fn main() -> tipdecomp::Result<()> {
    let g = generate(&GenSpec::StarHeavy {
        hubs: 3,
        hub_degree: 25,
        core: 5,
    })?;
    let mut reference = None;
    for (huc, dgm) in [(false, false), (false, true), (true, false), (true, true)] {
        let opts = ReceiptOptions {
            partitions: 4,
            workers: 2,
            huc,
            dgm,
            ..Default::default()
        };
        let run = tip_decompose_receipt(&g, Side::U, &opts)?;
        println!(
            "huc={huc:<5} dgm={dgm:<5} wedges={:>6} recounts={}",
            run.stats.wedges_traversed(),
            run.stats.recount_invocations
        );
        match &reference {
            None => reference = Some(run.tips),
            Some(r) => assert_eq!(r, &run.tips),
        }
    }
    Ok(())
}
