// SPDX-License-Identifier: Apache-2.0

//! Full two-phase decomposition with tip output and run statistics, verified
//! against bottom-up peeling.

use std::io::stdout;

use tipdecomp::genbench::{generate, GenSpec};
use tipdecomp::io::{write_stats, write_tips};
use tipdecomp::{tip_decompose_bup, tip_decompose_receipt, ReceiptOptions, Side};

fn main() -> tipdecomp::Result<()> {
    let g = generate(&GenSpec::RandomBipartite {
        u: 20,
        v: 30,
        p: 0.3,
        seed: 1,
    })?;
    let side = Side::V;
    let opts = ReceiptOptions {
        partitions: 8,
        ..Default::default()
    };
    let run = tip_decompose_receipt(&g, side, &opts)?;
    assert_eq!(run.tips, tip_decompose_bup(&g, side)?.0);

    write_tips(&run.tips, g.ids(side), stdout())?;
    write_stats(&run.stats, Some(&run.partition), stdout())?;
    Ok(())
}
