// SPDX-License-Identifier: Apache-2.0

//! Batch-parallel peeling needs one synchronization round per distinct
//! support level; the two-phase algorithm needs a handful.

use tipdecomp::genbench::{generate, GenSpec};
use tipdecomp::{coarse_decompose, tip_decompose_bup, tip_decompose_parb, ReceiptOptions, Side};

fn main() -> tipdecomp::Result<()> {
    let blocks = (0..30).map(|i| (2, 3 + i)).collect();
    let g = generate(&GenSpec::BlockChain { blocks })?;

    let (parb, parb_stats) = tip_decompose_parb(&g, Side::U, 2)?;
    assert_eq!(parb, tip_decompose_bup(&g, Side::U)?.0);
    let opts = ReceiptOptions {
        partitions: 4,
        workers: 2,
        ..Default::default()
    };
    let (_, cd_stats) = coarse_decompose(&g, Side::U, &opts)?;

    println!("batch peeling: {} rounds", parb_stats.sync_rounds);
    println!("coarse ranges (P = 4): {} rounds", cd_stats.sync_rounds);
    Ok(())
}
