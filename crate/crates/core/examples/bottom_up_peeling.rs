// SPDX-License-Identifier: Apache-2.0

//! Sequential bottom-up peeling on a chain of complete blocks, where each
//! block forms its own tip.

use tipdecomp::genbench::{generate, GenSpec};
use tipdecomp::{tip_decompose_bup, Side};

fn main() -> tipdecomp::Result<()> {
    let g = generate(&GenSpec::BlockChain {
        blocks: vec![(2, 3), (3, 3), (2, 5)],
    })?;
    let (tips, stats) = tip_decompose_bup(&g, Side::U)?;
    for (label, &id) in g.ids(Side::U).iter().enumerate() {
        println!("u{id}: tip {}", tips.theta[label]);
    }
    println!(
        "max tip {}, {} wedges traversed",
        tips.theta_max,
        stats.wedges_traversed()
    );
    Ok(())
}
