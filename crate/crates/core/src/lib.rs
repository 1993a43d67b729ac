// SPDX-License-Identifier: Apache-2.0

//! Tip decomposition of bipartite graphs.
//!
//! The tip number `θ_u` of a vertex `u` is the largest `k` such that `u`
//! belongs to a `k`-tip: a maximal vertex-induced subgraph in which every
//! vertex of the decomposed side lies in at least `k` butterflies
//! (2,2-bicliques). This crate computes tip numbers three ways:
//!
//! - [`tip_decompose_bup`]: sequential bottom-up peeling, the reference;
//! - [`tip_decompose_parb`]: peels every minimum-support vertex of a round
//!   concurrently;
//! - [`tip_decompose_receipt`]: two-phase. [`coarse_decompose`] peels whole
//!   support ranges at a time to split the vertices into subsets with
//!   disjoint tip ranges, then [`fine_decompose`] peels each subset's induced
//!   subgraph independently, subsets running in parallel.
//!
//! ```
//! use tipdecomp::{build_graph, tip_decompose_receipt, ReceiptOptions, Side};
//!
//! let g = build_graph(&[(0, 0), (0, 1), (1, 0), (1, 1), (2, 0), (2, 1)])?;
//! let run = tip_decompose_receipt(&g, Side::U, &ReceiptOptions { workers: 2, ..Default::default() })?;
//! assert_eq!(run.tips.theta, vec![2, 2, 2]);
//! # Ok::<(), tipdecomp::TipError>(())
//! ```

pub mod bigraph;
pub mod butterfly;
pub mod cd;
pub mod cli;
pub mod error;
pub mod fd;
pub mod genbench;
pub mod io;
pub mod peel;

pub use bigraph::{build_graph, BipartiteGraph, PeelableView, Side, WedgeCounts};
pub use butterfly::{count_naive, count_per_vertex, shared_butterflies, SupportVector};
pub use cd::{coarse_decompose, RangePartition, ReceiptOptions};
pub use error::{Result, TipError};
pub use fd::{fine_decompose, ScheduleTrace};
pub use peel::{tip_decompose_bup, tip_decompose_parb, tip_oracle_recount, PeelStats, TipResult};

/// Everything a two-phase run produces.
#[derive(Debug, Clone)]
pub struct ReceiptRun {
    pub tips: TipResult,
    pub partition: RangePartition,
    /// Coarse and fine counters combined.
    pub stats: PeelStats,
    pub trace: ScheduleTrace,
}

/// Coarse partitioning followed by fine peeling of every subset.
pub fn tip_decompose_receipt(
    g: &BipartiteGraph,
    side: Side,
    opts: &ReceiptOptions,
) -> Result<ReceiptRun> {
    let (partition, mut stats) = coarse_decompose(g, side, opts)?;
    let (tips, fine, trace) = fd::fine_decompose_traced(g, &partition, opts)?;
    stats.absorb(&fine);
    Ok(ReceiptRun {
        tips,
        partition,
        stats,
        trace,
    })
}

pub(crate) fn thread_pool(workers: usize) -> Result<rayon::ThreadPool> {
    if workers == 0 {
        return Err(TipError::InvalidConfig(
            "worker count must be at least 1".into(),
        ));
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| TipError::InvalidConfig(format!("cannot start {workers} workers: {e}")))
}
