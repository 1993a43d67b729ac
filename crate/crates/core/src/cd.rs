// SPDX-License-Identifier: Apache-2.0

//! Coarse-grained decomposition.
//!
//! Splits the peeled side into subsets whose tip numbers fall in disjoint,
//! increasing ranges `[θ(i), θ(i+1))`. Each range is peeled wholesale: every
//! iteration removes *all* live vertices whose support lies in the range, so
//! the number of synchronization rounds tracks the number of cascades rather
//! than the number of distinct tip values.
//!
//! Range upper bounds are picked so that every subset carries roughly the same
//! wedge mass (`w[u]` in the full graph), with the target adapted after each
//! subset from the remaining mass and the previous overshoot.

use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;

use crate::bigraph::{BipartiteGraph, PeelableView, Side};
use crate::butterfly::count_per_vertex_traced;
use crate::error::{Result, TipError};
use crate::peel::{peel_batch, PeelStats, Phase, ScratchPool};
use crate::thread_pool;

/// Default number of coarse subsets.
pub const DEFAULT_PARTITIONS: usize = 150;

/// Configuration shared by the coarse and fine phases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReceiptOptions {
    pub partitions: usize,
    pub workers: usize,
    /// Hybrid peel/recount decisions during coarse peeling.
    pub huc: bool,
    /// Hybrid decisions inside fine peeling. Rarely pays off, so off by default.
    pub fd_huc: bool,
    /// Periodic compaction of peeled vertices out of the adjacency.
    pub dgm: bool,
    /// Wedges between compactions in the coarse phase; `None` means `|E|`.
    pub dgm_threshold: Option<u64>,
}

impl Default for ReceiptOptions {
    fn default() -> Self {
        ReceiptOptions {
            partitions: DEFAULT_PARTITIONS,
            workers: std::thread::available_parallelism()
                .map(|n| n.get())
                .unwrap_or(1),
            huc: true,
            fd_huc: false,
            dgm: true,
            dgm_threshold: None,
        }
    }
}

impl ReceiptOptions {
    pub fn validate(&self) -> Result<()> {
        if self.partitions < 1 {
            return Err(TipError::InvalidConfig(
                "partition count must be at least 1".into(),
            ));
        }
        if self.workers < 1 {
            return Err(TipError::InvalidConfig(
                "worker count must be at least 1".into(),
            ));
        }
        if self.dgm_threshold == Some(0) {
            return Err(TipError::InvalidConfig(
                "compaction threshold must be positive".into(),
            ));
        }
        Ok(())
    }
}

/// Output of the coarse phase.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RangePartition {
    /// Side whose vertices were partitioned; labels below refer to the graph
    /// oriented towards it.
    pub side: Side,
    /// `θ(1) = 0 < θ(2) < … < θ(P+1)`.
    pub boundaries: Vec<u64>,
    /// Vertex subsets, each sorted ascending.
    pub subsets: Vec<Vec<u32>>,
    /// Support of each vertex right before its subset started peeling.
    pub support_init: Vec<u64>,
    /// `Σ w[u]` per subset.
    pub subset_wedges: Vec<u64>,
}

impl RangePartition {
    pub fn len(&self) -> usize {
        self.subsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subsets.is_empty()
    }

    /// Half-open tip range of subset `i`.
    pub fn range(&self, i: usize) -> (u64, u64) {
        (self.boundaries[i], self.boundaries[i + 1])
    }

    /// Subset index of every vertex.
    pub fn membership(&self) -> Vec<usize> {
        let mut out = vec![usize::MAX; self.support_init.len()];
        for (i, subset) in self.subsets.iter().enumerate() {
            for &u in subset {
                out[u as usize] = i;
            }
        }
        out
    }
}

/// Scaled average of the wedge mass still to be partitioned.
pub fn adaptive_target(remaining_wedges: u64, remaining_subsets: usize, prev_scale: f64) -> f64 {
    let scale = if prev_scale > 0.0 {
        prev_scale.min(1.0)
    } else {
        1.0
    };
    remaining_wedges as f64 / remaining_subsets.max(1) as f64 * scale
}

/// Upper bound of the next range: one past the smallest support value whose
/// cumulative wedge mass (over vertices with support `<=` it) reaches `tgt`.
/// If the whole mass stays below `tgt`, one past the largest support.
///
/// `supports[i]` and `wedges[i]` describe the same live vertex.
pub fn find_hi(supports: &[u64], wedges: &[u64], tgt: f64) -> u64 {
    assert_eq!(supports.len(), wedges.len());
    let pairs: Vec<(u64, u64)> = supports
        .iter()
        .copied()
        .zip(wedges.iter().copied())
        .collect();
    find_hi_pairs(pairs, tgt)
}

fn find_hi_pairs(mut pairs: Vec<(u64, u64)>, tgt: f64) -> u64 {
    pairs.par_sort_unstable_by_key(|&(s, _)| s);
    let mut acc = 0u64;
    let mut i = 0;
    while i < pairs.len() {
        let s = pairs[i].0;
        while i < pairs.len() && pairs[i].0 == s {
            acc += pairs[i].1;
            i += 1;
        }
        if acc as f64 >= tgt {
            return s + 1;
        }
    }
    pairs.last().map_or(1, |&(s, _)| s + 1)
}

/// Result of the hybrid update decision.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HucAction {
    Peel,
    Recount,
}

/// `Σ_{u ∈ active} Σ_{v ∈ N(u)} d_v` over the live graph.
pub fn peel_cost(active: &[u32], view: &PeelableView<'_>) -> u64 {
    let g = view.graph();
    active
        .iter()
        .map(|&u| {
            g.u_neighbors(u)
                .iter()
                .map(|&v| view.live_v_degree(v) as u64)
                .sum::<u64>()
        })
        .sum()
}

/// `Σ_{(u,v) live} min(d_u, d_v)`: the traversal bound of a fresh count.
pub fn recount_cost(view: &PeelableView<'_>) -> u64 {
    let g = view.graph();
    view.live_vertices()
        .map(|u| {
            let du = g.u_degree(u);
            g.u_neighbors(u)
                .iter()
                .map(|&v| du.min(view.live_v_degree(v)) as u64)
                .sum::<u64>()
        })
        .sum()
}

/// Recount iff peeling `active` would cost strictly more than recounting the
/// live graph. Both costs are taken before `active` is removed.
pub fn huc_decide(active: &[u32], view: &PeelableView<'_>) -> HucAction {
    let peel = peel_cost(active, view);
    // every live edge contributes at least 1 to the recount cost
    if peel <= view.live_edges() {
        return HucAction::Peel;
    }
    if peel > recount_cost(view) {
        HucAction::Recount
    } else {
        HucAction::Peel
    }
}

/// Partitions the vertices of `side` into tip-number ranges.
pub fn coarse_decompose(
    g: &BipartiteGraph,
    side: Side,
    opts: &ReceiptOptions,
) -> Result<(RangePartition, PeelStats)> {
    opts.validate()?;
    let graph = g.oriented(side);
    let pool = thread_pool(opts.workers)?;
    pool.install(|| {
        let mut stats = PeelStats::default();
        let counted = stats.timed(Phase::Count, |_| count_per_vertex_traced(&graph))?;
        stats.count_wedges += counted.wedges;
        let part = stats.timed(Phase::Cd, |st| {
            coarse_peel(&graph, side, counted.support.u, opts, st)
        })?;
        Ok((part, stats))
    })
}

fn coarse_peel(
    graph: &BipartiteGraph,
    side: Side,
    initial: Vec<u64>,
    opts: &ReceiptOptions,
    stats: &mut PeelStats,
) -> Result<RangePartition> {
    let n = graph.u_count();
    let supports: Vec<AtomicU64> = initial.into_iter().map(AtomicU64::new).collect();
    let load = |u: u32| supports[u as usize].load(Ordering::Relaxed);
    let w = graph.wedge_counts(Side::U);
    let scratch = ScratchPool::new(rayon::current_num_threads(), n);
    let threshold = opts
        .dgm_threshold
        .unwrap_or(graph.edge_count() as u64)
        .max(1);

    let mut view = PeelableView::new(graph);
    let mut live: Vec<u32> = (0..n as u32).collect();
    let mut support_init = vec![0u64; n];
    let mut boundaries = vec![0u64];
    let mut subsets: Vec<Vec<u32>> = Vec::new();
    let mut subset_wedges = Vec::new();
    let mut remaining_wedges = w.total();
    let mut scale = 1.0f64;

    while !live.is_empty() && subsets.len() < opts.partitions {
        let lo = *boundaries.last().expect("boundaries start at 0");
        for &u in &live {
            support_init[u as usize] = load(u);
        }
        let tgt = adaptive_target(remaining_wedges, opts.partitions - subsets.len(), scale);
        let hi = find_hi_pairs(
            live.par_iter().map(|&u| (load(u), w[u as usize])).collect(),
            tgt,
        );

        let mut active: Vec<u32> = live.par_iter().copied().filter(|&u| load(u) < hi).collect();
        let mut members = Vec::new();
        while !active.is_empty() {
            stats.sync_rounds += 1;
            let action = if opts.huc {
                huc_decide(&active, &view)
            } else {
                HucAction::Peel
            };
            for &u in &active {
                view.kill(u);
            }
            members.extend_from_slice(&active);
            match action {
                HucAction::Peel => {
                    let (crossed, wedges) = peel_batch(&active, lo, hi, &supports, &view, &scratch);
                    stats.peel_wedges += wedges;
                    view.record_wedges(wedges);
                    active = crossed;
                }
                HucAction::Recount => {
                    let fresh = view.live_graph()?;
                    let counted = count_per_vertex_traced(&fresh)?;
                    stats.count_wedges += counted.wedges;
                    stats.recount_invocations += 1;
                    for (local, &label) in fresh.ids(Side::U).iter().enumerate() {
                        supports[label as usize]
                            .store(counted.support.u[local].max(lo), Ordering::Relaxed);
                    }
                    if opts.dgm {
                        view.compact();
                    }
                    live.retain(|&u| view.is_alive(u));
                    active = live.par_iter().copied().filter(|&u| load(u) < hi).collect();
                }
            }
            if opts.dgm {
                view.maybe_compact(threshold);
            }
        }
        live.retain(|&u| view.is_alive(u));

        members.sort_unstable();
        let mass: u64 = members.iter().map(|&u| w[u as usize]).sum();
        scale = if mass > 0 {
            (tgt / mass as f64).min(1.0)
        } else {
            1.0
        };
        remaining_wedges -= mass;
        boundaries.push(hi);
        subsets.push(members);
        subset_wedges.push(mass);
    }

    // Whatever survives the last range becomes one final subset.
    if !live.is_empty() {
        let mut max = 0;
        for &u in &live {
            let s = load(u);
            support_init[u as usize] = s;
            max = max.max(s);
        }
        subset_wedges.push(live.iter().map(|&u| w[u as usize]).sum());
        boundaries.push(max + 1);
        subsets.push(live);
    }

    Ok(RangePartition {
        side,
        boundaries,
        subsets,
        support_init,
        subset_wedges,
    })
}
