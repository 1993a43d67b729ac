// SPDX-License-Identifier: Apache-2.0

//! Peeling: the support `update` kernel, sequential bottom-up peeling (BUP),
//! the batch-parallel baseline (ParB), and a recount-from-scratch oracle.

mod queue;
mod stats;

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;

use rayon::prelude::*;

pub use queue::MinSupportQueue;
pub use stats::{PeelStats, Phase};

use crate::bigraph::{BipartiteGraph, PeelableView, Side};
use crate::butterfly::{choose2, count_per_vertex_traced, naive_counts};
use crate::cd::{huc_decide, HucAction};
use crate::error::Result;
use crate::thread_pool;

/// Tip numbers of the peeled side, indexed by internal label.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TipResult {
    pub theta: Vec<u64>,
    pub theta_max: u64,
}

impl TipResult {
    pub fn new(theta: Vec<u64>) -> Self {
        let theta_max = theta.iter().copied().max().unwrap_or(0);
        TipResult { theta, theta_max }
    }
}

/// Scratch for [`update`]: a dense 2-hop counter array with a touched list.
#[derive(Debug, Clone)]
pub struct UpdateScratch {
    shared: Vec<u32>,
    touched: Vec<u32>,
    changed: Vec<u32>,
}

impl UpdateScratch {
    pub fn new(u_count: usize) -> Self {
        UpdateScratch {
            shared: vec![0; u_count],
            touched: Vec::new(),
            changed: Vec::new(),
        }
    }

    /// Counts common neighbours between `u` and every live `u' != u`.
    /// Returns the number of stored entries scanned.
    fn gather(&mut self, view: &PeelableView<'_>, u: u32) -> u64 {
        let mut wedges = 0u64;
        for &v in view.graph().u_neighbors(u) {
            let list = view.v_storage(v);
            wedges += list.len() as u64;
            for &x in list {
                if x == u || !view.is_alive(x) {
                    continue;
                }
                let slot = &mut self.shared[x as usize];
                if *slot == 0 {
                    self.touched.push(x);
                }
                *slot += 1;
            }
        }
        wedges
    }

    /// Drains the gathered counts as `(u', shared butterflies)`.
    fn drain(&mut self, mut f: impl FnMut(u32, u64)) {
        for &x in &self.touched {
            let c = std::mem::take(&mut self.shared[x as usize]) as u64;
            if c >= 2 {
                f(x, choose2(c));
            }
        }
        self.touched.clear();
    }
}

/// Applies the effect of peeling `u` to the supports of its live 2-hop
/// neighbours: `s[u'] ← max(floor, s[u'] − C(c, 2))`. Returns the vertices
/// whose support was decremented.
pub fn update<'s>(
    u: u32,
    floor: u64,
    supports: &mut [u64],
    view: &PeelableView<'_>,
    scratch: &'s mut UpdateScratch,
    stats: &mut PeelStats,
) -> &'s [u32] {
    stats.peel_wedges += scratch.gather(view, u);
    let mut changed = std::mem::take(&mut scratch.changed);
    changed.clear();
    scratch.drain(|x, dec| {
        let s = &mut supports[x as usize];
        *s = s.saturating_sub(dec).max(floor);
        changed.push(x);
    });
    scratch.changed = changed;
    &scratch.changed
}

/// Concurrent form of [`update`] over atomic supports. Vertices whose support
/// drops from `>= hi` to `< hi` are appended to `crossed`; each crossing is
/// observed by exactly one caller. Returns the wedges scanned.
pub(crate) fn update_atomic(
    u: u32,
    floor: u64,
    hi: u64,
    supports: &[AtomicU64],
    view: &PeelableView<'_>,
    scratch: &mut UpdateScratch,
    crossed: &mut Vec<u32>,
) -> u64 {
    let wedges = scratch.gather(view, u);
    scratch.drain(|x, dec| {
        let step = |s: u64| s.saturating_sub(dec).max(floor);
        let res = supports[x as usize].fetch_update(Ordering::Relaxed, Ordering::Relaxed, |s| {
            (s > floor).then(|| step(s))
        });
        if let Ok(prev) = res {
            if prev >= hi && step(prev) < hi {
                crossed.push(x);
            }
        }
    });
    wedges
}

/// One [`UpdateScratch`] per pool thread.
pub(crate) struct ScratchPool {
    slots: Vec<Mutex<UpdateScratch>>,
}

impl ScratchPool {
    pub(crate) fn new(threads: usize, u_count: usize) -> Self {
        ScratchPool {
            slots: (0..threads.max(1))
                .map(|_| Mutex::new(UpdateScratch::new(u_count)))
                .collect(),
        }
    }

    fn with<R>(&self, f: impl FnOnce(&mut UpdateScratch) -> R) -> R {
        let i = rayon::current_thread_index().unwrap_or(0) % self.slots.len();
        let mut slot = self.slots[i].lock().unwrap_or_else(|e| e.into_inner());
        f(&mut slot)
    }
}

/// Peels `batch` concurrently (all already marked dead in `view`). Returns
/// the vertices that crossed below `hi`, sorted, and the wedges scanned.
pub(crate) fn peel_batch(
    batch: &[u32],
    floor: u64,
    hi: u64,
    supports: &[AtomicU64],
    view: &PeelableView<'_>,
    scratch: &ScratchPool,
) -> (Vec<u32>, u64) {
    let (mut crossed, wedges) = batch
        .par_iter()
        .fold(
            || (Vec::new(), 0u64),
            |(mut crossed, wedges), &u| {
                let w =
                    scratch.with(|s| update_atomic(u, floor, hi, supports, view, s, &mut crossed));
                (crossed, wedges + w)
            },
        )
        .reduce(
            || (Vec::new(), 0),
            |(mut a, wa), (b, wb)| {
                a.extend(b);
                (a, wa + wb)
            },
        );
    crossed.par_sort_unstable();
    (crossed, wedges)
}

/// Knobs of the sequential peeling loop shared by BUP and fine decomposition.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct SequentialOptions<'a> {
    /// Compact the view every this many wedges.
    pub dgm_threshold: Option<u64>,
    /// Enables hybrid recounting; holds each vertex's butterflies with
    /// vertices outside the graph being peeled.
    pub external: Option<&'a [u64]>,
}

/// Bottom-up peeling of every `U` vertex of `graph` from the given supports.
/// Returns tip numbers by label.
pub(crate) fn peel_sequential(
    graph: &BipartiteGraph,
    mut supports: Vec<u64>,
    opts: SequentialOptions<'_>,
    stats: &mut PeelStats,
) -> Result<Vec<u64>> {
    let n = graph.u_count();
    let mut theta = vec![0u64; n];
    let mut view = PeelableView::new(graph);
    let mut queue = MinSupportQueue::new(&supports);
    let mut scratch = UpdateScratch::new(n);
    let mut floor = 0u64;

    while let Some((u, s)) = queue.pop_min() {
        debug_assert!(s >= floor);
        floor = floor.max(s);
        theta[u as usize] = floor;

        let action = match opts.external {
            Some(_) => huc_decide(&[u], &view),
            None => HucAction::Peel,
        };
        view.kill(u);
        match (action, opts.external) {
            (HucAction::Recount, Some(external)) => {
                let live = view.live_graph()?;
                let counted = count_per_vertex_traced(&live)?;
                stats.count_wedges += counted.wedges;
                stats.recount_invocations += 1;
                for (local, &label) in live.ids(Side::U).iter().enumerate() {
                    let x = label as u32;
                    let s = (counted.support.u[local] + external[x as usize]).max(floor);
                    supports[x as usize] = s;
                    queue.set_key(x, s);
                }
                if opts.dgm_threshold.is_some() {
                    view.compact();
                }
            }
            _ => {
                let before = stats.peel_wedges;
                for &x in update(u, floor, &mut supports, &view, &mut scratch, stats) {
                    queue.set_key(x, supports[x as usize]);
                }
                let wedges = stats.peel_wedges - before;
                if let Some(threshold) = opts.dgm_threshold {
                    view.record_wedges(wedges);
                    view.maybe_compact(threshold);
                }
            }
        }
    }
    Ok(theta)
}

/// Sequential bottom-up peeling (BUP). Single-threaded throughout.
pub fn tip_decompose_bup(g: &BipartiteGraph, side: Side) -> Result<(TipResult, PeelStats)> {
    let graph = g.oriented(side);
    let pool = thread_pool(1)?;
    pool.install(|| {
        let mut stats = PeelStats::default();
        let counted = stats.timed(Phase::Count, |_| count_per_vertex_traced(&graph))?;
        stats.count_wedges += counted.wedges;
        let theta = stats.timed(Phase::Peel, |st| {
            peel_sequential(&graph, counted.support.u, SequentialOptions::default(), st)
        })?;
        Ok((TipResult::new(theta), stats))
    })
}

/// Batch-parallel peeling (ParB): every round peels all live vertices of
/// globally minimum support at once. One synchronization round per batch.
pub fn tip_decompose_parb(
    g: &BipartiteGraph,
    side: Side,
    workers: usize,
) -> Result<(TipResult, PeelStats)> {
    let graph = g.oriented(side);
    let pool = thread_pool(workers)?;
    pool.install(|| {
        let mut stats = PeelStats::default();
        let counted = stats.timed(Phase::Count, |_| count_per_vertex_traced(&graph))?;
        stats.count_wedges += counted.wedges;
        let n = graph.u_count();
        let supports: Vec<AtomicU64> = counted.support.u.into_iter().map(AtomicU64::new).collect();
        let scratch = ScratchPool::new(rayon::current_num_threads(), n);
        let mut view = PeelableView::new(&graph);
        let mut theta = vec![0u64; n];
        let mut live: Vec<u32> = (0..n as u32).collect();
        let mut floor = 0u64;

        stats.timed(Phase::Peel, |stats| {
            while !live.is_empty() {
                let load = |u: &u32| supports[*u as usize].load(Ordering::Relaxed);
                let min = live.par_iter().map(load).min().unwrap_or(0);
                let batch: Vec<u32> = live
                    .par_iter()
                    .copied()
                    .filter(|u| load(u) == min)
                    .collect();
                floor = floor.max(min);
                for &u in &batch {
                    theta[u as usize] = floor;
                    view.kill(u);
                }
                stats.sync_rounds += 1;
                let (_, wedges) = peel_batch(&batch, floor, 0, &supports, &view, &scratch);
                stats.peel_wedges += wedges;
                live.retain(|&u| view.is_alive(u));
            }
        });
        Ok((TipResult::new(theta), stats))
    })
}

/// Reference tip numbers by recounting from scratch after every deletion.
///
/// Repeatedly counts butterflies of the live subgraph naively, deletes the
/// live vertex with the fewest (smallest label on ties), and assigns it the
/// running maximum of those minima. Cubic-ish; for small graphs only.
pub fn tip_oracle_recount(g: &BipartiteGraph, side: Side) -> TipResult {
    let graph = g.oriented(side);
    let n = graph.u_count();
    let adj: Vec<Vec<u32>> = (0..n as u32)
        .map(|u| graph.u_neighbors(u).to_vec())
        .collect();
    let mut live: Vec<u32> = (0..n as u32).collect();
    let mut theta = vec![0u64; n];
    let mut k = 0u64;
    while !live.is_empty() {
        let sub: Vec<&[u32]> = live.iter().map(|&u| adj[u as usize].as_slice()).collect();
        let counts = naive_counts(&sub, graph.v_count());
        let (pos, &c) = counts
            .u
            .iter()
            .enumerate()
            .min_by_key(|&(i, &c)| (c, live[i]))
            .expect("live set is non-empty");
        k = k.max(c);
        theta[live[pos] as usize] = k;
        live.remove(pos);
    }
    TipResult::new(theta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bigraph::build_graph;

    fn complete(a: u64, b: u64) -> BipartiteGraph {
        let edges: Vec<_> = (0..a).flat_map(|u| (0..b).map(move |v| (u, v))).collect();
        build_graph(&edges).unwrap()
    }

    #[test]
    fn update_on_k33() {
        let g = complete(3, 3);
        for (floor, expect) in [(0, 3), (4, 4)] {
            let mut view = PeelableView::new(&g);
            let mut supports = vec![6u64; 3];
            let mut scratch = UpdateScratch::new(3);
            let mut stats = PeelStats::default();
            view.kill(0);
            let touched = update(0, floor, &mut supports, &view, &mut scratch, &mut stats).to_vec();
            assert_eq!(touched, vec![1, 2]);
            assert_eq!(&supports[1..], &[expect, expect]);
            // each of the 3 neighbours stores all 3 U vertices
            assert_eq!(stats.peel_wedges, 9);
        }
    }

    #[test]
    fn update_of_isolated_vertex_touches_nothing() {
        let g = build_graph(&[(0, 0), (1, 1), (1, 2), (2, 1), (2, 2)]).unwrap();
        let u = g.relabel_map(Side::U)[&0];
        let mut view = PeelableView::new(&g);
        let mut supports = count_per_vertex_traced(&g).unwrap().support.u;
        let before = supports.clone();
        let mut scratch = UpdateScratch::new(3);
        view.kill(u);
        let touched = update(
            u,
            0,
            &mut supports,
            &view,
            &mut scratch,
            &mut PeelStats::default(),
        )
        .len();
        assert_eq!(touched, 0);
        assert_eq!(supports, before);
    }

    #[test]
    fn small_fixed_graphs() {
        for (g, expect) in [
            (complete(2, 2), vec![1, 1]),
            (complete(3, 3), vec![6, 6, 6]),
        ] {
            assert_eq!(tip_decompose_bup(&g, Side::U).unwrap().0.theta, expect);
            assert_eq!(tip_oracle_recount(&g, Side::U).theta, expect);
            assert_eq!(tip_decompose_parb(&g, Side::U, 2).unwrap().0.theta, expect);
        }
        let star = build_graph(&[(0, 0), (0, 1), (1, 1), (2, 1)]).unwrap();
        assert_eq!(
            tip_decompose_bup(&star, Side::U).unwrap().0.theta,
            vec![0, 0, 0]
        );
    }

    #[test]
    fn parb_on_k33_is_one_round() {
        let (res, stats) = tip_decompose_parb(&complete(3, 3), Side::U, 2).unwrap();
        assert_eq!(res.theta, vec![6, 6, 6]);
        assert_eq!(stats.sync_rounds, 1);
    }

    #[test]
    fn parb_rounds_cover_distinct_tips() {
        // Five disjoint K_{2,b}: tips C(b, 2) for b = 2..=6.
        let mut edges = Vec::new();
        for (i, b) in (2u64..=6).enumerate() {
            let i = i as u64;
            for u in 0..2 {
                for v in 0..b {
                    edges.push((10 * i + u, 100 * i + v));
                }
            }
        }
        let g = build_graph(&edges).unwrap();
        let (res, stats) = tip_decompose_parb(&g, Side::U, 2).unwrap();
        let mut distinct = res.theta.clone();
        distinct.sort_unstable();
        distinct.dedup();
        assert_eq!(distinct, vec![1, 3, 6, 10, 15]);
        assert!(stats.sync_rounds >= 5);
    }
}
