// SPDX-License-Identifier: Apache-2.0

//! Fine-grained decomposition.
//!
//! Every coarse subset `U_i` is peeled to exact tip numbers on its own: the
//! subgraph induced by `(U_i, V)` keeps every butterfly shared inside the
//! subset, and the coarse phase's support snapshot already accounts for the
//! butterflies shared with higher ranges. Subsets are therefore independent
//! tasks. Workers pop them from a shared queue sorted by decreasing wedge
//! estimate (longest-processing-time first).

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use crate::bigraph::BipartiteGraph;
use crate::butterfly::count_per_vertex_traced;
use crate::cd::{RangePartition, ReceiptOptions};
use crate::error::{Result, TipError};
use crate::peel::{peel_sequential, PeelStats, Phase, SequentialOptions, TipResult};
use crate::thread_pool;

/// One coarse subset as a unit of work.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SubsetTask<'a> {
    pub subset_id: usize,
    pub vertices: &'a [u32],
    /// Wedge mass of the subset in the full graph.
    pub wedges: u64,
    /// Lower end of the subset's tip range.
    pub floor: u64,
}

/// A task pop as observed by the scheduler.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment {
    pub subset_id: usize,
    pub worker: usize,
    pub pop_order: usize,
    pub wedges_estimate: u64,
    /// Wedges actually traversed while processing the task.
    pub wedges_actual: u64,
}

/// Assignments in pop order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ScheduleTrace {
    pub assignments: Vec<Assignment>,
}

impl ScheduleTrace {
    pub fn pop_sequence(&self) -> Vec<usize> {
        self.assignments.iter().map(|a| a.subset_id).collect()
    }
}

/// Sorts tasks by decreasing wedge estimate; equal estimates keep subset-id order.
pub fn order_tasks(tasks: &mut [SubsetTask<'_>]) {
    tasks.sort_by(|a, b| b.wedges.cmp(&a.wedges).then(a.subset_id.cmp(&b.subset_id)));
}

/// `(pop index, worker, output)` of a completed task.
type Finished<R> = (usize, usize, Result<(R, u64)>);

/// Runs `work` on every task with `workers` threads pulling from one queue.
///
/// `work(task, worker)` returns its output and the wedges it traversed.
/// Outputs come back in pop order alongside the trace.
pub fn run_tasks<'a, R, F>(
    mut tasks: Vec<SubsetTask<'a>>,
    workers: usize,
    work: F,
) -> Result<(Vec<R>, ScheduleTrace)>
where
    R: Send,
    F: Fn(&SubsetTask<'a>, usize) -> Result<(R, u64)> + Sync,
{
    order_tasks(&mut tasks);
    let pool = thread_pool(workers)?;
    let next = AtomicUsize::new(0);
    let done: Mutex<Vec<Finished<R>>> = Mutex::new(Vec::with_capacity(tasks.len()));
    let tasks = &tasks;
    pool.scope(|s| {
        for worker in 0..workers {
            let (next, done, work) = (&next, &done, &work);
            s.spawn(move |_| loop {
                let pop = next.fetch_add(1, Ordering::Relaxed);
                let Some(task) = tasks.get(pop) else { break };
                let out = work(task, worker);
                done.lock()
                    .unwrap_or_else(|e| e.into_inner())
                    .push((pop, worker, out));
            });
        }
    });

    let mut done = done.into_inner().unwrap_or_else(|e| e.into_inner());
    done.sort_by_key(|&(pop, ..)| pop);
    let mut outputs = Vec::with_capacity(done.len());
    let mut trace = ScheduleTrace::default();
    for (pop, worker, out) in done {
        let (r, wedges_actual) = out?;
        let task = &tasks[pop];
        trace.assignments.push(Assignment {
            subset_id: task.subset_id,
            worker,
            pop_order: pop,
            wedges_estimate: task.wedges,
            wedges_actual,
        });
        outputs.push(r);
    }
    Ok((outputs, trace))
}

/// Pops every task once with no work attached; returns the trace.
pub fn schedule(tasks: Vec<SubsetTask<'_>>, workers: usize) -> Result<ScheduleTrace> {
    run_tasks(tasks, workers, |_, _| Ok(((), 0))).map(|(_, trace)| trace)
}

/// Butterflies each subset vertex shares with vertices outside the subset:
/// `support_init[u] − (count of u inside the induced subgraph)`.
pub fn external_counts(init: &[u64], pristine: &[u64]) -> Vec<u64> {
    init.iter()
        .zip(pristine)
        .map(|(&i, &p)| i.saturating_sub(p))
        .collect()
}

fn check_partition(graph: &BipartiteGraph, part: &RangePartition) -> Result<()> {
    let n = graph.u_count();
    if part.support_init.len() != n {
        return Err(TipError::InvalidPartition(format!(
            "support snapshot covers {} vertices, graph has {n}",
            part.support_init.len()
        )));
    }
    if part.boundaries.len() != part.subsets.len() + 1
        || part.subset_wedges.len() != part.subsets.len()
    {
        return Err(TipError::InvalidPartition(
            "boundary/subset count mismatch".into(),
        ));
    }
    let mut seen = vec![false; n];
    for subset in &part.subsets {
        for &u in subset {
            match seen.get_mut(u as usize) {
                None => {
                    return Err(TipError::InvalidPartition(format!(
                        "vertex {u} outside U (|U| = {n})"
                    )))
                }
                Some(true) => {
                    return Err(TipError::InvalidPartition(format!(
                        "vertex {u} in two subsets"
                    )))
                }
                Some(s) => *s = true,
            }
        }
    }
    if let Some(u) = seen.iter().position(|&s| !s) {
        return Err(TipError::InvalidPartition(format!(
            "vertex {u} in no subset"
        )));
    }
    Ok(())
}

/// Exact tip numbers from a coarse partition.
pub fn fine_decompose(
    g: &BipartiteGraph,
    part: &RangePartition,
    opts: &ReceiptOptions,
) -> Result<(TipResult, PeelStats)> {
    fine_decompose_traced(g, part, opts).map(|(tips, stats, _)| (tips, stats))
}

/// [`fine_decompose`] that also returns the scheduling trace.
pub fn fine_decompose_traced(
    g: &BipartiteGraph,
    part: &RangePartition,
    opts: &ReceiptOptions,
) -> Result<(TipResult, PeelStats, ScheduleTrace)> {
    opts.validate()?;
    let graph = g.oriented(part.side);
    check_partition(&graph, part)?;

    let tasks: Vec<SubsetTask<'_>> = part
        .subsets
        .iter()
        .enumerate()
        .map(|(i, vertices)| SubsetTask {
            subset_id: i,
            vertices,
            wedges: part.subset_wedges[i],
            floor: part.boundaries[i],
        })
        .collect();

    let mut stats = PeelStats::default();
    let (outputs, trace) = stats.timed(Phase::Fd, |_| {
        run_tasks(tasks, opts.workers, |task, _| {
            let (tips, st) = peel_subset(&graph, part, task, opts)?;
            let wedges = st.wedges_traversed();
            Ok(((tips, st), wedges))
        })
    })?;

    let mut theta = vec![0u64; graph.u_count()];
    for (tips, st) in outputs {
        for (u, t) in tips {
            theta[u as usize] = t;
        }
        stats.count_wedges += st.count_wedges;
        stats.peel_wedges += st.peel_wedges;
        stats.recount_invocations += st.recount_invocations;
    }
    Ok((TipResult::new(theta), stats, trace))
}

/// Sequential bottom-up peeling of one induced subgraph, seeded from the
/// coarse snapshot. Returns `(vertex, tip number)` pairs.
fn peel_subset(
    graph: &BipartiteGraph,
    part: &RangePartition,
    task: &SubsetTask<'_>,
    opts: &ReceiptOptions,
) -> Result<(Vec<(u32, u64)>, PeelStats)> {
    // induced labels follow ascending parent labels
    let mut vertices = task.vertices.to_vec();
    vertices.sort_unstable();
    let sub = graph.induce_subgraph(&vertices)?;
    let init: Vec<u64> = vertices
        .iter()
        .map(|&u| part.support_init[u as usize])
        .collect();
    let mut stats = PeelStats::default();
    let external = if opts.fd_huc {
        let pristine = count_per_vertex_traced(&sub)?;
        stats.count_wedges += pristine.wedges;
        Some(external_counts(&init, &pristine.support.u))
    } else {
        None
    };
    let seq = SequentialOptions {
        dgm_threshold: opts.dgm.then(|| sub.edge_count().max(1) as u64),
        external: external.as_deref(),
    };
    let theta = peel_sequential(&sub, init, seq, &mut stats)?;
    debug_assert!(theta.iter().all(|&t| t >= task.floor));
    Ok((vertices.into_iter().zip(theta).collect(), stats))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bigraph::{build_graph, PeelableView, Side};
    use crate::butterfly::count_per_vertex;
    use crate::cd::coarse_decompose;

    fn task(id: usize, wedges: u64) -> SubsetTask<'static> {
        SubsetTask {
            subset_id: id,
            vertices: &[],
            wedges,
            floor: 0,
        }
    }

    fn complete(a: u64, b: u64) -> BipartiteGraph {
        let edges: Vec<_> = (0..a).flat_map(|u| (0..b).map(move |v| (u, v))).collect();
        build_graph(&edges).unwrap()
    }

    #[test]
    fn pops_in_decreasing_estimate_order() {
        let tasks = vec![task(0, 3), task(1, 9), task(2, 4), task(3, 5), task(4, 3)];
        for workers in [1, 2] {
            let trace = schedule(tasks.clone(), workers).unwrap();
            let est: Vec<u64> = trace
                .assignments
                .iter()
                .map(|a| a.wedges_estimate)
                .collect();
            assert_eq!(est, vec![9, 5, 4, 3, 3]);
            assert_eq!(trace.pop_sequence(), vec![1, 3, 2, 0, 4]);
        }
    }

    #[test]
    fn equal_estimates_keep_id_order() {
        let tasks = vec![task(2, 7), task(0, 7), task(1, 7)];
        assert_eq!(schedule(tasks, 1).unwrap().pop_sequence(), vec![0, 1, 2]);
    }

    #[test]
    fn k33_with_one_subset() {
        let g = complete(3, 3);
        let opts = ReceiptOptions {
            partitions: 1,
            workers: 2,
            ..Default::default()
        };
        let (part, _) = coarse_decompose(&g, Side::U, &opts).unwrap();
        let (tips, stats) = fine_decompose(&g, &part, &opts).unwrap();
        assert_eq!(tips.theta, vec![6, 6, 6]);
        assert_eq!(stats.sync_rounds, 0);
    }

    #[test]
    fn singleton_subsets_take_their_snapshot() {
        let g = complete(3, 3);
        let part = RangePartition {
            side: Side::U,
            boundaries: vec![0, 5, 6, 7],
            subsets: vec![vec![0], vec![1], vec![2]],
            support_init: vec![4, 5, 6],
            subset_wedges: vec![9, 9, 9],
        };
        let opts = ReceiptOptions {
            workers: 1,
            ..Default::default()
        };
        assert_eq!(
            fine_decompose(&g, &part, &opts).unwrap().0.theta,
            vec![4, 5, 6]
        );
    }

    #[test]
    fn rejects_foreign_vertices() {
        let g = complete(2, 2);
        let part = RangePartition {
            side: Side::U,
            boundaries: vec![0, 2],
            subsets: vec![vec![0, 1, 7]],
            support_init: vec![1, 1],
            subset_wedges: vec![8],
        };
        let opts = ReceiptOptions {
            workers: 1,
            ..Default::default()
        };
        assert!(matches!(
            fine_decompose(&g, &part, &opts),
            Err(TipError::InvalidPartition(_))
        ));
    }

    #[test]
    fn external_counts_on_k33_pair() {
        // subset {u0, u1} of K_{3,3}: 3 butterflies inside, snapshot 6
        let g = complete(3, 3);
        let sub = g.induce_subgraph(&[0, 1]).unwrap();
        let pristine = count_per_vertex(&sub).unwrap().u;
        assert_eq!(pristine, vec![3, 3]);
        let ext = external_counts(&[6, 6], &pristine);
        assert_eq!(ext, vec![3, 3]);
        // after peeling u1 the live count of u0 is 0, so the recount gives 0 + 3
        let mut view = PeelableView::new(&sub);
        view.kill(1);
        let live = view.live_graph().unwrap();
        let c = count_per_vertex(&live).unwrap().u;
        assert_eq!(c[0] + ext[0], 3);
        // whole U as the subset: nothing external
        let all = count_per_vertex(&g).unwrap().u;
        assert_eq!(external_counts(&all, &all), vec![0, 0, 0]);
    }
}
