// SPDX-License-Identifier: Apache-2.0

//! Per-vertex butterfly counting.
//!
//! [`count_per_vertex`] is the vertex-priority algorithm: for a start vertex
//! `sp` it only walks wedges `sp - mp - ep` whose end point `ep` outranks both
//! `sp` and `mp`, so every butterfly is discovered exactly once, from the
//! opposite corner of its highest-priority vertex. Start vertices run in
//! parallel; each worker aggregates wedges in a dense private array and
//! flushes butterfly contributions with atomic adds.
//!
//! [`count_naive`] enumerates all wedges with end points in `U` and is kept as
//! a test oracle.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use rayon::prelude::*;

use crate::bigraph::{BipartiteGraph, PeelableView};
use crate::error::{Result, TipError};

/// Butterfly counts for every vertex of both sides.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SupportVector {
    pub u: Vec<u64>,
    pub v: Vec<u64>,
}

impl SupportVector {
    pub fn zeros(u_count: usize, v_count: usize) -> Self {
        SupportVector {
            u: vec![0; u_count],
            v: vec![0; v_count],
        }
    }

    /// Total butterflies in the graph (each one has two vertices per side).
    pub fn butterflies(&self) -> u64 {
        self.u.iter().sum::<u64>() / 2
    }
}

/// Output of a counting pass together with the number of wedges it walked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountResult {
    pub support: SupportVector,
    pub wedges: u64,
}

#[inline]
pub fn choose2(c: u64) -> u64 {
    c * c.saturating_sub(1) / 2
}

pub fn count_per_vertex(g: &BipartiteGraph) -> Result<SupportVector> {
    count_per_vertex_traced(g).map(|r| r.support)
}

/// Per-vertex counting, also reporting the wedges traversed.
///
/// Runs on the current rayon pool.
pub fn count_per_vertex_traced(g: &BipartiteGraph) -> Result<CountResult> {
    let cnt_u: Vec<AtomicU64> = (0..g.u_count()).map(|_| AtomicU64::new(0)).collect();
    let cnt_v: Vec<AtomicU64> = (0..g.v_count()).map(|_| AtomicU64::new(0)).collect();
    let overflow = AtomicBool::new(false);

    let add = |slot: &AtomicU64, x: u64| {
        if x != 0 {
            let prev = slot.fetch_add(x, Ordering::Relaxed);
            if prev.checked_add(x).is_none() {
                overflow.store(true, Ordering::Relaxed);
            }
        }
    };

    let from_u: u64 = (0..g.u_count() as u32)
        .into_par_iter()
        .with_min_len(16)
        .map_init(
            || Scratch::new(g.u_count()),
            |s, sp| {
                let mut wedges = 0u64;
                let sp_rank = g.u_rank(sp);
                for &mp in g.u_neighbors(sp) {
                    let mp_rank = g.v_rank(mp);
                    for &ep in g.v_neighbors(mp) {
                        let ep_rank = g.u_rank(ep);
                        if ep_rank >= mp_rank || ep_rank >= sp_rank {
                            break;
                        }
                        s.hit(mp, ep);
                        wedges += 1;
                    }
                }
                s.flush(
                    |ep, c| {
                        let b = choose2(c);
                        add(&cnt_u[ep as usize], b);
                        add(&cnt_u[sp as usize], b);
                    },
                    |mp, c| add(&cnt_v[mp as usize], c - 1),
                );
                wedges
            },
        )
        .sum();

    let from_v: u64 = (0..g.v_count() as u32)
        .into_par_iter()
        .with_min_len(16)
        .map_init(
            || Scratch::new(g.v_count()),
            |s, sp| {
                let mut wedges = 0u64;
                let sp_rank = g.v_rank(sp);
                for &mp in g.v_neighbors(sp) {
                    let mp_rank = g.u_rank(mp);
                    for &ep in g.u_neighbors(mp) {
                        let ep_rank = g.v_rank(ep);
                        if ep_rank >= mp_rank || ep_rank >= sp_rank {
                            break;
                        }
                        s.hit(mp, ep);
                        wedges += 1;
                    }
                }
                s.flush(
                    |ep, c| {
                        let b = choose2(c);
                        add(&cnt_v[ep as usize], b);
                        add(&cnt_v[sp as usize], b);
                    },
                    |mp, c| add(&cnt_u[mp as usize], c - 1),
                );
                wedges
            },
        )
        .sum();

    if overflow.load(Ordering::Relaxed) {
        return Err(TipError::Overflow);
    }
    Ok(CountResult {
        support: SupportVector {
            u: cnt_u.into_iter().map(AtomicU64::into_inner).collect(),
            v: cnt_v.into_iter().map(AtomicU64::into_inner).collect(),
        },
        wedges: from_u + from_v,
    })
}

/// Wedge aggregation array plus the lists of touched end points (`nze`) and
/// touched `(mid, end)` pairs (`nzw`). Reset by replaying `nze`.
struct Scratch {
    wdg: Vec<u32>,
    nze: Vec<u32>,
    nzw: Vec<(u32, u32)>,
}

impl Scratch {
    fn new(n: usize) -> Self {
        Scratch {
            wdg: vec![0; n],
            nze: Vec::new(),
            nzw: Vec::new(),
        }
    }

    #[inline]
    fn hit(&mut self, mp: u32, ep: u32) {
        let slot = &mut self.wdg[ep as usize];
        if *slot == 0 {
            self.nze.push(ep);
        }
        *slot += 1;
        self.nzw.push((mp, ep));
    }

    fn flush(&mut self, mut same_side: impl FnMut(u32, u64), mut opposite: impl FnMut(u32, u64)) {
        for &(mp, ep) in &self.nzw {
            opposite(mp, self.wdg[ep as usize] as u64);
        }
        for &ep in &self.nze {
            same_side(ep, self.wdg[ep as usize] as u64);
            self.wdg[ep as usize] = 0;
        }
        self.nze.clear();
        self.nzw.clear();
    }
}

/// Naive counting: for every pair of `U` vertices, the `c` common neighbours
/// form `C(c, 2)` butterflies; each common neighbour lies in `c - 1` of them.
pub fn count_naive(g: &BipartiteGraph) -> SupportVector {
    let adj: Vec<&[u32]> = (0..g.u_count() as u32).map(|u| g.u_neighbors(u)).collect();
    naive_counts(&adj, g.v_count())
}

/// Naive counts over a plain `U → V` adjacency (sorted lists).
pub(crate) fn naive_counts<L: AsRef<[u32]>>(adj: &[L], v_count: usize) -> SupportVector {
    let n = adj.len();
    let mut out = SupportVector::zeros(n, v_count);
    let mut v_to_u: Vec<Vec<u32>> = vec![Vec::new(); v_count];
    for (u, list) in adj.iter().enumerate() {
        for &v in list.as_ref() {
            v_to_u[v as usize].push(u as u32);
        }
    }
    let mut wedges = vec![0u64; n];
    let mut touched = Vec::new();
    for u1 in 0..n {
        for &v in adj[u1].as_ref() {
            for &u2 in &v_to_u[v as usize] {
                if (u2 as usize) > u1 {
                    if wedges[u2 as usize] == 0 {
                        touched.push(u2);
                    }
                    wedges[u2 as usize] += 1;
                }
            }
        }
        for &u2 in &touched {
            let c = wedges[u2 as usize];
            wedges[u2 as usize] = 0;
            if c < 2 {
                continue;
            }
            out.u[u1] += choose2(c);
            out.u[u2 as usize] += choose2(c);
            for v in intersect(adj[u1].as_ref(), adj[u2 as usize].as_ref()) {
                out.v[v as usize] += c - 1;
            }
        }
        touched.clear();
    }
    out
}

fn intersect<'a>(a: &'a [u32], b: &'a [u32]) -> impl Iterator<Item = u32> + 'a {
    let (mut i, mut j) = (0, 0);
    std::iter::from_fn(move || {
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    let x = a[i];
                    i += 1;
                    j += 1;
                    return Some(x);
                }
            }
        }
        None
    })
}

/// Butterflies shared by `u1` and `u2`: `C(c, 2)` for `c` common neighbours.
pub fn shared_butterflies(view: &PeelableView<'_>, u1: u32, u2: u32) -> u64 {
    let g = view.graph();
    choose2(intersect(g.u_neighbors(u1), g.u_neighbors(u2)).count() as u64)
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
    fn k22_has_one_butterfly() {
        let s = count_per_vertex(&complete(2, 2)).unwrap();
        assert_eq!(s.u, vec![1, 1]);
        assert_eq!(s.v, vec![1, 1]);
        assert_eq!(count_naive(&complete(2, 2)), s);
    }

    #[test]
    fn k33_counts() {
        let s = count_per_vertex(&complete(3, 3)).unwrap();
        assert_eq!(s.u, vec![6; 3]);
        assert_eq!(s.v, vec![6; 3]);
        assert_eq!(s.butterflies(), 9);
    }

    #[test]
    fn path_with_pendant_has_none() {
        let g = build_graph(&[(1, 1), (2, 1), (1, 2)]).unwrap();
        let s = count_per_vertex(&g).unwrap();
        assert!(s.u.iter().chain(&s.v).all(|&c| c == 0));
    }

    #[test]
    fn naive_on_empty_graph() {
        let s = count_naive(&BipartiteGraph::empty());
        assert!(s.u.is_empty() && s.v.is_empty());
        let s = count_per_vertex(&BipartiteGraph::empty()).unwrap();
        assert!(s.u.is_empty());
    }

    #[test]
    fn shared_in_k33_and_disjoint() {
        let g = complete(3, 3);
        let view = PeelableView::new(&g);
        assert_eq!(shared_butterflies(&view, 0, 1), 3);
        let g = build_graph(&[(0, 0), (0, 1), (1, 2), (1, 3)]).unwrap();
        let view = PeelableView::new(&g);
        assert_eq!(shared_butterflies(&view, 0, 1), 0);
    }

    #[test]
    fn counts_exceeding_u32() {
        // K_{2,100000}: each U vertex is in C(100000, 2) ≈ 5e9 butterflies.
        let edges: Vec<_> = (0..2u64)
            .flat_map(|u| (0..100_000u64).map(move |v| (u, v)))
            .collect();
        let s = count_per_vertex(&build_graph(&edges).unwrap()).unwrap();
        assert_eq!(s.u, vec![4_999_950_000; 2]);
    }
}
