// SPDX-License-Identifier: Apache-2.0

//! Compressed bipartite graph storage and the mutable peeling view.
//!
//! Both sides are stored as offset-indexed adjacency. Each side has dense
//! 0-based internal labels; labels are handed out in non-increasing degree
//! order over the whole vertex set `U ∪ V` (ties: smaller original ID, then
//! `U` before `V`). The position of a vertex in that global order is its
//! *rank*, which the counting kernel uses as vertex priority. Within a side,
//! label order and rank order agree, so every adjacency list sorted by label
//! is also sorted by rank.

use std::borrow::Cow;
use std::collections::HashMap;

use crate::error::{Result, TipError};

/// Which vertex set is decomposed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    U,
    V,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::U => Side::V,
            Side::V => Side::U,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteGraph {
    u_offsets: Vec<usize>,
    u_nbrs: Vec<u32>,
    v_offsets: Vec<usize>,
    v_nbrs: Vec<u32>,
    u_rank: Vec<u32>,
    v_rank: Vec<u32>,
    u_ids: Vec<u64>,
    v_ids: Vec<u64>,
}

/// Per-vertex wedge mass `w[x] = Σ_{y ∈ N(x)} d_y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WedgeCounts(pub Vec<u64>);

impl WedgeCounts {
    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }
}

impl std::ops::Index<usize> for WedgeCounts {
    type Output = u64;
    fn index(&self, i: usize) -> &u64 {
        &self.0[i]
    }
}

/// Builds a graph from `(u_id, v_id)` pairs. Duplicates collapse.
///
/// Fails with [`TipError::EmptyGraph`] when no edge is given.
pub fn build_graph(edges: &[(u64, u64)]) -> Result<BipartiteGraph> {
    if edges.is_empty() {
        return Err(TipError::EmptyGraph);
    }
    BipartiteGraph::from_edges(edges)
}

impl BipartiteGraph {
    /// Like [`build_graph`] but accepts an empty edge list.
    pub fn from_edges(edges: &[(u64, u64)]) -> Result<Self> {
        let mut edges = edges.to_vec();
        edges.sort_unstable();
        edges.dedup();

        let mut u_deg: Vec<(u64, u32)> = Vec::new();
        for &(u, _) in &edges {
            match u_deg.last_mut() {
                Some((id, d)) if *id == u => *d += 1,
                _ => u_deg.push((u, 1)),
            }
        }
        let mut v_sorted: Vec<u64> = edges.iter().map(|&(_, v)| v).collect();
        v_sorted.sort_unstable();
        let mut v_deg: Vec<(u64, u32)> = Vec::new();
        for v in v_sorted {
            match v_deg.last_mut() {
                Some((id, d)) if *id == v => *d += 1,
                _ => v_deg.push((v, 1)),
            }
        }

        let total = u_deg.len() + v_deg.len();
        if total > u32::MAX as usize {
            return Err(TipError::TooLarge(total));
        }

        // (degree, id, side) with side 0 = U, 1 = V
        let mut order: Vec<(u32, u64, u8)> = Vec::with_capacity(total);
        order.extend(u_deg.iter().map(|&(id, d)| (d, id, 0)));
        order.extend(v_deg.iter().map(|&(id, d)| (d, id, 1)));
        order.sort_unstable_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));

        let mut u_ids = Vec::with_capacity(u_deg.len());
        let mut v_ids = Vec::with_capacity(v_deg.len());
        let mut u_rank = Vec::with_capacity(u_deg.len());
        let mut v_rank = Vec::with_capacity(v_deg.len());
        for (rank, &(_, id, side)) in order.iter().enumerate() {
            if side == 0 {
                u_ids.push(id);
                u_rank.push(rank as u32);
            } else {
                v_ids.push(id);
                v_rank.push(rank as u32);
            }
        }

        let u_label: HashMap<u64, u32> = u_ids
            .iter()
            .enumerate()
            .map(|(l, &id)| (id, l as u32))
            .collect();
        let v_label: HashMap<u64, u32> = v_ids
            .iter()
            .enumerate()
            .map(|(l, &id)| (id, l as u32))
            .collect();
        let labeled: Vec<(u32, u32)> = edges
            .iter()
            .map(|(u, v)| (u_label[u], v_label[v]))
            .collect();

        let (u_offsets, u_nbrs) = csr(u_ids.len(), labeled.iter().map(|&(u, v)| (u, v)));
        let (v_offsets, v_nbrs) = csr(v_ids.len(), labeled.iter().map(|&(u, v)| (v, u)));

        Ok(BipartiteGraph {
            u_offsets,
            u_nbrs,
            v_offsets,
            v_nbrs,
            u_rank,
            v_rank,
            u_ids,
            v_ids,
        })
    }

    pub fn empty() -> Self {
        BipartiteGraph {
            u_offsets: vec![0],
            u_nbrs: Vec::new(),
            v_offsets: vec![0],
            v_nbrs: Vec::new(),
            u_rank: Vec::new(),
            v_rank: Vec::new(),
            u_ids: Vec::new(),
            v_ids: Vec::new(),
        }
    }

    pub fn u_count(&self) -> usize {
        self.u_ids.len()
    }

    pub fn v_count(&self) -> usize {
        self.v_ids.len()
    }

    pub fn count(&self, side: Side) -> usize {
        match side {
            Side::U => self.u_count(),
            Side::V => self.v_count(),
        }
    }

    pub fn edge_count(&self) -> usize {
        self.u_nbrs.len()
    }

    #[inline]
    pub fn u_neighbors(&self, u: u32) -> &[u32] {
        let u = u as usize;
        &self.u_nbrs[self.u_offsets[u]..self.u_offsets[u + 1]]
    }

    #[inline]
    pub fn v_neighbors(&self, v: u32) -> &[u32] {
        let v = v as usize;
        &self.v_nbrs[self.v_offsets[v]..self.v_offsets[v + 1]]
    }

    #[inline]
    pub fn u_degree(&self, u: u32) -> usize {
        let u = u as usize;
        self.u_offsets[u + 1] - self.u_offsets[u]
    }

    #[inline]
    pub fn v_degree(&self, v: u32) -> usize {
        let v = v as usize;
        self.v_offsets[v + 1] - self.v_offsets[v]
    }

    #[inline]
    pub fn u_rank(&self, u: u32) -> u32 {
        self.u_rank[u as usize]
    }

    #[inline]
    pub fn v_rank(&self, v: u32) -> u32 {
        self.v_rank[v as usize]
    }

    /// Original IDs indexed by internal label (the inverse relabel map).
    pub fn ids(&self, side: Side) -> &[u64] {
        match side {
            Side::U => &self.u_ids,
            Side::V => &self.v_ids,
        }
    }

    /// Original ID → internal label.
    pub fn relabel_map(&self, side: Side) -> HashMap<u64, u32> {
        self.ids(side)
            .iter()
            .enumerate()
            .map(|(l, &id)| (id, l as u32))
            .collect()
    }

    /// All edges as internal `(u, v)` labels, grouped by `u`.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        (0..self.u_count() as u32)
            .flat_map(move |u| self.u_neighbors(u).iter().map(move |&v| (u, v)))
    }

    /// All edges as original `(u_id, v_id)` pairs.
    pub fn original_edges(&self) -> Vec<(u64, u64)> {
        self.edges()
            .map(|(u, v)| (self.u_ids[u as usize], self.v_ids[v as usize]))
            .collect()
    }

    /// The same graph with the roles of `U` and `V` exchanged.
    pub fn transposed(&self) -> BipartiteGraph {
        BipartiteGraph {
            u_offsets: self.v_offsets.clone(),
            u_nbrs: self.v_nbrs.clone(),
            v_offsets: self.u_offsets.clone(),
            v_nbrs: self.u_nbrs.clone(),
            u_rank: self.v_rank.clone(),
            v_rank: self.u_rank.clone(),
            u_ids: self.v_ids.clone(),
            v_ids: self.u_ids.clone(),
        }
    }

    /// The graph oriented so that `side` becomes the `U` (peeled) side.
    pub fn oriented(&self, side: Side) -> Cow<'_, BipartiteGraph> {
        match side {
            Side::U => Cow::Borrowed(self),
            Side::V => Cow::Owned(self.transposed()),
        }
    }

    /// `w[x] = Σ_{y ∈ N(x)} d_y` for every vertex on `side`.
    pub fn wedge_counts(&self, side: Side) -> WedgeCounts {
        match side {
            Side::U => WedgeCounts(
                (0..self.u_count() as u32)
                    .map(|u| {
                        self.u_neighbors(u)
                            .iter()
                            .map(|&v| self.v_degree(v) as u64)
                            .sum()
                    })
                    .collect(),
            ),
            Side::V => WedgeCounts(
                (0..self.v_count() as u32)
                    .map(|v| {
                        self.v_neighbors(v)
                            .iter()
                            .map(|&u| self.u_degree(u) as u64)
                            .sum()
                    })
                    .collect(),
            ),
        }
    }

    /// Subgraph on `(subset, V)`: keeps every edge whose `U` endpoint is in
    /// `subset`. Subset vertices get new dense labels in ascending parent-label
    /// order, `V` keeps its labels, and ranks are inherited from `self`.
    pub fn induce_subgraph(&self, subset: &[u32]) -> Result<BipartiteGraph> {
        let mut members = subset.to_vec();
        members.sort_unstable();
        members.dedup();
        if let Some(&bad) = members.iter().find(|&&u| u as usize >= self.u_count()) {
            return Err(TipError::InvalidPartition(format!(
                "vertex {bad} outside U (|U| = {})",
                self.u_count()
            )));
        }

        let mut u_offsets = Vec::with_capacity(members.len() + 1);
        u_offsets.push(0);
        let mut u_nbrs = Vec::new();
        let mut v_deg = vec![0usize; self.v_count()];
        for &u in &members {
            let nbrs = self.u_neighbors(u);
            u_nbrs.extend_from_slice(nbrs);
            u_offsets.push(u_nbrs.len());
            for &v in nbrs {
                v_deg[v as usize] += 1;
            }
        }
        let mut v_offsets = Vec::with_capacity(self.v_count() + 1);
        v_offsets.push(0);
        let mut acc = 0;
        for d in &v_deg {
            acc += d;
            v_offsets.push(acc);
        }
        let mut cursor = v_offsets[..self.v_count()].to_vec();
        let mut v_nbrs = vec![0u32; acc];
        for (local, &u) in members.iter().enumerate() {
            for &v in self.u_neighbors(u) {
                v_nbrs[cursor[v as usize]] = local as u32;
                cursor[v as usize] += 1;
            }
        }

        Ok(BipartiteGraph {
            u_offsets,
            u_nbrs,
            v_offsets,
            v_nbrs,
            u_rank: members.iter().map(|&u| self.u_rank[u as usize]).collect(),
            v_rank: self.v_rank.clone(),
            u_ids: members.iter().map(|&u| self.u_ids[u as usize]).collect(),
            v_ids: self.v_ids.clone(),
        })
    }
}

/// Offset-indexed adjacency from `(source, target)` pairs, lists sorted.
fn csr(n: usize, pairs: impl Iterator<Item = (u32, u32)> + Clone) -> (Vec<usize>, Vec<u32>) {
    let mut offsets = vec![0usize; n + 1];
    for (s, _) in pairs.clone() {
        offsets[s as usize + 1] += 1;
    }
    for i in 0..n {
        offsets[i + 1] += offsets[i];
    }
    let mut cursor = offsets[..n].to_vec();
    let mut nbrs = vec![0u32; offsets[n]];
    for (s, t) in pairs {
        nbrs[cursor[s as usize]] = t;
        cursor[s as usize] += 1;
    }
    for i in 0..n {
        nbrs[offsets[i]..offsets[i + 1]].sort_unstable();
    }
    (offsets, nbrs)
}

/// Mutable view of a graph restricted to the `U` vertices not yet peeled.
///
/// `V`-side lists are stored in a compactable copy; between compactions they
/// may still hold dead `U` entries, which readers must skip via [`is_alive`].
/// `U`-side lists never change because `V` vertices are never peeled.
///
/// [`is_alive`]: PeelableView::is_alive
#[derive(Debug, Clone)]
pub struct PeelableView<'g> {
    graph: &'g BipartiteGraph,
    alive: Vec<bool>,
    v_len: Vec<usize>,
    v_store: Vec<u32>,
    live_v_degree: Vec<u32>,
    live_u: usize,
    live_edges: u64,
    wedges_since_compaction: u64,
}

impl<'g> PeelableView<'g> {
    pub fn new(graph: &'g BipartiteGraph) -> Self {
        let v_len = (0..graph.v_count() as u32)
            .map(|v| graph.v_degree(v))
            .collect::<Vec<_>>();
        PeelableView {
            graph,
            alive: vec![true; graph.u_count()],
            live_v_degree: v_len.iter().map(|&d| d as u32).collect(),
            v_len,
            v_store: graph.v_nbrs.clone(),
            live_u: graph.u_count(),
            live_edges: graph.edge_count() as u64,
            wedges_since_compaction: 0,
        }
    }

    pub fn graph(&self) -> &'g BipartiteGraph {
        self.graph
    }

    #[inline]
    pub fn is_alive(&self, u: u32) -> bool {
        self.alive[u as usize]
    }

    pub fn live_count(&self) -> usize {
        self.live_u
    }

    pub fn live_edges(&self) -> u64 {
        self.live_edges
    }

    pub fn live_vertices(&self) -> impl Iterator<Item = u32> + '_ {
        (0..self.alive.len() as u32).filter(move |&u| self.alive[u as usize])
    }

    /// Stored `U` entries of `v`, possibly including dead vertices.
    #[inline]
    pub fn v_storage(&self, v: u32) -> &[u32] {
        let start = self.graph.v_offsets[v as usize];
        &self.v_store[start..start + self.v_len[v as usize]]
    }

    /// Live `U` neighbours of `v`.
    pub fn v_live_neighbors(&self, v: u32) -> impl Iterator<Item = u32> + '_ {
        self.v_storage(v)
            .iter()
            .copied()
            .filter(move |&u| self.alive[u as usize])
    }

    #[inline]
    pub fn live_u_degree(&self, u: u32) -> usize {
        if self.alive[u as usize] {
            self.graph.u_degree(u)
        } else {
            0
        }
    }

    #[inline]
    pub fn live_v_degree(&self, v: u32) -> usize {
        self.live_v_degree[v as usize] as usize
    }

    /// Marks `u` peeled. Returns false if it already was.
    pub fn kill(&mut self, u: u32) -> bool {
        if !self.alive[u as usize] {
            return false;
        }
        self.alive[u as usize] = false;
        self.live_u -= 1;
        for &v in self.graph.u_neighbors(u) {
            self.live_v_degree[v as usize] -= 1;
        }
        self.live_edges -= self.graph.u_degree(u) as u64;
        true
    }

    pub fn wedges_since_compaction(&self) -> u64 {
        self.wedges_since_compaction
    }

    pub fn record_wedges(&mut self, wedges: u64) {
        self.wedges_since_compaction += wedges;
    }

    /// Drops stored entries of dead vertices, preserving order.
    pub fn compact(&mut self) {
        let PeelableView {
            graph,
            alive,
            v_len,
            v_store,
            ..
        } = self;
        for v in 0..v_len.len() {
            let start = graph.v_offsets[v];
            let seg = &mut v_store[start..start + v_len[v]];
            let mut kept = 0;
            for i in 0..seg.len() {
                let u = seg[i];
                if alive[u as usize] {
                    seg[kept] = u;
                    kept += 1;
                }
            }
            v_len[v] = kept;
        }
        self.wedges_since_compaction = 0;
    }

    /// Compacts iff at least `threshold` wedges were recorded since the last
    /// compaction.
    pub fn maybe_compact(&mut self, threshold: u64) -> bool {
        if self.wedges_since_compaction >= threshold.max(1) {
            self.compact();
            true
        } else {
            false
        }
    }

    /// Edge set currently visible through the stored `V` lists, live entries
    /// only, as `(u, v)` labels sorted.
    pub fn effective_edges(&self) -> Vec<(u32, u32)> {
        let mut out: Vec<(u32, u32)> = (0..self.graph.v_count() as u32)
            .flat_map(|v| self.v_live_neighbors(v).map(move |u| (u, v)))
            .collect();
        out.sort_unstable();
        out
    }

    /// A standalone graph on the live edges with fresh degree-ordered labels.
    /// Its `U` ids are the view's `U` labels, its `V` ids the view's `V` labels.
    pub fn live_graph(&self) -> Result<BipartiteGraph> {
        let edges: Vec<(u64, u64)> = self
            .live_vertices()
            .flat_map(|u| {
                self.graph
                    .u_neighbors(u)
                    .iter()
                    .map(move |&v| (u as u64, v as u64))
            })
            .collect();
        BipartiteGraph::from_edges(&edges)
    }
}
