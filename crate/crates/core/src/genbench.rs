// SPDX-License-Identifier: Apache-2.0

//! Deterministic synthetic bipartite graphs.
//!
//! Random graphs use ChaCha8 (`rand_chacha::ChaCha8Rng`) seeded through
//! `SeedableRng::seed_from_u64(seed)`. Pairs `(u, v)` are visited in row-major
//! order (`u` outer, `v` inner) and each consumes exactly one `next_u64()`
//! draw; the edge is kept iff the draw is below `⌊p · 2^64⌋` (always kept for
//! `p = 1`). Nothing else touches the stream, so a seed pins the edge set on
//! every platform.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bigraph::BipartiteGraph;
use crate::error::{Result, TipError};

#[derive(Debug, Clone, PartialEq)]
pub enum GenSpec {
    /// Every pair `(u, v)` independently with probability `p`.
    RandomBipartite {
        u: usize,
        v: usize,
        p: f64,
        seed: u64,
    },
    /// `K_{u,v}`.
    Complete { u: usize, v: usize },
    /// Complete blocks `K_{a_i, b_i}` where the last `V` vertex of each block is
    /// the first `V` vertex of the next. Vertices of different blocks share at
    /// most one neighbour, so each block's `U` vertices have tip number
    /// `(a_i − 1)·C(b_i, 2)`.
    BlockChain { blocks: Vec<(usize, usize)> },
    /// `hub_degree` leaf vertices in `U`, each adjacent to all of `hubs` hub
    /// vertices in `V`, next to a disjoint `K_{core,core}` block. The leaves
    /// form one wide low-support layer whose peel cost dwarfs a recount.
    StarHeavy {
        hubs: usize,
        hub_degree: usize,
        core: usize,
    },
}

impl GenSpec {
    pub fn name(&self) -> String {
        match self {
            GenSpec::RandomBipartite { u, v, p, seed } => format!("random({u},{v},{p},{seed})"),
            GenSpec::Complete { u, v } => format!("complete({u},{v})"),
            GenSpec::BlockChain { blocks } => format!("block_chain({} blocks)", blocks.len()),
            GenSpec::StarHeavy {
                hubs,
                hub_degree,
                core,
            } => format!("star_heavy({hubs},{hub_degree},{core})"),
        }
    }
}

/// Edge list of the graph described by `spec`, as `(u_id, v_id)`.
pub fn generate_edges(spec: &GenSpec) -> Result<Vec<(u64, u64)>> {
    match *spec {
        GenSpec::RandomBipartite { u, v, p, seed } => {
            if u == 0 || v == 0 {
                return Err(TipError::Gen(
                    "random graph needs both sides non-empty".into(),
                ));
            }
            if !(0.0..=1.0).contains(&p) {
                return Err(TipError::Gen(format!(
                    "edge probability {p} outside [0, 1]"
                )));
            }
            let threshold = (p * 2f64.powi(64)) as u64;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut edges = Vec::new();
            for a in 0..u as u64 {
                for b in 0..v as u64 {
                    let draw = rng.next_u64();
                    if p >= 1.0 || draw < threshold {
                        edges.push((a, b));
                    }
                }
            }
            Ok(edges)
        }
        GenSpec::Complete { u, v } => {
            if u == 0 || v == 0 {
                return Err(TipError::Gen(
                    "complete graph needs both sides non-empty".into(),
                ));
            }
            Ok((0..u as u64)
                .flat_map(|a| (0..v as u64).map(move |b| (a, b)))
                .collect())
        }
        GenSpec::BlockChain { ref blocks } => {
            if blocks.is_empty() || blocks.iter().any(|&(a, b)| a == 0 || b == 0) {
                return Err(TipError::Gen("block chain needs non-empty blocks".into()));
            }
            let mut edges = Vec::new();
            let (mut u0, mut v0) = (0u64, 0u64);
            for &(a, b) in blocks {
                for x in 0..a as u64 {
                    for y in 0..b as u64 {
                        edges.push((u0 + x, v0 + y));
                    }
                }
                u0 += a as u64;
                v0 += b as u64 - 1;
            }
            Ok(edges)
        }
        GenSpec::StarHeavy {
            hubs,
            hub_degree,
            core,
        } => {
            if hubs == 0 || hub_degree == 0 {
                return Err(TipError::Gen(
                    "star-heavy graph needs hubs and leaves".into(),
                ));
            }
            let mut edges: Vec<(u64, u64)> = (0..hub_degree as u64)
                .flat_map(|leaf| (0..hubs as u64).map(move |h| (leaf, h)))
                .collect();
            let (u0, v0) = (hub_degree as u64, hubs as u64);
            for x in 0..core as u64 {
                for y in 0..core as u64 {
                    edges.push((u0 + x, v0 + y));
                }
            }
            Ok(edges)
        }
    }
}

/// Graph described by `spec`. May be empty (e.g. `p = 0`).
pub fn generate(spec: &GenSpec) -> Result<BipartiteGraph> {
    BipartiteGraph::from_edges(&generate_edges(spec)?)
}

/// Edge probabilities of the random part of [`corpus`].
pub const CORPUS_PROBABILITIES: [f64; 5] = [0.05, 0.1, 0.2, 0.3, 0.5];

/// Side sizes of the random part of [`corpus`].
pub const CORPUS_SIZES: [(usize, usize); 8] = [
    (10, 10),
    (20, 15),
    (15, 30),
    (30, 30),
    (40, 25),
    (45, 45),
    (60, 40),
    (60, 60),
];

/// The small-graph corpus: 200 random graphs (8 sizes × 5 probabilities × 5
/// seeds) followed by complete, block-chain and star-heavy instances.
pub fn corpus() -> Vec<GenSpec> {
    let mut out = Vec::new();
    for (si, &(u, v)) in CORPUS_SIZES.iter().enumerate() {
        for (pi, &p) in CORPUS_PROBABILITIES.iter().enumerate() {
            for s in 0..5u64 {
                let seed = 1000 * si as u64 + 10 * pi as u64 + s;
                out.push(GenSpec::RandomBipartite { u, v, p, seed });
            }
        }
    }
    for (u, v) in [(1, 1), (2, 2), (3, 3), (2, 5), (5, 2), (4, 6), (8, 8)] {
        out.push(GenSpec::Complete { u, v });
    }
    out.push(GenSpec::BlockChain {
        blocks: vec![(2, 3), (2, 4), (2, 5)],
    });
    out.push(GenSpec::BlockChain {
        blocks: vec![(3, 3), (2, 2), (4, 5), (2, 6), (3, 2)],
    });
    out.push(GenSpec::BlockChain {
        blocks: (2..12).map(|b| (2 + b % 3, b)).collect(),
    });
    out.push(GenSpec::StarHeavy {
        hubs: 2,
        hub_degree: 40,
        core: 6,
    });
    out.push(GenSpec::StarHeavy {
        hubs: 3,
        hub_degree: 25,
        core: 5,
    });
    out
}
