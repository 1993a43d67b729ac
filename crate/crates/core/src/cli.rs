// SPDX-License-Identifier: Apache-2.0

//! Command-line driver.
//!
//! Exit statuses: 0 success, 1 input/runtime failure (including parse errors),
//! 2 usage error, 3 verification mismatch.

use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::PathBuf;

use clap::{Parser, ValueEnum};

use crate::bigraph::{build_graph, BipartiteGraph, Side};
use crate::cd::{RangePartition, ReceiptOptions, DEFAULT_PARTITIONS};
use crate::error::{Result, TipError};
use crate::io::{parse_edge_list, write_stats, write_tips};
use crate::peel::{
    tip_decompose_bup, tip_decompose_parb, tip_oracle_recount, PeelStats, TipResult,
};
use crate::tip_decompose_receipt;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_MISMATCH: i32 = 3;

/// Mismatches listed by `--verify` before truncating.
const MISMATCH_REPORT_LIMIT: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    U,
    V,
    Auto,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Algorithm {
    Receipt,
    Bup,
    Parb,
    Oracle,
}

/// Tip decomposition of one side of a bipartite graph.
#[derive(Debug, Clone, Parser)]
#[command(name = "tipdecomp", version)]
pub struct RunConfig {
    /// Edge list: one `u v` pair per line, `%`/`#` comments.
    #[arg(long)]
    pub input: PathBuf,
    /// Side to decompose; `auto` picks the side with more wedges.
    #[arg(long, value_enum, default_value = "u")]
    pub side: SideArg,
    #[arg(long, value_enum, default_value = "receipt")]
    pub algorithm: Algorithm,
    /// Number of coarse subsets.
    #[arg(long, default_value_t = DEFAULT_PARTITIONS as u64, value_parser = clap::value_parser!(u64).range(1..))]
    pub partitions: u64,
    /// Worker threads (defaults to the available cores).
    #[arg(long, env = "TIPDECOMP_WORKERS", value_parser = clap::value_parser!(u64).range(1..))]
    pub workers: Option<u64>,
    /// Disable hybrid peel/recount in the coarse phase.
    #[arg(long)]
    pub no_huc: bool,
    /// Enable hybrid peel/recount in the fine phase.
    #[arg(long)]
    pub fd_huc: bool,
    /// Disable periodic adjacency compaction.
    #[arg(long)]
    pub no_dgm: bool,
    /// Wedges between compactions in the coarse phase (default: edge count).
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub dgm_threshold: Option<u64>,
    /// Tip output file (default: stdout).
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// JSON statistics file.
    #[arg(long)]
    pub stats: Option<PathBuf>,
    /// Re-run bottom-up peeling and compare.
    #[arg(long)]
    pub verify: bool,
    /// Wedge count above which `--verify` warns about run time.
    #[arg(long, default_value_t = 1_000_000_000)]
    pub verify_budget: u64,
}

impl RunConfig {
    pub fn receipt_options(&self) -> ReceiptOptions {
        let mut opts = ReceiptOptions {
            partitions: self.partitions as usize,
            huc: !self.no_huc,
            fd_huc: self.fd_huc,
            dgm: !self.no_dgm,
            dgm_threshold: self.dgm_threshold,
            ..Default::default()
        };
        if let Some(w) = self.workers {
            opts.workers = w as usize;
        }
        opts
    }
}

/// The side with the larger total wedge mass; `U` on ties.
pub fn side_auto(g: &BipartiteGraph) -> Side {
    if g.wedge_counts(Side::V).total() > g.wedge_counts(Side::U).total() {
        Side::V
    } else {
        Side::U
    }
}

/// Parses `args` (program name first) and runs. Returns the exit status.
pub fn main_with_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match RunConfig::try_parse_from(args) {
        Ok(config) => run(&config, out, err),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{rendered}");
            } else {
                let _ = write!(out, "{rendered}");
            }
            code
        }
    }
}

/// Runs one configuration. Tips go to `--output` or `out`; diagnostics to `err`.
pub fn run(config: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match execute(config, out, err) {
        Ok(code) => code,
        Err(e @ TipError::InvalidConfig(_)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
        Err(e) => {
            let _ = writeln!(err, "error: {}: {e}", config.input.display());
            EXIT_FAILURE
        }
    }
}

fn execute(config: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let opts = config.receipt_options();
    opts.validate()?;

    let doc = parse_edge_list(BufReader::new(File::open(&config.input)?))?;
    let graph = build_graph(&doc.edges)?;
    let side = match config.side {
        SideArg::U => Side::U,
        SideArg::V => Side::V,
        SideArg::Auto => side_auto(&graph),
    };

    let (tips, stats, part) = decompose(&graph, side, config.algorithm, &opts)?;
    let ids = graph.ids(side);

    match &config.output {
        Some(path) => write_tips(&tips, ids, BufWriter::new(File::create(path)?))?,
        None => write_tips(&tips, ids, &mut *out)?,
    }
    if let Some(path) = &config.stats {
        write_stats(&stats, part.as_ref(), BufWriter::new(File::create(path)?))?;
    }

    if config.verify {
        let wedges = graph.wedge_counts(side).total();
        if wedges > config.verify_budget {
            writeln!(
                err,
                "warning: verifying {wedges} wedges with sequential peeling may take a while"
            )?;
        }
        let (reference, _) = tip_decompose_bup(&graph, side)?;
        let mismatches: Vec<(u64, u64, u64)> = ids
            .iter()
            .zip(tips.theta.iter().zip(&reference.theta))
            .filter(|(_, (a, b))| a != b)
            .map(|(&id, (&a, &b))| (id, a, b))
            .collect();
        if !mismatches.is_empty() {
            let mut sorted = mismatches.clone();
            sorted.sort_unstable();
            writeln!(
                err,
                "verification failed: {} vertices differ from bottom-up peeling",
                sorted.len()
            )?;
            for (id, got, want) in sorted.iter().take(MISMATCH_REPORT_LIMIT) {
                writeln!(err, "  vertex {id}: got {got}, expected {want}")?;
            }
            return Ok(EXIT_MISMATCH);
        }
    }
    Ok(EXIT_OK)
}

fn decompose(
    graph: &BipartiteGraph,
    side: Side,
    algorithm: Algorithm,
    opts: &ReceiptOptions,
) -> Result<(TipResult, PeelStats, Option<RangePartition>)> {
    Ok(match algorithm {
        Algorithm::Receipt => {
            let run = tip_decompose_receipt(graph, side, opts)?;
            (run.tips, run.stats, Some(run.partition))
        }
        Algorithm::Bup => {
            let (tips, stats) = tip_decompose_bup(graph, side)?;
            (tips, stats, None)
        }
        Algorithm::Parb => {
            let (tips, stats) = tip_decompose_parb(graph, side, opts.workers)?;
            (tips, stats, None)
        }
        Algorithm::Oracle => (tip_oracle_recount(graph, side), PeelStats::default(), None),
    })
}
