// SPDX-License-Identifier: Apache-2.0

//! Edge-list input, tip-number output, and run statistics.
//!
//! Edge lists are whitespace-separated `u_id v_id` pairs, one per line, with
//! `%` or `#` comment lines (the KONECT convention). Tip numbers are written
//! as `original_id<TAB>tip<LF>` sorted by original ID. Statistics are a JSON
//! object with a fixed key order.

use std::collections::BTreeMap;
use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use crate::cd::RangePartition;
use crate::error::{Result, TipError};
use crate::peel::{PeelStats, Phase, TipResult};

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EdgeListDocument {
    pub edges: Vec<(u64, u64)>,
    pub comment_lines: usize,
    pub blank_lines: usize,
}

impl EdgeListDocument {
    pub fn line_count(&self) -> usize {
        self.edges.len() + self.comment_lines + self.blank_lines
    }
}

pub fn parse_edge_list<R: BufRead>(reader: R) -> Result<EdgeListDocument> {
    let mut doc = EdgeListDocument::default();
    for (idx, line) in reader.lines().enumerate() {
        let lineno = idx + 1;
        let line = line.map_err(|e| match e.kind() {
            std::io::ErrorKind::InvalidData => TipError::Parse {
                line: lineno,
                message: "not valid UTF-8".into(),
            },
            _ => TipError::Io(e),
        })?;
        let text = line.trim();
        if text.is_empty() {
            doc.blank_lines += 1;
            continue;
        }
        if text.starts_with('%') || text.starts_with('#') {
            doc.comment_lines += 1;
            continue;
        }
        let mut tokens = text.split_whitespace();
        let (Some(a), Some(b), None) = (tokens.next(), tokens.next(), tokens.next()) else {
            return Err(TipError::Parse {
                line: lineno,
                message: format!(
                    "expected two vertex ids, got {} tokens",
                    text.split_whitespace().count()
                ),
            });
        };
        doc.edges.push((parse_id(a, lineno)?, parse_id(b, lineno)?));
    }
    Ok(doc)
}

pub fn parse_edge_list_str(text: &str) -> Result<EdgeListDocument> {
    parse_edge_list(text.as_bytes())
}

fn parse_id(token: &str, line: usize) -> Result<u64> {
    token.parse::<u64>().map_err(|_| TipError::Parse {
        line,
        message: format!("'{token}' is not a non-negative integer id"),
    })
}

pub fn write_edge_list<W: Write>(edges: &[(u64, u64)], mut sink: W) -> Result<()> {
    for (u, v) in edges {
        writeln!(sink, "{u} {v}")?;
    }
    sink.flush()?;
    Ok(())
}

/// Writes `id\ttip\n` per vertex, ascending by original id. `ids` maps
/// internal labels to original ids.
pub fn write_tips<W: Write>(tips: &TipResult, ids: &[u64], mut sink: W) -> Result<()> {
    assert_eq!(tips.theta.len(), ids.len(), "one id per tip number");
    let mut rows: Vec<(u64, u64)> = ids
        .iter()
        .copied()
        .zip(tips.theta.iter().copied())
        .collect();
    rows.sort_unstable();
    let mut buf = String::with_capacity(rows.len() * 12);
    for (id, t) in rows {
        buf.push_str(&id.to_string());
        buf.push('\t');
        buf.push_str(&t.to_string());
        buf.push('\n');
    }
    sink.write_all(buf.as_bytes())?;
    sink.flush()?;
    Ok(())
}

/// Reads back what [`write_tips`] produced.
pub fn parse_tips<R: BufRead>(reader: R) -> Result<Vec<(u64, u64)>> {
    let mut out = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let (a, b) = line.split_once('\t').ok_or_else(|| TipError::Parse {
            line: idx + 1,
            message: "expected id<TAB>tip".into(),
        })?;
        out.push((parse_id(a, idx + 1)?, parse_id(b, idx + 1)?));
    }
    Ok(out)
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct SubsetSummary {
    pub count: usize,
    pub wedge_estimates: Vec<u64>,
}

/// Machine-readable run statistics. Field order is the serialized key order.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct StatsReport {
    pub wedges_traversed: u64,
    pub sync_rounds: u64,
    pub recount_invocations: u64,
    pub phase_times_ms: BTreeMap<Phase, f64>,
    pub subsets: SubsetSummary,
}

impl StatsReport {
    pub fn new(stats: &PeelStats, part: Option<&RangePartition>) -> Self {
        StatsReport {
            wedges_traversed: stats.wedges_traversed(),
            sync_rounds: stats.sync_rounds,
            recount_invocations: stats.recount_invocations,
            phase_times_ms: stats
                .phase_times
                .iter()
                .map(|(&p, d)| (p, d.as_secs_f64() * 1e3))
                .collect(),
            subsets: part.map_or_else(SubsetSummary::default, |p| SubsetSummary {
                count: p.len(),
                wedge_estimates: p.subset_wedges.clone(),
            }),
        }
    }
}

pub fn write_stats<W: Write>(
    stats: &PeelStats,
    part: Option<&RangePartition>,
    mut sink: W,
) -> Result<()> {
    let report = StatsReport::new(stats, part);
    serde_json::to_writer_pretty(&mut sink, &report).map_err(std::io::Error::from)?;
    sink.write_all(b"\n")?;
    sink.flush()?;
    Ok(())
}
