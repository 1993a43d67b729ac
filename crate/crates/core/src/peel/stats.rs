// SPDX-License-Identifier: Apache-2.0

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

/// Timed phases of a decomposition run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Phase {
    Count,
    Cd,
    Fd,
    Peel,
}

/// Work and synchronization counters of a run.
///
/// `count_wedges` covers every counting pass (initial counts and HUC
/// recounts); `peel_wedges` covers the `update` kernel. Stored adjacency
/// entries are counted as they are scanned, dead ones included, so the
/// effect of compaction shows up here.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct PeelStats {
    pub count_wedges: u64,
    pub peel_wedges: u64,
    pub sync_rounds: u64,
    pub recount_invocations: u64,
    pub phase_times: BTreeMap<Phase, Duration>,
}

impl PeelStats {
    pub fn wedges_traversed(&self) -> u64 {
        self.count_wedges + self.peel_wedges
    }

    pub fn add_time(&mut self, phase: Phase, elapsed: Duration) {
        *self.phase_times.entry(phase).or_default() += elapsed;
    }

    /// Runs `f`, charging its wall-clock time to `phase`.
    pub fn timed<R>(&mut self, phase: Phase, f: impl FnOnce(&mut Self) -> R) -> R {
        let start = Instant::now();
        let out = f(self);
        self.add_time(phase, start.elapsed());
        out
    }

    /// Adds the counters of `other`; phase times are summed too.
    pub fn absorb(&mut self, other: &PeelStats) {
        self.count_wedges += other.count_wedges;
        self.peel_wedges += other.peel_wedges;
        self.sync_rounds += other.sync_rounds;
        self.recount_invocations += other.recount_invocations;
        for (&phase, &t) in &other.phase_times {
            self.add_time(phase, t);
        }
    }
}
