//! Monte-Carlo simulation of uncoordinated delivery from several storage
//! systems to one receiver.
//!
//! Each source holds a codeword, optionally loses a fraction of its symbols,
//! and streams the survivors in a private random order. The receiver either
//! counts distinct symbol indices (all sources share one MDS code) or tracks
//! the rank of the lifted binary columns it has collected (sources use
//! different codes).
//!
//! Randomness for trial `t` of a session comes from
//! `seed::rng(master_seed, &[t])`; grid sweeps give each point its own
//! master seed `seed::derive(master, &[point])`, so any point or trial can be
//! replayed alone.

mod mixed;
mod same;
mod symbols;

pub use mixed::{
    compositions, overhead_curve, run_mixed_code_trial, simulate_mixed, sweep_mixture,
    MixturePoint, OverheadPoint,
};
pub use same::{empirical_completion_pmf, run_same_code_trial, simulate_same_code};

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Mode {
    /// One MDS code everywhere; decodable once `k` distinct indices arrive.
    SameCodeIndexLevel,
    /// Per-source codes lifted to GF(2); decodable at full binary rank.
    MixedCodeRankLevel,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Schedule {
    /// Sources take turns; a source with nothing left is skipped.
    RoundRobin,
    /// Source `i` sends exactly `counts[i]` symbols.
    FixedMixture(Vec<usize>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SessionConfig {
    pub mode: Mode,
    pub sources: usize,
    /// Codeword length; in mixed mode taken from each source's code.
    pub n: usize,
    /// Symbols needed to decode.
    pub k: usize,
    pub schedule: Schedule,
    /// Fraction of each source's symbols lost before streaming. Empty means
    /// no loss; otherwise one entry per source.
    pub erasure_fraction: Vec<f64>,
    pub trials: usize,
    pub master_seed: u64,
    /// Maximum number of symbols the receiver downloads.
    pub budget: Option<usize>,
}

impl SessionConfig {
    pub fn same_code(n: usize, k: usize, sources: usize) -> Self {
        SessionConfig {
            mode: Mode::SameCodeIndexLevel,
            sources,
            n,
            k,
            schedule: Schedule::RoundRobin,
            erasure_fraction: Vec::new(),
            trials: 1,
            master_seed: 0,
            budget: None,
        }
    }

    pub fn mixed(n: usize, k: usize, counts: Vec<usize>) -> Self {
        SessionConfig {
            mode: Mode::MixedCodeRankLevel,
            sources: counts.len(),
            n,
            k,
            schedule: Schedule::FixedMixture(counts),
            erasure_fraction: Vec::new(),
            trials: 1,
            master_seed: 0,
            budget: None,
        }
    }

    pub fn with_trials(mut self, trials: usize) -> Self {
        self.trials = trials;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.master_seed = seed;
        self
    }

    pub fn erasure(&self, source: usize) -> f64 {
        self.erasure_fraction.get(source).copied().unwrap_or(0.0)
    }

    /// Checks the parameters that do not depend on the codes; `lengths`
    /// holds each source's codeword length.
    pub(crate) fn validate(&self, lengths: &[usize]) -> Result<()> {
        if self.sources == 0 {
            return Err(Error::Config("need at least one source".into()));
        }
        if lengths.len() != self.sources {
            return Err(Error::Config(format!(
                "{} sources configured but {} codes given",
                self.sources,
                lengths.len()
            )));
        }
        if self.k == 0 {
            return Err(Error::Config("k must be positive".into()));
        }
        if !self.erasure_fraction.is_empty() && self.erasure_fraction.len() != self.sources {
            return Err(Error::Config(format!(
                "{} erasure fractions for {} sources",
                self.erasure_fraction.len(),
                self.sources
            )));
        }
        if let Some(f) = self.erasure_fraction.iter().find(|f| !(0.0..1.0).contains(*f)) {
            return Err(Error::Config(format!("erasure fraction {f} outside [0, 1)")));
        }
        if let Schedule::FixedMixture(counts) = &self.schedule {
            if counts.len() != self.sources {
                return Err(Error::Config(format!(
                    "mixture has {} counts for {} sources",
                    counts.len(),
                    self.sources
                )));
            }
            if let Some(b) = self.budget {
                let total: usize = counts.iter().sum();
                if total != b {
                    return Err(Error::Config(format!(
                        "mixture sends {total} symbols but the budget is {b}"
                    )));
                }
            }
            for (i, (&c, &n)) in counts.iter().zip(lengths).enumerate() {
                let surviving = surviving_count(n, self.erasure(i));
                if c > surviving {
                    return Err(Error::Config(format!(
                        "source {i} must send {c} symbols but holds only {surviving}"
                    )));
                }
            }
        }
        Ok(())
    }
}

fn surviving_count(n: usize, erasure: f64) -> usize {
    n - (erasure * n as f64).floor() as usize
}

/// Transmit state of one storage system during a trial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SourceState {
    surviving: Vec<usize>,
    send_order: Vec<usize>,
    cursor: usize,
}

impl SourceState {
    /// Erases `floor(erasure * n)` uniformly chosen symbols and shuffles the
    /// rest into a send order.
    pub fn new<R: Rng + ?Sized>(n: usize, erasure: f64, rng: &mut R) -> Self {
        let keep = surviving_count(n, erasure);
        let mut surviving: Vec<usize> = if keep == n {
            (0..n).collect()
        } else {
            rand::seq::index::sample(rng, n, keep).into_vec()
        };
        surviving.sort_unstable();
        let mut send_order = surviving.clone();
        send_order.shuffle(rng);
        SourceState {
            surviving,
            send_order,
            cursor: 0,
        }
    }

    pub fn surviving(&self) -> &[usize] {
        &self.surviving
    }

    pub fn send_order(&self) -> &[usize] {
        &self.send_order
    }

    pub fn sent(&self) -> usize {
        self.cursor
    }

    pub fn remaining(&self) -> usize {
        self.send_order.len() - self.cursor
    }

    pub fn next_symbol(&mut self) -> Option<usize> {
        let s = self.send_order.get(self.cursor).copied()?;
        self.cursor += 1;
        Some(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TrialResult {
    /// Number of downloaded symbols when decoding first became possible;
    /// `None` if it never did within the budget.
    pub completion_time: Option<usize>,
    pub success: bool,
    /// Rank reached by the receiver: distinct symbols in same-code mode,
    /// binary dimensions in mixed mode.
    pub novel_count: usize,
    pub per_source_counts: Vec<usize>,
}

/// Receiver verdict after each symbol.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Progress {
    Continue,
    Decoded,
    /// Even every remaining planned symbol could not reach full rank.
    Hopeless,
}

/// Drives the schedule, handing `(source, symbol, symbols_left)` to the
/// receiver. Returns the number of symbols sent and whether decoding
/// succeeded.
pub(crate) fn stream<F>(
    states: &mut [SourceState],
    schedule: &Schedule,
    budget: Option<usize>,
    mut receive: F,
) -> (usize, bool)
where
    F: FnMut(usize, usize, usize) -> Progress,
{
    let mut sent = 0;
    match schedule {
        Schedule::FixedMixture(counts) => {
            let mut left: usize = counts.iter().sum();
            for (src, &count) in counts.iter().enumerate() {
                for _ in 0..count {
                    let Some(sym) = states[src].next_symbol() else {
                        break;
                    };
                    sent += 1;
                    left -= 1;
                    match receive(src, sym, left) {
                        Progress::Continue => {}
                        Progress::Decoded => return (sent, true),
                        Progress::Hopeless => return (sent, false),
                    }
                }
            }
            (sent, false)
        }
        Schedule::RoundRobin => {
            let available: usize = states.iter().map(SourceState::remaining).sum();
            let limit = budget.map_or(available, |b| b.min(available));
            let s = states.len();
            let mut turn = 0;
            while sent < limit {
                let Some(src) = (0..s).map(|d| (turn + d) % s).find(|&i| states[i].remaining() > 0)
                else {
                    break;
                };
                let sym = states[src].next_symbol().expect("source has symbols left");
                sent += 1;
                turn = src + 1;
                match receive(src, sym, limit - sent) {
                    Progress::Continue => {}
                    Progress::Decoded => return (sent, true),
                    Progress::Hopeless => return (sent, false),
                }
            }
            (sent, false)
        }
    }
}
