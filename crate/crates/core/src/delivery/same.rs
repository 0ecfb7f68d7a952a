use rayon::prelude::*;

use super::{stream, Mode, Progress, SessionConfig, SourceState, TrialResult};
use crate::error::{Error, Result};
use crate::seed;

fn check(config: &SessionConfig) -> Result<()> {
    if config.mode != Mode::SameCodeIndexLevel {
        return Err(Error::Config("expected same-code mode".into()));
    }
    if config.k > config.n {
        return Err(Error::Config(format!(
            "k = {} exceeds n = {}",
            config.k, config.n
        )));
    }
    config.validate(&vec![config.n; config.sources])
}

/// One trial of the shared-MDS-code session at the symbol-index level.
pub fn run_same_code_trial(config: &SessionConfig, trial_index: u64) -> Result<TrialResult> {
    check(config)?;
    Ok(trial(config, trial_index))
}

fn trial(config: &SessionConfig, trial_index: u64) -> TrialResult {
    let mut rng = seed::rng(config.master_seed, &[trial_index]);
    let mut states: Vec<SourceState> = (0..config.sources)
        .map(|i| SourceState::new(config.n, config.erasure(i), &mut rng))
        .collect();
    let mut seen = vec![false; config.n];
    let mut distinct = 0;
    let k = config.k;
    let (sent, success) = stream(&mut states, &config.schedule, config.budget, |_, sym, left| {
        if !std::mem::replace(&mut seen[sym], true) {
            distinct += 1;
        }
        if distinct >= k {
            Progress::Decoded
        } else if distinct + left < k {
            Progress::Hopeless
        } else {
            Progress::Continue
        }
    });
    TrialResult {
        completion_time: success.then_some(sent),
        success,
        novel_count: distinct,
        per_source_counts: states.iter().map(SourceState::sent).collect(),
    }
}

/// Runs `config.trials` trials, in trial order.
pub fn simulate_same_code(config: &SessionConfig) -> Result<Vec<TrialResult>> {
    check(config)?;
    Ok((0..config.trials as u64)
        .into_par_iter()
        .map(|t| trial(config, t))
        .collect())
}

/// Relative frequency of each completion time `0..=horizon`.
pub fn empirical_completion_pmf(results: &[TrialResult], horizon: usize) -> Vec<f64> {
    let mut counts = vec![0usize; horizon + 1];
    for l in results.iter().filter_map(|r| r.completion_time) {
        if l <= horizon {
            counts[l] += 1;
        }
    }
    let total = results.len().max(1) as f64;
    counts.into_iter().map(|c| c as f64 / total).collect()
}
