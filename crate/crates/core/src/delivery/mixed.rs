use rayon::prelude::*;
use serde::Serialize;

use super::symbols::{Scratch, SymbolRanker};
use super::{stream, Mode, Progress, SessionConfig, SourceState, TrialResult};
use crate::error::{Error, Result};
use crate::gf::Field;
use crate::lifting::LiftedCode;
use crate::linalg::{Offer, RankTracker};
use crate::seed;

/// Common block size and binary dimension of the sources.
fn common_shape(sources: &[LiftedCode]) -> Result<(usize, usize)> {
    let first = sources
        .first()
        .ok_or_else(|| Error::Config("need at least one source code".into()))?;
    let (m, dim) = (first.block_size(), first.dim());
    for (i, s) in sources.iter().enumerate() {
        if s.block_size() != m || s.dim() != dim {
            return Err(Error::Config(format!(
                "source {i} has blocks of {} bits and dimension {}, expected {m} and {dim}",
                s.block_size(),
                s.dim()
            )));
        }
    }
    if dim % m != 0 {
        return Err(Error::Config(format!(
            "dimension {dim} is not a whole number of {m}-bit symbols"
        )));
    }
    Ok((m, dim))
}

fn check(config: &SessionConfig, sources: &[LiftedCode]) -> Result<()> {
    if config.mode != Mode::MixedCodeRankLevel {
        return Err(Error::Config("expected mixed-code mode".into()));
    }
    let (m, dim) = common_shape(sources)?;
    if config.k * m != dim {
        return Err(Error::Config(format!(
            "k = {} symbols of {m} bits do not span dimension {dim}",
            config.k
        )));
    }
    let lengths: Vec<usize> = sources.iter().map(LiftedCode::num_blocks).collect();
    config.validate(&lengths)
}

/// Offers every column of one block; `cols_after` is the number of columns
/// still planned after this block.
fn offer_block(
    tracker: &mut RankTracker,
    code: &LiftedCode,
    block: usize,
    cols_after: usize,
) -> Progress {
    let cols = code.block_columns(block);
    for (j, col) in cols.iter().enumerate() {
        let offer = tracker.offer_bits(col).expect("block columns match the tracker");
        if offer == Offer::Redundant
            && tracker.rank() + (cols.len() - j - 1) + cols_after < tracker.dim()
        {
            return Progress::Hopeless;
        }
    }
    if tracker.is_full() {
        Progress::Decoded
    } else {
        Progress::Continue
    }
}

fn trial(
    config: &SessionConfig,
    sources: &[LiftedCode],
    tracker: &mut RankTracker,
    trial_index: u64,
) -> TrialResult {
    tracker.reset();
    let mut rng = seed::rng(config.master_seed, &[trial_index]);
    let mut states: Vec<SourceState> = sources
        .iter()
        .enumerate()
        .map(|(i, code)| SourceState::new(code.num_blocks(), config.erasure(i), &mut rng))
        .collect();
    let (sent, success) = stream(&mut states, &config.schedule, config.budget, |src, sym, left| {
        let code = &sources[src];
        offer_block(tracker, code, sym, left * code.block_size())
    });
    TrialResult {
        completion_time: success.then_some(sent),
        success,
        novel_count: tracker.rank(),
        per_source_counts: states.iter().map(SourceState::sent).collect(),
    }
}

/// One trial where source `i` streams blocks of `sources[i]` and the
/// receiver decodes once the lifted columns reach full rank.
pub fn run_mixed_code_trial(
    config: &SessionConfig,
    sources: &[LiftedCode],
    trial_index: u64,
) -> Result<TrialResult> {
    check(config, sources)?;
    let mut tracker = RankTracker::new(&Field::binary(), sources[0].dim());
    Ok(trial(config, sources, &mut tracker, trial_index))
}

/// Runs `config.trials` trials, in trial order.
pub fn simulate_mixed(config: &SessionConfig, sources: &[LiftedCode]) -> Result<Vec<TrialResult>> {
    check(config, sources)?;
    let dim = sources[0].dim();
    Ok((0..config.trials as u64)
        .into_par_iter()
        .map_init(
            || RankTracker::new(&Field::binary(), dim),
            |tracker, t| trial(config, sources, tracker, t),
        )
        .collect())
}

/// All ways to split `total` into `parts` multiples of `step`, ordered
/// lexicographically (first count slowest).
pub fn compositions(total: usize, step: usize, parts: usize) -> Result<Vec<Vec<usize>>> {
    if step == 0 || total % step != 0 {
        return Err(Error::usage(format!("step {step} does not divide {total}")));
    }
    if parts == 0 {
        return Err(Error::usage("need at least one part"));
    }
    fn rec(left: usize, step: usize, parts: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 1 {
            prefix.push(left);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for c in (0..=left).step_by(step) {
            prefix.push(c);
            rec(left - c, step, parts - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(total, step, parts, &mut Vec::new(), &mut out);
    Ok(out)
}

/// Block draws of one fixed-mixture trial: `mixture[i]` blocks from source
/// `i`, then the blocks of `extras` in order. Matches the draws of
/// [`run_mixed_code_trial`] for the same seed and trial.
fn draw_plan(
    sources: &[LiftedCode],
    mixture: &[usize],
    extras: &[usize],
    master_seed: u64,
    trial_index: u64,
) -> Vec<(usize, usize)> {
    let mut rng = seed::rng(master_seed, &[trial_index]);
    let mut states: Vec<SourceState> = sources
        .iter()
        .map(|code| SourceState::new(code.num_blocks(), 0.0, &mut rng))
        .collect();
    let mut plan = Vec::with_capacity(mixture.iter().sum::<usize>() + extras.len());
    for (src, &c) in mixture.iter().enumerate() {
        for _ in 0..c {
            plan.push((src, states[src].next_symbol().expect("mixture fits the source")));
        }
    }
    for &src in extras {
        plan.push((src, states[src].next_symbol().expect("extras fit the source")));
    }
    plan
}

/// Decides decodability of block sets, using the byte-level ranker when the
/// sources allow it and the binary tracker otherwise.
enum Evaluator {
    Symbols(SymbolRanker),
    Tracker,
}

struct Workspace {
    scratch: Scratch,
    tracker: RankTracker,
}

impl Evaluator {
    fn new(sources: &[LiftedCode]) -> Evaluator {
        SymbolRanker::new(sources).map_or(Evaluator::Tracker, Evaluator::Symbols)
    }

    fn workspace(&self, dim: usize) -> Workspace {
        Workspace {
            scratch: Scratch::default(),
            tracker: RankTracker::new(&Field::binary(), dim),
        }
    }

    /// Smallest `e` such that the first `base + e` blocks of `plan` decode.
    fn first_decoding(
        &self,
        sources: &[LiftedCode],
        plan: &[(usize, usize)],
        base: usize,
        ws: &mut Workspace,
    ) -> Option<usize> {
        let m = sources[0].block_size();
        match self {
            Evaluator::Symbols(ranker) => {
                let dim = ranker.dim();
                for len in base..=plan.len() {
                    let rank = ranker.rank(&plan[..len], &mut ws.scratch);
                    if rank == dim {
                        return Some(len - base);
                    }
                    if rank + (plan.len() - len) * m < dim {
                        return None;
                    }
                }
                None
            }
            Evaluator::Tracker => {
                let tracker = &mut ws.tracker;
                tracker.reset();
                for (i, &(src, block)) in plan.iter().enumerate() {
                    let after = (plan.len() - i - 1) * m;
                    match offer_block(tracker, &sources[src], block, after) {
                        Progress::Continue => {}
                        Progress::Decoded => return Some((i + 1).saturating_sub(base)),
                        Progress::Hopeless => return None,
                    }
                }
                None
            }
        }
    }
}

/// Number of trials, out of `trials`, whose received set decodes after
/// `k + e` blocks, for each `e` in `0..=extras.len()`.
fn count_successes(
    sources: &[LiftedCode],
    mixture: &[usize],
    extras: &[usize],
    trials: usize,
    master_seed: u64,
) -> Vec<usize> {
    let evaluator = Evaluator::new(sources);
    let base: usize = mixture.iter().sum();
    let dim = sources[0].dim();
    let firsts: Vec<Option<usize>> = (0..trials as u64)
        .into_par_iter()
        .map_init(
            || evaluator.workspace(dim),
            |ws, t| {
                let plan = draw_plan(sources, mixture, extras, master_seed, t);
                evaluator.first_decoding(sources, &plan, base, ws)
            },
        )
        .collect();
    (0..=extras.len())
        .map(|e| firsts.iter().filter(|f| f.is_some_and(|x| x <= e)).count())
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MixturePoint {
    pub counts: Vec<usize>,
    pub trials: usize,
    pub successes: usize,
    pub probability: f64,
}

/// Decoding probability after exactly `k` symbols for every mixture on
/// the `step` grid. Point `p` uses master seed `derive(master_seed, [p])`.
pub fn sweep_mixture(
    sources: &[LiftedCode],
    step: usize,
    trials: usize,
    master_seed: u64,
) -> Result<Vec<MixturePoint>> {
    let (m, dim) = common_shape(sources)?;
    let k = dim / m;
    let n = sources[0].num_blocks();
    compositions(k, step, sources.len())?
        .into_iter()
        .enumerate()
        .map(|(p, counts)| {
            let point_seed = seed::derive(master_seed, &[p as u64]);
            let config = SessionConfig::mixed(n, k, counts.clone())
                .with_trials(trials)
                .with_seed(point_seed);
            check(&config, sources)?;
            let successes = count_successes(sources, &counts, &[], trials, point_seed)[0];
            Ok(MixturePoint {
                counts,
                trials,
                successes,
                probability: successes as f64 / trials.max(1) as f64,
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OverheadPoint {
    /// Symbols downloaded beyond `k`.
    pub extra: usize,
    pub trials: usize,
    pub successes: usize,
    pub probability: f64,
}

/// Sources of the extra symbols: round-robin from source 0, skipping any
/// source with nothing left.
fn extra_sources(sources: &[LiftedCode], mixture: &[usize], extra_max: usize) -> Result<Vec<usize>> {
    let mut used = mixture.to_vec();
    let mut order = Vec::with_capacity(extra_max);
    let s = sources.len();
    let mut turn = 0;
    for _ in 0..extra_max {
        let src = (0..s)
            .map(|d| (turn + d) % s)
            .find(|&i| used[i] < sources[i].num_blocks())
            .ok_or_else(|| {
                Error::Config(format!("sources hold fewer than k + {extra_max} symbols"))
            })?;
        used[src] += 1;
        order.push(src);
        turn = src + 1;
    }
    Ok(order)
}

/// Decoding probability after `k + extra` symbols for `extra` in
/// `0..=extra_max`. The first `k` follow `mixture`; extra symbols are
/// appended round-robin starting at source 0, so the received sets are
/// nested within each trial.
pub fn overhead_curve(
    sources: &[LiftedCode],
    mixture: &[usize],
    extra_max: usize,
    trials: usize,
    master_seed: u64,
) -> Result<Vec<OverheadPoint>> {
    let (m, dim) = common_shape(sources)?;
    let k = dim / m;
    if mixture.len() != sources.len() {
        return Err(Error::Config(format!(
            "mixture has {} counts for {} sources",
            mixture.len(),
            sources.len()
        )));
    }
    if mixture.iter().sum::<usize>() != k {
        return Err(Error::Config(format!("mixture must sum to k = {k}")));
    }
    if let Some(i) = (0..sources.len()).find(|&i| mixture[i] > sources[i].num_blocks()) {
        return Err(Error::Config(format!(
            "source {i} holds only {} symbols",
            sources[i].num_blocks()
        )));
    }
    let extras = extra_sources(sources, mixture, extra_max)?;
    Ok(count_successes(sources, mixture, &extras, trials, master_seed)
        .into_iter()
        .enumerate()
        .map(|(extra, successes)| OverheadPoint {
            extra,
            trials,
            successes,
            probability: successes as f64 / trials.max(1) as f64,
        })
        .collect())
}
