use serde_json::{json, Value};

use codedel::coupon::{
    asymptotic_unseen, completion_pmf, evolve_pmf, tradeoff, tradeoff_finite,
    tradeoff_many_sources, ChainSpec,
};
use codedel::delivery::{
    empirical_completion_pmf, overhead_curve, simulate_same_code, sweep_mixture, SessionConfig,
};
use codedel::lifting::LiftedCode;

use crate::args::{
    ChainArgs, Command, Format, MixtureArgs, OverheadArgs, SimulateSameArgs, TradeoffArgs,
};
use crate::config::{pick, CodeDesc, FileConfig};
use crate::error::{CliError, Result};
use crate::output::{emit, Table};

const DEFAULT_SEED: u64 = 1;

pub fn run(command: &Command) -> Result<()> {
    let common = command.common();
    let file = match &common.config {
        Some(path) => FileConfig::load(path)?,
        None => FileConfig::default(),
    };
    let format = pick(common.format, file.format, Format::Csv);
    let quick = common.quick;
    let (table, params) = match command {
        Command::Chain(a) => chain(a, &file)?,
        Command::Tradeoff(a) => tradeoff_cmd(a, &file)?,
        Command::Mixture(a) => mixture(a, &file, quick)?,
        Command::Overhead(a) => overhead(a, &file, quick)?,
        Command::SimulateSame(a) => simulate_same(a, &file, quick)?,
    };
    let manifest = json!({
        "tool": "codedel",
        "version": env!("CARGO_PKG_VERSION"),
        "command": command.name(),
        "parameters": params,
        "quick": quick,
        "format": format,
        "output": common.out,
        "columns": table.header,
        "rows": table.rows.len(),
    });
    emit(&table, format, common.out.as_deref(), &manifest)
}

fn positive(name: &str, v: usize) -> Result<usize> {
    if v == 0 {
        return Err(CliError::usage(format!("--{name} must be positive")));
    }
    Ok(v)
}

fn scaled_trials(trials: usize, quick: bool) -> Result<usize> {
    let trials = positive("trials", trials)?;
    Ok(if quick { (trials / 10).max(1) } else { trials })
}

/// Parses a comma list where `inf` stands for `None`.
fn parse_list(name: &str, text: &str) -> Result<Vec<Option<usize>>> {
    text.split(',')
        .map(str::trim)
        .map(|s| match s {
            "inf" => Ok(None),
            _ => match s.parse::<usize>() {
                Ok(v) if v > 0 => Ok(Some(v)),
                _ => Err(CliError::usage(format!("--{name}: bad entry {s:?}"))),
            },
        })
        .collect()
}

fn parse_counts(text: &str) -> Result<Vec<usize>> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse()
                .map_err(|_| CliError::usage(format!("--mixture: bad count {s:?}")))
        })
        .collect()
}

fn chain(a: &ChainArgs, file: &FileConfig) -> Result<(Table, Value)> {
    let n = positive("n", pick(a.n, file.n, 50))?;
    let sources = positive("S", pick(a.sources, file.sources, 2))?;
    let spec = ChainSpec::new(n, sources)?;
    let mut table = Table::new(["step", "received", "probability", "approx_mean"]);
    for pmf in evolve_pmf(&spec) {
        let tau = pmf.step as f64 / n as f64;
        let approx = n as f64 * (1.0 - asymptotic_unseen(tau, sources)?);
        for received in 0..=n {
            let p = pmf.probs[n - received];
            if p > 0.0 {
                table.push(vec![pmf.step.into(), received.into(), p.into(), approx.into()]);
            }
        }
    }
    Ok((table, json!({ "n": n, "S": sources })))
}

fn sigma_grid(step: f64, max: f64) -> Result<Vec<f64>> {
    if !(step > 0.0) || !(max >= 1.0) || !max.is_finite() {
        return Err(CliError::usage(format!(
            "need a positive sigma step and a maximum >= 1 (got {step}, {max})"
        )));
    }
    let count = ((max - 1.0) / step + 1e-9).floor() as usize + 1;
    Ok((0..count)
        .map(|i| ((1.0 + i as f64 * step) * 1e9).round() / 1e9)
        .collect())
}

fn label(v: Option<usize>) -> String {
    v.map_or_else(|| "inf".to_string(), |v| v.to_string())
}

fn tradeoff_cmd(a: &TradeoffArgs, file: &FileConfig) -> Result<(Table, Value)> {
    let s_text = pick(a.sources.clone(), file.tradeoff_sources.clone(), "1,2,4,8,inf".into());
    let n_text = pick(a.n.clone(), file.tradeoff_lengths.clone(), "inf".into());
    let sources = parse_list("S", &s_text)?;
    let lengths = parse_list("n", &n_text)?;
    let step = pick(a.step, file.sigma_step, 0.05);
    let sigma_max = pick(a.sigma_max, file.sigma_max, 4.0);
    let grid = sigma_grid(step, sigma_max)?;
    if sources.contains(&None) && lengths.iter().any(Option::is_some) {
        return Err(CliError::usage("finite block lengths need a finite S"));
    }
    let mut table = Table::new(["S", "n", "sigma", "delta"]);
    for &s in &sources {
        for &n in &lengths {
            for &sigma in &grid {
                let delta = match (s, n) {
                    (None, _) => tradeoff_many_sources(sigma)?,
                    (Some(s), None) => tradeoff(sigma, s)?,
                    (Some(s), Some(n)) => tradeoff_finite(sigma, n, s)?.delta,
                };
                table.push(vec![label(s).into(), label(n).into(), sigma.into(), delta.into()]);
            }
        }
    }
    let params = json!({
        "S": s_text,
        "n": n_text,
        "sigma_step": step,
        "sigma_max": sigma_max,
    });
    Ok((table, params))
}

fn codes(file: &FileConfig) -> Result<(Vec<CodeDesc>, Vec<LiftedCode>)> {
    let descs = if file.codes.is_empty() {
        CodeDesc::defaults()
    } else {
        file.codes.clone()
    };
    let lifted = descs.iter().map(CodeDesc::build).collect::<Result<_>>()?;
    Ok((descs, lifted))
}

/// One column per source, named after its code kind.
fn source_columns(descs: &[CodeDesc]) -> Vec<String> {
    descs
        .iter()
        .enumerate()
        .map(|(i, d)| {
            let kind = d.kind.to_string();
            if descs.iter().filter(|o| o.kind == d.kind).count() > 1 {
                format!("{kind}{i}")
            } else {
                kind
            }
        })
        .collect()
}

fn mixture(a: &MixtureArgs, file: &FileConfig, quick: bool) -> Result<(Table, Value)> {
    let step = positive("step", pick(a.step, file.step, 8))?;
    let trials = scaled_trials(pick(a.trials, file.trials, 2000), quick)?;
    let seed = pick(a.seed, file.seed, DEFAULT_SEED);
    let (descs, lifted) = codes(file)?;
    let points = sweep_mixture(&lifted, step, trials, seed)?;
    let mut header = source_columns(&descs);
    header.extend(["trials", "successes", "probability"].map(String::from));
    let mut table = Table::new(header);
    for p in points {
        let mut row: Vec<_> = p.counts.iter().map(|&c| c.into()).collect();
        row.extend([p.trials.into(), p.successes.into(), p.probability.into()]);
        table.push(row);
    }
    let params = json!({ "step": step, "trials": trials, "seed": seed, "codes": descs });
    Ok((table, params))
}

fn overhead(a: &OverheadArgs, file: &FileConfig, quick: bool) -> Result<(Table, Value)> {
    let mix = match &a.mixture {
        Some(text) => parse_counts(text)?,
        None => file.mixture.clone().unwrap_or_else(|| vec![43, 43, 42]),
    };
    let extra = pick(a.extra, file.extra, 3);
    let trials = scaled_trials(pick(a.trials, file.trials, 20_000), quick)?;
    let seed = pick(a.seed, file.seed, DEFAULT_SEED);
    let (descs, lifted) = codes(file)?;
    if mix.len() != lifted.len() {
        return Err(CliError::usage(format!(
            "mixture has {} counts for {} codes",
            mix.len(),
            lifted.len()
        )));
    }
    let curve = overhead_curve(&lifted, &mix, extra, trials, seed)?;
    let mut table = Table::new(["extra", "trials", "successes", "probability"]);
    for p in curve {
        table.push(vec![p.extra.into(), p.trials.into(), p.successes.into(), p.probability.into()]);
    }
    let params = json!({
        "mixture": mix,
        "extra": extra,
        "trials": trials,
        "seed": seed,
        "codes": descs,
    });
    Ok((table, params))
}

fn simulate_same(a: &SimulateSameArgs, file: &FileConfig, quick: bool) -> Result<(Table, Value)> {
    let n = positive("n", pick(a.n, file.n, 50))?;
    let k = positive("k", pick(a.k, file.k, 35))?;
    let sources = positive("S", pick(a.sources, file.sources, 2))?;
    let trials = scaled_trials(pick(a.trials, file.trials, 100_000), quick)?;
    let seed = pick(a.seed, file.seed, DEFAULT_SEED);
    let spec = ChainSpec::with_k(n, sources, k)?;
    let exact = completion_pmf(&spec)?;
    let config = SessionConfig::same_code(n, k, sources)
        .with_trials(trials)
        .with_seed(seed);
    let results = simulate_same_code(&config)?;
    let empirical = empirical_completion_pmf(&results, spec.horizon());
    let mut table = Table::new(["step", "empirical", "exact"]);
    let mut tv = 0.0;
    for (step, (&e, &x)) in empirical.iter().zip(&exact.probs).enumerate() {
        tv += (e - x).abs() / 2.0;
        if e > 0.0 || x > 0.0 {
            table.push(vec![step.into(), e.into(), x.into()]);
        }
    }
    let params = json!({
        "n": n,
        "k": k,
        "S": sources,
        "trials": trials,
        "seed": seed,
        "total_variation": tv,
    });
    Ok((table, params))
}
