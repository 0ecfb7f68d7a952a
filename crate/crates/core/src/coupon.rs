//! Same-code delivery as a time-varying coupon-collector chain.
//!
//! `S` storage systems hold the same `n`-symbol MDS codeword and take turns
//! (system `l mod S` at step `l`) sending a uniformly chosen symbol they
//! have not sent before. `U_l` is the number of symbols the receiver has
//! not seen after `l` transmissions. From state `i` at step `l` the chain
//! moves to `i - 1` with probability `i / (n - floor(l / S))` and stays put
//! otherwise.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ChainSpec {
    pub n: usize,
    pub sources: usize,
    pub k: Option<usize>,
}

impl ChainSpec {
    pub fn new(n: usize, sources: usize) -> Result<Self> {
        if n == 0 || sources == 0 {
            return Err(Error::domain(format!(
                "chain needs n >= 1 and S >= 1 (got n = {n}, S = {sources})"
            )));
        }
        Ok(ChainSpec { n, sources, k: None })
    }

    pub fn with_k(n: usize, sources: usize, k: usize) -> Result<Self> {
        let mut spec = ChainSpec::new(n, sources)?;
        if k == 0 || k > n {
            return Err(Error::domain(format!("need 1 <= k <= n, got k = {k}, n = {n}")));
        }
        spec.k = Some(k);
        Ok(spec)
    }

    /// Total number of transmissions, `S * n`.
    pub fn horizon(&self) -> usize {
        self.sources * self.n
    }

    /// Symbols the active system still holds unsent at `step`.
    fn remaining(&self, step: usize) -> usize {
        self.n - step / self.sources
    }

    fn k(&self) -> Result<usize> {
        self.k
            .ok_or_else(|| Error::usage("completion analysis needs k"))
    }
}

/// `(p_new, p_dup)` for `i` unseen symbols at `step`.
pub fn transition_prob(i: usize, step: usize, spec: &ChainSpec) -> Result<(f64, f64)> {
    if i > spec.n {
        return Err(Error::domain(format!("state {i} exceeds n = {}", spec.n)));
    }
    if step >= spec.horizon() {
        return Err(Error::domain(format!(
            "step {step}: every system has sent all of its symbols"
        )));
    }
    let d = spec.remaining(step);
    if i > d {
        return Err(Error::domain(format!(
            "state {i} is unreachable at step {step} ({d} unsent symbols remain)"
        )));
    }
    let p_new = i as f64 / d as f64;
    Ok((p_new, (d - i) as f64 / d as f64))
}

/// Distribution of `U_l` at one step.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StepPmf {
    pub step: usize,
    /// `probs[u] = P(U_l = u)` for `u` in `0..=n`.
    pub probs: Vec<f64>,
}

impl StepPmf {
    pub fn total(&self) -> f64 {
        self.probs.iter().sum()
    }

    pub fn mean(&self) -> f64 {
        self.probs
            .iter()
            .enumerate()
            .map(|(u, p)| u as f64 * p)
            .sum()
    }

    pub fn variance(&self) -> f64 {
        let mean = self.mean();
        self.probs
            .iter()
            .enumerate()
            .map(|(u, p)| (u as f64 - mean).powi(2) * p)
            .sum()
    }

    /// `P(K_l = k)` where `K_l = n - U_l` counts received unique symbols.
    pub fn received(&self, k: usize) -> f64 {
        let n = self.probs.len() - 1;
        if k > n {
            0.0
        } else {
            self.probs[n - k]
        }
    }
}

// One transition with explicit numerator/denominator so the same kernel
// runs in f64 and in exact rationals. next[i] sums left to right.
fn evolve_generic<T, F>(spec: &ChainSpec, ratio: F) -> Vec<Vec<T>>
where
    T: Clone + Zero + One + std::ops::Mul<Output = T> + std::ops::Add<Output = T>,
    F: Fn(usize, usize) -> T,
{
    let n = spec.n;
    let mut current = vec![T::zero(); n + 1];
    current[n] = T::one();
    let mut out = Vec::with_capacity(spec.horizon() + 1);
    out.push(current.clone());
    for step in 0..spec.horizon() {
        let d = spec.remaining(step);
        let mut next = vec![T::zero(); n + 1];
        for (i, slot) in next.iter_mut().enumerate() {
            let mut acc = T::zero();
            if i <= d && !current[i].is_zero() {
                acc = acc + current[i].clone() * ratio(d - i, d);
            }
            if i < n && i + 1 <= d && !current[i + 1].is_zero() {
                acc = acc + current[i + 1].clone() * ratio(i + 1, d);
            }
            *slot = acc;
        }
        out.push(next.clone());
        current = next;
    }
    out
}

/// Exact forward evolution: the PMF of `U_l` for every `l` in `0..=S n`.
pub fn evolve_pmf(spec: &ChainSpec) -> Vec<StepPmf> {
    evolve_generic(spec, |a, b| a as f64 / b as f64)
        .into_iter()
        .enumerate()
        .map(|(step, probs)| StepPmf { step, probs })
        .collect()
}

/// [`evolve_pmf`] in arbitrary-precision rationals.
pub fn evolve_pmf_exact(spec: &ChainSpec) -> Vec<Vec<BigRational>> {
    evolve_generic(spec, |a, b| {
        BigRational::new(BigInt::from(a), BigInt::from(b))
    })
}

/// `E[U_l] = n * prod_{i < l} (1 - 1 / (n - floor(i / S)))`.
pub fn expected_unseen(step: usize, spec: &ChainSpec) -> Result<f64> {
    if step > spec.horizon() {
        return Err(Error::domain(format!(
            "step {step} beyond horizon {}",
            spec.horizon()
        )));
    }
    let mut e = spec.n as f64;
    for i in 0..step {
        let d = spec.remaining(i) as f64;
        e *= 1.0 - 1.0 / d;
    }
    Ok(e)
}

/// Large-`n` limit of `E[U_{n tau}] / n`: `(1 - tau / S)^S`.
pub fn asymptotic_unseen(tau: f64, sources: usize) -> Result<f64> {
    let s = sources as f64;
    if sources == 0 || !(0.0..=s).contains(&tau) {
        return Err(Error::domain(format!("tau = {tau} outside [0, {s}]")));
    }
    Ok((1.0 - tau / s).powi(sources as i32))
}

/// Law of the completion time `L`, the step at which the `k`-th distinct
/// symbol arrives.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CompletionPmf {
    pub k: usize,
    /// `probs[l] = P(L = l)` for `l` in `0..=S n`; zero below `k`.
    pub probs: Vec<f64>,
}

impl CompletionPmf {
    pub fn total(&self) -> f64 {
        self.probs.iter().sum()
    }

    /// Direct summation of `l * P(L = l)`.
    pub fn mean(&self) -> f64 {
        self.probs
            .iter()
            .enumerate()
            .map(|(l, p)| l as f64 * p)
            .sum()
    }

    pub fn support_start(&self) -> Option<usize> {
        self.probs.iter().position(|&p| p > 0.0)
    }
}

/// `P(L = l) = P(U_{l-1} = n - k + 1) * p_new(n - k + 1, l - 1)`.
pub fn completion_pmf(spec: &ChainSpec) -> Result<CompletionPmf> {
    let k = spec.k()?;
    let pmfs = evolve_pmf(spec);
    let target = spec.n - k + 1;
    let mut probs = vec![0.0; spec.horizon() + 1];
    for (l, p) in probs.iter_mut().enumerate().skip(k) {
        let d = spec.remaining(l - 1);
        if target <= d {
            *p = pmfs[l - 1].probs[target] * target as f64 / d as f64;
        }
    }
    Ok(CompletionPmf { k, probs })
}

/// [`completion_pmf`] in exact rationals.
pub fn completion_pmf_exact(spec: &ChainSpec) -> Result<Vec<BigRational>> {
    let k = spec.k()?;
    let pmfs = evolve_pmf_exact(spec);
    let target = spec.n - k + 1;
    let mut probs = vec![BigRational::zero(); spec.horizon() + 1];
    for (l, p) in probs.iter_mut().enumerate().skip(k) {
        let d = spec.remaining(l - 1);
        if target <= d {
            *p = pmfs[l - 1][target].clone()
                * BigRational::new(BigInt::from(target), BigInt::from(d));
        }
    }
    Ok(probs)
}

/// Large-`n` normalized completion time `tau~ = S (1 - (1 - R)^(1/S))`.
pub fn asymptotic_completion(rate: f64, sources: usize) -> Result<f64> {
    if !(rate > 0.0 && rate <= 1.0) {
        return Err(Error::domain(format!("rate {rate} outside (0, 1]")));
    }
    if sources == 0 {
        return Err(Error::domain("need at least one source"));
    }
    let s = sources as f64;
    Ok(s * (1.0 - (1.0 - rate).powf(1.0 / s)))
}

/// Transmission factor `delta = tau~ / R` at storage factor `sigma = 1 / R`
/// for `n -> infinity`.
pub fn tradeoff(sigma: f64, sources: usize) -> Result<f64> {
    if !(sigma >= 1.0) || !sigma.is_finite() {
        return Err(Error::domain(format!("storage factor {sigma} must be >= 1")));
    }
    if sigma == 1.0 {
        return Ok(sources as f64);
    }
    let rate = 1.0 / sigma;
    Ok(asymptotic_completion(rate, sources)? / rate)
}

/// `delta` for infinitely many sources: `-ln(1 - R) / R`.
pub fn tradeoff_many_sources(sigma: f64) -> Result<f64> {
    if !(sigma > 1.0) || !sigma.is_finite() {
        return Err(Error::domain(format!(
            "storage factor {sigma} must exceed 1 for a finite limit"
        )));
    }
    let rate = 1.0 / sigma;
    Ok(-(1.0 - rate).ln() / rate)
}

/// Finite-`n` transmission factor `E[L] / k` with `k = round(n / sigma)`.
pub fn tradeoff_finite(sigma: f64, n: usize, sources: usize) -> Result<TradeoffPoint> {
    if !(sigma >= 1.0) || !sigma.is_finite() {
        return Err(Error::domain(format!("storage factor {sigma} must be >= 1")));
    }
    let k = ((n as f64 / sigma).round() as usize).clamp(1, n);
    let spec = ChainSpec::with_k(n, sources, k)?;
    let delta = completion_pmf(&spec)?.mean() / k as f64;
    Ok(TradeoffPoint {
        sigma,
        delta,
        sources,
        n: Some(n),
    })
}

/// One point of the storage/transmission tradeoff curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TradeoffPoint {
    pub sigma: f64,
    pub delta: f64,
    pub sources: usize,
    /// `None` for the `n -> infinity` curve.
    pub n: Option<usize>,
}

pub fn tradeoff_point(sigma: f64, sources: usize) -> Result<TradeoffPoint> {
    Ok(TradeoffPoint {
        sigma,
        delta: tradeoff(sigma, sources)?,
        sources,
        n: None,
    })
}
