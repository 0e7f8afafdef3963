//! Seeded sampling of uniformly random attachments, used as an independent
//! statistical check on the exact distributions.
//!
//! # Generator
//!
//! Samples come from xoshiro256** seeded through SplitMix64: the four state
//! words are the first four SplitMix64 outputs for the 64-bit seed. Trials
//! are split into chunks of [`CHUNK_TRIALS`]; chunk `c` uses the seeded
//! generator advanced by `c` calls of the xoshiro256** `jump` function
//! (2^128 steps each). The histogram therefore does not depend on how many
//! threads process the chunks.
//!
//! Integers below a bound `n` are drawn with [`uniform_below`]: take the next
//! 64-bit output `v`, reject it while `v >= n * floor(2^64 / n)`, then return
//! `v mod n`.
//!
//! A boundary point of the parameter box is drawn by rejection from the full
//! grid: draw each coordinate `s_i` uniformly from `0..=x_i + y_i` in index
//! order and accept once some coordinate is `0` or `x_i + y_i`.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256StarStar;
use rayon::prelude::*;

use crate::distributions::Distribution;
use crate::error::{AggError, Result};
use crate::geometry::{
    aggregate_unchecked, attachment_count, parameter_extents, AttachmentParam, BoxDims,
};
use crate::partitions::{rotations, Partition};
use crate::rational::to_f64;

pub type SampleRng = Xoshiro256StarStar;

pub const CHUNK_TRIALS: u64 = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SampleConfig {
    trials: u64,
    pub seed: u64,
}

impl SampleConfig {
    pub fn new(trials: u64, seed: u64) -> Result<Self> {
        if trials == 0 {
            return Err(AggError::NoTrials);
        }
        Ok(Self { trials, seed })
    }

    pub fn trials(&self) -> u64 {
        self.trials
    }
}

/// Outcome histogram of a sampling run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmpiricalDistribution<K: Ord> {
    pub counts: BTreeMap<K, u64>,
    pub total: u64,
}

impl<K: Ord + Clone> EmpiricalDistribution<K> {
    pub fn frequency(&self, outcome: &K) -> f64 {
        self.counts.get(outcome).copied().unwrap_or(0) as f64 / self.total as f64
    }

    /// Half the L1 distance to an exact distribution.
    pub fn total_variation(&self, exact: &Distribution<K>) -> f64 {
        let mut sum = 0.0;
        for (k, p) in exact.iter() {
            sum += (self.frequency(k) - to_f64(p)).abs();
        }
        for (k, &c) in &self.counts {
            if exact.probability(k) == num_traits::Zero::zero() {
                sum += c as f64 / self.total as f64;
            }
        }
        sum / 2.0
    }

    fn merge(mut self, other: Self) -> Self {
        for (k, c) in other.counts {
            *self.counts.entry(k).or_default() += c;
        }
        self.total += other.total;
        self
    }
}

/// Uniform integer in `0..n` by rejection on the 64-bit output.
pub fn uniform_below<R: RngCore + ?Sized>(rng: &mut R, n: u64) -> u64 {
    assert!(n > 0, "empty range");
    let zone = (u64::MAX / n) * n;
    loop {
        let v = rng.next_u64();
        if v < zone {
            return v % n;
        }
    }
}

/// Uniformly random boundary point of the parameter box of `x + y`.
pub fn sample_parameter<R: RngCore + ?Sized>(
    x: &BoxDims,
    y: &BoxDims,
    rng: &mut R,
) -> Result<AttachmentParam> {
    let extents = parameter_extents(x, y)?;
    Ok(AttachmentParam::new(sample_boundary(&extents, rng)))
}

fn sample_boundary<R: RngCore + ?Sized>(extents: &[u64], rng: &mut R) -> Vec<u64> {
    let mut s = vec![0; extents.len()];
    loop {
        let mut extreme = false;
        for (si, &n) in s.iter_mut().zip(extents) {
            *si = uniform_below(rng, n + 1);
            extreme |= *si == 0 || *si == n;
        }
        if extreme {
            return s;
        }
    }
}

/// Result of one uniformly random attachment of `y` to `x`.
pub fn sample_attachment<R: RngCore + ?Sized>(
    x: &BoxDims,
    y: &BoxDims,
    rng: &mut R,
) -> Result<BoxDims> {
    let s = sample_parameter(x, y, rng)?;
    Ok(aggregate_unchecked(x, y, s.coords()))
}

/// Generators for each chunk of a run, derived by successive jumps.
fn chunk_rngs(cfg: &SampleConfig) -> Vec<(SampleRng, u64)> {
    let chunks = cfg.trials.div_ceil(CHUNK_TRIALS);
    let mut rng = SampleRng::seed_from_u64(cfg.seed);
    (0..chunks)
        .map(|c| {
            let start = c * CHUNK_TRIALS;
            let len = CHUNK_TRIALS.min(cfg.trials - start);
            let here = rng.clone();
            rng.jump();
            (here, len)
        })
        .collect()
}

fn run_chunks<K, F>(cfg: &SampleConfig, draw: F) -> EmpiricalDistribution<K>
where
    K: Ord + Clone + Send,
    F: Fn(&mut SampleRng) -> K + Sync,
{
    chunk_rngs(cfg)
        .into_par_iter()
        .map(|(mut rng, len)| {
            let mut counts = BTreeMap::new();
            for _ in 0..len {
                *counts.entry(draw(&mut rng)).or_default() += 1;
            }
            EmpiricalDistribution { counts, total: len }
        })
        .reduce(
            || EmpiricalDistribution { counts: BTreeMap::new(), total: 0 },
            EmpiricalDistribution::merge,
        )
}

/// Histogram of `cfg.trials` random attachments of `y` to `x`.
pub fn estimate_distribution(
    x: &BoxDims,
    y: &BoxDims,
    cfg: &SampleConfig,
) -> Result<EmpiricalDistribution<BoxDims>> {
    let extents = parameter_extents(x, y)?;
    Ok(run_chunks(cfg, |rng| aggregate_unchecked(x, y, &sample_boundary(&extents, rng))))
}

/// Histogram of sampled parameter points themselves, for uniformity checks.
pub fn estimate_parameters(
    x: &BoxDims,
    y: &BoxDims,
    cfg: &SampleConfig,
) -> Result<EmpiricalDistribution<AttachmentParam>> {
    let extents = parameter_extents(x, y)?;
    Ok(run_chunks(cfg, |rng| AttachmentParam::new(sample_boundary(&extents, rng))))
}

/// Partition-mode sampling: a rotation `y` of `mu` is drawn with probability
/// proportional to its attachment count, then an attachment of `y` to the
/// sorted box of `lam` is drawn uniformly. This is uniform over the union of
/// all rotations' parameter sets.
pub fn estimate_partition_distribution(
    lam: &Partition,
    mu: &Partition,
    cfg: &SampleConfig,
) -> Result<EmpiricalDistribution<Partition>> {
    if lam.len() != mu.len() {
        return Err(AggError::DimensionMismatch { left: lam.len(), right: mu.len() });
    }
    let x = lam.as_box();
    let mut arms = Vec::new();
    let mut cumulative = BigUint::from(0u32);
    for y in rotations(mu) {
        cumulative += attachment_count(&x, &y)?;
        let bound = cumulative.to_u64().expect("attachment counts fit in 64 bits when sampling");
        let extents = parameter_extents(&x, &y)?;
        arms.push((bound, y, extents));
    }
    let total = arms.last().map(|a| a.0).unwrap_or(0);
    Ok(run_chunks(cfg, |rng| {
        let u = uniform_below(rng, total);
        let (_, y, extents) = arms.iter().find(|(bound, _, _)| u < *bound).expect("u < total");
        let z = aggregate_unchecked(&x, y, &sample_boundary(extents, rng));
        Partition::of_box(&z)
    }))
}
