//! Exact distributions of aggregation results for boxes, and the random
//! variable counting how many sides of the larger box grow.

use std::collections::BTreeMap;

use itertools::Itertools;
use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{AggError, Result};
use crate::geometry::{
    aggregate_unchecked, attachment_count, boundary_faces, check_same_dim, BoxDims,
};
use crate::rational::{from_counts, int, ratio, Rational};
use crate::symfunc::{big_r, check_dirs, check_dominating, moment_polynomial};

/// Exact distribution over outcomes `K`, built from occurrence counts over a
/// finite set of equally likely attachments.
///
/// Iteration is in ascending key order; [`Distribution::iter_canonical`]
/// yields the descending order used for serialization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Distribution<K: Ord> {
    entries: BTreeMap<K, Rational>,
    total_attachments: BigUint,
}

pub type BoxDistribution = Distribution<BoxDims>;

impl<K: Ord + Clone> Distribution<K> {
    /// Normalizes raw occurrence counts. Zero counts are dropped.
    pub fn from_counts(counts: BTreeMap<K, BigUint>) -> Self {
        let total: BigUint = counts.values().sum();
        let entries = counts
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| {
                let p = from_counts(&c, &total);
                (k, p)
            })
            .collect();
        Self { entries, total_attachments: total }
    }

    /// Builds from probabilities directly; used by closed-form constructions
    /// whose rows may repeat an outcome (they are summed).
    pub fn from_weighted<I>(rows: I, total_attachments: BigUint) -> Self
    where
        I: IntoIterator<Item = (K, Rational)>,
    {
        let mut entries: BTreeMap<K, Rational> = BTreeMap::new();
        for (k, p) in rows {
            if p.is_zero() {
                continue;
            }
            *entries.entry(k).or_insert_with(Rational::zero) += p;
        }
        Self { entries, total_attachments }
    }

    pub fn probability(&self, outcome: &K) -> Rational {
        self.entries.get(outcome).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn total_attachments(&self) -> &BigUint {
        &self.total_attachments
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (&K, &Rational)> {
        self.entries.iter()
    }

    /// Descending lexicographic order of outcomes.
    pub fn iter_canonical(&self) -> impl Iterator<Item = (&K, &Rational)> {
        self.entries.iter().rev()
    }

    pub fn entries(&self) -> &BTreeMap<K, Rational> {
        &self.entries
    }

    pub fn total_mass(&self) -> Rational {
        self.entries.values().fold(Rational::zero(), |acc, p| acc + p)
    }

    /// Occurrence count of an outcome, i.e. `probability * total_attachments`.
    pub fn count(&self, outcome: &K) -> Rational {
        self.probability(outcome) * Rational::from_integer(self.total_attachments.clone().into())
    }

    /// The maximal probability and every outcome attaining it, in canonical
    /// (descending) order. `None` for an empty distribution.
    pub fn argmax(&self) -> Option<(Rational, Vec<K>)> {
        let best = self.entries.values().max()?.clone();
        let winners = self
            .iter_canonical()
            .filter(|(_, p)| **p == best)
            .map(|(k, _)| k.clone())
            .collect();
        Some((best, winners))
    }

    /// Maps outcomes through `f`, summing probabilities that collide.
    pub fn project<J: Ord + Clone>(&self, f: impl Fn(&K) -> J) -> Distribution<J> {
        Distribution::from_weighted(
            self.entries.iter().map(|(k, p)| (f(k), p.clone())),
            self.total_attachments.clone(),
        )
    }
}

/// Occurrence counts of every aggregation result of `x + y`. Faces of the
/// parameter box are processed in parallel and merged by summation.
pub fn box_result_counts(x: &BoxDims, y: &BoxDims) -> Result<BTreeMap<BoxDims, BigUint>> {
    let faces = boundary_faces(x, y)?;
    let merged = faces
        .par_iter()
        .map(|face| {
            let mut counts: BTreeMap<BoxDims, u64> = BTreeMap::new();
            for s in face.points() {
                *counts.entry(aggregate_unchecked(x, y, s.coords())).or_default() += 1;
            }
            counts
        })
        .reduce(BTreeMap::new, |mut acc, part| {
            for (z, c) in part {
                *acc.entry(z).or_default() += c;
            }
            acc
        });
    Ok(merged.into_iter().map(|(z, c)| (z, BigUint::from(c))).collect())
}

/// Exact distribution of `x + y -> z` over all attachments.
pub fn box_distribution(x: &BoxDims, y: &BoxDims) -> Result<BoxDistribution> {
    let dist = Distribution::from_counts(box_result_counts(x, y)?);
    debug_assert_eq!(dist.total_attachments, attachment_count(x, y)?);
    Ok(dist)
}

/// Closed-form distribution for rectangles, built row by row from the five
/// attachment types (corner, two sliding families, two flush placements).
pub fn box_distribution_2d(x: &BoxDims, y: &BoxDims) -> Result<BoxDistribution> {
    check_same_dim(x, y)?;
    if x.dim() != 2 {
        return Err(AggError::WrongDimension { expected: 2, got: x.dim() });
    }
    let (x1, x2) = (x.sides()[0], x.sides()[1]);
    let (y1, y2) = (y.sides()[0], y.sides()[1]);
    let total = 2 * (x1 + x2 + y1 + y2);
    let p = |weight: u64| ratio(weight, total);
    let rect = |a: u64, b: u64| BoxDims::from_sides_unchecked(vec![a, b]);

    let mut rows = vec![(rect(x1 + y1, x2 + y2), p(4))];
    rows.extend((1..x1.min(y1)).map(|s| (rect(x1 + y1 - s, x2 + y2), p(4))));
    rows.extend((1..x2.min(y2)).map(|s| (rect(x1 + y1, x2 + y2 - s), p(4))));
    rows.push((rect(x1 + y1, x2.max(y2)), p(2 * x2.abs_diff(y2) + 2)));
    rows.push((rect(x1.max(y1), x2 + y2), p(2 * x1.abs_diff(y1) + 2)));
    Ok(Distribution::from_weighted(rows, BigUint::from(total)))
}

/// Swaps `x_i` and `y_i` wherever `x_i < y_i`, so the first box dominates
/// coordinatewise. Box distributions are invariant under these swaps.
pub fn normalize_pair(x: &BoxDims, y: &BoxDims) -> Result<(BoxDims, BoxDims)> {
    check_same_dim(x, y)?;
    let (big, small): (Vec<u64>, Vec<u64>) = x
        .sides()
        .iter()
        .zip(y.sides())
        .map(|(&a, &b)| (a.max(b), a.min(b)))
        .unzip();
    Ok((BoxDims::from_sides_unchecked(big), BoxDims::from_sides_unchecked(small)))
}

fn count_as_rational(x: &BoxDims, y: &BoxDims) -> Result<Rational> {
    Ok(Rational::from_integer(attachment_count(x, y)?.into()))
}

/// Probability that the result grows from `x` in exactly the (zero-based)
/// directions `dirs`. Requires `x_i >= y_i` for all `i`.
pub fn growth_direction_prob(x: &BoxDims, y: &BoxDims, dirs: &[usize]) -> Result<Rational> {
    check_dominating(x, y)?;
    check_dirs(dirs, x.dim())?;
    if dirs.is_empty() {
        return Err(AggError::InvalidDirections);
    }
    let total = count_as_rational(x, y)?;
    let (xs, ys) = (x.sides(), y.sides());
    let grown: u64 = dirs.iter().map(|&j| ys[j]).product();
    let grown_inner: u64 = dirs.iter().map(|&j| ys[j] - 1).product();
    let fixed: u64 = (0..x.dim())
        .filter(|j| !dirs.contains(j))
        .map(|j| xs[j] - ys[j] + 1)
        .product();
    let weight = int(2u64.pow(dirs.len() as u32)) * int(grown - grown_inner) * int(fixed);
    Ok(weight / total)
}

/// Distribution of the number of growing sides, `probs[k] = P(X = k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrowthPmf {
    probs: Vec<Rational>,
}

impl GrowthPmf {
    pub fn probs(&self) -> &[Rational] {
        &self.probs
    }

    pub fn get(&self, k: usize) -> Rational {
        self.probs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn total_mass(&self) -> Rational {
        self.probs.iter().fold(Rational::zero(), |acc, p| acc + p)
    }

    /// `sum_k k^p P(X = k)`.
    pub fn expectation_of_power(&self, p: u32) -> Rational {
        self.probs
            .iter()
            .enumerate()
            .fold(Rational::zero(), |acc, (k, pk)| acc + pk * int((k as u64).pow(p)))
    }
}

/// `P(X = k) = 2^k (R_k(x - y + 1, y) - R_k(x - y + 1, y - 1)) / |T|`.
/// Requires `x_i >= y_i`.
pub fn growth_count_pmf(x: &BoxDims, y: &BoxDims) -> Result<GrowthPmf> {
    check_dominating(x, y)?;
    let total = count_as_rational(x, y)?;
    let slack: Vec<Rational> =
        x.sides().iter().zip(y.sides()).map(|(&a, &b)| int(a - b + 1)).collect();
    let outer: Vec<Rational> = y.sides().iter().map(|&b| int(b)).collect();
    let inner: Vec<Rational> = y.sides().iter().map(|&b| int(b - 1)).collect();
    let mut probs = Vec::with_capacity(x.dim() + 1);
    for k in 0..=x.dim() {
        let diff = big_r(&slack, &outer, k)? - big_r(&slack, &inner, k)?;
        probs.push(int(2u64.pow(k as u32)) * diff / &total);
    }
    // every attachment has an extreme coordinate, which always grows
    assert!(probs[0].is_zero(), "P(X = 0) must vanish");
    Ok(GrowthPmf { probs })
}

/// `p`-th moment of `X` as `((u d/du)^p M)(2) / M(2)`. Requires `x_i >= y_i`.
pub fn moment(x: &BoxDims, y: &BoxDims, p: u32) -> Result<Rational> {
    let m = moment_polynomial(x, y)?;
    let two = int(2);
    let mut derived = m.clone();
    for _ in 0..p {
        derived = derived.u_ddu();
    }
    Ok(derived.eval(&two) / m.eval(&two))
}

/// Transition law of aggregating `x` with the unit box: the result
/// `x + e_{i_1} + ... + e_{i_k}` has probability
/// `2^k x_1...x_l / (x_{i_1}...x_{i_k} |T|)`.
pub fn unit_box_distribution(x: &BoxDims) -> BoxDistribution {
    let l = x.dim();
    let xs = x.sides();
    let volume: BigUint = x.volume();
    let total: BigUint = xs.iter().map(|&a| BigUint::from(a + 2)).product::<BigUint>() - &volume;
    let total_q = Rational::from_integer(total.clone().into());
    let volume_q = Rational::from_integer(volume.into());
    let rows = (1..=l).flat_map(|k| (0..l).combinations(k)).map(|dirs| {
        let denom: u64 = dirs.iter().map(|&i| xs[i]).product();
        let p = int(2u64.pow(dirs.len() as u32)) * &volume_q / (int(denom) * &total_q);
        (x.grown(&dirs), p)
    });
    Distribution::from_weighted(rows, total)
}

/// Expected number of growing sides when aggregating with the unit box:
/// `sum_i 2/(2 + x_i) / (1 - prod_i x_i/(x_i + 2))`.
pub fn unit_mean_directions(x: &BoxDims) -> Rational {
    let sum = x.sides().iter().fold(Rational::zero(), |acc, &a| acc + ratio(2, a + 2));
    let shrink = x.sides().iter().fold(Rational::one(), |acc, &a| acc * ratio(a, a + 2));
    sum / (Rational::one() - shrink)
}
