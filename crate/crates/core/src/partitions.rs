//! Aggregation up to rotation: boxes are identified with the partition of
//! their side lengths.
//!
//! Two routes compute the same distribution. The geometric route fixes one
//! orientation of the first box and attaches every distinct rotation of the
//! second. The combinatorial route pairs parts under a permutation and picks
//! an overlap for each pair, requiring at least one attachment.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use num_bigint::BigUint;

use crate::distributions::{box_result_counts, Distribution};
use crate::error::{AggError, Result};
use crate::geometry::{parse_list, BoxDims};

/// Non-increasing sequence of positive parts; the rotation class of a box.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition(Vec<u64>);

pub type PartitionDistribution = Distribution<Partition>;

impl Partition {
    pub fn new(parts: Vec<u64>) -> Result<Self> {
        let ordered = parts.windows(2).all(|w| w[0] >= w[1]);
        if parts.is_empty() || parts.contains(&0) || !ordered {
            return Err(AggError::InvalidPartition(parts));
        }
        Ok(Self(parts))
    }

    /// The partition of a box: its sides sorted in non-increasing order.
    pub fn of_box(x: &BoxDims) -> Self {
        let mut parts = x.sides().to_vec();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self(parts)
    }

    pub fn parts(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> u64 {
        self.0.iter().sum()
    }

    /// The box with sides in partition order.
    pub fn as_box(&self) -> BoxDims {
        BoxDims::from_sides_unchecked(self.0.clone())
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.0.iter().join(","))
    }
}

impl FromStr for Partition {
    type Err = AggError;

    /// Parses comma-separated parts such as `3,1,1`; parts must already be
    /// non-increasing.
    fn from_str(s: &str) -> Result<Self> {
        Self::new(parse_list(s)?).map_err(|e| AggError::Parse {
            input: s.to_string(),
            reason: e.to_string(),
        })
    }
}

/// Rearranges `v` into the next lexicographic permutation; returns `false`
/// (leaving `v` sorted ascending) after the last one.
fn next_permutation(v: &mut [u64]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        v.reverse();
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).expect("pivot has a successor");
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Every distinct rotation of the box `lam`, i.e. each distinct arrangement
/// of its parts, in ascending lexicographic order.
pub fn rotations(lam: &Partition) -> Vec<BoxDims> {
    let mut current: Vec<u64> = lam.0.iter().rev().copied().collect();
    let mut out = vec![BoxDims::from_sides_unchecked(current.clone())];
    while next_permutation(&mut current) {
        out.push(BoxDims::from_sides_unchecked(current.clone()));
    }
    out
}

fn check_lengths(lam: &Partition, mu: &Partition) -> Result<()> {
    if lam.len() != mu.len() {
        return Err(AggError::DimensionMismatch { left: lam.len(), right: mu.len() });
    }
    Ok(())
}

/// Geometric aggregation with a chosen orientation `x` of the first box,
/// summing counts over all rotations of `mu` and projecting afterwards.
pub fn partition_distribution_from(x: &BoxDims, mu: &Partition) -> Result<PartitionDistribution> {
    if x.dim() != mu.len() {
        return Err(AggError::DimensionMismatch { left: x.dim(), right: mu.len() });
    }
    let mut counts: BTreeMap<Partition, BigUint> = BTreeMap::new();
    for y in rotations(mu) {
        for (z, c) in box_result_counts(x, &y)? {
            *counts.entry(Partition::of_box(&z)).or_default() += c;
        }
    }
    Ok(Distribution::from_counts(counts))
}

/// Distribution of `[lam] + [mu] -> [nu]`, fixing `lam` in its sorted
/// orientation.
pub fn partition_distribution(lam: &Partition, mu: &Partition) -> Result<PartitionDistribution> {
    check_lengths(lam, mu)?;
    partition_distribution_from(&lam.as_box(), mu)
}

/// A covered length `c` of two strips `a` and `b`, with the number of
/// relative placements producing it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Overlap {
    pub length: u64,
    pub multiplicity: u64,
}

impl Overlap {
    /// The strips touch end to end.
    pub fn is_attachment(&self, a: u64, b: u64) -> bool {
        self.length == a + b
    }

    /// The shorter strip lies within the longer.
    pub fn is_absorption(&self, a: u64, b: u64) -> bool {
        self.length == a.max(b)
    }
}

/// Overlaps of `a` and `b`, by increasing length from `max(a, b)` to `a + b`.
///
/// Absorption carries weight `|a - b| + 1` (the slide range); every longer
/// overlap, attachment included, carries weight 2 (one placement from each
/// end). The weights sum to `a + b + 1`, the number of placements along one
/// axis.
pub fn overlaps(a: u64, b: u64) -> Vec<Overlap> {
    let lo = a.max(b);
    (lo..=a + b)
        .map(|length| Overlap {
            length,
            multiplicity: if length == lo { a.abs_diff(b) + 1 } else { 2 },
        })
        .collect()
}

/// Distribution of `[lam] + [mu] -> [nu]` by pairing parts: for every
/// arrangement of `mu` and every choice of overlaps with at least one
/// attachment, the sorted lengths are counted with the product of overlap
/// multiplicities.
pub fn partition_distribution_combinatorial(
    lam: &Partition,
    mu: &Partition,
) -> Result<PartitionDistribution> {
    check_lengths(lam, mu)?;
    let mut counts: BTreeMap<Partition, BigUint> = BTreeMap::new();
    for arrangement in rotations(mu) {
        let choices: Vec<Vec<(Overlap, bool)>> = lam
            .parts()
            .iter()
            .zip(arrangement.sides())
            .map(|(&a, &b)| {
                overlaps(a, b).into_iter().map(|o| (o, o.is_attachment(a, b))).collect()
            })
            .collect();
        for pick in choices.iter().map(|c| c.iter()).multi_cartesian_product() {
            if !pick.iter().any(|(_, attached)| *attached) {
                continue;
            }
            let weight: u64 = pick.iter().map(|(o, _)| o.multiplicity).product();
            let mut parts: Vec<u64> = pick.iter().map(|(o, _)| o.length).collect();
            parts.sort_unstable_by(|a, b| b.cmp(a));
            *counts.entry(Partition(parts)).or_default() += weight;
        }
    }
    Ok(Distribution::from_counts(counts))
}


#[cfg(test)]
mod props {
    use proptest::prelude::*;

    use super::*;

    fn pair() -> impl Strategy<Value = (Partition, Partition)> {
        (1usize..=3).prop_flat_map(|l| {
            let part = move || {
                prop::collection::vec(1u64..=5, l)
                    .prop_map(|v| Partition::of_box(&BoxDims::new(v).unwrap()))
            };
            (part(), part())
        })
    }

    proptest! {
        #[test]
        fn definitions_agree((lam, mu) in pair()) {
            prop_assert_eq!(
                partition_distribution(&lam, &mu).unwrap(),
                partition_distribution_combinatorial(&lam, &mu).unwrap()
            );
        }

        #[test]
        fn rotations_are_distinct_and_sorted(parts in prop::collection::vec(1u64..=4, 1..=4)) {
            let lam = Partition::of_box(&BoxDims::new(parts).unwrap());
            let rots = rotations(&lam);
            prop_assert!(rots.windows(2).all(|w| w[0] < w[1]));
            for r in &rots {
                prop_assert_eq!(&Partition::of_box(r), &lam);
            }
        }
    }
}
