//! Markov chains of repeated aggregation.
//!
//! Two chains are covered: boxes repeatedly aggregating with the unit box,
//! and partitions repeatedly aggregating with their own copy. For the second
//! chain we follow the most frequent transitions, which in two dimensions
//! settle into the Fibonacci step `(a, b) -> (a + b, a)`.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use itertools::Itertools;
use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::distributions::{unit_box_distribution, Distribution};
use crate::error::{AggError, Result};
use crate::geometry::{check_same_dim, BoxDims};
use crate::partitions::{partition_distribution, Partition, PartitionDistribution};
use crate::rational::{ratio, Rational};

/// Sparse probability vector over chain states. Zero entries are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateDistribution<S: Ord> {
    entries: BTreeMap<S, Rational>,
}

impl<S: Ord + Clone> StateDistribution<S> {
    pub fn point_mass(state: S) -> Self {
        Self { entries: BTreeMap::from([(state, Rational::one())]) }
    }

    pub fn from_entries(entries: impl IntoIterator<Item = (S, Rational)>) -> Self {
        let mut out: BTreeMap<S, Rational> = BTreeMap::new();
        for (s, p) in entries {
            *out.entry(s).or_insert_with(Rational::zero) += p;
        }
        out.retain(|_, p| !p.is_zero());
        Self { entries: out }
    }

    pub fn probability(&self, state: &S) -> Rational {
        self.entries.get(state).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (&S, &Rational)> {
        self.entries.iter()
    }

    pub fn iter_canonical(&self) -> impl Iterator<Item = (&S, &Rational)> {
        self.entries.iter().rev()
    }

    pub fn total_mass(&self) -> Rational {
        self.entries.values().fold(Rational::zero(), |acc, p| acc + p)
    }
}

impl<S: Ord + Clone> From<Distribution<S>> for StateDistribution<S> {
    fn from(d: Distribution<S>) -> Self {
        Self::from_entries(d.entries().clone())
    }
}

/// One step of the unit-box chain: every state pushes its mass through its
/// unit-box transition law.
pub fn unit_box_step(d: &StateDistribution<BoxDims>) -> Result<StateDistribution<BoxDims>> {
    if let Some(first) = d.entries.keys().next() {
        for state in d.entries.keys() {
            check_same_dim(first, state)?;
        }
    }
    let pushed = d.entries.iter().flat_map(|(state, mass)| {
        unit_box_distribution(state)
            .entries()
            .iter()
            .map(|(z, p)| (z.clone(), p * mass))
            .collect_vec()
    });
    Ok(StateDistribution::from_entries(pushed))
}

/// `steps` applications of [`unit_box_step`] starting from `x`.
pub fn unit_box_evolve(x: &BoxDims, steps: usize) -> StateDistribution<BoxDims> {
    let mut d = StateDistribution::point_mass(x.clone());
    for _ in 0..steps {
        d = unit_box_step(&d).expect("states of a single chain share a dimension");
    }
    d
}

/// Weight of the transition `z - e_I -> z` in the backward recurrence:
/// `2^k prod_{j not in I} z_j / (prod_{j in I}(z_j + 1) prod_{j not in I}(z_j + 2)
///  - prod_{j in I}(z_j - 1) prod_{j not in I} z_j)`.
pub fn backward_weight(z: &BoxDims, dirs: &[usize]) -> Rational {
    let mut kept = BigUint::one();
    let mut all = BigUint::one();
    let mut interior = BigUint::one();
    for (j, &zj) in z.sides().iter().enumerate() {
        if dirs.contains(&j) {
            all *= zj + 1;
            interior *= zj - 1;
        } else {
            kept *= zj;
            all *= zj + 2;
            interior *= zj;
        }
    }
    let numer = BigUint::from(2u32).pow(dirs.len() as u32) * kept;
    Rational::new(numer.into(), (all - interior).into())
}

/// Memoized `n`-step transition probabilities of the unit-box chain from a
/// fixed start, evaluated backwards from the target (a Delannoy-type
/// recurrence with state-dependent weights).
#[derive(Debug)]
pub struct NStepTable {
    start: BoxDims,
    memo: HashMap<(Vec<u64>, usize), Rational>,
}

impl NStepTable {
    pub fn new(start: BoxDims) -> Self {
        Self { start, memo: HashMap::new() }
    }

    pub fn start(&self) -> &BoxDims {
        &self.start
    }

    /// `p^{(n)}(start, z)`; zero whenever `z` lies below the start in some
    /// coordinate.
    pub fn probability(&mut self, z: &BoxDims, n: usize) -> Result<Rational> {
        check_same_dim(&self.start, z)?;
        Ok(self.eval(z.sides(), n))
    }

    fn eval(&mut self, z: &[u64], n: usize) -> Rational {
        let x = self.start.sides().to_vec();
        let x = x.as_slice();
        if z.iter().zip(x).any(|(zi, xi)| zi < xi) {
            return Rational::zero();
        }
        if n == 0 {
            return if z == x { Rational::one() } else { Rational::zero() };
        }
        // each step grows the total size by at least one and at most l
        let grown: u64 = z.iter().zip(x).map(|(zi, xi)| zi - xi).sum();
        let l = z.len() as u64;
        if grown < n as u64 || grown > l * n as u64 {
            return Rational::zero();
        }
        let key = (z.to_vec(), n);
        if let Some(hit) = self.memo.get(&key) {
            return hit.clone();
        }
        let zb = BoxDims::from_sides_unchecked(z.to_vec());
        let mut total = Rational::zero();
        for k in 1..z.len() + 1 {
            for dirs in (0..z.len()).combinations(k) {
                if dirs.iter().any(|&j| z[j] <= x[j]) {
                    continue;
                }
                let mut prev = z.to_vec();
                for &j in &dirs {
                    prev[j] -= 1;
                }
                let inner = self.eval(&prev, n - 1);
                if !inner.is_zero() {
                    total += backward_weight(&zb, &dirs) * inner;
                }
            }
        }
        self.memo.insert(key, total.clone());
        total
    }
}

/// `p^{(n)}(x, z)` for the unit-box chain.
pub fn n_step_probability(x: &BoxDims, z: &BoxDims, n: usize) -> Result<Rational> {
    NStepTable::new(x.clone()).probability(z, n)
}

/// Transition law of the self-aggregation chain: `[lam] + [lam] -> [nu]`.
pub fn self_agg_distribution(lam: &Partition) -> PartitionDistribution {
    partition_distribution(lam, lam).expect("a partition has the length of its own copy")
}

/// Self-aggregation law of a two-part partition with `lam_1 > lam_2`, built
/// from the closed-form rows for rectangles with results of equal shape
/// merged. Cross-checks [`self_agg_distribution`].
pub fn self_agg_closed_form_2d(lam: &Partition) -> Result<PartitionDistribution> {
    if lam.len() != 2 {
        return Err(AggError::WrongDimension { expected: 2, got: lam.len() });
    }
    let (a, b) = (lam.parts()[0], lam.parts()[1]);
    if a == b {
        return Err(AggError::InvalidPartition(lam.parts().to_vec()));
    }
    let n = a + b;
    let shape = |u: u64, v: u64| Partition::of_box(&BoxDims::from_sides_unchecked(vec![u, v]));
    let mut rows = vec![(shape(2 * a, 2 * b), ratio(1, 2 * n))];
    rows.extend((1..a).map(|s| (shape(2 * a - s, 2 * b), ratio(1, 2 * n))));
    rows.extend((1..b).map(|s| (shape(2 * a, 2 * b - s), ratio(1, 2 * n))));
    rows.push((shape(2 * a, b), ratio(1, 4 * n)));
    rows.push((shape(a, 2 * b), ratio(1, 4 * n)));
    rows.push((shape(n, n), ratio(1, 2 * n)));
    rows.extend((1..b).map(|s| (shape(n, n - s), ratio(1, n))));
    rows.push((shape(n, a), ratio(a - b + 1, 2 * n)));
    Ok(Distribution::from_weighted(rows, BigUint::from(8 * n)))
}

/// The most frequent results of one parent at one level of a trace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceBranch {
    pub parent: Partition,
    /// Maximal transition probability out of `parent`.
    pub probability: Rational,
    /// Every result attaining it, in canonical (descending) order.
    pub results: Vec<Partition>,
    /// Whether `results` were carried to the next level; false when the tie
    /// count exceeded the expansion limit.
    pub expanded: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceLevel {
    pub branches: Vec<TraceBranch>,
}

impl TraceLevel {
    /// Distinct states reached at this level.
    pub fn states(&self) -> BTreeSet<&Partition> {
        self.branches.iter().flat_map(|b| &b.results).collect()
    }
}

/// Leveled record of highest-probability self-aggregation transitions.
/// `levels[0]` holds the transitions out of the start state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceTree {
    pub start: Partition,
    pub levels: Vec<TraceLevel>,
}

pub const DEFAULT_EXPAND_LIMIT: usize = 8;

/// Follows the most frequent self-aggregation results for `steps` levels.
/// Ties are all kept; a parent whose tie set is larger than `expand_limit`
/// is recorded with its full tie set but not expanded further.
pub fn most_frequent_trace(lam0: &Partition, steps: usize, expand_limit: usize) -> TraceTree {
    let mut levels = Vec::with_capacity(steps);
    let mut frontier = vec![lam0.clone()];
    for _ in 0..steps {
        if frontier.is_empty() {
            break;
        }
        let branches: Vec<TraceBranch> = frontier
            .par_iter()
            .map(|parent| {
                let (probability, results) =
                    self_agg_distribution(parent).argmax().expect("self-aggregation has results");
                let expanded = results.len() <= expand_limit;
                TraceBranch { parent: parent.clone(), probability, results, expanded }
            })
            .collect();
        let next: BTreeSet<Partition> = branches
            .iter()
            .filter(|b| b.expanded)
            .flat_map(|b| b.results.iter().cloned())
            .collect();
        frontier = next.into_iter().rev().collect();
        levels.push(TraceLevel { branches });
    }
    TraceTree { start: lam0.clone(), levels }
}

/// A row of the golden-rectangle iteration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatioReport {
    /// 1-based; step 1 is the starting partition.
    pub step: usize,
    pub state: Partition,
    /// `lam_i / lam_j` for all `i < j`, in lexicographic order of `(i, j)`.
    pub ratios: Vec<Rational>,
    /// Probability of the transition into `state`; `None` at step 1.
    pub probability: Option<Rational>,
}

impl RatioReport {
    pub fn new(step: usize, state: Partition, probability: Option<Rational>) -> Self {
        let ratios = pairwise_ratios(&state);
        Self { step, state, ratios, probability }
    }
}

pub fn pairwise_ratios(state: &Partition) -> Vec<Rational> {
    (0..state.len())
        .tuple_combinations()
        .map(|(i, j)| ratio(state.parts()[i], state.parts()[j]))
        .collect()
}

/// Iterates the most frequent self-aggregation of a two-part partition with
/// `lam_1 > lam_2 + 3`, for which the winner is always `(lam_1 + lam_2, lam_1)`.
/// Each winner is checked against the full distribution.
pub fn fibonacci_limit_report(lam0: &Partition, steps: usize) -> Result<Vec<RatioReport>> {
    if lam0.len() != 2 {
        return Err(AggError::WrongDimension { expected: 2, got: lam0.len() });
    }
    if lam0.parts()[0] <= lam0.parts()[1] + 3 {
        return Err(AggError::FibonacciHypothesis(lam0.parts().to_vec()));
    }
    let mut rows = Vec::with_capacity(steps);
    if steps == 0 {
        return Ok(rows);
    }
    rows.push(RatioReport::new(1, lam0.clone(), None));
    let mut current = lam0.clone();
    for step in 2..=steps {
        let (a, b) = (current.parts()[0], current.parts()[1]);
        let next = Partition::new(vec![a + b, a])?;
        let (best, winners) = self_agg_distribution(&current).argmax().expect("nonempty");
        assert_eq!(winners, vec![next.clone()], "unique most frequent result of {current}");
        rows.push(RatioReport::new(step, next.clone(), Some(best)));
        current = next;
    }
    Ok(rows)
}

/// The limit of the transition probabilities along the golden-rectangle
/// iteration, `1/2 - 1/(phi + 1)`.
pub fn golden_limit_probability() -> f64 {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    0.5 - 1.0 / (phi + 1.0)
}

pub fn fibonacci(n: usize) -> u64 {
    let (mut a, mut b) = (0u64, 1u64);
    for _ in 0..n {
        (a, b) = (b, a + b);
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distributions::box_distribution;
    use crate::rational::{int, to_decimal};

    fn b(v: &[u64]) -> BoxDims {
        BoxDims::new(v.to_vec()).unwrap()
    }

    fn p(v: &[u64]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn boxes(l: usize, max: u64) -> Vec<BoxDims> {
        (0..l).map(|_| 1..=max).multi_cartesian_product().map(|v| b(&v)).collect()
    }

    #[test]
    fn one_step_is_the_unit_law() {
        let x = b(&[2, 3]);
        let step = unit_box_evolve(&x, 1);
        assert_eq!(step, StateDistribution::from(unit_box_distribution(&x)));
        assert_eq!(unit_box_evolve(&x, 0), StateDistribution::point_mass(x));
    }

    #[test]
    fn two_steps_from_unit_square() {
        let d = unit_box_evolve(&b(&[1, 1]), 2);
        assert_eq!(d.total_mass(), int(1));
        // (2,2) -> (3,3) has probability 2/6; reached only through (2,2)
        assert_eq!(d.probability(&b(&[3, 3])), ratio(1, 2) * ratio(2, 6));
        // (2,2) via (2,1)->(2,2) [2/5] and (1,2)->(2,2) [2/5]
        assert_eq!(d.probability(&b(&[2, 2])), ratio(1, 4) * ratio(2, 5) * int(2));
        let support: Vec<_> = d.iter().map(|(s, _)| s.clone()).collect();
        assert_eq!(
            support,
            vec![b(&[1, 3]), b(&[2, 2]), b(&[2, 3]), b(&[3, 1]), b(&[3, 2]), b(&[3, 3])]
        );
    }

    #[test]
    fn mixed_dimensions_rejected() {
        let d = StateDistribution::from_entries([(b(&[1]), ratio(1, 2)), (b(&[1, 1]), ratio(1, 2))]);
        assert!(matches!(unit_box_step(&d), Err(AggError::DimensionMismatch { .. })));
    }

    #[test]
    fn planar_backward_weights() {
        for z1 in 2..8u64 {
            for z2 in 2..8u64 {
                let z = b(&[z1, z2]);
                assert_eq!(backward_weight(&z, &[0, 1]), ratio(2, z1 + z2));
                assert_eq!(backward_weight(&z, &[0]), ratio(z2, z1 + z2 + 1));
                assert_eq!(backward_weight(&z, &[1]), ratio(z1, z1 + z2 + 1));
            }
        }
    }

    #[test]
    fn n_step_base_cases() {
        let x = b(&[2, 1]);
        assert_eq!(n_step_probability(&x, &x, 0).unwrap(), int(1));
        assert_eq!(n_step_probability(&x, &b(&[3, 1]), 0).unwrap(), int(0));
        assert_eq!(n_step_probability(&x, &b(&[1, 5]), 3).unwrap(), int(0));
        assert!(n_step_probability(&x, &b(&[1, 5, 1]), 3).is_err());
    }

    #[test]
    fn backward_recurrence_matches_forward_propagation() {
        for l in 1..=3 {
            for x in boxes(l, 3) {
                let mut table = NStepTable::new(x.clone());
                let mut forward = StateDistribution::point_mass(x.clone());
                for n in 0..=4 {
                    let mut mass = Rational::zero();
                    for (z, pz) in forward.iter() {
                        let backward = table.probability(z, n).unwrap();
                        assert_eq!(&backward, pz, "x={x} z={z} n={n}");
                        mass += backward;
                    }
                    assert_eq!(mass, int(1));
                    forward = unit_box_step(&forward).unwrap();
                }
            }
        }
    }

    #[test]
    fn self_aggregation_examples() {
        let d = self_agg_distribution(&p(&[1, 1]));
        assert_eq!(d.len(), 2);
        assert_eq!(d.probability(&p(&[2, 2])), ratio(1, 2));
        assert_eq!(d.probability(&p(&[2, 1])), ratio(1, 2));
        let raw = box_distribution(&b(&[1, 1]), &b(&[1, 1])).unwrap();
        assert_eq!(d, raw.project(Partition::of_box));

        let d = self_agg_distribution(&p(&[3, 1, 1]));
        assert_eq!(d.total_attachments(), &BigUint::from(190u32));
        let r311: &[(&[u64], u64)] = &[
            (&[6, 2, 2], 8),
            (&[6, 2, 1], 8),
            (&[6, 1, 1], 2),
            (&[5, 2, 2], 8),
            (&[5, 2, 1], 8),
            (&[4, 4, 2], 16),
            (&[4, 4, 1], 8),
            (&[4, 3, 2], 48),
            (&[4, 3, 1], 24),
            (&[4, 2, 2], 8),
            (&[4, 2, 1], 8),
            (&[3, 3, 2], 36),
            (&[3, 2, 2], 4),
            (&[3, 2, 1], 4),
        ];
        assert_eq!(d.len(), r311.len());
        for (parts, num) in r311 {
            assert_eq!(d.probability(&p(parts)), ratio(*num, 190));
        }
    }

    #[test]
    fn closed_form_rows_match_enumeration() {
        for a in 2..=30u64 {
            for c in 1..a {
                let lam = p(&[a, c]);
                assert_eq!(self_agg_closed_form_2d(&lam).unwrap(), self_agg_distribution(&lam));
            }
        }
        assert!(self_agg_closed_form_2d(&p(&[3, 3])).is_err());
        assert!(self_agg_closed_form_2d(&p(&[3, 2, 1])).is_err());
    }

    #[test]
    fn planar_winner_is_unique_and_dominant() {
        for a in 5..=30u64 {
            for c in 1..a - 3 {
                let lam = p(&[a, c]);
                let d = self_agg_distribution(&lam);
                let (best, winners) = d.argmax().unwrap();
                let expected = p(&[a + c, a]);
                assert_eq!(winners, vec![expected.clone()]);
                assert!(best >= ratio(a - c + 1, 2 * (a + c)));
                let mut others: Vec<Rational> =
                    d.iter().filter(|(nu, _)| **nu != expected).map(|(_, q)| q.clone()).collect();
                others.sort_unstable_by(|u, v| v.cmp(u));
                let top3 = others.iter().take(3).fold(Rational::zero(), |acc, q| acc + q);
                // the margin over the next three needs a gap of seven
                if a - c >= 7 {
                    assert!(best > top3, "{lam}");
                }
                if (a, c) == (7, 3) {
                    assert_eq!(best, top3);
                }
                if (a, c) == (10, 6) {
                    assert_eq!((best, top3), (ratio(5, 32), ratio(7, 32)));
                }
            }
        }
    }

    #[test]
    fn trace_from_311() {
        let tree = most_frequent_trace(&p(&[3, 1, 1]), 3, DEFAULT_EXPAND_LIMIT);
        assert_eq!(tree.levels.len(), 3);
        let first = &tree.levels[0].branches[0];
        assert_eq!(first.results, vec![p(&[4, 3, 2])]);
        assert_eq!(first.probability, ratio(48, 190));
        let second = &tree.levels[1].branches[0];
        assert_eq!(second.results, vec![p(&[6, 5, 4])]);
        assert_eq!(to_decimal(&second.probability, 4), "0.1308");
        let third = &tree.levels[2].branches[0];
        assert_eq!(third.results, vec![p(&[10, 9, 8]), p(&[10, 9, 6])]);
        assert_eq!(to_decimal(&third.probability, 4), "0.0401");
    }

    #[test]
    fn trace_respects_expand_limit() {
        let tree = most_frequent_trace(&p(&[3, 1, 1]), 4, 1);
        assert_eq!(tree.levels.len(), 3);
        assert!(!tree.levels[2].branches[0].expanded);
        assert_eq!(tree.levels[2].branches[0].results.len(), 2);
    }

    #[test]
    fn trace_branches_are_complete_argmax_sets() {
        let tree = most_frequent_trace(&p(&[4, 2, 1]), 3, DEFAULT_EXPAND_LIMIT);
        for level in &tree.levels {
            for branch in &level.branches {
                let d = self_agg_distribution(&branch.parent);
                for (nu, q) in d.iter() {
                    assert!(*q <= branch.probability);
                    assert_eq!(*q == branch.probability, branch.results.contains(nu));
                }
            }
        }
    }

    #[test]
    fn golden_rectangle_rows() {
        let rows = fibonacci_limit_report(&p(&[10, 6]), 9).unwrap();
        assert_eq!(rows.len(), 9);
        assert_eq!(rows[0].probability, None);
        assert_eq!(rows[1].state, p(&[16, 10]));
        assert_eq!(rows[1].probability, Some(ratio(10, 64)));
        assert_eq!(rows[8].state, p(&[466, 288]));
        assert_eq!(rows[8].probability, Some(ratio(222, 1864)));
        assert_eq!(to_decimal(&rows[8].ratios[0], 4), "1.6181");
        for (n, row) in rows.iter().enumerate().skip(1) {
            let n = n + 1;
            let (a, c) = (10, 6);
            assert_eq!(row.state.parts()[0], fibonacci(n) * a + fibonacci(n - 1) * c);
            assert_eq!(row.state.parts()[1], fibonacci(n - 1) * a + fibonacci(n - 2) * c);
        }
        assert!(matches!(
            fibonacci_limit_report(&p(&[9, 6]), 3),
            Err(AggError::FibonacciHypothesis(_))
        ));
        assert!(fibonacci_limit_report(&p(&[9, 3, 1]), 3).is_err());
    }

    #[test]
    fn fibonacci_numbers() {
        assert_eq!((0..10).map(fibonacci).collect_vec(), [0, 1, 1, 2, 3, 5, 8, 13, 21, 34]);
        assert!((golden_limit_probability() - 0.1180).abs() < 1e-4);
    }
}
