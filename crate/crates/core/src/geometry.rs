//! Boxes on the integer lattice, the parameter set of their attachments and
//! the side lengths produced by each attachment.
//!
//! Attachments of `y` to `x` are in bijection with the integer points on the
//! boundary of the parameter box `R = [0, x_1+y_1] x ... x [0, x_l+y_l]`. A
//! point `s` of that boundary produces the bounding box with sides
//! `max(x_i, y_i, x_i + y_i - s_i, s_i)`.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use num_bigint::BigUint;

use crate::error::{AggError, Result};

/// Side lengths of an axis-aligned box, in lattice units. Order matters:
/// `(3,5)` and `(5,3)` are different boxes.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BoxDims(Vec<u64>);

impl BoxDims {
    pub fn new(dims: Vec<u64>) -> Result<Self> {
        if dims.is_empty() || dims.contains(&0) {
            return Err(AggError::InvalidBox(dims));
        }
        Ok(Self(dims))
    }

    /// The unit box `(1, ..., 1)`.
    pub fn unit(dim: usize) -> Self {
        Self(vec![1; dim.max(1)])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn sides(&self) -> &[u64] {
        &self.0
    }

    pub fn into_sides(self) -> Vec<u64> {
        self.0
    }

    pub fn volume(&self) -> BigUint {
        self.0.iter().map(|&d| BigUint::from(d)).product()
    }

    /// Box grown by one unit along every index in `dirs`.
    pub fn grown(&self, dirs: &[usize]) -> Self {
        let mut sides = self.0.clone();
        for &i in dirs {
            sides[i] += 1;
        }
        Self(sides)
    }

    pub(crate) fn from_sides_unchecked(sides: Vec<u64>) -> Self {
        debug_assert!(!sides.is_empty() && !sides.contains(&0));
        Self(sides)
    }
}

impl fmt::Display for BoxDims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0.iter().join(","))
    }
}

impl FromStr for BoxDims {
    type Err = AggError;

    /// Parses comma-separated side lengths such as `1,3`.
    fn from_str(s: &str) -> Result<Self> {
        let sides = parse_list(s)?;
        Self::new(sides).map_err(|e| AggError::Parse {
            input: s.to_string(),
            reason: e.to_string(),
        })
    }
}

pub(crate) fn parse_list(s: &str) -> Result<Vec<u64>> {
    let trimmed = s.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
    trimmed
        .split(',')
        .map(|part| {
            part.trim().parse::<u64>().map_err(|e| AggError::Parse {
                input: s.to_string(),
                reason: format!("{part:?}: {e}"),
            })
        })
        .collect()
}

pub(crate) fn check_same_dim(x: &BoxDims, y: &BoxDims) -> Result<usize> {
    if x.dim() != y.dim() {
        return Err(AggError::DimensionMismatch { left: x.dim(), right: y.dim() });
    }
    Ok(x.dim())
}

/// A point of the parameter box `R_{x+y}`, in absolute coordinates with the
/// box anchored at the origin.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AttachmentParam(Vec<u64>);

impl AttachmentParam {
    pub fn new(coords: Vec<u64>) -> Self {
        Self(coords)
    }

    pub fn coords(&self) -> &[u64] {
        &self.0
    }
}

/// Extents `x_i + y_i` of the parameter box.
pub fn parameter_extents(x: &BoxDims, y: &BoxDims) -> Result<Vec<u64>> {
    check_same_dim(x, y)?;
    Ok(x.0.iter().zip(&y.0).map(|(a, b)| a + b).collect())
}

/// Number of attachments of `y` to `x`:
/// `prod(x_i + y_i + 1) - prod(x_i + y_i - 1)`.
pub fn attachment_count(x: &BoxDims, y: &BoxDims) -> Result<BigUint> {
    let extents = parameter_extents(x, y)?;
    let all: BigUint = extents.iter().map(|&n| BigUint::from(n + 1)).product();
    let interior: BigUint = extents.iter().map(|&n| BigUint::from(n - 1)).product();
    Ok(all - interior)
}

/// One face of the boundary of the parameter box, owning the boundary points
/// whose *first* extreme coordinate is `axis` with value `value`.
///
/// Faces are pairwise disjoint and cover the boundary, so they can be handed
/// to independent workers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub axis: usize,
    pub value: u64,
    extents: Vec<u64>,
}

impl Face {
    /// Ranges of each coordinate on this face: strictly interior before
    /// `axis`, pinned at `axis`, unrestricted after.
    fn ranges(&self) -> Vec<std::ops::RangeInclusive<u64>> {
        self.extents
            .iter()
            .enumerate()
            .map(|(i, &n)| match i.cmp(&self.axis) {
                std::cmp::Ordering::Less => 1..=n - 1,
                std::cmp::Ordering::Equal => self.value..=self.value,
                std::cmp::Ordering::Greater => 0..=n,
            })
            .collect()
    }

    pub fn len(&self) -> u64 {
        self.ranges().iter().map(|r| r.end() + 1 - r.start()).product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn points(&self) -> impl Iterator<Item = AttachmentParam> {
        self.ranges()
            .into_iter()
            .multi_cartesian_product()
            .map(AttachmentParam)
    }
}

/// The faces partitioning the boundary of `R_{x+y}`, in lexicographic order of
/// `(axis, value)`.
pub fn boundary_faces(x: &BoxDims, y: &BoxDims) -> Result<Vec<Face>> {
    let extents = parameter_extents(x, y)?;
    Ok((0..extents.len())
        .flat_map(|axis| {
            let n = extents[axis];
            [0, n].map(|value| Face { axis, value, extents: extents.clone() })
        })
        .collect())
}

/// Every integer boundary point of `R_{x+y}`, each exactly once.
pub fn parameter_set(x: &BoxDims, y: &BoxDims) -> Result<impl Iterator<Item = AttachmentParam>> {
    Ok(boundary_faces(x, y)?.into_iter().flat_map(|face| face.points()))
}

/// Side length along one axis for parameter value `s`.
#[inline]
pub fn aggregate_side(x: u64, y: u64, s: u64) -> u64 {
    x.max(y).max(x + y - s).max(s)
}

/// Result of attaching `y` to `x` at boundary point `s`.
pub fn aggregate_at(x: &BoxDims, y: &BoxDims, s: &AttachmentParam) -> Result<BoxDims> {
    let extents = parameter_extents(x, y)?;
    let valid = s.0.len() == extents.len()
        && s.0.iter().zip(&extents).all(|(&si, &n)| si <= n)
        && s.0.iter().zip(&extents).any(|(&si, &n)| si == 0 || si == n);
    if !valid {
        return Err(AggError::InvalidParameter { param: s.0.clone(), extents });
    }
    Ok(aggregate_unchecked(x, y, s.coords()))
}

pub(crate) fn aggregate_unchecked(x: &BoxDims, y: &BoxDims, s: &[u64]) -> BoxDims {
    BoxDims(
        x.0.iter()
            .zip(&y.0)
            .zip(s)
            .map(|((&a, &b), &si)| aggregate_side(a, b, si))
            .collect(),
    )
}
