//! Elementary symmetric polynomials, the mixed products `R_k(a, b)` and the
//! polynomial whose `u d/du` derivatives at `u = 2` give the moments of the
//! growth-direction count.

use num_traits::{One, Zero};

use crate::error::{AggError, Result};
use crate::geometry::{check_same_dim, BoxDims};
use crate::rational::{int, ratio, Rational};

/// `E_k(values)`, by the recurrence
/// `E_k(a_1..a_n) = E_k(a_1..a_{n-1}) + a_n E_{k-1}(a_1..a_{n-1})`.
pub fn elementary_symmetric(values: &[Rational], k: usize) -> Result<Rational> {
    if k > values.len() {
        return Err(AggError::DegreeOutOfRange { k, n: values.len() });
    }
    Ok(elementary_symmetric_all(values).swap_remove(k))
}

/// `[E_0, E_1, ..., E_n]` for the given values.
pub fn elementary_symmetric_all(values: &[Rational]) -> Vec<Rational> {
    let mut e = vec![Rational::zero(); values.len() + 1];
    e[0] = Rational::one();
    for (n, a) in values.iter().enumerate() {
        for k in (1..=n + 1).rev() {
            let term = a * &e[k - 1];
            e[k] += term;
        }
    }
    e
}

fn check_pair(a: &[Rational], b: &[Rational]) -> Result<()> {
    if a.len() != b.len() {
        return Err(AggError::DimensionMismatch { left: a.len(), right: b.len() });
    }
    Ok(())
}

/// Indices must be distinct and below `dim`. Indices are zero-based.
pub(crate) fn check_dirs(dirs: &[usize], dim: usize) -> Result<()> {
    if let Some(&index) = dirs.iter().find(|&&i| i >= dim) {
        return Err(AggError::IndexOutOfRange { index, dim });
    }
    let mut seen = dirs.to_vec();
    seen.sort_unstable();
    seen.dedup();
    if seen.len() != dirs.len() {
        return Err(AggError::InvalidDirections);
    }
    Ok(())
}

/// `prod_{j not in dirs} a_j * prod_{j in dirs} b_j`, with zero-based `dirs`.
pub fn r_product(a: &[Rational], b: &[Rational], dirs: &[usize]) -> Result<Rational> {
    check_pair(a, b)?;
    check_dirs(dirs, a.len())?;
    Ok((0..a.len())
        .map(|j| if dirs.contains(&j) { &b[j] } else { &a[j] })
        .fold(Rational::one(), |acc, v| acc * v))
}

/// `R_k(a, b)`: the sum of `r_product` over all `k`-subsets, read off as the
/// coefficient of `u^k` in `prod (a_i + u b_i)`.
pub fn big_r(a: &[Rational], b: &[Rational], k: usize) -> Result<Rational> {
    check_pair(a, b)?;
    if k > a.len() {
        return Err(AggError::DegreeOutOfRange { k, n: a.len() });
    }
    Ok(r_generating(a, b).coefficient(k))
}

/// `prod (a_i + u b_i) = sum_k u^k R_k(a, b)`.
pub fn r_generating(a: &[Rational], b: &[Rational]) -> Polynomial {
    a.iter()
        .zip(b)
        .map(|(ai, bi)| Polynomial::new(vec![ai.clone(), bi.clone()]))
        .fold(Polynomial::one(), |acc, f| acc.mul(&f))
}

/// Polynomial in one variable `u` with exact coefficients; `coeffs[k]`
/// multiplies `u^k`. Trailing zeros are trimmed.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::new(vec![Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coefficient(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Self::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|k| self.coefficient(k) - other.coefficient(k)).collect())
    }

    /// Horner evaluation.
    pub fn eval(&self, u: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * u + c)
    }

    /// `u d/du`: scales the coefficient of `u^k` by `k`.
    pub fn u_ddu(&self) -> Polynomial {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| c * int(k as u64))
                .collect(),
        )
    }
}

/// The free-function form of [`Polynomial::u_ddu`].
pub fn u_ddu(p: &Polynomial) -> Polynomial {
    p.u_ddu()
}

/// `M(u) = prod(1 + y_i u / (x_i - y_i + 1)) - prod(1 + (y_i - 1) u / (x_i - y_i + 1))`.
///
/// Requires `x_i >= y_i` in every coordinate.
pub fn moment_polynomial(x: &BoxDims, y: &BoxDims) -> Result<Polynomial> {
    check_dominating(x, y)?;
    let factors = |shift: u64| {
        x.sides()
            .iter()
            .zip(y.sides())
            .map(|(&xi, &yi)| {
                Polynomial::new(vec![Rational::one(), ratio(yi - shift, xi - yi + 1)])
            })
            .fold(Polynomial::one(), |acc, f| acc.mul(&f))
    };
    Ok(factors(0).sub(&factors(1)))
}

pub(crate) fn check_dominating(x: &BoxDims, y: &BoxDims) -> Result<()> {
    check_same_dim(x, y)?;
    for (coord, (&xi, &yi)) in x.sides().iter().zip(y.sides()).enumerate() {
        if xi < yi {
            return Err(AggError::NotDominating { coord, x: xi, y: yi });
        }
    }
    Ok(())
}
