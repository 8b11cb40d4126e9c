//! Line loci of generic complete intersections as classes in A(P̂^n_1):
//! counts of lines, contact loci and their swept degrees, and lines through
//! a general point.
//!
//! A defining equation of degree `d` contributes the divisor classes of its
//! prolonged coefficients `f^(0), ..., f^(d)`, which are
//! `(d - i) h0 + i h1` for `i = 0..=d`. The line locus is the product of all
//! of them.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::chow::{linear_product, ChowClass};
use crate::error::{ArcError, Result};

/// Ambient dimension `n` and multidegree `(d_1, ..., d_r)` of a complete
/// intersection in P^n.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CIType {
    n: u32,
    degrees: Vec<u32>,
}

impl CIType {
    pub fn new(n: u32, degrees: Vec<u32>) -> Result<Self> {
        if n < 2 {
            return Err(ArcError::InvalidType(format!(
                "ambient dimension must be at least 2, got {n}"
            )));
        }
        if degrees.is_empty() {
            return Err(ArcError::InvalidType(
                "at least one degree is required".into(),
            ));
        }
        if degrees.contains(&0) {
            return Err(ArcError::InvalidType("degrees must be at least 1".into()));
        }
        if degrees.len() as u32 > n - 1 {
            return Err(ArcError::InvalidType(format!(
                "{} equations in P^{n} leave no positive-dimensional intersection",
                degrees.len()
            )));
        }
        Ok(CIType { n, degrees })
    }

    pub fn ambient(&self) -> u32 {
        self.n
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    /// Number of equations `r`.
    pub fn codim(&self) -> u32 {
        self.degrees.len() as u32
    }

    /// Dimension `m = n - r`.
    pub fn dim(&self) -> u32 {
        self.n - self.codim()
    }

    pub fn degree_sum(&self) -> u32 {
        self.degrees.iter().sum()
    }

    /// `d = prod d_j`.
    pub fn degree(&self) -> BigInt {
        self.degrees.iter().map(|&d| BigInt::from(d)).product()
    }

    /// `prod d_j!`.
    pub fn factorial_product(&self) -> BigInt {
        self.degrees.iter().map(|&d| factorial(d)).product()
    }

    /// `(p, q)` pairs for the divisors `p h0 + q h1`, one block per equation.
    pub fn factors(&self) -> Vec<(i64, i64)> {
        self.degrees
            .iter()
            .flat_map(|&d| (0..=d).map(move |i| ((d - i) as i64, i as i64)))
            .collect()
    }

    fn require_nonlinear(&self) -> Result<()> {
        if self.degrees.contains(&1) {
            return Err(ArcError::InvalidType(
                "hyperplane factors (degree 1) are not accepted for counts; \
                 cut down the ambient space instead"
                    .into(),
            ));
        }
        Ok(())
    }
}

impl fmt::Display for CIType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ds: Vec<String> = self.degrees.iter().map(u32::to_string).collect();
        write!(f, "({}) in P^{}", ds.join(","), self.n)
    }
}

pub fn factorial(d: u32) -> BigInt {
    (1..=d).map(BigInt::from).product()
}

/// A count together with the class it was read from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineCount {
    pub value: BigInt,
    pub certificate: ChowClass,
}

/// Normal form of the full line-locus product.
pub fn line_locus_class(t: &CIType) -> ChowClass {
    linear_product(&t.factors(), t.n)
}

fn extract_pure(class: &ChowClass, a: u32, b: u32) -> Result<BigInt> {
    if class.is_zero() {
        return Ok(BigInt::zero());
    }
    match class.single_term() {
        Some((k, c)) if k == (a, b) => Ok(c.clone()),
        _ => Err(ArcError::NonPure {
            terms: class.num_terms(),
        }),
    }
}

/// Number of lines on a generic complete intersection with
/// `sum d_j = 2(n-1) - r`, read off `N h0^(n-1) h1^(n-1)`.
pub fn count_lines(t: &CIType) -> Result<LineCount> {
    t.require_nonlinear()?;
    let expected = 2 * (t.n as i64 - 1) - t.codim() as i64;
    if t.degree_sum() as i64 != expected {
        return Err(ArcError::DimensionCondition {
            condition: "sum(d_i) = 2(n-1) - r",
            expected,
            actual: t.degree_sum() as i64,
        });
    }
    let certificate = line_locus_class(t);
    let value = extract_pure(&certificate, t.n - 1, t.n - 1).map_err(|e| {
        ArcError::Internal(format!(
            "line class {certificate} is not a multiple of h0^{0}*h1^{0}: {e}",
            t.n - 1
        ))
    })?;
    Ok(LineCount { value, certificate })
}

/// Class of 1-arcs whose line meets a generic degree-`d` hypersurface in
/// P^n to order at least `k`: `prod_{i<k} ((d-i) h0 + i h1)`.
pub fn contact_class(n: u32, d: u32, k: u32) -> Result<ChowClass> {
    if n < 1 {
        return Err(ArcError::InvalidArgument(
            "ambient dimension must be positive".into(),
        ));
    }
    if k < 1 || k > d + 1 {
        return Err(ArcError::InvalidArgument(format!(
            "contact order must satisfy 1 <= k <= d+1 = {}, got {k}",
            d + 1
        )));
    }
    let factors: Vec<(i64, i64)> = (0..k).map(|i| ((d - i) as i64, i as i64)).collect();
    Ok(linear_product(&factors, n))
}

/// Degree of the locus swept by the base points of `c`: the coefficient of
/// `c * h0^codim`, which must be a multiple of a single monomial.
pub fn swept_degree(c: &ChowClass, codim: u32) -> Result<BigInt> {
    let cut = c * &ChowClass::h0(c.ambient()).pow(codim);
    if cut.is_zero() {
        return Ok(BigInt::zero());
    }
    match cut.single_term() {
        Some((_, v)) => Ok(v.clone()),
        None => Err(ArcError::NonPure {
            terms: cut.num_terms(),
        }),
    }
}

/// Lines through a general point, `L h0^m / d` with `m = n - r`, defined
/// when `sum d_j = n - 1`.
pub fn lines_through_point(t: &CIType) -> Result<LineCount> {
    t.require_nonlinear()?;
    let (sum, bound) = (t.degree_sum(), t.n - 1);
    if sum < bound {
        return Err(ArcError::InfinitelyManyLines { sum, bound });
    }
    if sum > bound {
        return Err(ArcError::NoLinesExpected { sum, bound });
    }
    let locus = line_locus_class(t);
    let cut = &locus * &ChowClass::h0(t.n).pow(t.dim());
    let certificate = cut.div_exact(&t.degree())?;
    let value = extract_pure(&certificate, t.n, t.n - 1)?;
    let closed = t.factorial_product();
    if value != closed {
        return Err(ArcError::Internal(format!(
            "lines through a point of {t}: class gives {value}, product of factorials gives {closed}"
        )));
    }
    Ok(LineCount { value, certificate })
}
