//! Upper bounds on the number of lines through a general point of an
//! m-dimensional variety, from the admissible complete-intersection types
//! `(d_1, ..., d_r)` with `sum d_i = m + r - 1` and `d_i >= dmin`.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{ArcError, Result};
use crate::locus::factorial;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundQuery {
    dim: u32,
    codim: Option<u32>,
    min_degree: u32,
}

impl BoundQuery {
    pub fn new(dim: u32, codim: Option<u32>, min_degree: Option<u32>) -> Result<Self> {
        let min_degree = min_degree.unwrap_or(2);
        if dim < 1 {
            return Err(ArcError::InvalidArgument(
                "dimension must be at least 1".into(),
            ));
        }
        if codim == Some(0) {
            return Err(ArcError::InvalidArgument(
                "codimension must be at least 1".into(),
            ));
        }
        if min_degree < 2 {
            return Err(ArcError::InvalidArgument(
                "minimum degree must be at least 2".into(),
            ));
        }
        Ok(BoundQuery {
            dim,
            codim,
            min_degree,
        })
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn codim(&self) -> Option<u32> {
        self.codim
    }

    pub fn min_degree(&self) -> u32 {
        self.min_degree
    }

    /// Codimensions admitting at least one type: `r * dmin <= m + r - 1`.
    fn codims(&self) -> Vec<u32> {
        let admissible = |r: u32| r * (self.min_degree - 1) < self.dim;
        match self.codim {
            Some(r) => admissible(r).then_some(r).into_iter().collect(),
            None => (1..).take_while(|&r| admissible(r)).collect(),
        }
    }
}

/// An admissible type and its count `prod d_i!`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeCount {
    pub degrees: Vec<u32>,
    /// Ambient dimension `m + r`.
    pub ambient: u32,
    #[serde(with = "crate::bigint_string")]
    pub count: BigInt,
}

/// Non-increasing tuples of `parts` integers `>= min` summing to `sum`.
pub fn partitions(sum: u32, parts: u32, min: u32) -> Vec<Vec<u32>> {
    fn go(rest: u32, parts: u32, min: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if parts == 0 {
            if rest == 0 {
                out.push(cur.clone());
            }
            return;
        }
        // the remaining parts - 1 entries need at least min each
        let hi = max.min(rest.saturating_sub((parts - 1) * min));
        for d in (min..=hi).rev() {
            if d * parts < rest {
                break;
            }
            cur.push(d);
            go(rest - d, parts - 1, min, d, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if parts > 0 && parts * min <= sum {
        go(sum, parts, min, sum, &mut Vec::new(), &mut out);
    }
    out
}

/// All admissible types, sorted by count descending (ties by codimension,
/// then degree tuple descending).
pub fn enumerate_types(q: &BoundQuery) -> Vec<TypeCount> {
    let mut out: Vec<TypeCount> = q
        .codims()
        .into_iter()
        .flat_map(|r| {
            partitions(q.dim + r - 1, r, q.min_degree)
                .into_iter()
                .map(move |degrees| TypeCount {
                    count: degrees.iter().map(|&d| factorial(d)).product(),
                    ambient: q.dim + r,
                    degrees,
                })
        })
        .collect();
    out.sort_by(|a, b| {
        b.count
            .cmp(&a.count)
            .then(a.degrees.len().cmp(&b.degrees.len()))
            .then(b.degrees.cmp(&a.degrees))
    });
    out
}

/// Type maximizing `prod d_i!` for a fixed codimension: all parts at the
/// minimum except one.
pub fn extremal_type(dim: u32, codim: u32, min_degree: u32) -> Option<Vec<u32>> {
    let sum = dim + codim - 1;
    let rest = (codim - 1) * min_degree;
    let last = sum.checked_sub(rest)?;
    if last < min_degree {
        return None;
    }
    let mut t = vec![last];
    t.extend(std::iter::repeat_n(min_degree, codim as usize - 1));
    Some(t)
}

/// Largest `prod d_i!` over admissible types, or `None` if there are none.
/// Computed from the extremal type of each codimension, so it runs in time
/// linear in `m` without enumerating partitions.
pub fn bound(q: &BoundQuery) -> Option<BigInt> {
    q.codims()
        .into_iter()
        .filter_map(|r| extremal_type(q.dim, r, q.min_degree))
        .map(|t| t.iter().map(|&d| factorial(d)).product::<BigInt>())
        .max()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(m: u32, r: Option<u32>, k: Option<u32>) -> BoundQuery {
        BoundQuery::new(m, r, k).unwrap()
    }

    #[test]
    fn sixfold_table() {
        let table = enumerate_types(&q(6, None, None));
        let counts: Vec<String> = table.iter().map(|t| t.count.to_string()).collect();
        assert_eq!(counts, ["720", "240", "144", "96", "72", "48", "32"]);
        let types: Vec<&[u32]> = table.iter().map(|t| t.degrees.as_slice()).collect();
        assert_eq!(
            types,
            [
                &[6][..],
                &[5, 2],
                &[4, 3],
                &[4, 2, 2],
                &[3, 3, 2],
                &[3, 2, 2, 2],
                &[2, 2, 2, 2, 2]
            ]
        );
        let ambients: Vec<u32> = table.iter().map(|t| t.ambient).collect();
        assert_eq!(ambients, [7, 8, 8, 9, 9, 10, 11]);
    }

    #[test]
    fn sixfold_codim_two() {
        let table = enumerate_types(&q(6, Some(2), None));
        assert_eq!(table.len(), 2);
        assert_eq!(table[0].degrees, [5, 2]);
        assert_eq!(table[0].count, BigInt::from(240));
        assert_eq!(table[1].degrees, [4, 3]);
        assert_eq!(table[1].count, BigInt::from(144));
    }

    #[test]
    fn curve_has_no_types() {
        assert!(enumerate_types(&q(1, Some(1), None)).is_empty());
        assert_eq!(bound(&q(1, None, None)), None);
    }

    #[test]
    fn closed_form_bounds() {
        for m in 2..=12 {
            assert_eq!(bound(&q(m, None, None)), Some(factorial(m)));
        }
        for m in 3..=12 {
            assert_eq!(bound(&q(m, Some(2), None)), Some(2 * factorial(m - 1)));
        }
        for m in 5..=12 {
            assert_eq!(bound(&q(m, Some(2), Some(3))), Some(6 * factorial(m - 2)));
        }
    }

    #[test]
    fn sixfold_in_p9() {
        assert_eq!(bound(&q(6, Some(3), None)), Some(BigInt::from(96)));
        assert_eq!(bound(&q(6, Some(3), Some(3))), None);
        let t = enumerate_types(&q(6, Some(3), None));
        assert_eq!(t[1].count, BigInt::from(72));
    }

    #[test]
    fn partition_edge_cases() {
        assert_eq!(partitions(7, 2, 2), vec![vec![5, 2], vec![4, 3]]);
        assert!(partitions(3, 2, 2).is_empty());
        assert!(partitions(4, 0, 2).is_empty());
        assert_eq!(partitions(4, 2, 2), vec![vec![2, 2]]);
    }

    #[test]
    fn invalid_queries() {
        assert!(BoundQuery::new(0, None, None).is_err());
        assert!(BoundQuery::new(3, Some(0), None).is_err());
        assert!(BoundQuery::new(3, None, Some(1)).is_err());
    }
}
