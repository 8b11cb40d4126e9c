//! Arc-space prolongation: the substitution `x_j -> sum_i x_{j,i} ε^i`,
//! its truncated generators, its full expansion, and the line carried by a
//! 1-arc.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{ArcError, Result};
use crate::poly::{SparsePoly, Var};

/// Coefficients of a polynomial in ε after prolongation. Entry `i` is the
/// ε^i coefficient, weight-homogeneous of weight `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProlongedSystem {
    /// Total degree of the source polynomial (0 for the zero polynomial).
    pub degree: u32,
    /// Arc order `m`.
    pub order: u32,
    /// `true` when produced modulo ε^{m+1}; `false` for the full expansion.
    pub truncated: bool,
    pub coefficients: Vec<SparsePoly>,
}

impl ProlongedSystem {
    /// Index of the last coefficient. For a full expansion this is `d*m`,
    /// beyond which every coefficient vanishes identically.
    pub fn cutoff(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }
}

/// A polynomial in ε with `SparsePoly` coefficients, truncated at `limit`.
struct EpsSeries(Vec<SparsePoly>);

impl EpsSeries {
    fn one() -> Self {
        EpsSeries(vec![SparsePoly::one()])
    }

    /// The substitution series for coordinate `j`.
    fn coordinate(j: u32, order: u32) -> Self {
        EpsSeries(
            (0..=order)
                .map(|i| SparsePoly::var(Var::new(j, i)))
                .collect(),
        )
    }

    fn mul_trunc(&self, other: &EpsSeries, limit: usize) -> EpsSeries {
        let len = (self.0.len() + other.0.len() - 1).min(limit + 1);
        let mut out = vec![SparsePoly::zero(); len];
        for (i, a) in self.0.iter().enumerate() {
            for (k, b) in other.0.iter().enumerate() {
                if i + k <= limit {
                    out[i + k] = &out[i + k] + &(a * b);
                }
            }
        }
        EpsSeries(out)
    }
}

fn substitute(f: &SparsePoly, order: u32, limit: usize) -> Vec<SparsePoly> {
    let mut powers: HashMap<(u32, u32), EpsSeries> = HashMap::new();
    let mut out = vec![SparsePoly::zero(); limit + 1];
    for (mono, coeff) in f.terms() {
        let mut acc = EpsSeries::one();
        for (v, e) in mono.iter() {
            let p = powers.entry((v.coord, e)).or_insert_with(|| {
                let base = EpsSeries::coordinate(v.coord, order);
                let mut p = EpsSeries::one();
                for _ in 0..e {
                    p = p.mul_trunc(&base, limit);
                }
                p
            });
            acc = acc.mul_trunc(p, limit);
        }
        for (i, c) in acc.0.into_iter().enumerate() {
            out[i] = &out[i] + &c.scale(coeff);
        }
    }
    out
}

fn require_plain(f: &SparsePoly) -> Result<()> {
    match f.first_arc_var() {
        Some(v) => Err(ArcError::PositiveWeight { var: v.to_string() }),
        None => Ok(()),
    }
}

/// Arc-ideal generators `f_0, ..., f_m`: the ε-coefficients of `f` after
/// substitution, modulo ε^{m+1}.
pub fn arc_ideal(f: &SparsePoly, order: u32) -> Result<ProlongedSystem> {
    require_plain(f)?;
    let limit = order as usize;
    Ok(ProlongedSystem {
        degree: f.total_degree().unwrap_or(0),
        order,
        truncated: true,
        coefficients: substitute(f, order, limit),
    })
}

/// All `d*m + 1` coefficients `f^(0), ..., f^(dm)` of the untruncated
/// substitution for a homogeneous `f` of degree `d`.
pub fn full_expansion(f: &SparsePoly, order: u32) -> Result<ProlongedSystem> {
    require_plain(f)?;
    let degree = if f.is_zero() {
        0
    } else {
        f.homogeneous_degree().ok_or(ArcError::NotHomogeneous)?
    };
    let limit = (degree * order) as usize;
    Ok(ProlongedSystem {
        degree,
        order,
        truncated: false,
        coefficients: substitute(f, order, limit),
    })
}

/// An m-arc in homogeneous coordinates: `coords[j][i]` is `x_{j,i}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arc {
    n: u32,
    order: u32,
    coords: Vec<Vec<BigInt>>,
}

impl Arc {
    /// `coords` must have `n + 1` rows of equal length `m + 1`, and the
    /// base point (column 0) must be nonzero.
    pub fn new(coords: Vec<Vec<BigInt>>) -> Result<Self> {
        if coords.len() < 2 {
            return Err(ArcError::InvalidArc("need at least two coordinates".into()));
        }
        let width = coords[0].len();
        if width == 0 || coords.iter().any(|row| row.len() != width) {
            return Err(ArcError::InvalidArc(
                "rows must have equal positive length".into(),
            ));
        }
        if coords.iter().all(|row| row[0].is_zero()) {
            return Err(ArcError::InvalidArc("base point is zero".into()));
        }
        Ok(Arc {
            n: coords.len() as u32 - 1,
            order: width as u32 - 1,
            coords,
        })
    }

    /// 1-arc `p + v ε`.
    pub fn first_order(base: &[BigInt], direction: &[BigInt]) -> Result<Self> {
        if base.len() != direction.len() {
            return Err(ArcError::InvalidArc(
                "base and direction lengths differ".into(),
            ));
        }
        Arc::new(
            base.iter()
                .zip(direction)
                .map(|(p, v)| vec![p.clone(), v.clone()])
                .collect(),
        )
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        Arc::new(
            rows.iter()
                .map(|r| r.iter().map(|&c| BigInt::from(c)).collect())
                .collect(),
        )
    }

    pub fn ambient(&self) -> u32 {
        self.n
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// `x_{j,i}`, zero beyond the stored order.
    pub fn coord(&self, v: Var) -> BigInt {
        self.coords
            .get(v.coord as usize)
            .and_then(|row| row.get(v.weight as usize))
            .cloned()
            .unwrap_or_default()
    }

    pub fn base_point(&self) -> Vec<BigInt> {
        self.coords.iter().map(|row| row[0].clone()).collect()
    }

    /// Truncates to a lower order.
    pub fn truncate(&self, order: u32) -> Arc {
        let keep = (order.min(self.order) + 1) as usize;
        Arc {
            n: self.n,
            order: keep as u32 - 1,
            coords: self.coords.iter().map(|r| r[..keep].to_vec()).collect(),
        }
    }

    /// Multiplies the weight-`i` row by `λ^i` (the action ε -> λε).
    pub fn rescale(&self, lambda: &BigInt) -> Arc {
        let coords = self
            .coords
            .iter()
            .map(|row| {
                let mut pow = BigInt::one();
                row.iter()
                    .map(|c| {
                        let out = c * &pow;
                        pow *= lambda;
                        out
                    })
                    .collect()
            })
            .collect();
        Arc {
            n: self.n,
            order: self.order,
            coords,
        }
    }

    pub fn eval(&self, f: &SparsePoly) -> BigInt {
        f.eval(|v| self.coord(v))
    }
}

/// The curve `t -> p + t v` obtained from a 1-arc by replacing ε with `t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamLine {
    pub base: Vec<BigInt>,
    pub direction: Vec<BigInt>,
    /// Set when `direction` is proportional to `base` (including zero): the
    /// map is constant and there is no line.
    pub degenerate: bool,
}

/// Line parameterized by a 1-arc.
pub fn line_through(arc: &Arc) -> Result<ParamLine> {
    if arc.order != 1 {
        return Err(ArcError::InvalidArc(format!(
            "expected a 1-arc, got order {}",
            arc.order
        )));
    }
    let base = arc.base_point();
    let direction: Vec<BigInt> = arc.coords.iter().map(|r| r[1].clone()).collect();
    let degenerate = rank_below_two(&base, &direction);
    Ok(ParamLine {
        base,
        direction,
        degenerate,
    })
}

fn rank_below_two(p: &[BigInt], v: &[BigInt]) -> bool {
    for a in 0..p.len() {
        for b in a + 1..p.len() {
            if &p[a] * &v[b] != &p[b] * &v[a] {
                return false;
            }
        }
    }
    true
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ContactOrder {
    Finite(u32),
    /// Every coefficient vanishes: the line lies on the hypersurface.
    Infinite,
}

impl fmt::Display for ContactOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ContactOrder::Finite(k) => write!(f, "{k}"),
            ContactOrder::Infinite => write!(f, "inf"),
        }
    }
}

/// Least `i` with `f^(i)(arc) != 0`, or `Infinite` when all `d + 1`
/// coefficients vanish.
pub fn line_contact_order(f: &SparsePoly, arc: &Arc) -> Result<ContactOrder> {
    if arc.order != 1 {
        return Err(ArcError::InvalidArc(format!(
            "expected a 1-arc, got order {}",
            arc.order
        )));
    }
    let system = full_expansion(f, 1)?;
    Ok(system
        .coefficients
        .iter()
        .position(|c| !arc.eval(c).is_zero())
        .map_or(ContactOrder::Infinite, |i| ContactOrder::Finite(i as u32)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn xa(j: u32, i: u32) -> SparsePoly {
        SparsePoly::var(Var::new(j, i))
    }

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    #[test]
    fn linear_arc_ideal() {
        let f = parse_poly("x0", 0).unwrap();
        let s = arc_ideal(&f, 1).unwrap();
        assert_eq!(s.coefficients, vec![xa(0, 0), xa(0, 1)]);
    }

    #[test]
    fn square_arc_ideal() {
        let f = parse_poly("x0^2", 0).unwrap();
        let s = arc_ideal(&f, 1).unwrap();
        assert_eq!(
            s.coefficients,
            vec![xa(0, 0).pow(2), (&xa(0, 0) * &xa(0, 1)).scale(&2.into())]
        );
    }

    #[test]
    fn arc_ideal_rejects_arc_variables() {
        let f = parse_poly("x0_1 + x0", 0).unwrap();
        assert!(matches!(
            arc_ideal(&f, 1),
            Err(ArcError::PositiveWeight { .. })
        ));
    }

    #[test]
    fn bilinear_full_expansion() {
        let f = parse_poly("x0*x1", 1).unwrap();
        let s = full_expansion(&f, 1).unwrap();
        assert_eq!(s.cutoff(), 2);
        assert_eq!(
            s.coefficients,
            vec![
                &xa(0, 0) * &xa(1, 0),
                &(&xa(0, 0) * &xa(1, 1)) + &(&xa(0, 1) * &xa(1, 0)),
                &xa(0, 1) * &xa(1, 1),
            ]
        );
    }

    #[test]
    fn full_expansion_requires_homogeneous() {
        let f = parse_poly("x0^2 + x1", 1).unwrap();
        assert_eq!(full_expansion(&f, 1), Err(ArcError::NotHomogeneous));
    }

    #[test]
    fn tilde_line_on_chart() {
        let arc = Arc::from_i64(&[&[1, 0], &[0, 1], &[0, 0], &[0, 0]]).unwrap();
        let line = line_through(&arc).unwrap();
        assert!(!line.degenerate);
        assert_eq!(line.base, big(&[1, 0, 0, 0]));
        assert_eq!(line.direction, big(&[0, 1, 0, 0]));
    }

    #[test]
    fn degenerate_lines() {
        let zero = Arc::from_i64(&[&[1, 0], &[2, 0], &[0, 0]]).unwrap();
        assert!(line_through(&zero).unwrap().degenerate);
        let prop = Arc::from_i64(&[&[1, 1], &[2, 2], &[0, 0]]).unwrap();
        assert!(line_through(&prop).unwrap().degenerate);
    }

    #[test]
    fn arc_needs_base_point() {
        assert!(Arc::from_i64(&[&[0, 1], &[0, 0]]).is_err());
    }

    #[test]
    fn hyperplane_contains_line() {
        let f = parse_poly("x2", 2).unwrap();
        let arc = Arc::from_i64(&[&[1, 0], &[0, 1], &[0, 0]]).unwrap();
        assert_eq!(
            line_contact_order(&f, &arc).unwrap(),
            ContactOrder::Infinite
        );
    }

    #[test]
    fn node_branch_contact() {
        let f = parse_poly("x0*x2^2 - x1^3 - x1^2*x0", 2).unwrap();
        // x0 = 1, x1 = ε^2 - 2ε, x2 = ε^3 - 3ε^2 + 2ε
        let branch = Arc::from_i64(&[&[1, 0, 0, 0], &[0, -2, 1, 0], &[0, 2, -3, 1]]).unwrap();
        let order = line_contact_order(&f, &branch.truncate(1)).unwrap();
        assert!(order >= ContactOrder::Finite(2), "{order}");
        // the full 3-arc lies on the curve to order 3
        let trunc = arc_ideal(&f, 3).unwrap();
        assert!(trunc.coefficients.iter().all(|c| branch.eval(c).is_zero()));
    }
}
