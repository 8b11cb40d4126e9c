//! Normal-form arithmetic in the intersection ring of projectivized 1-arcs
//! on P^n:
//!
//! ```text
//! A = Z[h0, h1] / (h0^(n+1), h1^n + h1^(n-1) h0 + ... + h0^n)
//! ```
//!
//! A class is stored in normal form: monomials `h0^a h1^b` with `a <= n`,
//! `b <= n-1`, `a + b <= 2n-1`. The top class `h0^n h1^(n-1)` has degree one.
//!
//! The alternative presentation in `j0 = h0`, `j1 = h1 - h0` is provided by
//! [`to_j_basis`] / [`from_j_basis`] and [`JPoly`].

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{ArcError, Result};

/// Exponent pair `(a, b)` for `h0^a h1^b`.
pub type Exps = (u32, u32);

/// One term of a class, in the form used by reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassTerm {
    pub a: u32,
    pub b: u32,
    #[serde(with = "crate::bigint_string")]
    pub coeff: BigInt,
}

fn add_into(map: &mut BTreeMap<Exps, BigInt>, key: Exps, c: BigInt) {
    if c.is_zero() {
        return;
    }
    let slot = map.entry(key).or_insert_with(BigInt::zero);
    *slot += c;
    if slot.is_zero() {
        map.remove(&key);
    }
}

fn binomial(n: u32, k: u32) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Element of A(P̂^n_1) in normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ChowClass {
    n: u32,
    coeffs: BTreeMap<Exps, BigInt>,
}

impl ChowClass {
    pub fn zero(n: u32) -> Self {
        assert!(n >= 1, "ambient dimension must be at least 1");
        ChowClass {
            n,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(n: u32) -> Self {
        ChowClass::monomial(n, 0, 0, BigInt::one())
    }

    pub fn h0(n: u32) -> Self {
        ChowClass::monomial(n, 1, 0, BigInt::one())
    }

    pub fn h1(n: u32) -> Self {
        ChowClass::monomial(n, 0, 1, BigInt::one())
    }

    /// `c * h0^a * h1^b`, reduced.
    pub fn monomial(n: u32, a: u32, b: u32, c: BigInt) -> Self {
        normal_form([((a, b), c)], n)
    }

    /// `p*h0 + q*h1`.
    pub fn linear(n: u32, p: i64, q: i64) -> Self {
        normal_form([((1, 0), BigInt::from(p)), ((0, 1), BigInt::from(q))], n)
    }

    pub fn ambient(&self) -> u32 {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (Exps, &BigInt)> {
        self.coeffs.iter().map(|(&k, c)| (k, c))
    }

    pub fn to_terms(&self) -> Vec<ClassTerm> {
        self.coeffs
            .iter()
            .map(|(&(a, b), c)| ClassTerm {
                a,
                b,
                coeff: c.clone(),
            })
            .collect()
    }

    pub fn coefficient(&self, a: u32, b: u32) -> BigInt {
        self.coeffs.get(&(a, b)).cloned().unwrap_or_default()
    }

    /// The only term, if the class is a nonzero multiple of one monomial.
    pub fn single_term(&self) -> Option<(Exps, &BigInt)> {
        if self.coeffs.len() == 1 {
            self.terms().next()
        } else {
            None
        }
    }

    /// Integral against the fundamental class: the coefficient of the top
    /// monomial `h0^n h1^(n-1)`.
    pub fn degree(&self) -> BigInt {
        self.coefficient(self.n, self.n - 1)
    }

    pub fn scale(&self, c: &BigInt) -> ChowClass {
        let mut out = ChowClass::zero(self.n);
        for (&k, v) in &self.coeffs {
            add_into(&mut out.coeffs, k, v * c);
        }
        out
    }

    pub fn try_add(&self, other: &ChowClass) -> Result<ChowClass> {
        self.check_ambient(other)?;
        let mut out = self.clone();
        for (&k, v) in &other.coeffs {
            add_into(&mut out.coeffs, k, v.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &ChowClass) -> Result<ChowClass> {
        self.check_ambient(other)?;
        let mut raw: BTreeMap<Exps, BigInt> = BTreeMap::new();
        for (&(a1, b1), c1) in &self.coeffs {
            for (&(a2, b2), c2) in &other.coeffs {
                add_into(&mut raw, (a1 + a2, b1 + b2), c1 * c2);
            }
        }
        Ok(normal_form(raw, self.n))
    }

    pub fn pow(&self, e: u32) -> ChowClass {
        let mut acc = ChowClass::one(self.n);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Exact division of every coefficient; fails if any coefficient is
    /// not divisible.
    pub fn div_exact(&self, d: &BigInt) -> Result<ChowClass> {
        if d.is_zero() {
            return Err(ArcError::InvalidArgument("division by zero".into()));
        }
        let mut out = ChowClass::zero(self.n);
        for (&(a, b), c) in &self.coeffs {
            let (q, r) = c.div_rem(d);
            if !r.is_zero() {
                return Err(ArcError::InexactDivision {
                    a,
                    b,
                    coeff: c.to_string(),
                    divisor: d.to_string(),
                });
            }
            out.coeffs.insert((a, b), q);
        }
        Ok(out)
    }

    fn check_ambient(&self, other: &ChowClass) -> Result<()> {
        if self.n != other.n {
            return Err(ArcError::AmbientMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }
}

impl Mul for &ChowClass {
    type Output = ChowClass;
    /// Panics on ambient mismatch; use [`ChowClass::try_mul`] to handle it.
    fn mul(self, rhs: &ChowClass) -> ChowClass {
        self.try_mul(rhs).expect("ambient dimensions must agree")
    }
}

impl Add for &ChowClass {
    type Output = ChowClass;
    fn add(self, rhs: &ChowClass) -> ChowClass {
        self.try_add(rhs).expect("ambient dimensions must agree")
    }
}

impl Sub for &ChowClass {
    type Output = ChowClass;
    fn sub(self, rhs: &ChowClass) -> ChowClass {
        self + &(-rhs)
    }
}

impl Neg for &ChowClass {
    type Output = ChowClass;
    fn neg(self) -> ChowClass {
        self.scale(&BigInt::from(-1))
    }
}

fn write_combination(
    f: &mut fmt::Formatter<'_>,
    names: (&str, &str),
    terms: &mut dyn Iterator<Item = (Exps, &BigInt)>,
) -> fmt::Result {
    let mut first = true;
    for ((a, b), c) in terms {
        let mag = c.abs();
        match (first, c.is_negative()) {
            (true, true) => write!(f, "-")?,
            (true, false) => {}
            (false, true) => write!(f, " - ")?,
            (false, false) => write!(f, " + ")?,
        }
        first = false;
        let mut factors = Vec::new();
        for (name, e) in [(names.0, a), (names.1, b)] {
            match e {
                0 => {}
                1 => factors.push(name.to_string()),
                _ => factors.push(format!("{name}^{e}")),
            }
        }
        if factors.is_empty() {
            write!(f, "{mag}")?;
        } else if mag.is_one() {
            write!(f, "{}", factors.join("*"))?;
        } else {
            write!(f, "{mag}*{}", factors.join("*"))?;
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for ChowClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_combination(f, ("h0", "h1"), &mut self.terms())
    }
}

/// Reduces a formal combination of `h0^a h1^b` to normal form.
///
/// Monomials with `b >= n` are rewritten with
/// `h1^n = -(h0 h1^(n-1) + ... + h0^n)`, highest `b` first, so each step
/// strictly lowers the `h1`-exponent. Monomials with `a > n` or total degree
/// above `2n - 1` are dropped.
pub fn normal_form<I>(raw: I, n: u32) -> ChowClass
where
    I: IntoIterator<Item = (Exps, BigInt)>,
{
    assert!(n >= 1, "ambient dimension must be at least 1");
    let top = 2 * n - 1;
    let alive = |a: u32, b: u32| a <= n && a + b <= top;

    let mut work: BTreeMap<Exps, BigInt> = BTreeMap::new();
    for ((a, b), c) in raw {
        if alive(a, b) {
            // keyed (b, a) so the largest h1-exponent is last
            add_into(&mut work, (b, a), c);
        }
    }
    // eliminate the largest h1-exponent first
    while let Some((&(b, a), _)) = work.iter().next_back() {
        if b < n {
            break;
        }
        let c = work.remove(&(b, a)).expect("present");
        for i in 1..=n {
            if alive(a + i, b - i) {
                add_into(&mut work, (b - i, a + i), -c.clone());
            }
        }
    }
    ChowClass {
        n,
        coeffs: work.into_iter().map(|((b, a), c)| ((a, b), c)).collect(),
    }
}

/// Normal form of `prod (p*h0 + q*h1)` over the factor list.
pub fn linear_product(factors: &[(i64, i64)], n: u32) -> ChowClass {
    factors.iter().fold(ChowClass::one(n), |acc, &(p, q)| {
        &acc * &ChowClass::linear(n, p, q)
    })
}

/// Formal integer combination of `j0^a j1^b`. Not reduced unless produced
/// by [`JPoly::reduce`] or [`JPoly::mul_reduced`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JPoly {
    n: u32,
    coeffs: BTreeMap<Exps, BigInt>,
}

impl JPoly {
    pub fn ambient(&self) -> u32 {
        self.n
    }

    pub fn from_terms<I: IntoIterator<Item = (Exps, BigInt)>>(n: u32, terms: I) -> Self {
        let mut coeffs = BTreeMap::new();
        for (k, c) in terms {
            add_into(&mut coeffs, k, c);
        }
        JPoly { n, coeffs }
    }

    pub fn coefficient(&self, a: u32, b: u32) -> BigInt {
        self.coeffs.get(&(a, b)).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (Exps, &BigInt)> {
        self.coeffs.iter().map(|(&k, c)| (k, c))
    }

    /// Reduces modulo `j0^(n+1)` and the tangent-bundle relation
    /// `sum_{i=0}^{n} C(n+1, i) j0^i j1^(n-i) = 0`.
    pub fn reduce(&self) -> JPoly {
        let n = self.n;
        let top = 2 * n - 1;
        let alive = |a: u32, b: u32| a <= n && a + b <= top;
        let mut work: BTreeMap<Exps, BigInt> = BTreeMap::new();
        for (&(a, b), c) in &self.coeffs {
            if alive(a, b) {
                add_into(&mut work, (b, a), c.clone());
            }
        }
        // eliminate the largest h1-exponent first
        while let Some((&(b, a), _)) = work.iter().next_back() {
            if b < n {
                break;
            }
            let c = work.remove(&(b, a)).expect("present");
            for i in 1..=n {
                if alive(a + i, b - i) {
                    add_into(&mut work, (b - i, a + i), -(&c * binomial(n + 1, i)));
                }
            }
        }
        JPoly {
            n,
            coeffs: work.into_iter().map(|((b, a), c)| ((a, b), c)).collect(),
        }
    }

    /// Product in the j-presentation, reduced.
    pub fn mul_reduced(&self, other: &JPoly) -> Result<JPoly> {
        if self.n != other.n {
            return Err(ArcError::AmbientMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let mut raw = BTreeMap::new();
        for (&(a1, b1), c1) in &self.coeffs {
            for (&(a2, b2), c2) in &other.coeffs {
                add_into(&mut raw, (a1 + a2, b1 + b2), c1 * c2);
            }
        }
        Ok(JPoly {
            n: self.n,
            coeffs: raw,
        }
        .reduce())
    }
}

impl fmt::Display for JPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_combination(f, ("j0", "j1"), &mut self.terms())
    }
}

/// Substitutes `h0 = j0`, `h1 = j0 + j1` without reducing.
pub fn to_j_basis(c: &ChowClass) -> JPoly {
    let mut out = BTreeMap::new();
    for (&(a, b), coeff) in &c.coeffs {
        for k in 0..=b {
            add_into(&mut out, (a + b - k, k), coeff * binomial(b, k));
        }
    }
    JPoly {
        n: c.n,
        coeffs: out,
    }
}

/// Substitutes `j0 = h0`, `j1 = h1 - h0` and reduces to normal form.
pub fn from_j_basis(j: &JPoly) -> ChowClass {
    let mut raw = BTreeMap::new();
    for (&(a, b), coeff) in &j.coeffs {
        for k in 0..=b {
            let mut c = coeff * binomial(b, k);
            if (b - k) % 2 == 1 {
                c = -c;
            }
            add_into(&mut raw, (a + b - k, k), c);
        }
    }
    normal_form(raw, j.n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn cubic_surface_reduction() {
        let raw = [((3, 1), b(18)), ((2, 2), b(45)), ((1, 3), b(18))];
        let c = normal_form(raw, 3);
        assert_eq!(c, ChowClass::monomial(3, 2, 2, b(27)));
        assert_eq!(c.to_string(), "27*h0^2*h1^2");
    }

    #[test]
    fn relations_vanish() {
        for n in 1..6 {
            assert!(ChowClass::monomial(n, n + 1, 0, b(1)).is_zero());
            let rel = (0..=n).map(|i| ((i, n - i), b(1)));
            assert!(normal_form(rel, n).is_zero(), "n = {n}");
        }
    }

    #[test]
    fn h0_times_top_power() {
        let n = 4;
        assert!((&ChowClass::h0(n) * &ChowClass::h0(n).pow(n)).is_zero());
    }

    #[test]
    fn quadric_point_lines() {
        let n = 3;
        let l = linear_product(&[(2, 0), (1, 1), (0, 2)], n);
        let lx = (&l * &ChowClass::h0(n).pow(2)).div_exact(&b(2)).unwrap();
        assert_eq!(lx, ChowClass::monomial(n, 3, 2, b(2)));
    }

    #[test]
    fn known_products() {
        assert_eq!(
            linear_product(&[(3, 0), (2, 1), (1, 2), (0, 3)], 3),
            ChowClass::monomial(3, 2, 2, b(27))
        );
        let quintic = linear_product(&[(5, 0), (4, 1), (3, 2), (2, 3), (1, 4)], 4);
        assert_eq!(quintic.num_terms(), 3);
        assert_eq!(quintic.coefficient(2, 3), b(650));
        assert_eq!(quintic.coefficient(3, 2), b(1225));
        assert_eq!(quintic.coefficient(4, 1), b(650));
        assert_eq!(linear_product(&[(1, 0)], 3), ChowClass::h0(3));
    }

    #[test]
    fn del_pezzo_coefficient() {
        let f = [(2, 0), (1, 1), (0, 2)];
        let factors: Vec<_> = f.iter().chain(f.iter()).copied().collect();
        let c = linear_product(&factors, 4);
        assert_eq!(c.coefficient(3, 3), b(16));
        assert_eq!(ChowClass::zero(4).coefficient(1, 1), b(0));
    }

    #[test]
    fn inexact_division_fails() {
        let c = ChowClass::monomial(3, 1, 1, b(3));
        assert!(matches!(
            c.div_exact(&b(2)),
            Err(ArcError::InexactDivision { a: 1, b: 1, .. })
        ));
    }

    #[test]
    fn ambient_mismatch() {
        assert_eq!(
            ChowClass::h0(2).try_mul(&ChowClass::h0(3)),
            Err(ArcError::AmbientMismatch { left: 2, right: 3 })
        );
    }

    #[test]
    fn j_basis_substitution() {
        let j = to_j_basis(&ChowClass::h1(3));
        assert_eq!(j, JPoly::from_terms(3, [((1, 0), b(1)), ((0, 1), b(1))]));
        let j = to_j_basis(&ChowClass::h0(3));
        assert_eq!(j, JPoly::from_terms(3, [((1, 0), b(1))]));
    }

    #[test]
    fn line_class_in_j_basis() {
        for n in 2..7 {
            let line = ChowClass::monomial(n, n - 1, n - 1, b(1));
            // j0^(n-1) (j0 + j1)^(n-1) expanded
            let want = JPoly::from_terms(
                n,
                (0..n).map(|k| ((2 * (n - 1) - k, k), binomial(n - 1, k))),
            );
            assert_eq!(to_j_basis(&line), want);
            assert_eq!(from_j_basis(&want), line);
        }
    }

    #[test]
    fn j_relation_matches_h_relation() {
        // the h-relation rewritten in j must reduce to zero in the j-ring
        for n in 1..7 {
            let h_rel = JPoly::from_terms(
                n,
                (0..=n).flat_map(|i| {
                    // h0^i h1^(n-i) = j0^i (j0+j1)^(n-i)
                    (0..=n - i).map(move |k| ((n - k, k), binomial(n - i, k)))
                }),
            );
            assert!(h_rel.reduce().terms().next().is_none(), "n = {n}");
        }
    }
}
