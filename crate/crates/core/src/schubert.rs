//! Schubert calculus on the Grassmannian of lines G(2, n+1), used as an
//! independent check on line counts.
//!
//! A divisor block `prod_i (i x1 + (d-i) x2)` is symmetric in the Chern
//! roots `x1, x2` of the dual tautological bundle, so it is a polynomial in
//! `e1 = x1 + x2 = σ1` and `e2 = x1 x2 = σ11`. Products are then carried out
//! with the Pieri rule for σ1 and the rule for σ11 only.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{ArcError, Result};
use crate::locus::CIType;

/// Partition `(a, b)` with `n-1 >= a >= b >= 0`, naming σ_{a,b}.
pub type Partition = (u32, u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    Sigma1,
    Sigma11,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchubertClass {
    n: u32,
    coeffs: BTreeMap<Partition, BigInt>,
}

fn add_into<K: Ord + Copy>(map: &mut BTreeMap<K, BigInt>, key: K, c: BigInt) {
    if c.is_zero() {
        return;
    }
    let slot = map.entry(key).or_insert_with(BigInt::zero);
    *slot += c;
    if slot.is_zero() {
        map.remove(&key);
    }
}

impl SchubertClass {
    /// The fundamental class σ_{0,0} on G(2, n+1).
    pub fn one(n: u32) -> Self {
        assert!(n >= 1, "ambient dimension must be at least 1");
        let mut coeffs = BTreeMap::new();
        coeffs.insert((0, 0), BigInt::one());
        SchubertClass { n, coeffs }
    }

    pub fn zero(n: u32) -> Self {
        SchubertClass {
            n,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn sigma(n: u32, a: u32, b: u32) -> Self {
        let mut out = SchubertClass::zero(n);
        if a >= b && a < n {
            out.coeffs.insert((a, b), BigInt::one());
        }
        out
    }

    pub fn ambient(&self) -> u32 {
        self.n
    }

    pub fn coefficient(&self, a: u32, b: u32) -> BigInt {
        self.coeffs.get(&(a, b)).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (Partition, &BigInt)> {
        self.coeffs.iter().map(|(&k, c)| (k, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of the point class σ_{n-1,n-1}.
    pub fn integral(&self) -> BigInt {
        self.coefficient(self.n - 1, self.n - 1)
    }

    pub fn add(&self, other: &SchubertClass) -> SchubertClass {
        let mut out = self.clone();
        for (&k, c) in &other.coeffs {
            add_into(&mut out.coeffs, k, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &BigInt) -> SchubertClass {
        let mut out = SchubertClass::zero(self.n);
        for (&k, v) in &self.coeffs {
            add_into(&mut out.coeffs, k, v * c);
        }
        out
    }

    /// σ1 · σ_{a,b} = σ_{a+1,b} + σ_{a,b+1}; σ11 · σ_{a,b} = σ_{a+1,b+1};
    /// terms leaving the `(n-1) x 2` box or breaking `a >= b` are dropped.
    pub fn pieri_mul(&self, g: Generator) -> SchubertClass {
        let top = self.n - 1;
        let mut out = SchubertClass::zero(self.n);
        for (&(a, b), c) in &self.coeffs {
            match g {
                Generator::Sigma1 => {
                    if a < top {
                        add_into(&mut out.coeffs, (a + 1, b), c.clone());
                    }
                    if b < a {
                        add_into(&mut out.coeffs, (a, b + 1), c.clone());
                    }
                }
                Generator::Sigma11 => {
                    if a < top {
                        add_into(&mut out.coeffs, (a + 1, b + 1), c.clone());
                    }
                }
            }
        }
        out
    }

    pub fn pieri_pow(&self, g: Generator, e: u32) -> SchubertClass {
        (0..e).fold(self.clone(), |acc, _| acc.pieri_mul(g))
    }
}

impl fmt::Display for SchubertClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(&(a, b), c)| format!("{c}*s[{a},{b}]"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Polynomial in the elementary symmetric functions: key `(i, j)` is
/// `e1^i e2^j`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ElementaryPoly {
    coeffs: BTreeMap<(u32, u32), BigInt>,
}

impl ElementaryPoly {
    pub fn coefficient(&self, i: u32, j: u32) -> BigInt {
        self.coeffs.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &BigInt)> {
        self.coeffs.iter().map(|(&k, c)| (k, c))
    }

    /// Substitutes `e1 -> σ1`, `e2 -> σ11` and multiplies out from σ_{0,0}.
    pub fn to_schubert(&self, n: u32) -> SchubertClass {
        let one = SchubertClass::one(n);
        self.coeffs
            .iter()
            .fold(SchubertClass::zero(n), |acc, (&(i, j), c)| {
                let term = one
                    .pieri_pow(Generator::Sigma1, i)
                    .pieri_pow(Generator::Sigma11, j);
                acc.add(&term.scale(c))
            })
    }
}

impl fmt::Display for ElementaryPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(&(i, j), c)| format!("{c}*e1^{i}*e2^{j}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Expands `prod (p x1 + q x2)` and rewrites it in `e1`, `e2`. Fails if the
/// product is not symmetric.
pub fn symmetric_expand(factors: &[(i64, i64)]) -> Result<ElementaryPoly> {
    // bivariate product, key (a, b) = x1^a x2^b
    let mut poly: BTreeMap<(u32, u32), BigInt> = BTreeMap::new();
    poly.insert((0, 0), BigInt::one());
    for &(p, q) in factors {
        let mut next = BTreeMap::new();
        for (&(a, b), c) in &poly {
            add_into(&mut next, (a + 1, b), c * p);
            add_into(&mut next, (a, b + 1), c * q);
        }
        poly = next;
    }

    // peel off the lex-leading term x1^a x2^b (a >= b) as c e1^(a-b) e2^b
    let mut out = ElementaryPoly::default();
    let mut e1_powers: Vec<BTreeMap<(u32, u32), BigInt>> = Vec::new();
    while let Some((&(a, b), c)) = poly.iter().next_back() {
        if a < b {
            return Err(ArcError::NotSymmetric { a, b });
        }
        let c = c.clone();
        let k = (a - b) as usize;
        while e1_powers.len() <= k {
            let next = match e1_powers.last() {
                None => BTreeMap::from([((0, 0), BigInt::one())]),
                Some(prev) => {
                    let mut m = BTreeMap::new();
                    for (&(u, v), c) in prev {
                        add_into(&mut m, (u + 1, v), c.clone());
                        add_into(&mut m, (u, v + 1), c.clone());
                    }
                    m
                }
            };
            e1_powers.push(next);
        }
        for (&(u, v), w) in &e1_powers[k] {
            add_into(&mut poly, (u + b, v + b), -(w * &c));
        }
        add_into(&mut out.coeffs, (a - b, b), c);
    }
    Ok(out)
}

/// Lines on a generic complete intersection with `sum (d_j + 1) = 2(n-1)`,
/// computed on G(2, n+1).
pub fn oracle_count_lines(t: &CIType) -> Result<BigInt> {
    let n = t.ambient();
    let expected = 2 * (n as i64 - 1);
    let actual = t.degrees().iter().map(|&d| d as i64 + 1).sum::<i64>();
    if actual != expected {
        return Err(ArcError::DimensionCondition {
            condition: "sum(d_i + 1) = dim G(2, n+1) = 2(n-1)",
            expected,
            actual,
        });
    }
    Ok(symmetric_expand(&t.factors())?.to_schubert(n).integral())
}

/// Plücker degree of the Fano scheme of lines, `∫ c_top · σ1^k` with
/// `k = 2(n-1) - sum (d_j + 1)` its expected dimension.
pub fn fano_degree(t: &CIType) -> Result<BigInt> {
    let n = t.ambient();
    let k = 2 * (n as i64 - 1) - t.degrees().iter().map(|&d| d as i64 + 1).sum::<i64>();
    if k < 0 {
        return Err(ArcError::NegativeDimension(k));
    }
    let class = symmetric_expand(&t.factors())?.to_schubert(n);
    Ok(class.pieri_pow(Generator::Sigma1, k as u32).integral())
}
