//! Exhaustive search for lines over a prime field F_p.
//!
//! Lines in P^n(F_p) are enumerated as 2-dimensional subspaces of
//! F_p^(n+1) in reduced row-echelon form, so each line is visited exactly
//! once. A line with echelon basis `(p, v)` lies on `{f = 0}` when every
//! prolonged coefficient `f^(i)`, evaluated at the 1-arc `p + v ε`, vanishes
//! mod p. Counts are of F_p-rational lines only; they can fall short of the
//! geometric count.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{ArcError, Result};
use crate::poly::SparsePoly;
use crate::prolong::full_expansion;

/// Largest supported modulus; keeps products of residues inside `u64`.
pub const MAX_PRIME: u64 = 1 << 31;

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut k = 2;
    while k * k <= p {
        if p.is_multiple_of(k) {
            return false;
        }
        k += 1;
    }
    true
}

/// Number of F_q-points of P^k: `(q^(k+1) - 1) / (q - 1)`.
pub fn projective_points(q: u64, k: u32) -> BigInt {
    let q = BigInt::from(q);
    (num_traits::pow(q.clone(), k as usize + 1) - 1u32) / (q - 1u32)
}

/// Gaussian binomial `[n choose k]_q`.
pub fn gaussian_binomial(n: u32, k: u32, q: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let q = BigInt::from(q);
    let mut num = BigInt::from(1);
    let mut den = BigInt::from(1);
    for i in 0..k {
        num *= num_traits::pow(q.clone(), (n - i) as usize) - 1u32;
        den *= num_traits::pow(q.clone(), (i + 1) as usize) - 1u32;
    }
    num / den
}

/// One prolonged coefficient compiled for evaluation mod p. Slots index
/// `x_{j,i}` as `2j + i`.
#[derive(Clone, Debug)]
struct CompiledPoly {
    terms: Vec<(u64, Vec<(usize, u32)>)>,
}

impl CompiledPoly {
    fn compile(f: &SparsePoly, p: u64) -> Self {
        let modulus = BigInt::from(p);
        let terms = f
            .terms()
            .filter_map(|(m, c)| {
                let c = c.mod_floor(&modulus).to_u64().expect("residue fits");
                (c != 0).then(|| {
                    let vars = m
                        .iter()
                        .map(|(v, e)| (2 * v.coord as usize + v.weight as usize, e))
                        .collect();
                    (c, vars)
                })
            })
            .collect();
        CompiledPoly { terms }
    }

    fn eval(&self, slots: &[u64], p: u64) -> u64 {
        let mut total = 0u64;
        for (c, vars) in &self.terms {
            let mut t = *c;
            for &(s, e) in vars {
                for _ in 0..e {
                    t = t * slots[s] % p;
                }
                if t == 0 {
                    break;
                }
            }
            total = (total + t) % p;
        }
        total
    }
}

/// Field, ambient space and defining equations.
#[derive(Clone, Debug)]
pub struct FFConfig {
    p: u64,
    n: u32,
    generators: Vec<SparsePoly>,
    /// Per generator: `f^(0), ..., f^(d)` for 1-arcs, reduced mod p.
    prolonged: Vec<Vec<CompiledPoly>>,
}

impl FFConfig {
    pub fn new(p: u64, n: u32, generators: Vec<SparsePoly>) -> Result<Self> {
        if !is_prime(p) {
            return Err(ArcError::NotPrime(p));
        }
        if p >= MAX_PRIME {
            return Err(ArcError::InvalidArgument(format!(
                "prime must be below {MAX_PRIME}"
            )));
        }
        if n < 1 {
            return Err(ArcError::InvalidArgument(
                "ambient dimension must be positive".into(),
            ));
        }
        let mut prolonged = Vec::with_capacity(generators.len());
        for f in &generators {
            if let Some(j) = f.max_coord() {
                if j > n {
                    return Err(ArcError::VariableOutOfRange { index: j, n });
                }
            }
            let system = full_expansion(f, 1)?;
            prolonged.push(
                system
                    .coefficients
                    .iter()
                    .map(|c| CompiledPoly::compile(c, p))
                    .collect(),
            );
        }
        Ok(FFConfig {
            p,
            n,
            generators,
            prolonged,
        })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn ambient(&self) -> u32 {
        self.n
    }

    pub fn generators(&self) -> &[SparsePoly] {
        &self.generators
    }

    fn slots(&self, base: &[u64], dir: &[u64], slots: &mut [u64]) {
        for j in 0..base.len() {
            slots[2 * j] = base[j];
            slots[2 * j + 1] = dir[j];
        }
    }

    /// Whether every prolonged coefficient vanishes on the arc `base + dir ε`.
    pub fn arc_vanishes(&self, base: &[u64], dir: &[u64]) -> bool {
        let mut slots = vec![0u64; 2 * (self.n as usize + 1)];
        self.slots(base, dir, &mut slots);
        self.vanishes_at(&slots)
    }

    fn vanishes_at(&self, slots: &[u64]) -> bool {
        self.prolonged
            .iter()
            .all(|coeffs| coeffs.iter().all(|c| c.eval(slots, self.p) == 0))
    }

    /// Whether all generators vanish at a point.
    pub fn contains_point(&self, pt: &[u64]) -> bool {
        let mut slots = vec![0u64; 2 * (self.n as usize + 1)];
        for (j, &x) in pt.iter().enumerate() {
            slots[2 * j] = x % self.p;
        }
        self.prolonged
            .iter()
            .all(|coeffs| coeffs[0].eval(&slots, self.p) == 0)
    }
}

/// F_p-rational line in echelon form: `base` has a leading 1 in column
/// `pivots.0` and 0 in column `pivots.1`; `direction` has a leading 1 in
/// column `pivots.1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FFLine {
    pub base: Vec<u64>,
    pub direction: Vec<u64>,
}

/// Odometer over `positions`, each ranging over `0..p`.
fn for_each_assignment(
    positions: &[usize],
    p: u64,
    buf: &mut [u64],
    mut visit: impl FnMut(&[u64]),
) {
    for &k in positions {
        buf[k] = 0;
    }
    loop {
        visit(buf);
        let mut carry = true;
        for &k in positions {
            buf[k] += 1;
            if buf[k] < p {
                carry = false;
                break;
            }
            buf[k] = 0;
        }
        if carry {
            return;
        }
    }
}

/// Visits every line of P^n(F_p) once, as an echelon pair.
pub fn for_each_line(p: u64, n: u32, mut visit: impl FnMut(&[u64], &[u64])) {
    let cols = n as usize + 1;
    for c1 in 0..cols {
        for c2 in c1 + 1..cols {
            let free1: Vec<usize> = (c1 + 1..cols).filter(|&k| k != c2).collect();
            let free2: Vec<usize> = (c2 + 1..cols).collect();
            let mut row1 = vec![0u64; cols];
            row1[c1] = 1;
            let mut row2 = vec![0u64; cols];
            row2[c2] = 1;
            for_each_assignment(&free1, p, &mut row1.clone(), |r1| {
                let r1 = r1.to_vec();
                for_each_assignment(&free2, p, &mut row2, |r2| visit(&r1, r2));
            });
        }
    }
}

/// All F_p-rational lines contained in the variety.
pub fn lines_ff(cfg: &FFConfig) -> Vec<FFLine> {
    let mut out = Vec::new();
    let mut slots = vec![0u64; 2 * (cfg.n as usize + 1)];
    for_each_line(cfg.p, cfg.n, |base, dir| {
        cfg.slots(base, dir, &mut slots);
        if cfg.vanishes_at(&slots) {
            out.push(FFLine {
                base: base.to_vec(),
                direction: dir.to_vec(),
            });
        }
    });
    out
}

/// Number of F_p-rational lines contained in the variety.
pub fn count_lines_ff(cfg: &FFConfig) -> u64 {
    let mut count = 0u64;
    let mut slots = vec![0u64; 2 * (cfg.n as usize + 1)];
    for_each_line(cfg.p, cfg.n, |base, dir| {
        cfg.slots(base, dir, &mut slots);
        if cfg.vanishes_at(&slots) {
            count += 1;
        }
    });
    count
}

/// Number of F_p-rational lines through `pt` contained in the variety.
/// Directions run over P^(n-1) realized as vectors vanishing at the first
/// nonzero coordinate of `pt`, normalized to a leading 1.
pub fn count_lines_through_point_ff(cfg: &FFConfig, pt: &[u64]) -> Result<u64> {
    let cols = cfg.n as usize + 1;
    if pt.len() != cols {
        return Err(ArcError::InvalidArgument(format!(
            "point needs {cols} coordinates, got {}",
            pt.len()
        )));
    }
    let pt: Vec<u64> = pt.iter().map(|&x| x % cfg.p).collect();
    let Some(skip) = pt.iter().position(|&x| x != 0) else {
        return Err(ArcError::InvalidArgument(
            "point has all coordinates zero".into(),
        ));
    };
    if !cfg.contains_point(&pt) {
        return Err(ArcError::PointNotOnVariety);
    }
    let others: Vec<usize> = (0..cols).filter(|&k| k != skip).collect();
    let mut count = 0u64;
    let mut slots = vec![0u64; 2 * cols];
    let mut dir = vec![0u64; cols];
    for (lead, &c) in others.iter().enumerate() {
        dir.iter_mut().for_each(|x| *x = 0);
        dir[c] = 1;
        let free = &others[lead + 1..];
        for_each_assignment(free, cfg.p, &mut dir, |v| {
            cfg.slots(&pt, v, &mut slots);
            if cfg.vanishes_at(&slots) {
                count += 1;
            }
        });
    }
    Ok(count)
}
