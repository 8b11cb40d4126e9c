//! Seeded randomized checks of the engine's algebraic invariants. Each check
//! returns `Err` with the first counterexample it finds.

use std::result::Result;

use arcline::*;
use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Check = fn(cases: usize, seed: u64) -> Result<(), String>;

/// Every property with its display name.
pub const ALL: [(&str, Check); 5] = [
    ("weight homogeneity and degree of f^(i)", weight_homogeneity),
    (
        "Cauchy multiplicativity of full_expansion",
        cauchy_multiplicativity,
    ),
    (
        "normal-form idempotence and relation soundness",
        normal_form_soundness,
    ),
    (
        "h <-> j round trip and product agreement",
        presentation_round_trip,
    ),
    (
        "symmetric cancellation of h0^n h1^(n-2)",
        symmetric_cancellation,
    ),
];

fn random_form(r: &mut ChaCha8Rng, n: u32, d: u32) -> SparsePoly {
    loop {
        let mut f = SparsePoly::zero();
        for _ in 0..r.gen_range(1..6) {
            let m = Monomial::from_pairs((0..d).map(|_| (Var::plain(r.gen_range(0..=n)), 1)));
            f.add_term(m, BigInt::from(r.gen_range(-9i64..=9)));
        }
        if !f.is_zero() {
            return f;
        }
    }
}

fn random_class(r: &mut ChaCha8Rng, n: u32) -> ChowClass {
    let terms: Vec<_> = (0..r.gen_range(0..6))
        .map(|_| {
            let e = (r.gen_range(0..=n + 1), r.gen_range(0..=2 * n));
            (e, BigInt::from(r.gen_range(-20i64..=20)))
        })
        .collect();
    normal_form(terms, n)
}

pub fn weight_homogeneity(cases: usize, seed: u64) -> Result<(), String> {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..cases {
        let d = r.gen_range(1..=4);
        let m = r.gen_range(0..=3);
        let f = random_form(&mut r, 3, d);
        let sys = arc_ideal(&f, m).map_err(|e| e.to_string())?;
        for (i, c) in sys.coefficients.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if c.homogeneous_weight() != Some(i as u32) || c.homogeneous_degree() != Some(d) {
                return Err(format!("f = {f}: f^({i}) = {c} has wrong weight or degree"));
            }
        }
        // on 1-arcs every term of f^(i) has d - i base and i direction factors
        let full = full_expansion(&f, 1).map_err(|e| e.to_string())?;
        for (i, c) in full.coefficients.iter().enumerate() {
            for (mono, _) in c.terms() {
                let w1: u32 = mono
                    .iter()
                    .filter(|(v, _)| v.weight == 1)
                    .map(|(_, e)| e)
                    .sum();
                if w1 != i as u32 || mono.total_degree() != d {
                    return Err(format!("f = {f}: term {mono} of f^({i})"));
                }
            }
        }
    }
    Ok(())
}

pub fn cauchy_multiplicativity(cases: usize, seed: u64) -> Result<(), String> {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..cases {
        let (df, dg) = (r.gen_range(1..=3), r.gen_range(1..=2));
        let f = random_form(&mut r, 3, df);
        let g = random_form(&mut r, 3, dg);
        let ef = full_expansion(&f, 1)
            .map_err(|e| e.to_string())?
            .coefficients;
        let eg = full_expansion(&g, 1)
            .map_err(|e| e.to_string())?
            .coefficients;
        let fg = &f * &g;
        if fg.is_zero() {
            continue;
        }
        let efg = full_expansion(&fg, 1)
            .map_err(|e| e.to_string())?
            .coefficients;
        for (k, got) in efg.iter().enumerate() {
            let mut want = SparsePoly::zero();
            for i in 0..=k {
                if let (Some(a), Some(b)) = (ef.get(i), eg.get(k - i)) {
                    want = &want + &(a * b);
                }
            }
            if got != &want {
                return Err(format!("(f g)^({k}) differs for f = {f}, g = {g}"));
            }
        }
    }
    Ok(())
}

pub fn normal_form_soundness(cases: usize, seed: u64) -> Result<(), String> {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..cases {
        let n = r.gen_range(2..=7);
        let a = random_class(&mut r, n);
        let again = normal_form(a.terms().map(|(e, c)| (e, c.clone())), n);
        if again != a {
            return Err(format!("normal form of {a} is not idempotent: {again}"));
        }
        if a.terms()
            .any(|((x, y), _)| x > n || y >= n || x + y >= 2 * n)
        {
            return Err(format!("{a} has a monomial outside the normal-form range"));
        }
        let (x, y) = (r.gen_range(0..6), r.gen_range(0..6));
        let c = BigInt::from(r.gen_range(1i64..=9));
        let rel = (0..=n).map(|i| ((i + x, n - i + y), c.clone()));
        if !normal_form(rel, n).is_zero() {
            return Err(format!(
                "relation times h0^{x} h1^{y} does not vanish in P^{n}"
            ));
        }
        if !normal_form([((n + 1 + x, y), c)], n).is_zero() {
            return Err(format!("h0^(n+1) multiple survives in P^{n}"));
        }
    }
    Ok(())
}

pub fn presentation_round_trip(cases: usize, seed: u64) -> Result<(), String> {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..cases {
        let n = r.gen_range(2..=7);
        let a = random_class(&mut r, n);
        let b = random_class(&mut r, n);
        let (ja, jb) = (to_j_basis(&a), to_j_basis(&b));
        if from_j_basis(&ja) != a || from_j_basis(&ja.reduce()) != a {
            return Err(format!("{a} does not survive h -> j -> h"));
        }
        let jp = ja.mul_reduced(&jb).map_err(|e| e.to_string())?;
        if from_j_basis(&jp) != &a * &b {
            return Err(format!(
                "products of {a} and {b} disagree across presentations"
            ));
        }
    }
    Ok(())
}

pub fn symmetric_cancellation(cases: usize, seed: u64) -> Result<(), String> {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..cases {
        let n = r.gen_range(2..=7);
        let mut factors = Vec::new();
        for _ in 0..n - 1 {
            let (p, q) = (r.gen_range(-6i64..=6), r.gen_range(-6i64..=6));
            factors.push((p, q));
            factors.push((q, p));
        }
        let c = linear_product(&factors, n);
        if !c.coefficient(n, n - 2).is_zero() || c.num_terms() > 1 {
            return Err(format!("symmetric product {factors:?} in P^{n} gives {c}"));
        }
        let e = symmetric_expand(&factors).map_err(|e| e.to_string())?;
        if c.coefficient(n - 1, n - 1) != e.to_schubert(n).integral() {
            return Err(format!(
                "symmetric product {factors:?} disagrees with the Grassmannian"
            ));
        }
    }
    Ok(())
}
