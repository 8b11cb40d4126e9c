//! The `verify` suite: every cross-module invariant and reference value as
//! one pass/fail table.

use std::result::Result;

use arcline::ff::gaussian_binomial;
use arcline::locus::factorial;
use arcline::*;
use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::props;

/// Randomized cases per property inside `verify`.
pub const PROPERTY_CASES: usize = 200;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

type Job = Box<dyn Fn() -> Result<String, String> + Send + Sync>;

fn job(
    name: impl Into<String>,
    f: impl Fn() -> Result<String, String> + Send + Sync + 'static,
) -> (String, Job) {
    (name.into(), Box::new(f))
}

fn expect<T: PartialEq + std::fmt::Display>(got: T, want: T) -> Result<String, String> {
    if got == want {
        Ok(got.to_string())
    } else {
        Err(format!("got {got}, expected {want}"))
    }
}

fn ci(n: u32, d: &[u32]) -> Result<CIType, String> {
    CIType::new(n, d.to_vec()).map_err(|e| e.to_string())
}

fn lines(n: u32, d: &[u32]) -> Result<BigInt, String> {
    count_lines(&ci(n, d)?)
        .map(|c| c.value)
        .map_err(|e| e.to_string())
}

fn point_lines(n: u32, d: &[u32]) -> Result<BigInt, String> {
    lines_through_point(&ci(n, d)?)
        .map(|c| c.value)
        .map_err(|e| e.to_string())
}

fn jobs(max_ambient: u32) -> Vec<(String, Job)> {
    let mut out = Vec::new();
    for n in 3..=max_ambient {
        out.push(job(format!("chow = schubert, P^{n}"), move || {
            let types = line_count_types(n);
            for t in &types {
                let a = count_lines(t).map_err(|e| format!("{t}: {e}"))?.value;
                let b = oracle_count_lines(t).map_err(|e| format!("{t}: {e}"))?;
                if a != b {
                    return Err(format!("{t}: chow {a}, schubert {b}"));
                }
            }
            Ok(format!("{} types", types.len()))
        }));
        out.push(job(format!("point-lines = prod d!, P^{n}"), move || {
            let types = point_count_types(n);
            for t in &types {
                let got = lines_through_point(t)
                    .map_err(|e| format!("{t}: {e}"))?
                    .value;
                let want: BigInt = t.degrees().iter().map(|&d| factorial(d)).product();
                if got != want {
                    return Err(format!("{t}: got {got}, expected {want}"));
                }
            }
            Ok(format!("{} types", types.len()))
        }));
    }
    for (name, check) in props::ALL {
        out.push(job(name, move || {
            check(PROPERTY_CASES, 0x5eed).map(|_| format!("{PROPERTY_CASES} cases"))
        }));
    }
    out.push(job("Fermat cubic surface over F_7", || {
        let f = parse_poly("x0^3 + x1^3 + x2^3 + x3^3", 3).map_err(|e| e.to_string())?;
        let cfg = FFConfig::new(7, 3, vec![f]).map_err(|e| e.to_string())?;
        expect(count_lines_ff(&cfg), 27)
    }));
    out.push(job("empty generators = Gaussian binomial", || {
        for p in [2, 3, 5] {
            for n in 1..=3 {
                let cfg = FFConfig::new(p, n, Vec::new()).map_err(|e| e.to_string())?;
                let want = gaussian_binomial(n + 1, 2, p);
                if BigInt::from(count_lines_ff(&cfg)) != want {
                    return Err(format!("p = {p}, n = {n}"));
                }
            }
        }
        Ok("p <= 5, n <= 3".into())
    }));
    out.push(job("27 lines on a cubic surface", || {
        expect(lines(3, &[3])?, 27.into())
    }));
    out.push(job("2875 lines on a quintic threefold", || {
        expect(lines(4, &[5])?, 2875.into())
    }));
    out.push(job("16 lines on a (2,2) surface", || {
        expect(lines(4, &[2, 2])?, 16.into())
    }));
    out.push(job("quintic contact class and 650 sweep", || {
        let c = contact_class(4, 5, 5).map_err(|e| e.to_string())?;
        let want = ChowClass::monomial(4, 2, 3, 650.into())
            .try_add(&ChowClass::monomial(4, 3, 2, 1225.into()))
            .and_then(|s| s.try_add(&ChowClass::monomial(4, 4, 1, 650.into())))
            .map_err(|e| e.to_string())?;
        if c != want {
            return Err(format!("class {c}"));
        }
        expect(swept_degree(&c, 2).map_err(|e| e.to_string())?, 650.into())
    }));
    out.push(job("quartic surface Fano degree 320", || {
        expect(
            fano_degree(&ci(4, &[4])?).map_err(|e| e.to_string())?,
            320.into(),
        )
    }));
    out.push(job("lines through a point: 2, 6, 144", || {
        expect(point_lines(3, &[2])?, 2.into())?;
        expect(point_lines(4, &[3])?, 6.into())?;
        expect(point_lines(8, &[3, 4])?, 144.into())
    }));
    out.push(job("sixfold bound table", || {
        let q = BoundQuery::new(6, None, None).map_err(|e| e.to_string())?;
        let got: Vec<String> = enumerate_types(&q)
            .iter()
            .map(|t| t.count.to_string())
            .collect();
        expect(got.join(","), "720,240,144,96,72,48,32".to_string())
    }));
    out.push(job("bounds m!, 2(m-1)!, 3!(m-2)! for m <= 20", || {
        let b = |m, r, k| {
            BoundQuery::new(m, r, k)
                .map(|q| bound(&q))
                .map_err(|e| e.to_string())
        };
        for m in 2..=20 {
            if b(m, None, None)? != Some(factorial(m)) {
                return Err(format!("m = {m}"));
            }
            if m >= 3 && b(m, Some(2), None)? != Some(2 * factorial(m - 1)) {
                return Err(format!("m = {m}, codim 2"));
            }
            if m >= 5 && b(m, Some(2), Some(3))? != Some(6 * factorial(m - 2)) {
                return Err(format!("m = {m}, codim 2, degree >= 3"));
            }
        }
        Ok("19 dimensions".into())
    }));
    out
}

/// Runs the suite, optionally on a pool of `threads` workers. Results keep
/// a fixed order regardless of scheduling.
pub fn run(max_ambient: u32, threads: Option<usize>) -> Result<Vec<CheckResult>, String> {
    let work = jobs(max_ambient);
    let exec = || {
        work.par_iter()
            .map(|(name, f)| {
                let (passed, detail) = match f() {
                    Ok(d) => (true, d),
                    Err(d) => (false, d),
                };
                CheckResult {
                    name: name.clone(),
                    passed,
                    detail,
                }
            })
            .collect()
    };
    match threads {
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build()
            .map(|pool| pool.install(exec))
            .map_err(|e| e.to_string()),
        None => Ok(exec()),
    }
}
