//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Runs the CLI through `dispatch`, so timings exclude process
//! start-up.

use std::time::{Duration, Instant};

use arcline_cli::{dispatch, props};
use num_bigint::BigInt;
use serde_json::Value;

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict);

fn cli(args: &str) -> Result<(Value, Duration), String> {
    let argv = std::iter::once("arcline")
        .chain(args.split_whitespace())
        .chain(std::iter::once("--json"));
    let start = Instant::now();
    let out = dispatch(argv);
    let took = start.elapsed();
    if out.code != 0 {
        return Err(format!(
            "`{args}` exited {}: {}{}",
            out.code, out.stdout, out.stderr
        ));
    }
    let v: Value = serde_json::from_str(&out.stdout).map_err(|e| e.to_string())?;
    Ok((v["result"].clone(), took))
}

fn within(args: &str, limit: Duration) -> Result<Value, String> {
    let (v, took) = cli(args)?;
    if took > limit {
        return Err(format!("`{args}` took {took:?}, limit {limit:?}"));
    }
    Ok(v)
}

fn big(v: &Value) -> Result<BigInt, String> {
    v.as_str()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| format!("not a big integer: {v}"))
}

fn check_eq<T: PartialEq + std::fmt::Debug>(what: &str, got: T, want: T) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got:?}, expected {want:?}"))
    }
}

fn fact(d: u32) -> BigInt {
    let mut acc = BigInt::from(1);
    for k in 2..=d {
        acc *= k;
    }
    acc
}

/// Non-increasing tuples of `parts` integers `>= min` summing to `sum`.
fn tuples(sum: u32, parts: u32, min: u32, max: u32) -> Vec<Vec<u32>> {
    if parts == 0 {
        return if sum == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for d in (min..=max.min(sum)).rev() {
        for mut rest in tuples(sum - d, parts - 1, min, d) {
            rest.insert(0, d);
            out.push(rest);
        }
    }
    out
}

fn join(d: &[u32]) -> String {
    d.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

const FAST: Duration = Duration::from_millis(100);

fn c1() -> Verdict {
    let v = within("lines --ambient 3 --type 3", FAST)?;
    check_eq("cubic surface", big(&v["count"])?, BigInt::from(27))?;
    Ok("27".into())
}

fn c2() -> Verdict {
    let v = within("lines --ambient 4 --type 5", FAST)?;
    check_eq("quintic threefold", big(&v["count"])?, BigInt::from(2875))?;
    let v = within("lines --ambient 4 --type 2,2", FAST)?;
    check_eq("(2,2) in P^4", big(&v["count"])?, BigInt::from(16))?;
    Ok("2875, 16".into())
}

fn c3() -> Verdict {
    let v = cli("contact --ambient 4 --degree 5 --order 5")?.0;
    let terms: Vec<(u64, u64, BigInt)> = v["class"]
        .as_array()
        .ok_or("missing class")?
        .iter()
        .map(|t| {
            Ok((
                t["a"].as_u64().unwrap_or(99),
                t["b"].as_u64().unwrap_or(99),
                big(&t["coeff"])?,
            ))
        })
        .collect::<Result<_, String>>()?;
    let want = vec![
        (2, 3, BigInt::from(650)),
        (3, 2, BigInt::from(1225)),
        (4, 1, BigInt::from(650)),
    ];
    check_eq("contact class", terms, want)?;
    let v = cli("contact --ambient 4 --degree 5 --order 5 --sweep 2")?.0;
    check_eq(
        "swept degree",
        big(&v["sweep"]["degree"])?,
        BigInt::from(650),
    )?;
    Ok("650 h0^2h1^3 + 1225 h0^3h1^2 + 650 h0^4h1; sweep 650".into())
}

fn c4() -> Verdict {
    let point = |n: u32, d: &[u32]| -> Result<BigInt, String> {
        big(&within(
            &format!("point-lines --ambient {n} --type {}", join(d)),
            FAST,
        )?["count"])
    };
    check_eq("quadric surface", point(3, &[2])?, BigInt::from(2))?;
    check_eq("cubic threefold", point(4, &[3])?, BigInt::from(6))?;
    check_eq("(3,4) in P^8", point(8, &[3, 4])?, BigInt::from(144))?;
    let sixfold: [(&[u32], u64); 7] = [
        (&[6], 720),
        (&[5, 2], 240),
        (&[4, 3], 144),
        (&[4, 2, 2], 96),
        (&[3, 3, 2], 72),
        (&[3, 2, 2, 2], 48),
        (&[2, 2, 2, 2, 2], 32),
    ];
    for (d, want) in sixfold {
        check_eq(
            &format!("sixfold {d:?}"),
            point(6 + d.len() as u32, d)?,
            BigInt::from(want),
        )?;
    }
    let table = within("bound --dim 6 --table", FAST)?;
    let rows: Vec<(Vec<u32>, BigInt)> = table["table"]
        .as_array()
        .ok_or("missing table")?
        .iter()
        .map(|r| {
            let d = r["degrees"]
                .as_array()
                .unwrap()
                .iter()
                .map(|x| x.as_u64().unwrap() as u32)
                .collect();
            Ok((d, big(&r["count"])?))
        })
        .collect::<Result<_, String>>()?;
    let want: Vec<(Vec<u32>, BigInt)> = sixfold
        .iter()
        .map(|(d, c)| (d.to_vec(), BigInt::from(*c)))
        .collect();
    check_eq("sixfold table", rows, want)?;
    Ok("2, 6, 144; 720, 240, 144, 96, 72, 48, 32".into())
}

fn c5() -> Verdict {
    let v = within(
        "oracle --ambient 4 --type 4 --fano",
        Duration::from_millis(500),
    )?;
    check_eq("quartic Fano degree", big(&v["value"])?, BigInt::from(320))?;
    Ok("320".into())
}

fn c6() -> Verdict {
    let start = Instant::now();
    let mut types = 0;
    for n in 3..=8u32 {
        for r in 1..n {
            let total = 2 * (n - 1) - r;
            for d in tuples(total, r, 2, total) {
                let v = cli(&format!("lines --ambient {n} --type {} --oracle", join(&d)))?.0;
                if v["agrees"] != Value::Bool(true) || v["count"] != v["oracle_count"] {
                    return Err(format!(
                        "{d:?} in P^{n}: chow {} vs schubert {}",
                        v["count"], v["oracle_count"]
                    ));
                }
                types += 1;
            }
        }
    }
    let took = start.elapsed();
    if took > Duration::from_secs(30) {
        return Err(format!("sweep took {took:?}"));
    }
    Ok(format!("{types} types agree"))
}

fn c7() -> Verdict {
    let mut types = 0;
    for n in 3..=12u32 {
        for r in 1..n {
            for d in tuples(n - 1, r, 2, n - 1) {
                let v = cli(&format!("point-lines --ambient {n} --type {}", join(&d)))?.0;
                let want: BigInt = d.iter().map(|&x| fact(x)).product();
                check_eq(&format!("{d:?} in P^{n}"), big(&v["count"])?, want)?;
                types += 1;
            }
        }
    }
    Ok(format!("{types} types"))
}

fn c8() -> Verdict {
    let b = |args: String| -> Result<BigInt, String> { big(&cli(&args)?.0["bound"]) };
    for m in 2..=20u32 {
        check_eq(&format!("m = {m}"), b(format!("bound --dim {m}"))?, fact(m))?;
        if m >= 3 {
            check_eq(
                &format!("m = {m}, codim 2"),
                b(format!("bound --dim {m} --codim 2"))?,
                2 * fact(m - 1),
            )?;
        }
        if m >= 5 {
            check_eq(
                &format!("m = {m}, codim 2, degree >= 3"),
                b(format!("bound --dim {m} --codim 2 --min-degree 3"))?,
                6 * fact(m - 2),
            )?;
        }
    }
    Ok(format!("m <= 20, 20! = {}", fact(20)))
}

fn c9() -> Verdict {
    const CASES: usize = 1000;
    for (name, check) in props::ALL {
        check(CASES, 0xacce97).map_err(|e| format!("{name}: {e}"))?;
    }
    Ok(format!("{} properties x {CASES} cases", props::ALL.len()))
}

/// `[n+1 choose 2]_p` lines in P^n(F_p), from the closed form.
fn gaussian_lines(n: u32, p: u128) -> u128 {
    let q = |k: u32| p.pow(k) - 1;
    q(n + 1) * q(n) / (q(1) * q(2))
}

fn c10() -> Verdict {
    let start = Instant::now();
    let v = cli("ff-lines --prime 7 --ambient 3 --poly x0^3+x1^3+x2^3+x3^3")?.0;
    check_eq("Fermat cubic over F_7", v["count"].as_u64(), Some(27))?;
    for p in [2u64, 3, 5, 7] {
        for n in 1..=4u32 {
            let v = cli(&format!("ff-lines --prime {p} --ambient {n}"))?.0;
            check_eq(
                &format!("P^{n}(F_{p})"),
                v["count"].as_u64().map(u128::from),
                Some(gaussian_lines(n, p as u128)),
            )?;
        }
    }
    let took = start.elapsed();
    if took > Duration::from_secs(10) {
        return Err(format!("took {took:?}"));
    }
    Ok("27; Gaussian binomials for p <= 7, n <= 4".into())
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("27 lines on the cubic surface", c1),
        ("2875 on the quintic, 16 on (2,2)", c2),
        ("quintic contact class and 650 sweep", c3),
        ("lines through a general point", c4),
        ("quartic surface Fano degree 320", c5),
        ("Chow/Schubert agreement, n <= 8", c6),
        ("closed form prod d! for n <= 12", c7),
        ("bounds m!, 2(m-1)!, 3!(m-2)!", c8),
        ("property suite", c9),
        ("finite-field cross-check", c10),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let verdict = f();
        let ms = start.elapsed().as_secs_f64() * 1e3;
        match verdict {
            Ok(detail) => println!("PASS  {:>2}. {name:<40} {ms:>9.1} ms  {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL  {:>2}. {name:<40} {ms:>9.1} ms  {why}", i + 1);
            }
        }
    }
    println!(
        "{} criteria: {} passed, {failed} failed",
        criteria.len(),
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
