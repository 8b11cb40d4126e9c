//! Algebraic invariants over randomized inputs.

use arcline::*;
use num_bigint::BigInt;
use proptest::prelude::*;

fn config() -> ProptestConfig {
    ProptestConfig::with_cases(1000)
}

/// Arbitrary polynomial in `x_{j,i}` for `j <= 2`, `i <= 1`.
fn poly() -> impl Strategy<Value = SparsePoly> {
    prop::collection::vec((prop::collection::vec(0u32..3, 6), -30i64..=30), 0..6).prop_map(
        |terms| {
            SparsePoly::from_terms(terms.into_iter().map(|(e, c)| {
                let pairs = e
                    .into_iter()
                    .enumerate()
                    .map(|(k, x)| (Var::new(k as u32 / 2, k as u32 % 2), x));
                (Monomial::from_pairs(pairs), BigInt::from(c))
            }))
        },
    )
}

/// Homogeneous form of degree `d` in `x0..x3`.
fn form(d: u32) -> impl Strategy<Value = SparsePoly> {
    prop::collection::vec(
        (prop::collection::vec(0u32..4, d as usize), -9i64..=9),
        1..7,
    )
    .prop_map(|terms| {
        SparsePoly::from_terms(terms.into_iter().map(|(vars, c)| {
            (
                Monomial::from_pairs(vars.into_iter().map(|j| (Var::plain(j), 1))),
                BigInt::from(c),
            )
        }))
    })
    .prop_filter("nonzero", |f| !f.is_zero())
}

/// Arc of order `m` in P^3 with a nonzero base point.
fn arc(m: u32) -> impl Strategy<Value = Arc> {
    prop::collection::vec(prop::collection::vec(-5i64..=5, m as usize + 1), 4)
        .prop_filter("nonzero base point", |rows| rows.iter().any(|r| r[0] != 0))
        .prop_map(|rows| {
            Arc::new(
                rows.into_iter()
                    .map(|r| r.into_iter().map(BigInt::from).collect())
                    .collect(),
            )
            .unwrap()
        })
}

/// Chow class in A(P-hat^n) from raw (unreduced) monomials.
fn class(n: u32) -> impl Strategy<Value = ChowClass> {
    prop::collection::vec((0..=n + 1, 0..=2 * n, -20i64..=20), 0..6)
        .prop_map(move |t| normal_form(t.into_iter().map(|(a, b, c)| ((a, b), BigInt::from(c))), n))
}

fn class_pair() -> impl Strategy<Value = (ChowClass, ChowClass, ChowClass)> {
    (2u32..7).prop_flat_map(|n| (class(n), class(n), class(n)))
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn poly_ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &SparsePoly::one(), a.clone());
    }

    #[test]
    fn print_parse_round_trip(a in poly()) {
        let text = a.to_string();
        prop_assert_eq!(text.parse::<SparsePoly>().unwrap(), a);
    }

    #[test]
    fn plain_round_trip(f in form(3)) {
        prop_assert_eq!(parse_poly(&f.to_string(), 3).unwrap(), f);
    }

    #[test]
    fn arc_ideal_weights_and_degrees(f in form(3), m in 0u32..4) {
        let sys = arc_ideal(&f, m).unwrap();
        prop_assert_eq!(sys.len(), m as usize + 1);
        for (i, c) in sys.coefficients.iter().enumerate() {
            if !c.is_zero() {
                prop_assert_eq!(c.homogeneous_weight(), Some(i as u32));
                prop_assert_eq!(c.homogeneous_degree(), Some(3));
            }
        }
    }

    #[test]
    fn truncation_is_a_prefix(f in form(2), m in 0u32..3) {
        let lo = arc_ideal(&f, m).unwrap();
        let hi = arc_ideal(&f, m + 1).unwrap();
        prop_assert_eq!(&lo.coefficients[..], &hi.coefficients[..=m as usize]);
    }

    #[test]
    fn expansion_is_multiplicative(f in form(2), g in form(1)) {
        let ef = full_expansion(&f, 1).unwrap().coefficients;
        let eg = full_expansion(&g, 1).unwrap().coefficients;
        let efg = full_expansion(&(&f * &g), 1).unwrap().coefficients;
        prop_assert_eq!(efg.len(), 4);
        for (k, got) in efg.iter().enumerate() {
            let mut want = SparsePoly::zero();
            for i in 0..=k {
                if let (Some(a), Some(b)) = (ef.get(i), eg.get(k - i)) {
                    want = &want + &(a * b);
                }
            }
            prop_assert_eq!(got, &want);
        }
    }

    #[test]
    fn rescaling_multiplies_by_lambda_powers(f in form(3), a in arc(2), lambda in -4i64..=4) {
        let lambda = BigInt::from(lambda);
        let scaled = a.rescale(&lambda);
        let sys = arc_ideal(&f, 2).unwrap();
        for (i, c) in sys.coefficients.iter().enumerate() {
            prop_assert_eq!(scaled.eval(c), a.eval(c) * num_traits::pow(lambda.clone(), i));
        }
    }

    #[test]
    fn contact_order_invariant_under_rescaling(f in form(3), a in arc(1), lambda in 1i64..=5) {
        let scaled = a.rescale(&BigInt::from(lambda));
        prop_assert_eq!(
            line_contact_order(&f, &a).unwrap(),
            line_contact_order(&f, &scaled).unwrap()
        );
    }

    #[test]
    fn chow_ring_axioms((a, b, c) in class_pair()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn normal_form_is_idempotent((a, _, _) in class_pair()) {
        let again = normal_form(a.terms().map(|(e, c)| (e, c.clone())), a.ambient());
        prop_assert_eq!(&again, &a);
        let n = a.ambient();
        for ((x, y), _) in a.terms() {
            prop_assert!(x <= n && y < n && x + y < 2 * n);
        }
    }

    #[test]
    fn relations_reduce_to_zero(n in 2u32..7, a in 0u32..6, b in 0u32..6, c in -9i64..=9) {
        let c = BigInt::from(c);
        // (sum h0^i h1^(n-i)) * h0^a h1^b
        let rel = (0..=n).map(|i| ((i + a, n - i + b), c.clone()));
        prop_assert!(normal_form(rel, n).is_zero());
        prop_assert!(normal_form([((n + 1 + a, b), c.clone())], n).is_zero());
    }

    #[test]
    fn j_basis_round_trip((a, b, _) in class_pair()) {
        prop_assert_eq!(from_j_basis(&to_j_basis(&a)), a.clone());
        prop_assert_eq!(from_j_basis(&to_j_basis(&a).reduce()), a.clone());
        let jp = to_j_basis(&a).mul_reduced(&to_j_basis(&b)).unwrap();
        prop_assert_eq!(from_j_basis(&jp), &a * &b);
    }

    #[test]
    fn symmetric_classes_are_pure(
        n in 2u32..7,
        seeds in prop::collection::vec((-6i64..=6, -6i64..=6), 6),
    ) {
        // (p h0 + q h1)(q h0 + p h1) pairs give a symmetric class of degree 2n - 2
        let mut factors = Vec::new();
        for &(p, q) in seeds.iter().take(n as usize - 1) {
            factors.push((p, q));
            factors.push((q, p));
        }
        let c = linear_product(&factors, n);
        prop_assert_eq!(c.coefficient(n, n - 2), BigInt::from(0));
        prop_assert!(c.num_terms() <= 1);
        // and matches the Schubert route
        let e = symmetric_expand(&factors).unwrap();
        prop_assert_eq!(c.coefficient(n - 1, n - 1), e.to_schubert(n).integral());
    }

    #[test]
    fn locus_class_has_expected_degree(n in 3u32..9, d in 1u32..5) {
        let t = CIType::new(n, vec![d]).unwrap();
        let c = line_locus_class(&t);
        for ((a, b), _) in c.terms() {
            prop_assert_eq!(a + b, d + 1);
        }
    }
}
