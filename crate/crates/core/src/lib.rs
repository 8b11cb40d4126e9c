//! Exact intersection theory on the space of projectivized 1-arcs of P^n,
//! applied to counting lines on generic complete intersections.
//!
//! - [`poly`]: sparse polynomials over arc coordinates `x_{j,i}`
//! - [`prolong`]: arc-ideal generators, full ε-expansions, lines from 1-arcs
//! - [`chow`]: normal forms in `Z[h0,h1]/(h0^(n+1), h1^n + ... + h0^n)`
//! - [`locus`]: line-locus classes, line counts, contact loci, lines
//!   through a general point
//! - [`bounds`]: bounds on lines through a general point by type enumeration
//! - [`schubert`]: independent check on G(2, n+1) via the Pieri rule
//! - [`ff`]: brute-force line search over prime fields
//!
//! ```
//! use arcline::{count_lines, CIType};
//!
//! let quintic = CIType::new(4, vec![5]).unwrap();
//! assert_eq!(count_lines(&quintic).unwrap().value, 2875.into());
//! ```

pub mod bounds;
pub mod chow;
pub mod error;
pub mod ff;
pub mod locus;
pub mod poly;
pub mod prolong;
pub mod schubert;

pub use bounds::{bound, enumerate_types, BoundQuery, TypeCount};
pub use chow::{
    from_j_basis, linear_product, normal_form, to_j_basis, ChowClass, ClassTerm, JPoly,
};
pub use error::{ArcError, Result};
pub use ff::{count_lines_ff, count_lines_through_point_ff, lines_ff, FFConfig, FFLine};
pub use locus::{
    contact_class, count_lines, line_locus_class, lines_through_point, swept_degree, CIType,
    LineCount,
};
pub use poly::{parse_poly, Monomial, SparsePoly, Var};
pub use prolong::{
    arc_ideal, full_expansion, line_contact_order, line_through, Arc, ContactOrder, ParamLine,
    ProlongedSystem,
};
pub use schubert::{fano_degree, oracle_count_lines, symmetric_expand, SchubertClass};

/// Every type with all `d_j >= 2` and `sum d_j = 2(n-1) - r`, i.e. those
/// with finitely many lines. Degrees are non-increasing.
pub fn line_count_types(n: u32) -> Vec<CIType> {
    if n < 2 {
        return Vec::new();
    }
    let total = 2 * (n - 1);
    (1..n)
        .flat_map(|r| bounds::partitions(total, r, 3))
        .map(|parts| {
            let degrees = parts.into_iter().map(|d| d - 1).collect();
            CIType::new(n, degrees).expect("admissible by construction")
        })
        .collect()
}

/// Every type with all `d_j >= 2` and `sum d_j = n - 1`, i.e. those with
/// finitely many lines through a general point.
pub fn point_count_types(n: u32) -> Vec<CIType> {
    if n < 3 {
        return Vec::new();
    }
    (1..n)
        .flat_map(|r| bounds::partitions(n - 1, r, 2))
        .map(|degrees| CIType::new(n, degrees).expect("admissible by construction"))
        .collect()
}

/// Serializes big integers as decimal strings so JSON consumers never lose
/// precision.
pub mod bigint_string {
    use num_bigint::BigInt;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(D::Error::custom)
    }
}
