//! Ring description language.
//!
//! ```text
//! ring  := atom { "x" atom }
//! atom  := "Z(" nat ")" | "GF(" nat "," nat ")" | "M(" nat "," ring ")"
//!        | "T(" nat "," ring ")" | "TE(" ring ")" | "PQ(" ring "," poly ")"
//!        | "FM(" nat "," nat "," ring ")" | "GR(" ring "," group ")"
//!        | "MODJ(" ring ")" | "PAT(" patname "," ring ")" | "(" ring ")"
//! group := "C(" nat ")" { "x" "C(" nat ")" }
//! poly  := "[" nat { "," nat } "]"        (ascending degree, monic)
//! ```
//!
//! Element literals (`FM`'s `s`, polynomial coefficients) are canonical
//! element indices of the base ring.

mod parse;

use std::fmt;

pub use parse::{parse, parse_group, ParseError};

use crate::constructions::{
    cyclic_group, direct_product, formal_matrix, gf, group_product, group_ring, matrix_ring,
    pattern_subring, poly_quot, trivial_extension, upper_triangular, zmod, FiniteGroup, Limits,
    Pattern,
};
use crate::error::BuildError;
use crate::ring::{Elem, Ring};
use crate::structure::{mod_j, Analysis};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RingExpr {
    Zmod(u64),
    Gf(u64, u32),
    Matrix(usize, Box<RingExpr>),
    Triangular(usize, Box<RingExpr>),
    TrivialExt(Box<RingExpr>),
    PolyQuot(Box<RingExpr>, Vec<u64>),
    Formal(usize, u64, Box<RingExpr>),
    GroupRing(Box<RingExpr>, GroupExpr),
    ModJ(Box<RingExpr>),
    Pattern(PatName, Box<RingExpr>),
    Product(Box<RingExpr>, Box<RingExpr>),
}

/// Direct product of cyclic groups, by order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupExpr(pub Vec<usize>);

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PatName {
    pub name: String,
    pub params: Vec<usize>,
}

fn join<T: fmt::Display>(items: &[T], sep: &str) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(sep)
}

impl fmt::Display for PatName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.name, join(&self.params, ","))
    }
}

impl fmt::Display for GroupExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|n| format!("C({n})")).collect();
        f.write_str(&parts.join(" x "))
    }
}

/// Canonical text; `parse(&e.to_string()) == Ok(e)`.
impl fmt::Display for RingExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingExpr::Zmod(n) => write!(f, "Z({n})"),
            RingExpr::Gf(p, k) => write!(f, "GF({p},{k})"),
            RingExpr::Matrix(k, r) => write!(f, "M({k},{r})"),
            RingExpr::Triangular(k, r) => write!(f, "T({k},{r})"),
            RingExpr::TrivialExt(r) => write!(f, "TE({r})"),
            RingExpr::PolyQuot(r, c) => write!(f, "PQ({r},[{}])", join(c, ",")),
            RingExpr::Formal(n, s, r) => write!(f, "FM({n},{s},{r})"),
            RingExpr::GroupRing(r, g) => write!(f, "GR({r},{g})"),
            RingExpr::ModJ(r) => write!(f, "MODJ({r})"),
            RingExpr::Pattern(p, r) => write!(f, "PAT({p},{r})"),
            RingExpr::Product(a, b) => write!(f, "({a} x {b})"),
        }
    }
}

pub fn canonical(e: &RingExpr) -> String {
    e.to_string()
}

impl RingExpr {
    /// Direct children, left to right.
    pub fn children(&self) -> Vec<&RingExpr> {
        match self {
            RingExpr::Zmod(_) | RingExpr::Gf(..) => vec![],
            RingExpr::Matrix(_, r)
            | RingExpr::Triangular(_, r)
            | RingExpr::TrivialExt(r)
            | RingExpr::PolyQuot(r, _)
            | RingExpr::Formal(_, _, r)
            | RingExpr::GroupRing(r, _)
            | RingExpr::ModJ(r)
            | RingExpr::Pattern(_, r) => vec![r],
            RingExpr::Product(a, b) => vec![a, b],
        }
    }
}

pub fn build_group(g: &GroupExpr, limits: &Limits) -> Result<FiniteGroup, BuildError> {
    let order: u128 = g.0.iter().map(|&n| n as u128).product();
    limits.check(order)?;
    let mut factors = g.0.iter().map(|&n| cyclic_group(n));
    let mut acc = factors.next().expect("group has a factor")?;
    for h in factors {
        acc = group_product(&acc, &h?)?;
    }
    Ok(acc)
}

fn elem_literal(base: &Ring, v: u64, what: &str) -> Result<Elem, BuildError> {
    if v >= base.card() as u64 {
        return Err(BuildError::Invalid(format!(
            "{what} {v} is not an element index of {} (card {})",
            base.label(),
            base.card()
        )));
    }
    Ok(Elem(v as u32))
}

/// Builds the ring, memoizing every intermediate node that fits under the
/// table threshold.
pub fn build(e: &RingExpr, limits: &Limits) -> Result<Ring, BuildError> {
    let ring = match e {
        RingExpr::Zmod(n) => {
            limits.check(*n as u128)?;
            zmod(*n)?
        }
        RingExpr::Gf(p, k) => gf(*p, *k, limits)?,
        RingExpr::Matrix(k, r) => matrix_ring(*k, &build(r, limits)?, limits)?,
        RingExpr::Triangular(k, r) => upper_triangular(*k, &build(r, limits)?, limits)?,
        RingExpr::TrivialExt(r) => trivial_extension(&build(r, limits)?, limits)?,
        RingExpr::PolyQuot(r, coeffs) => {
            let base = build(r, limits)?;
            let f = coeffs
                .iter()
                .map(|&c| elem_literal(&base, c, "coefficient"))
                .collect::<Result<Vec<_>, _>>()?;
            poly_quot(&base, &f, limits)?
        }
        RingExpr::Formal(n, s, r) => {
            let base = build(r, limits)?;
            let s = elem_literal(&base, *s, "twist")?;
            formal_matrix(*n, s, &base, limits)?
        }
        RingExpr::GroupRing(r, g) => group_ring(&build(r, limits)?, &build_group(g, limits)?, limits)?,
        RingExpr::ModJ(r) => mod_j(&Analysis::new(build(r, limits)?))?.ring,
        RingExpr::Pattern(p, r) => {
            pattern_subring(&Pattern::named(&p.name, &p.params)?, &build(r, limits)?, limits)?
        }
        RingExpr::Product(a, b) => direct_product(&build(a, limits)?, &build(b, limits)?, limits)?,
    };
    Ok(limits.finish(ring))
}

/// Parse errors and build errors, for callers that take text.
#[derive(Debug, thiserror::Error)]
pub enum DslError {
    #[error("parse error: {0}")]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Build(#[from] BuildError),
}

pub fn build_text(text: &str, limits: &Limits) -> Result<(RingExpr, Ring), DslError> {
    let e = parse(text)?;
    let r = build(&e, limits)?;
    Ok((e, r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn z(n: u64) -> Box<RingExpr> {
        Box::new(RingExpr::Zmod(n))
    }

    #[test]
    fn parses_examples() {
        assert_eq!(parse("M(2,Z(3))").unwrap(), RingExpr::Matrix(2, z(3)));
        assert_eq!(
            parse("Z(2) x Z(3) x Z(3)").unwrap(),
            RingExpr::Product(Box::new(RingExpr::Product(z(2), z(3))), z(3))
        );
        assert_eq!(parse("  Z( 6 ) ").unwrap(), RingExpr::Zmod(6));
        assert_eq!(
            parse("GR(Z(2), C(2) x C(2))").unwrap(),
            RingExpr::GroupRing(z(2), GroupExpr(vec![2, 2]))
        );
        assert_eq!(
            parse("TE(T(2,Z(2)))").unwrap(),
            RingExpr::TrivialExt(Box::new(RingExpr::Triangular(2, z(2))))
        );
        assert_eq!(parse("(Z(4))").unwrap(), RingExpr::Zmod(4));
        assert_eq!(
            parse("MODJ(M(1,Z(4)))").unwrap(),
            RingExpr::ModJ(Box::new(RingExpr::Matrix(1, z(4))))
        );
    }

    #[test]
    fn canonical_forms() {
        let c = |s: &str| canonical(&parse(s).unwrap());
        assert_eq!(c("Z( 6 )"), "Z(6)");
        assert_eq!(c("Z(2)x Z(3)"), "(Z(2) x Z(3))");
        assert_eq!(c("Z(2) x Z(3) x Z(3)"), "((Z(2) x Z(3)) x Z(3))");
        assert_eq!(c("GR(Z(2),C(2)x C(2))"), "GR(Z(2),C(2) x C(2))");
        assert_eq!(c("PQ(Z(2), [0, 0, 1])"), "PQ(Z(2),[0,0,1])");
        assert_eq!(c("PAT( S(2) , Z(3))"), "PAT(S(2),Z(3))");
        assert_eq!(c("FM(2,2,Z(4))"), "FM(2,2,Z(4))");
    }

    #[test]
    fn errors_are_positioned() {
        let e = parse("M(0,Z(2))").unwrap_err();
        assert_eq!(e.message, "matrix size must be ≥ 1");
        assert_eq!(e.offset, 2);
        let e = parse("Z(2) y").unwrap_err();
        assert_eq!(e.offset, 5);
        assert!(e.expected.contains(&"\"x\"".to_string()));
        let e = parse("Q(3)").unwrap_err();
        assert_eq!(e.offset, 0);
        assert!(e.expected.len() >= 10);
        assert!(parse("Z(1)").is_err());
        assert!(parse("PQ(Z(2),[1])").is_err());
        assert!(parse("PAT(V(2),Z(2))").is_err());
        assert!(parse("PAT(S(1),Z(2))").is_err());
        assert!(parse("GR(Z(2),C(0))").is_err());
        assert!(parse("Z(99999999999999999999999)").is_err());
        assert!(parse("").is_err());
        assert!(parse("Z(2) x").is_err());
    }

    #[test]
    fn builds() {
        let l = Limits::default();
        assert_eq!(build(&parse("Z(6)").unwrap(), &l).unwrap().card(), 6);
        assert_eq!(build(&parse("FM(2,2,Z(4))").unwrap(), &l).unwrap().card(), 256);
        let err = build(&parse("M(3,Z(5))").unwrap(), &l).unwrap_err();
        assert_eq!(err.to_string(), "card 1953125 exceeds guard 200000");
        assert!(matches!(
            build(&parse("FM(2,9,Z(4))").unwrap(), &l),
            Err(BuildError::Invalid(_))
        ));
        assert!(build(&parse("PQ(Z(3),[0,0,2])").unwrap(), &l).is_err());
        assert_eq!(build(&parse("MODJ(Z(12))").unwrap(), &l).unwrap().card(), 6);
        assert_eq!(build(&parse("PAT(U(3),Z(2))").unwrap(), &l).unwrap().card(), 16);
        assert_eq!(build(&parse("GR(Z(2),C(2) x C(2))").unwrap(), &l).unwrap().card(), 16);
    }

    #[test]
    fn labels_match_canonical_text() {
        let l = Limits::default();
        for s in [
            "Z(6)",
            "(Z(2) x Z(3))",
            "M(2,Z(3))",
            "T(2,Z(6))",
            "TE(TE(Z(2)))",
            "PQ(Z(2),[0,0,1])",
            "FM(2,2,Z(4))",
            "GR(Z(2),C(2) x C(2))",
            "PAT(S(2,2),Z(2))",
            "MODJ(Z(12))",
            "GF(2,2)",
        ] {
            assert_eq!(build(&parse(s).unwrap(), &l).unwrap().label(), s);
        }
    }

    #[test]
    fn build_is_deterministic() {
        let l = Limits::default();
        let e = parse("T(2,Z(4))").unwrap();
        let (a, b) = (build(&e, &l).unwrap(), build(&e, &l).unwrap());
        for x in a.elements() {
            for y in a.elements() {
                assert_eq!(a.mul(x, y), b.mul(x, y));
                assert_eq!(a.add(x, y), b.add(x, y));
            }
        }
    }

    fn arb_group() -> impl Strategy<Value = GroupExpr> {
        prop::collection::vec(1usize..9, 1..4).prop_map(GroupExpr)
    }

    fn arb_pat() -> impl Strategy<Value = PatName> {
        prop_oneof![
            (2usize..6).prop_map(|n| PatName { name: "S".into(), params: vec![n] }),
            (2usize..5, 2usize..5).prop_map(|(n, m)| PatName { name: "S".into(), params: vec![n, m] }),
            (2usize..5, 2usize..5).prop_map(|(n, m)| PatName { name: "Tb".into(), params: vec![n, m] }),
            (2usize..6).prop_map(|n| PatName { name: "U".into(), params: vec![n] }),
        ]
    }

    fn arb_expr() -> impl Strategy<Value = RingExpr> {
        let leaf = prop_oneof![
            (2u64..100).prop_map(RingExpr::Zmod),
            (2u64..20, 1u32..5).prop_map(|(p, k)| RingExpr::Gf(p, k)),
        ];
        leaf.prop_recursive(4, 24, 2, |inner| {
            prop_oneof![
                (1usize..4, inner.clone()).prop_map(|(k, r)| RingExpr::Matrix(k, Box::new(r))),
                (1usize..4, inner.clone()).prop_map(|(k, r)| RingExpr::Triangular(k, Box::new(r))),
                inner.clone().prop_map(|r| RingExpr::TrivialExt(Box::new(r))),
                (inner.clone(), prop::collection::vec(0u64..5, 2..5))
                    .prop_map(|(r, c)| RingExpr::PolyQuot(Box::new(r), c)),
                (2usize..4, 0u64..5, inner.clone())
                    .prop_map(|(n, s, r)| RingExpr::Formal(n, s, Box::new(r))),
                (inner.clone(), arb_group()).prop_map(|(r, g)| RingExpr::GroupRing(Box::new(r), g)),
                inner.clone().prop_map(|r| RingExpr::ModJ(Box::new(r))),
                (arb_pat(), inner.clone()).prop_map(|(p, r)| RingExpr::Pattern(p, Box::new(r))),
                (inner.clone(), inner).prop_map(|(a, b)| RingExpr::Product(Box::new(a), Box::new(b))),
            ]
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn canonical_round_trip(e in arb_expr()) {
            let text = canonical(&e);
            let back = parse(&text).unwrap();
            prop_assert_eq!(&back, &e);
            prop_assert_eq!(canonical(&back), text);
        }

        #[test]
        fn whitespace_insensitive(e in arb_expr()) {
            let text = canonical(&e);
            let spaced = text.replace('(', " ( ").replace(',', " , ").replace(')', " ) ");
            prop_assert_eq!(parse(&spaced).unwrap(), e);
        }
    }
}
