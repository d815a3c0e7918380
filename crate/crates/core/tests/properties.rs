use proptest::prelude::*;
use ringlab::constructions::Limits;
use ringlab::decompositions::{check_witness, classify, ElemPredicate, Flag};
use ringlab::dsl::{self, RingExpr};
use ringlab::structure::{semisimple_fingerprint, Analysis};
use ringlab::{Elem, Ring};

/// Small rings, at most a few hundred elements.
fn small_ring() -> impl Strategy<Value = String> {
    let leaf = prop_oneof![
        (2u64..13).prop_map(|n| format!("Z({n})")),
        Just("GF(2,2)".to_string()),
        Just("GF(3,2)".to_string()),
        (2u64..5).prop_map(|n| format!("M(2,Z({n}))")),
        (2u64..6).prop_map(|n| format!("T(2,Z({n}))")),
        (2u64..6).prop_map(|n| format!("TE(Z({n}))")),
        (2u64..5).prop_map(|n| format!("PQ(Z({n}),[0,0,1])")),
        (2u64..4, 1u64..3).prop_map(|(n, k)| format!("GR(Z({n}),C({}))", k + 1)),
        (0u64..4).prop_map(|s| format!("FM(2,{s},Z(4))")),
    ];
    prop_oneof![
        3 => leaf.clone(),
        1 => (leaf.clone(), 2u64..5).prop_map(|(r, n)| format!("{r} x Z({n})")),
        1 => leaf.prop_map(|r| format!("MODJ({r})")),
    ]
}

fn build(text: &str) -> Ring {
    dsl::build_text(text, &Limits::default()).unwrap().1
}

fn elem(r: &Ring) -> impl Strategy<Value = Elem> {
    (0..r.card()).prop_map(Elem::from_idx)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sampled_axioms((text, idx) in small_ring().prop_flat_map(|t| {
        let n = build(&t).card();
        (Just(t), proptest::collection::vec((0..n, 0..n, 0..n), 32))
    })) {
        let r = build(&text);
        for (a, b, c) in idx {
            let (a, b, c) = (Elem::from_idx(a), Elem::from_idx(b), Elem::from_idx(c));
            prop_assert_eq!(r.mul(r.mul(a, b), c), r.mul(a, r.mul(b, c)));
            prop_assert_eq!(r.mul(a, r.add(b, c)), r.add(r.mul(a, b), r.mul(a, c)));
            prop_assert_eq!(r.mul(r.add(a, b), c), r.add(r.mul(a, c), r.mul(b, c)));
            prop_assert_eq!(r.add(a, b), r.add(b, a));
        }
    }

    #[test]
    fn reports_are_internally_consistent(text in small_ring()) {
        let an = Analysis::new(build(&text));
        let rep = classify(&an);
        prop_assert!(rep.violated_implications().is_empty());
        let r = an.ring();
        for (flag, v) in rep.iter() {
            if let Some(a) = v.counterexample() {
                // ring-level flags over non-units only fail at non-units
                if matches!(flag, Flag::Gwnc | Flag::Gnc | Flag::Gsnc) {
                    prop_assert!(!an.is_unit(a));
                }
            }
        }
        let fp = semisimple_fingerprint(&an).unwrap();
        prop_assert_eq!(fp.card() * an.jacobson().count() as u128, r.card() as u128);
        prop_assert_eq!(rep.get(Flag::Gwnc), ringlab::decompositions::gwnc(&an).holds());
    }

    #[test]
    fn witnesses_reconstruct((text, a) in small_ring().prop_flat_map(|t| {
        let r = build(&t);
        (Just(t), elem(&r))
    })) {
        let an = Analysis::new(build(&text));
        for p in ElemPredicate::ALL {
            if let Some(w) = p.test(&an, a) {
                prop_assert_eq!(check_witness(an.ring(), p, a, &w), Ok(()));
                prop_assert_eq!(w.reconstruct(an.ring()), a);
            }
        }
    }

    #[test]
    fn canonical_text_rebuilds_the_same_ring(text in small_ring()) {
        let e: RingExpr = dsl::parse(&text).unwrap();
        let canon = dsl::canonical(&e);
        let (a, b) = (build(&text), build(&canon));
        prop_assert_eq!(a.label(), b.label());
        prop_assert_eq!(a.card(), b.card());
        for x in a.elements().step_by(7) {
            for y in a.elements().step_by(11) {
                prop_assert_eq!(a.mul(x, y), b.mul(x, y));
            }
        }
    }
}
