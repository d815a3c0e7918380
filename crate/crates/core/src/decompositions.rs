//! Clean-family decompositions of single elements and the ring-level
//! classifier built on them.
//!
//! Every witness describes `a = part + sign·e` with `e` idempotent and `part`
//! a unit or a nilpotent. Searches visit idempotents in ascending index order
//! and try sign `+` before `−`, so witnesses are reproducible.
//!
//! "Strongly weakly (nil-)clean" means `a` or `−a` is strongly (nil-)clean,
//! which is not the same as a commuting weakly (nil-)clean decomposition.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::ring::{Elem, Ring};
use crate::structure::{structural_predicates, Analysis, StructuralFlags};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PartKind {
    Unit,
    Nilpotent,
}

/// `a = part + sign·idempotent`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Witness {
    pub sign: Sign,
    pub idempotent: Elem,
    pub part: Elem,
    pub kind: PartKind,
    /// Whether `part` and `idempotent` commute.
    pub commuting: bool,
}

impl Witness {
    /// The element this witness decomposes.
    pub fn reconstruct(&self, r: &Ring) -> Elem {
        match self.sign {
            Sign::Plus => r.add(self.part, self.idempotent),
            Sign::Minus => r.sub(self.part, self.idempotent),
        }
    }

    fn negated(self, r: &Ring) -> Witness {
        let sign = match self.sign {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        };
        Witness {
            sign,
            part: r.neg(self.part),
            ..self
        }
    }
}

/// The eight element-level predicates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ElemPredicate {
    Clean,
    StronglyClean,
    WeaklyClean,
    StronglyWeaklyClean,
    NilClean,
    StronglyNilClean,
    WeaklyNilClean,
    StronglyWeaklyNilClean,
}

impl ElemPredicate {
    pub const ALL: [ElemPredicate; 8] = [
        ElemPredicate::Clean,
        ElemPredicate::StronglyClean,
        ElemPredicate::WeaklyClean,
        ElemPredicate::StronglyWeaklyClean,
        ElemPredicate::NilClean,
        ElemPredicate::StronglyNilClean,
        ElemPredicate::WeaklyNilClean,
        ElemPredicate::StronglyWeaklyNilClean,
    ];

    pub fn name(self) -> &'static str {
        Flag::from(self).name()
    }

    pub fn test(self, an: &Analysis, a: Elem) -> Option<Witness> {
        match self {
            ElemPredicate::Clean => clean(an, a),
            ElemPredicate::StronglyClean => strongly_clean(an, a),
            ElemPredicate::WeaklyClean => weakly_clean(an, a),
            ElemPredicate::StronglyWeaklyClean => strongly_weakly_clean(an, a),
            ElemPredicate::NilClean => nil_clean(an, a),
            ElemPredicate::StronglyNilClean => strongly_nil_clean(an, a),
            ElemPredicate::WeaklyNilClean => weakly_nil_clean(an, a),
            ElemPredicate::StronglyWeaklyNilClean => strongly_weakly_nil_clean(an, a),
        }
    }

    fn part_kind(self) -> PartKind {
        match self {
            ElemPredicate::Clean
            | ElemPredicate::StronglyClean
            | ElemPredicate::WeaklyClean
            | ElemPredicate::StronglyWeaklyClean => PartKind::Unit,
            _ => PartKind::Nilpotent,
        }
    }

    fn strong(self) -> bool {
        matches!(
            self,
            ElemPredicate::StronglyClean
                | ElemPredicate::StronglyWeaklyClean
                | ElemPredicate::StronglyNilClean
                | ElemPredicate::StronglyWeaklyNilClean
        )
    }

    /// Whether a `−` sign is admissible.
    fn signed(self) -> bool {
        matches!(
            self,
            ElemPredicate::WeaklyClean
                | ElemPredicate::StronglyWeaklyClean
                | ElemPredicate::WeaklyNilClean
                | ElemPredicate::StronglyWeaklyNilClean
        )
    }
}

fn search(an: &Analysis, a: Elem, kind: PartKind, signs: &[Sign], strong: bool) -> Option<Witness> {
    let r = an.ring();
    let ok = |x: Elem| match kind {
        PartKind::Unit => an.is_unit(x),
        PartKind::Nilpotent => an.is_nilpotent(x),
    };
    for &e in an.idempotent_list() {
        let commuting = r.mul(e, a) == r.mul(a, e);
        if strong && !commuting {
            continue;
        }
        for &sign in signs {
            let part = match sign {
                Sign::Plus => r.sub(a, e),
                Sign::Minus => r.add(a, e),
            };
            if ok(part) {
                return Some(Witness {
                    sign,
                    idempotent: e,
                    part,
                    kind,
                    commuting,
                });
            }
        }
    }
    None
}

const PLUS: &[Sign] = &[Sign::Plus];
const BOTH: &[Sign] = &[Sign::Plus, Sign::Minus];

/// `a − e ∈ U(R)`.
pub fn clean(an: &Analysis, a: Elem) -> Option<Witness> {
    search(an, a, PartKind::Unit, PLUS, false)
}

/// Clean with `ea = ae`.
pub fn strongly_clean(an: &Analysis, a: Elem) -> Option<Witness> {
    search(an, a, PartKind::Unit, PLUS, true)
}

/// `a − e ∈ U(R)` or `a + e ∈ U(R)`.
pub fn weakly_clean(an: &Analysis, a: Elem) -> Option<Witness> {
    search(an, a, PartKind::Unit, BOTH, false)
}

/// `a` or `−a` strongly clean.
pub fn strongly_weakly_clean(an: &Analysis, a: Elem) -> Option<Witness> {
    strongly_clean(an, a).or_else(|| {
        let r = an.ring();
        strongly_clean(an, r.neg(a)).map(|w| w.negated(r))
    })
}

/// `a − e ∈ Nil(R)`.
pub fn nil_clean(an: &Analysis, a: Elem) -> Option<Witness> {
    search(an, a, PartKind::Nilpotent, PLUS, false)
}

/// Nil-clean with `ea = ae`.
pub fn strongly_nil_clean(an: &Analysis, a: Elem) -> Option<Witness> {
    search(an, a, PartKind::Nilpotent, PLUS, true)
}

/// `a − e ∈ Nil(R)` or `a + e ∈ Nil(R)`.
pub fn weakly_nil_clean(an: &Analysis, a: Elem) -> Option<Witness> {
    search(an, a, PartKind::Nilpotent, BOTH, false)
}

/// `a` or `−a` strongly nil-clean.
pub fn strongly_weakly_nil_clean(an: &Analysis, a: Elem) -> Option<Witness> {
    strongly_nil_clean(an, a).or_else(|| {
        let r = an.ring();
        strongly_nil_clean(an, r.neg(a)).map(|w| w.negated(r))
    })
}

/// Checks a witness from first principles, without the cached sets of `an`.
pub fn check_witness(r: &Ring, pred: ElemPredicate, a: Elem, w: &Witness) -> Result<(), String> {
    let e = w.idempotent;
    if r.mul(e, e) != e {
        return Err(format!("{e} is not idempotent"));
    }
    if w.reconstruct(r) != a {
        return Err(format!("witness does not reconstruct {a}"));
    }
    if w.kind != pred.part_kind() {
        return Err(format!("wrong part kind {:?}", w.kind));
    }
    let part_ok = match w.kind {
        PartKind::Unit => r.elements().any(|b| r.mul(w.part, b) == r.one()),
        PartKind::Nilpotent => (1..=r.card() as u64).any(|k| r.pow(w.part, k) == r.zero()),
    };
    if !part_ok {
        return Err(format!("part {} is not a {:?}", w.part, w.kind));
    }
    let commuting = r.mul(e, w.part) == r.mul(w.part, e);
    if commuting != w.commuting {
        return Err("commuting bit is wrong".into());
    }
    if pred.strong() && !commuting {
        return Err("strong predicate with non-commuting parts".into());
    }
    if !pred.signed() && w.sign == Sign::Minus {
        return Err("sign − is not admissible".into());
    }
    Ok(())
}

/// Ring-level classes, in report order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Flag {
    Clean,
    StronglyClean,
    WeaklyClean,
    StronglyWeaklyClean,
    NilClean,
    StronglyNilClean,
    WeaklyNilClean,
    StronglyWeaklyNilClean,
    Gnc,
    Gsnc,
    Gwnc,
    Uu,
    Wuu,
    Uwnc,
}

impl Flag {
    pub const ALL: [Flag; 14] = [
        Flag::Clean,
        Flag::StronglyClean,
        Flag::WeaklyClean,
        Flag::StronglyWeaklyClean,
        Flag::NilClean,
        Flag::StronglyNilClean,
        Flag::WeaklyNilClean,
        Flag::StronglyWeaklyNilClean,
        Flag::Gnc,
        Flag::Gsnc,
        Flag::Gwnc,
        Flag::Uu,
        Flag::Wuu,
        Flag::Uwnc,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    /// Name used in structured output.
    pub fn name(self) -> &'static str {
        match self {
            Flag::Clean => "clean",
            Flag::StronglyClean => "stronglyClean",
            Flag::WeaklyClean => "weaklyClean",
            Flag::StronglyWeaklyClean => "stronglyWeaklyClean",
            Flag::NilClean => "nilClean",
            Flag::StronglyNilClean => "stronglyNilClean",
            Flag::WeaklyNilClean => "weaklyNilClean",
            Flag::StronglyWeaklyNilClean => "stronglyWeaklyNilClean",
            Flag::Gnc => "GNC",
            Flag::Gsnc => "GSNC",
            Flag::Gwnc => "GWNC",
            Flag::Uu => "UU",
            Flag::Wuu => "WUU",
            Flag::Uwnc => "UWNC",
        }
    }

    /// Abbreviation used in listings.
    pub fn short(self) -> &'static str {
        match self {
            Flag::Clean => "C",
            Flag::StronglyClean => "SC",
            Flag::WeaklyClean => "WC",
            Flag::StronglyWeaklyClean => "SWC",
            Flag::NilClean => "NC",
            Flag::StronglyNilClean => "SNC",
            Flag::WeaklyNilClean => "WNC",
            Flag::StronglyWeaklyNilClean => "SWNC",
            other => other.name(),
        }
    }

    /// Accepts both the structured name and the abbreviation.
    pub fn parse(s: &str) -> Option<Flag> {
        Flag::ALL.into_iter().find(|f| f.name() == s || f.short() == s)
    }

    /// The elements the flag quantifies over and the property each must have.
    fn scope(self) -> (Domain, Test) {
        use ElemPredicate as P;
        match self {
            Flag::Clean => (Domain::All, Test::Pred(P::Clean)),
            Flag::StronglyClean => (Domain::All, Test::Pred(P::StronglyClean)),
            Flag::WeaklyClean => (Domain::All, Test::Pred(P::WeaklyClean)),
            Flag::StronglyWeaklyClean => (Domain::All, Test::Pred(P::StronglyWeaklyClean)),
            Flag::NilClean => (Domain::All, Test::Pred(P::NilClean)),
            Flag::StronglyNilClean => (Domain::All, Test::Pred(P::StronglyNilClean)),
            Flag::WeaklyNilClean => (Domain::All, Test::Pred(P::WeaklyNilClean)),
            Flag::StronglyWeaklyNilClean => (Domain::All, Test::Pred(P::StronglyWeaklyNilClean)),
            Flag::Gnc => (Domain::NonUnits, Test::Pred(P::NilClean)),
            Flag::Gsnc => (Domain::NonUnits, Test::Pred(P::StronglyNilClean)),
            Flag::Gwnc => (Domain::NonUnits, Test::Pred(P::WeaklyNilClean)),
            Flag::Uu => (Domain::Units, Test::Unipotent),
            Flag::Wuu => (Domain::Units, Test::PlusMinusUnipotent),
            Flag::Uwnc => (Domain::Units, Test::Pred(P::WeaklyNilClean)),
        }
    }
}

impl From<ElemPredicate> for Flag {
    fn from(p: ElemPredicate) -> Flag {
        Flag::ALL[p as usize]
    }
}

impl Serialize for Flag {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl fmt::Display for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy)]
enum Domain {
    All,
    Units,
    NonUnits,
}

#[derive(Clone, Copy)]
enum Test {
    Pred(ElemPredicate),
    Unipotent,
    PlusMinusUnipotent,
}

/// Outcome of a ring-level flag; a failure carries the lowest-index
/// counterexample.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Holds,
    Fails(Elem),
}

impl Verdict {
    pub fn holds(self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn counterexample(self) -> Option<Elem> {
        match self {
            Verdict::Holds => None,
            Verdict::Fails(a) => Some(a),
        }
    }
}

impl Analysis {
    /// Decides `flag`, caching the verdict.
    pub fn verdict(&self, flag: Flag) -> Verdict {
        *self.verdicts[flag.index()].get_or_init(|| decide(self, flag))
    }

    pub fn flag(&self, flag: Flag) -> bool {
        self.verdict(flag).holds()
    }
}

fn decide(an: &Analysis, flag: Flag) -> Verdict {
    let r = an.ring();
    let (domain, test) = flag.scope();
    let one = r.one();
    let fails = |a: Elem| -> bool {
        let in_domain = match domain {
            Domain::All => true,
            Domain::Units => an.is_unit(a),
            Domain::NonUnits => !an.is_unit(a),
        };
        in_domain
            && match test {
                Test::Pred(p) => p.test(an, a).is_none(),
                Test::Unipotent => !an.is_nilpotent(r.sub(a, one)),
                Test::PlusMinusUnipotent => {
                    !an.is_nilpotent(r.sub(a, one)) && !an.is_nilpotent(r.add(a, one))
                }
            }
    };
    match (0..r.card() as u32).into_par_iter().map(Elem).find_first(|&a| fails(a)) {
        None => Verdict::Holds,
        Some(a) => Verdict::Fails(a),
    }
}

/// `R∖U(R) ⊆ Nil(R) ± Id(R)`.
pub fn gwnc(an: &Analysis) -> Verdict {
    an.verdict(Flag::Gwnc)
}

/// Every flag with its counterexample, plus the structural predicates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyReport {
    verdicts: [Verdict; 14],
    pub structure: StructuralFlags,
}

impl PropertyReport {
    pub fn get(&self, flag: Flag) -> bool {
        self.verdicts[flag.index()].holds()
    }

    pub fn verdict(&self, flag: Flag) -> Verdict {
        self.verdicts[flag.index()]
    }

    pub fn counterexample(&self, flag: Flag) -> Option<Elem> {
        self.verdicts[flag.index()].counterexample()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Flag, Verdict)> + '_ {
        Flag::ALL.into_iter().map(|f| (f, self.verdict(f)))
    }

    /// Diagram edges `(p, q)` meaning `p ⇒ q` for every ring.
    pub const IMPLICATIONS: &'static [(Flag, Flag)] = &[
        (Flag::StronglyNilClean, Flag::NilClean),
        (Flag::NilClean, Flag::WeaklyNilClean),
        (Flag::WeaklyNilClean, Flag::Gwnc),
        (Flag::NilClean, Flag::Gnc),
        (Flag::Gnc, Flag::Gwnc),
        (Flag::Gsnc, Flag::Gnc),
        (Flag::Gsnc, Flag::StronglyClean),
        (Flag::StronglyClean, Flag::Clean),
        (Flag::Clean, Flag::WeaklyClean),
        (Flag::Gnc, Flag::Clean),
        (Flag::Gwnc, Flag::WeaklyClean),
    ];

    /// Edges of [`Self::IMPLICATIONS`] violated by this report.
    pub fn violated_implications(&self) -> Vec<(Flag, Flag)> {
        Self::IMPLICATIONS
            .iter()
            .copied()
            .filter(|&(p, q)| self.get(p) && !self.get(q))
            .collect()
    }
}

pub fn classify(an: &Analysis) -> PropertyReport {
    PropertyReport {
        verdicts: Flag::ALL.map(|f| an.verdict(f)),
        structure: structural_predicates(an),
    }
}

/// Everything known about one element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementReport {
    pub elem: Elem,
    pub display: String,
    pub unit: bool,
    pub nilpotent: bool,
    pub idempotent: bool,
    pub central: bool,
    pub predicates: Vec<(ElemPredicate, Option<Witness>)>,
}

pub fn element_report(an: &Analysis, a: Elem) -> ElementReport {
    ElementReport {
        elem: a,
        display: an.ring().show(a),
        unit: an.is_unit(a),
        nilpotent: an.is_nilpotent(a),
        idempotent: an.idempotents().contains(a),
        central: an.is_central(a),
        predicates: ElemPredicate::ALL.iter().map(|&p| (p, p.test(an, a))).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{
        cyclic_group, direct_product, gf, group_ring, matrix_ring, upper_triangular, zmod, Limits,
    };
    use proptest::prelude::*;

    fn an(r: Ring) -> Analysis {
        Analysis::new(r)
    }

    fn z(n: u64) -> Analysis {
        an(zmod(n).unwrap())
    }

    /// Definition-level oracle on Z(n): some idempotent e with a ∓ e nilpotent.
    fn zmod_wnc_oracle(n: u64, a: u64) -> bool {
        let nil = |x: u64| (1..=n).any(|k| (0..k).fold(1u64, |acc, _| acc * x % n) == 0);
        (0..n)
            .filter(|e| e * e % n == *e)
            .any(|e| nil((a + n - e) % n) || nil((a + e) % n))
    }

    #[test]
    fn element_predicates_on_zmod() {
        let z6 = z(6);
        assert_eq!(clean(&z6, Elem(3)).unwrap().idempotent, Elem(4));
        assert!(weakly_clean(&z6, Elem(3)).is_some());
        let z4 = z(4);
        for a in 0..4 {
            assert!(clean(&z4, Elem(a)).is_some());
        }
        let w = nil_clean(&z4, Elem(3)).unwrap();
        assert_eq!((w.idempotent, w.part, w.sign), (Elem(1), Elem(2), Sign::Plus));
        assert!(strongly_nil_clean(&z4, Elem(0)).is_some());
        assert!(nil_clean(&z(3), Elem(2)).is_none());
        let w = weakly_nil_clean(&z(3), Elem(2)).unwrap();
        assert_eq!((w.sign, w.idempotent, w.part), (Sign::Minus, Elem(1), Elem(0)));
        assert!(weakly_nil_clean(&z(5), Elem(2)).is_none());
    }

    #[test]
    fn diag_two_zero_over_f5_is_not_weakly_nil_clean() {
        let m = an(matrix_ring(2, &gf(5, 1, &Limits::default()).unwrap(), &Limits::default()).unwrap());
        // row-major digits [2,0,0,0] → 2·5³
        let a = Elem(2 * 125);
        assert!(weakly_nil_clean(&m, a).is_none());
    }

    #[test]
    fn zmod_wnc_matches_oracle() {
        for n in 2..=30 {
            let r = z(n);
            for a in 0..n {
                assert_eq!(
                    weakly_nil_clean(&r, Elem(a as u32)).is_some(),
                    zmod_wnc_oracle(n, a),
                    "Z({n}) a={a}"
                );
            }
        }
    }

    #[test]
    fn catalog_classifications() {
        let l = Limits::default();
        let m23 = an(matrix_ring(2, &zmod(3).unwrap(), &l).unwrap());
        assert!(m23.flag(Flag::Gwnc));
        assert!(!m23.flag(Flag::Gnc));
        let z66 = an(direct_product(&zmod(6).unwrap(), &zmod(6).unwrap(), &l).unwrap());
        assert!(!z66.flag(Flag::Gwnc));
        let report = classify(&z(2));
        assert!(report.iter().all(|(_, v)| v.holds()));
        assert!(gwnc(&z(5)).holds());
        let t26 = an(upper_triangular(2, &zmod(6).unwrap(), &l).unwrap());
        assert!(!gwnc(&t26).holds());
        let gr = an(group_ring(&zmod(2).unwrap(), &cyclic_group(3).unwrap(), &l).unwrap());
        let Verdict::Fails(a) = gwnc(&gr) else { panic!("Z2[C3] is not GWNC") };
        assert!(!gr.is_unit(a));
    }

    #[test]
    fn counterexample_is_minimal() {
        let r = z(10);
        let Verdict::Fails(a) = r.verdict(Flag::Gwnc) else { panic!() };
        // minimal non-unit that is not weakly nil-clean, by the oracle
        let expected = (0..10).find(|&x| [0, 2, 4, 5, 6, 8].contains(&x) && !zmod_wnc_oracle(10, x));
        assert_eq!(Some(a.0 as u64), expected);
    }

    #[test]
    fn witnesses_validate_and_implications_hold() {
        let l = Limits::default();
        let rings = vec![
            zmod(6).unwrap(),
            zmod(8).unwrap(),
            matrix_ring(2, &zmod(2).unwrap(), &l).unwrap(),
            upper_triangular(2, &zmod(3).unwrap(), &l).unwrap(),
            gf(2, 2, &l).unwrap(),
        ];
        for r in rings {
            let a = an(r.clone());
            for x in r.elements() {
                for p in ElemPredicate::ALL {
                    if let Some(w) = p.test(&a, x) {
                        check_witness(&r, p, x, &w).unwrap();
                    }
                }
            }
            assert!(classify(&a).violated_implications().is_empty(), "{}", r.label());
        }
    }

    #[test]
    fn element_report_for_zero() {
        let r = z(6);
        let rep = element_report(&r, Elem(0));
        assert!(rep.nilpotent && rep.idempotent && !rep.unit && rep.central);
        // 0 = 0 + 0 and 0 = −1 + 1
        assert!(rep.predicates.iter().all(|(_, w)| w.is_some()));
    }

    #[test]
    fn flag_names_round_trip() {
        for f in Flag::ALL {
            assert_eq!(Flag::parse(f.name()), Some(f));
            assert_eq!(Flag::parse(f.short()), Some(f));
        }
    }

    proptest! {
        #[test]
        fn weakly_nil_clean_negation_is_weakly_clean(n in 2u64..40, a in 0u64..40) {
            let r = z(n);
            let a = Elem((a % n) as u32);
            if weakly_nil_clean(&r, a).is_some() {
                prop_assert!(weakly_clean(&r, r.ring().neg(a)).is_some());
            }
        }

        #[test]
        fn witnesses_reconstruct(n in 2u64..40, a in 0u64..40) {
            let r = z(n);
            let a = Elem((a % n) as u32);
            for p in ElemPredicate::ALL {
                if let Some(w) = p.test(&r, a) {
                    prop_assert_eq!(check_witness(r.ring(), p, a, &w), Ok(()));
                }
            }
        }
    }
}
