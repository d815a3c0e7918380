//! Structural sets and predicates: U(R), Nil(R), Id(R), J(R), Z(R), R/J(R),
//! and the Wedderburn fingerprint of a semisimple ring.

use std::fmt;
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::constructions::{is_ideal, quotient_labeled, Quotient};
use crate::decompositions::{self, Flag, Verdict};
use crate::error::BuildError;
use crate::ring::{Elem, Orbit, Ring};
use crate::subset::Subset;

/// Lazily computed invariant sets of one ring, shared by every classifier.
pub struct Analysis {
    ring: Ring,
    orbits: OnceLock<Vec<Orbit>>,
    units: OnceLock<Subset>,
    nilpotents: OnceLock<Subset>,
    idempotents: OnceLock<(Subset, Vec<Elem>)>,
    jacobson: OnceLock<Subset>,
    center: OnceLock<Subset>,
    pub(crate) verdicts: [OnceLock<Verdict>; Flag::ALL.len()],
}

impl fmt::Debug for Analysis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Analysis").field("ring", &self.ring).finish()
    }
}

impl Analysis {
    pub fn new(ring: Ring) -> Self {
        Analysis {
            ring,
            orbits: OnceLock::new(),
            units: OnceLock::new(),
            nilpotents: OnceLock::new(),
            idempotents: OnceLock::new(),
            jacobson: OnceLock::new(),
            center: OnceLock::new(),
            verdicts: Default::default(),
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    fn orbits(&self) -> &[Orbit] {
        self.orbits.get_or_init(|| {
            let r = &self.ring;
            (0..r.card() as u32)
                .into_par_iter()
                .map(|i| r.power_orbit(Elem(i)))
                .collect()
        })
    }

    pub fn units(&self) -> &Subset {
        self.units.get_or_init(|| {
            let o = self.orbits();
            Subset::from_fn(self.ring.card(), |a| matches!(o[a.idx()], Orbit::Unipotent(_)))
        })
    }

    pub fn nilpotents(&self) -> &Subset {
        self.nilpotents.get_or_init(|| {
            let o = self.orbits();
            Subset::from_fn(self.ring.card(), |a| matches!(o[a.idx()], Orbit::Nilpotent(_)))
        })
    }

    pub fn nilpotency_index(&self, a: Elem) -> Option<u32> {
        match self.orbits()[a.idx()] {
            Orbit::Nilpotent(k) => Some(k),
            _ => None,
        }
    }

    /// Inverse of `a` when it is a unit.
    pub fn inverse(&self, a: Elem) -> Option<Elem> {
        match self.orbits()[a.idx()] {
            Orbit::Unipotent(k) => Some(self.ring.pow(a, k as u64 - 1)),
            _ => None,
        }
    }

    pub fn idempotents(&self) -> &Subset {
        &self.idempotent_data().0
    }

    /// Idempotents in ascending index order.
    pub fn idempotent_list(&self) -> &[Elem] {
        &self.idempotent_data().1
    }

    fn idempotent_data(&self) -> &(Subset, Vec<Elem>) {
        self.idempotents.get_or_init(|| {
            let r = &self.ring;
            let list: Vec<Elem> = (0..r.card() as u32)
                .into_par_iter()
                .map(Elem)
                .filter(|&a| r.mul(a, a) == a)
                .collect();
            (Subset::from_elems(r.card(), list.iter().copied()), list)
        })
    }

    pub fn jacobson(&self) -> &Subset {
        self.jacobson.get_or_init(|| jacobson_with(&self.ring, self.units()))
    }

    pub fn center(&self) -> &Subset {
        self.center.get_or_init(|| center(&self.ring))
    }

    #[inline]
    pub fn is_unit(&self, a: Elem) -> bool {
        self.units().contains(a)
    }

    #[inline]
    pub fn is_nilpotent(&self, a: Elem) -> bool {
        self.nilpotents().contains(a)
    }

    pub fn is_central(&self, a: Elem) -> bool {
        self.center().contains(a)
    }
}

/// Units with their inverses.
#[derive(Clone, Debug)]
pub struct UnitGroup {
    pub members: Subset,
    pub inverse: Vec<Option<Elem>>,
}

pub fn units(r: &Ring) -> UnitGroup {
    let an = Analysis::new(r.clone());
    let members = an.units().clone();
    let inverse = r.elements().map(|a| an.inverse(a)).collect();
    UnitGroup { members, inverse }
}

pub fn nilpotents(r: &Ring) -> Subset {
    Analysis::new(r.clone()).nilpotents().clone()
}

pub fn idempotents(r: &Ring) -> Subset {
    Analysis::new(r.clone()).idempotents().clone()
}

pub fn jacobson(r: &Ring) -> Subset {
    Analysis::new(r.clone()).jacobson().clone()
}

/// `{x : 1 − s·x ∈ U(R) for all s}` (left quasi-regularity suffices in a
/// finite ring).
fn jacobson_with(r: &Ring, units: &Subset) -> Subset {
    let one = r.one();
    let members: Vec<bool> = (0..r.card() as u32)
        .into_par_iter()
        .map(|x| {
            let x = Elem(x);
            r.elements().all(|s| units.contains(r.sub(one, r.mul(s, x))))
        })
        .collect();
    Subset::from_fn(r.card(), |a| members[a.idx()])
}

pub fn center(r: &Ring) -> Subset {
    let members: Vec<bool> = (0..r.card() as u32)
        .into_par_iter()
        .map(|z| {
            let z = Elem(z);
            r.elements().all(|s| r.mul(z, s) == r.mul(s, z))
        })
        .collect();
    Subset::from_fn(r.card(), |a| members[a.idx()])
}

/// `R/J(R)` with its projection.
pub fn mod_j(an: &Analysis) -> Result<Quotient, BuildError> {
    let r = an.ring();
    quotient_labeled(r, an.jacobson(), format!("MODJ({})", r.label()))
}

/// Every member of `s` is nilpotent (checked by direct power iteration).
pub fn is_nil_subset(r: &Ring, s: &Subset) -> bool {
    s.iter().all(|a| r.is_nilpotent(a))
}

/// Multiset of `(n, q)` with `R ≅ ∏ Mₙ(𝔽_q)`, sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WedderburnFingerprint {
    pub blocks: Vec<(u32, u64)>,
}

impl WedderburnFingerprint {
    pub fn new(mut blocks: Vec<(u32, u64)>) -> Self {
        blocks.sort_unstable();
        WedderburnFingerprint { blocks }
    }

    /// Card of `∏ Mₙ(𝔽_q)`.
    pub fn card(&self) -> u128 {
        self.blocks
            .iter()
            .map(|&(n, q)| (q as u128).pow(n * n))
            .product()
    }
}

impl fmt::Display for WedderburnFingerprint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.blocks.iter().map(|(n, q)| format!("({n},{q})")).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// Fingerprint of a semisimple ring from its primitive central idempotents:
/// each block `eR` has centre `eZ(R)` of order `q` and card `q^(n²)`.
pub fn wedderburn_fingerprint(an: &Analysis) -> Result<WedderburnFingerprint, BuildError> {
    let r = an.ring();
    let j = an.jacobson();
    if j.count() != 1 {
        return Err(BuildError::NotSemisimple(j.count()));
    }
    let center = an.center();
    let central_idems: Vec<Elem> = an
        .idempotent_list()
        .iter()
        .copied()
        .filter(|&e| e != r.zero() && center.contains(e))
        .collect();
    let primitive: Vec<Elem> = central_idems
        .iter()
        .copied()
        .filter(|&e| {
            !central_idems
                .iter()
                .any(|&f| f != e && r.mul(f, e) == f)
        })
        .collect();
    let mut blocks = Vec::with_capacity(primitive.len());
    for &e in &primitive {
        let block = Subset::from_elems(r.card(), r.elements().map(|x| r.mul(e, x))).count();
        let q = Subset::from_elems(r.card(), center.iter().map(|z| r.mul(e, z))).count();
        let n = integral_log(block as u128, q as u128).ok_or_else(|| {
            BuildError::Invalid(format!(
                "block of card {block} with centre of order {q} is not q^(n^2)"
            ))
        })?;
        blocks.push((n, q as u64));
    }
    let fp = WedderburnFingerprint::new(blocks);
    if fp.card() != r.card() as u128 {
        return Err(BuildError::Invalid(format!(
            "fingerprint {fp} does not account for card {}",
            r.card()
        )));
    }
    Ok(fp)
}

/// `n` with `q^(n²) = card`.
fn integral_log(card: u128, q: u128) -> Option<u32> {
    if q < 2 {
        return None;
    }
    (1u32..).take_while(|n| q.checked_pow(n * n).is_some_and(|v| v <= card)).find(|n| q.pow(n * n) == card)
}

/// Fingerprint of `R/J(R)`.
pub fn semisimple_fingerprint(an: &Analysis) -> Result<WedderburnFingerprint, BuildError> {
    if an.jacobson().count() == 1 {
        return wedderburn_fingerprint(an);
    }
    let q = mod_j(an)?;
    wedderburn_fingerprint(&Analysis::new(q.ring))
}

/// Ring-level structural predicates, each decided exhaustively.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct StructuralFlags {
    pub commutative: bool,
    pub local: bool,
    pub abelian: bool,
    pub reduced: bool,
    pub boolean: bool,
    pub ni: bool,
    pub nr: bool,
    pub two_primal: bool,
    pub regular: bool,
    pub strongly_regular: bool,
    pub exchange: bool,
    pub weakly_exchange: bool,
    pub semipotent: bool,
    pub strongly_pi_regular: bool,
    pub semisimple: bool,
    /// Every finite ring is artinian, hence semilocal.
    pub semilocal: bool,
    pub uu: bool,
    pub wuu: bool,
    pub uwnc: bool,
}

/// Notes attached to reports about how some predicates are decided.
pub const STRUCTURE_NOTES: &[&str] = &[
    "semilocal is constantly true: every finite ring is artinian",
    "Nil_*(R) is taken to be J(R): in a finite ring J(R) is a nilpotent ideal, so both coincide",
    "semipotent is checked on principal one-sided ideals, which suffices",
];

fn all_par(card: usize, pred: impl Fn(Elem) -> bool + Sync) -> bool {
    (0..card as u32).into_par_iter().all(|i| pred(Elem(i)))
}

fn right_ideal(r: &Ring, a: Elem) -> Subset {
    Subset::from_elems(r.card(), r.elements().map(|x| r.mul(a, x)))
}

fn left_ideal(r: &Ring, a: Elem) -> Subset {
    Subset::from_elems(r.card(), r.elements().map(|x| r.mul(x, a)))
}

pub fn is_regular(r: &Ring) -> bool {
    all_par(r.card(), |a| r.elements().any(|x| r.mul(r.mul(a, x), a) == a))
}

pub fn is_strongly_regular(r: &Ring) -> bool {
    all_par(r.card(), |a| {
        let a2 = r.mul(a, a);
        r.elements().any(|x| r.mul(a2, x) == a)
    })
}

fn exchange_like(an: &Analysis, weak: bool) -> bool {
    let r = an.ring();
    let one = r.one();
    all_par(r.card(), |a| {
        let ar = right_ideal(r, a);
        let minus = right_ideal(r, r.sub(one, a));
        let plus = weak.then(|| right_ideal(r, r.add(one, a)));
        an.idempotent_list().iter().any(|&e| {
            let f = r.sub(one, e);
            ar.contains(e) && (minus.contains(f) || plus.as_ref().is_some_and(|p| p.contains(f)))
        })
    })
}

pub fn is_exchange(an: &Analysis) -> bool {
    exchange_like(an, false)
}

pub fn is_weakly_exchange(an: &Analysis) -> bool {
    exchange_like(an, true)
}

/// Every principal one-sided ideal not inside J(R) holds a nonzero idempotent.
pub fn is_semipotent(an: &Analysis) -> bool {
    let r = an.ring();
    let j = an.jacobson();
    let nonzero: Vec<Elem> = an
        .idempotent_list()
        .iter()
        .copied()
        .filter(|&e| e != r.zero())
        .collect();
    all_par(r.card(), |a| {
        if j.contains(a) {
            return true;
        }
        let (ra, la) = (right_ideal(r, a), left_ideal(r, a));
        nonzero.iter().any(|&e| ra.contains(e)) && nonzero.iter().any(|&e| la.contains(e))
    })
}

/// `∀a ∃n ≥ 1: aⁿ ∈ aⁿ⁺¹R`.
pub fn is_strongly_pi_regular(r: &Ring) -> bool {
    all_par(r.card(), |a| {
        let mut p = a;
        for _ in 0..=r.card() {
            let q = r.mul(p, a);
            if r.elements().any(|x| r.mul(q, x) == p) {
                return true;
            }
            p = q;
        }
        false
    })
}

/// Nil(R) closed under addition and multiplication.
fn nil_is_subring(r: &Ring, nil: &Subset) -> bool {
    let members = nil.to_vec();
    members.par_iter().all(|&x| {
        members
            .iter()
            .all(|&y| nil.contains(r.add(x, y)) && nil.contains(r.mul(x, y)))
    })
}

pub fn structural_predicates(an: &Analysis) -> StructuralFlags {
    let r = an.ring();
    let (units, nil, idem, j, center) = (
        an.units(),
        an.nilpotents(),
        an.idempotents(),
        an.jacobson(),
        an.center(),
    );
    let one = r.one();
    StructuralFlags {
        commutative: center.count() == r.card(),
        local: units.complement().is_subset(j),
        abelian: idem.is_subset(center),
        reduced: nil.count() == 1,
        boolean: idem.count() == r.card(),
        ni: is_ideal(r, nil).is_ok(),
        nr: nil_is_subring(r, nil),
        two_primal: j == nil,
        regular: is_regular(r),
        strongly_regular: is_strongly_regular(r),
        exchange: is_exchange(an),
        weakly_exchange: is_weakly_exchange(an),
        semipotent: is_semipotent(an),
        strongly_pi_regular: is_strongly_pi_regular(r),
        semisimple: j.count() == 1,
        semilocal: true,
        uu: units.iter().all(|u| nil.contains(r.sub(u, one))),
        wuu: units
            .iter()
            .all(|u| nil.contains(r.sub(u, one)) || nil.contains(r.add(u, one))),
        uwnc: units
            .iter()
            .all(|u| decompositions::weakly_nil_clean(an, u).is_some()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{
        cyclic_group, direct_product, gf, group_ring, matrix_ring, upper_triangular, zmod, Limits,
    };

    fn l() -> Limits {
        Limits::default()
    }

    fn elems(v: &[u32]) -> Vec<Elem> {
        v.iter().map(|&i| Elem(i)).collect()
    }

    /// Unit scan straight from the definition.
    fn brute_units(r: &Ring) -> usize {
        r.elements()
            .filter(|&a| r.elements().any(|b| r.mul(a, b) == r.one()))
            .count()
    }

    #[test]
    fn unit_sets() {
        let z6 = zmod(6).unwrap();
        assert_eq!(units(&z6).members.to_vec(), elems(&[1, 5]));
        let f9 = gf(3, 2, &l()).unwrap();
        assert_eq!(units(&f9).members.count(), 8);
        let m = matrix_ring(2, &zmod(3).unwrap(), &l()).unwrap();
        let u = units(&m);
        assert_eq!(u.members.count(), 48);
        assert_eq!(brute_units(&m), 48);
        for a in u.members.iter() {
            assert_eq!(m.mul(a, u.inverse[a.idx()].unwrap()), m.one());
        }
    }

    #[test]
    fn nilpotent_and_idempotent_sets() {
        assert_eq!(nilpotents(&zmod(4).unwrap()).to_vec(), elems(&[0, 2]));
        assert_eq!(nilpotents(&gf(3, 2, &l()).unwrap()).count(), 1);
        let m2 = matrix_ring(2, &zmod(2).unwrap(), &l()).unwrap();
        assert_eq!(nilpotents(&m2).count(), 4);
        assert_eq!(idempotents(&zmod(6).unwrap()).to_vec(), elems(&[0, 1, 3, 4]));
        assert_eq!(idempotents(&gf(2, 2, &l()).unwrap()).to_vec(), elems(&[0, 1]));
    }

    #[test]
    fn radicals_and_centres() {
        assert_eq!(jacobson(&zmod(12).unwrap()).to_vec(), elems(&[0, 6]));
        assert_eq!(jacobson(&gf(2, 3, &l()).unwrap()).count(), 1);
        let t = upper_triangular(2, &zmod(2).unwrap(), &l()).unwrap();
        assert_eq!(jacobson(&t).to_vec(), elems(&[0, 0b010]));
        assert_eq!(jacobson(&upper_triangular(2, &zmod(4).unwrap(), &l()).unwrap()).count(), 16);
        let m2 = matrix_ring(2, &zmod(2).unwrap(), &l()).unwrap();
        assert_eq!(center(&m2).to_vec(), vec![m2.zero(), m2.one()]);
        assert_eq!(center(&zmod(6).unwrap()).count(), 6);
    }

    #[test]
    fn mod_j_quotients() {
        let an = Analysis::new(upper_triangular(2, &zmod(2).unwrap(), &l()).unwrap());
        let q = mod_j(&an).unwrap();
        assert_eq!(q.ring.card(), 4);
        assert!(q.ring.is_commutative());
        let z4 = Analysis::new(zmod(4).unwrap());
        assert_eq!(mod_j(&z4).unwrap().ring.card(), 2);
    }

    #[test]
    fn nil_subsets() {
        let r = upper_triangular(2, &zmod(4).unwrap(), &l()).unwrap();
        let an = Analysis::new(r.clone());
        assert!(is_nil_subset(&r, an.jacobson()));
        assert!(!is_nil_subset(&r, an.units()));
        assert!(is_nil_subset(&r, &Subset::from_elems(r.card(), [r.zero()])));
    }

    #[test]
    fn fingerprints() {
        let fp = |r: Ring| semisimple_fingerprint(&Analysis::new(r)).unwrap();
        assert_eq!(fp(zmod(6).unwrap()).blocks, vec![(1, 2), (1, 3)]);
        assert_eq!(fp(matrix_ring(2, &zmod(3).unwrap(), &l()).unwrap()).blocks, vec![(2, 3)]);
        let gr = group_ring(&zmod(2).unwrap(), &cyclic_group(3).unwrap(), &l()).unwrap();
        assert_eq!(fp(gr).blocks, vec![(1, 2), (1, 4)]);
        assert_eq!(fp(zmod(12).unwrap()).blocks, vec![(1, 2), (1, 3)]);
        let prod = direct_product(
            &matrix_ring(2, &zmod(2).unwrap(), &l()).unwrap(),
            &gf(2, 2, &l()).unwrap(),
            &l(),
        )
        .unwrap();
        assert_eq!(fp(prod).blocks, vec![(1, 4), (2, 2)]);
        assert!(wedderburn_fingerprint(&Analysis::new(zmod(4).unwrap())).is_err());
    }

    #[test]
    fn predicates_on_small_rings() {
        let s = structural_predicates(&Analysis::new(zmod(2).unwrap()));
        assert!(s.boolean && s.local && s.uu && s.semisimple);
        let s = structural_predicates(&Analysis::new(
            matrix_ring(2, &zmod(2).unwrap(), &l()).unwrap(),
        ));
        assert!(!s.abelian && !s.uu && !s.commutative && s.regular && s.exchange);
        let s = structural_predicates(&Analysis::new(zmod(6).unwrap()));
        assert!(s.reduced && s.regular && s.strongly_regular && !s.local);
        let s = structural_predicates(&Analysis::new(zmod(4).unwrap()));
        assert!(s.local && !s.reduced && !s.regular && s.two_primal && s.ni && s.nr);
        assert!(s.semipotent && s.strongly_pi_regular && s.uu);
    }
}
