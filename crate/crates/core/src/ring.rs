//! The finite-ring contract every construction implements, plus the
//! table-backed fast path and power/nilpotency primitives.

use std::fmt;
use std::sync::Arc;

use crate::error::MemoError;

/// Default card threshold under which [`Ring::memoize`] builds tables.
pub const DEFAULT_MEMO_THRESHOLD: usize = 2048;

/// Environment variable overriding [`DEFAULT_MEMO_THRESHOLD`].
pub const MEMO_THRESHOLD_ENV: &str = "RINGLAB_MEMO_THRESHOLD";

/// Canonical index of an element inside one ring's carrier `0..card`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize, serde::Deserialize)]
#[serde(transparent)]
pub struct Elem(pub u32);

impl Elem {
    #[inline]
    pub fn idx(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn from_idx(i: usize) -> Self {
        Elem(i as u32)
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Arithmetic of a finite unital ring on the index carrier `0..card`.
///
/// Implementations must return indices below `card` and satisfy the ring
/// axioms; [`check_axioms`] verifies this exhaustively.
pub trait RingOps: Send + Sync + fmt::Debug {
    fn card(&self) -> usize;
    fn zero(&self) -> Elem;
    fn one(&self) -> Elem;
    fn add(&self, a: Elem, b: Elem) -> Elem;
    fn neg(&self, a: Elem) -> Elem;
    fn mul(&self, a: Elem, b: Elem) -> Elem;
    /// Canonical description (DSL text where one exists).
    fn label(&self) -> String;
    /// Human-readable decoding of an element index.
    fn show(&self, a: Elem) -> String {
        a.to_string()
    }
}

#[derive(Debug)]
struct Tables {
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
}

/// A finite ring handle. Cheap to clone; immutable once built.
#[derive(Clone)]
pub struct Ring {
    ops: Arc<dyn RingOps>,
    tables: Option<Arc<Tables>>,
    card: usize,
    zero: Elem,
    one: Elem,
}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Ring")
            .field("label", &self.label())
            .field("card", &self.card)
            .field("tabled", &self.tables.is_some())
            .finish()
    }
}

impl Ring {
    pub fn new(ops: impl RingOps + 'static) -> Self {
        Self::from_arc(Arc::new(ops))
    }

    pub fn from_arc(ops: Arc<dyn RingOps>) -> Self {
        let card = ops.card();
        let (zero, one) = (ops.zero(), ops.one());
        assert!(card >= 2 && zero != one, "rings here are unital and nontrivial");
        Ring {
            ops,
            tables: None,
            card,
            zero,
            one,
        }
    }

    #[inline]
    pub fn card(&self) -> usize {
        self.card
    }

    #[inline]
    pub fn zero(&self) -> Elem {
        self.zero
    }

    #[inline]
    pub fn one(&self) -> Elem {
        self.one
    }

    pub fn label(&self) -> String {
        self.ops.label()
    }

    pub fn show(&self, a: Elem) -> String {
        self.ops.show(a)
    }

    pub fn is_tabled(&self) -> bool {
        self.tables.is_some()
    }

    /// Validated element literal. Panics on an out-of-range index.
    pub fn elem(&self, i: usize) -> Elem {
        assert!(i < self.card, "element index {i} out of range for card {}", self.card);
        Elem::from_idx(i)
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (0..self.card as u32).map(Elem)
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        debug_assert!(a.idx() < self.card && b.idx() < self.card);
        match &self.tables {
            Some(t) => Elem(t.add[a.idx() * self.card + b.idx()]),
            None => self.ops.add(a, b),
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        debug_assert!(a.idx() < self.card);
        match &self.tables {
            Some(t) => Elem(t.neg[a.idx()]),
            None => self.ops.neg(a),
        }
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        debug_assert!(a.idx() < self.card && b.idx() < self.card);
        match &self.tables {
            Some(t) => Elem(t.mul[a.idx() * self.card + b.idx()]),
            None => self.ops.mul(a, b),
        }
    }

    /// `a^k` by iterated multiplication, `a^0 = 1`.
    pub fn pow(&self, a: Elem, k: u64) -> Elem {
        let mut acc = self.one;
        for _ in 0..k {
            acc = self.mul(acc, a);
        }
        acc
    }

    /// The integer `n·1`.
    pub fn from_int(&self, n: i64) -> Elem {
        let mut acc = self.zero;
        for _ in 0..n.unsigned_abs() {
            acc = self.add(acc, self.one);
        }
        if n < 0 {
            self.neg(acc)
        } else {
            acc
        }
    }

    /// Smallest `k >= 1` with `a^k = 0`, or `None` when `a` is not nilpotent.
    pub fn nilpotency_index(&self, a: Elem) -> Option<u32> {
        match self.power_orbit(a) {
            Orbit::Nilpotent(k) => Some(k),
            _ => None,
        }
    }

    pub fn is_nilpotent(&self, a: Elem) -> bool {
        self.nilpotency_index(a).is_some()
    }

    /// Walks `a, a^2, a^3, ...` until it hits zero, the identity, or a
    /// repeat. Repeats are caught with Brent's checkpoint doubling, so the
    /// walk is exact and stops within `2·card` steps.
    pub fn power_orbit(&self, a: Elem) -> Orbit {
        let mut p = a;
        let mut k: u32 = 1;
        let mut checkpoint = a;
        let mut window: u32 = 1;
        loop {
            if p == self.zero {
                return Orbit::Nilpotent(k);
            }
            if p == self.one {
                return Orbit::Unipotent(k);
            }
            p = self.mul(p, a);
            k += 1;
            if p == checkpoint {
                return Orbit::Neither;
            }
            if k.is_power_of_two() && k > window {
                window = k;
                checkpoint = p;
            }
        }
    }

    /// Table-backed copy of this ring. Refuses when `card > threshold`.
    pub fn memoize(&self, threshold: usize) -> Result<Ring, MemoError> {
        if self.card > threshold {
            return Err(MemoError {
                card: self.card,
                threshold,
            });
        }
        if self.tables.is_some() {
            return Ok(self.clone());
        }
        let n = self.card;
        let mut add = Vec::with_capacity(n * n);
        let mut mul = Vec::with_capacity(n * n);
        for a in self.elements() {
            for b in self.elements() {
                add.push(self.ops.add(a, b).0);
                mul.push(self.ops.mul(a, b).0);
            }
        }
        let neg = self.elements().map(|a| self.ops.neg(a).0).collect();
        Ok(Ring {
            tables: Some(Arc::new(Tables { add, mul, neg })),
            ..self.clone()
        })
    }

    /// Memoizes when allowed, otherwise returns the ring unchanged.
    pub fn memoized_or_self(self, threshold: usize) -> Ring {
        match self.memoize(threshold) {
            Ok(r) => r,
            Err(_) => self,
        }
    }

    pub fn is_commutative(&self) -> bool {
        self.elements()
            .all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }
}

/// Outcome of iterating the powers of one element.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orbit {
    /// `a^k = 0` for the given smallest `k`.
    Nilpotent(u32),
    /// `a^k = 1` for the given smallest `k`; `a` is a unit with inverse `a^(k-1)`.
    Unipotent(u32),
    Neither,
}

/// Memoization threshold from the environment, falling back to the default.
pub fn memo_threshold_from_env() -> usize {
    std::env::var(MEMO_THRESHOLD_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MEMO_THRESHOLD)
}

/// First violated ring axiom found by exhaustive scan, if any.
pub fn check_axioms(r: &Ring) -> Result<(), String> {
    let (z, o) = (r.zero(), r.one());
    if z == o {
        return Err("zero equals one".into());
    }
    for a in r.elements() {
        if r.add(a, z) != a || r.add(z, a) != a {
            return Err(format!("additive identity fails at {a}"));
        }
        if r.add(a, r.neg(a)) != z {
            return Err(format!("additive inverse fails at {a}"));
        }
        if r.mul(a, o) != a || r.mul(o, a) != a {
            return Err(format!("multiplicative identity fails at {a}"));
        }
        for b in r.elements() {
            let ab = r.add(a, b);
            if ab.idx() >= r.card() || r.mul(a, b).idx() >= r.card() {
                return Err(format!("result out of range at ({a},{b})"));
            }
            if ab != r.add(b, a) {
                return Err(format!("addition not commutative at ({a},{b})"));
            }
            for c in r.elements() {
                if r.add(ab, c) != r.add(a, r.add(b, c)) {
                    return Err(format!("addition not associative at ({a},{b},{c})"));
                }
                if r.mul(r.mul(a, b), c) != r.mul(a, r.mul(b, c)) {
                    return Err(format!("multiplication not associative at ({a},{b},{c})"));
                }
                if r.mul(a, r.add(b, c)) != r.add(r.mul(a, b), r.mul(a, c)) {
                    return Err(format!("left distributivity fails at ({a},{b},{c})"));
                }
                if r.mul(r.add(a, b), c) != r.add(r.mul(a, c), r.mul(b, c)) {
                    return Err(format!("right distributivity fails at ({a},{b},{c})"));
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{matrix_ring, zmod, Limits};

    #[test]
    fn zmod_arithmetic() {
        let r = zmod(6).unwrap();
        assert_eq!(r.add(Elem(4), Elem(5)), Elem(3));
        assert_eq!(r.mul(Elem(4), Elem(5)), Elem(2));
        for a in r.elements() {
            assert_eq!(r.add(a, r.zero()), a);
            assert_eq!(r.mul(a, r.one()), a);
        }
    }

    #[test]
    fn powers() {
        let z12 = zmod(12).unwrap();
        assert_eq!(z12.pow(Elem(6), 2), Elem(0));
        let z5 = zmod(5).unwrap();
        assert_eq!(z5.pow(Elem(2), 4), Elem(1));
        assert_eq!(z5.pow(Elem(3), 0), z5.one());
        for a in z5.elements() {
            assert_eq!(z5.pow(a, 1), a);
        }
    }

    #[test]
    fn nilpotency() {
        let z12 = zmod(12).unwrap();
        assert_eq!(z12.nilpotency_index(Elem(6)), Some(2));
        assert_eq!(z12.nilpotency_index(Elem(0)), Some(1));
        assert_eq!(z12.nilpotency_index(Elem(4)), None);
        assert_eq!(z12.power_orbit(Elem(5)), Orbit::Unipotent(2));
        for a in z12.elements() {
            if let Some(k) = z12.nilpotency_index(a) {
                assert_eq!(z12.pow(a, k as u64), z12.zero());
                if k > 1 {
                    assert_ne!(z12.pow(a, k as u64 - 1), z12.zero());
                }
            }
        }
    }

    #[test]
    fn memoize_is_semantic_identity() {
        let limits = Limits::default();
        let raw = zmod(3).unwrap();
        let m = matrix_ring(2, &raw, &limits).unwrap();
        let t = m.memoize(DEFAULT_MEMO_THRESHOLD).unwrap();
        assert!(t.is_tabled());
        for a in m.elements() {
            assert_eq!(t.neg(a), m.neg(a));
            for b in m.elements() {
                assert_eq!(t.add(a, b), m.add(a, b));
                assert_eq!(t.mul(a, b), m.mul(a, b));
            }
        }
    }

    #[test]
    fn memoize_refuses_above_threshold() {
        let limits = Limits::default();
        let m = matrix_ring(3, &zmod(3).unwrap(), &limits).unwrap();
        assert_eq!(m.card(), 19683);
        let err = m.memoize(DEFAULT_MEMO_THRESHOLD).unwrap_err();
        assert_eq!(err.card, 19683);
        assert!(m.clone().memoized_or_self(DEFAULT_MEMO_THRESHOLD).card() == 19683);
    }

    #[test]
    #[should_panic]
    fn literal_out_of_range() {
        zmod(6).unwrap().elem(6);
    }
}
