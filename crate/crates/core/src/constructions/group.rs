use crate::error::BuildError;
use crate::ring::{Elem, Ring, RingOps};

use super::{card_power, Limits};

/// A finite group given by its Cayley table; element 0 is the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<u32>,
    label: String,
}

impl FiniteGroup {
    /// Validates the table exhaustively (closure, identity 0, inverses,
    /// associativity).
    pub fn from_table(order: usize, table: Vec<u32>, label: String) -> Result<Self, BuildError> {
        let bad = |msg: String| Err(BuildError::Invalid(format!("{label}: {msg}")));
        if order == 0 || table.len() != order * order {
            return bad("table shape does not match order".into());
        }
        if table.iter().any(|&x| x as usize >= order) {
            return bad("table entry out of range".into());
        }
        let g = FiniteGroup {
            order,
            table,
            label: label.clone(),
        };
        for a in 0..order {
            if g.mul(0, a) != a || g.mul(a, 0) != a {
                return bad(format!("0 is not an identity at {a}"));
            }
            if !(0..order).any(|b| g.mul(a, b) == 0) {
                return bad(format!("{a} has no inverse"));
            }
            for b in 0..order {
                for c in 0..order {
                    if g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c)) {
                        return bad(format!("not associative at ({a},{b},{c})"));
                    }
                }
            }
        }
        Ok(g)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Every element order is a power of `p`.
    pub fn is_p_group(&self, p: usize) -> bool {
        (0..self.order).all(|g| {
            let mut k = self.element_order(g);
            while k.is_multiple_of(p) {
                k /= p;
            }
            k == 1
        })
    }
}

/// Cyclic group of order `n` under addition mod `n`.
pub fn cyclic_group(n: usize) -> Result<FiniteGroup, BuildError> {
    if n == 0 {
        return Err(BuildError::Invalid("cyclic group order must be ≥ 1".into()));
    }
    let table = (0..n)
        .flat_map(|a| (0..n).map(move |b| ((a + b) % n) as u32))
        .collect();
    FiniteGroup::from_table(n, table, format!("C({n})"))
}

/// `G × H` with index `g·|H| + h`.
pub fn group_product(g: &FiniteGroup, h: &FiniteGroup) -> Result<FiniteGroup, BuildError> {
    let n = g.order * h.order;
    let mut table = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            let (a1, a2) = (a / h.order, a % h.order);
            let (b1, b2) = (b / h.order, b % h.order);
            table.push((g.mul(a1, b1) * h.order + h.mul(a2, b2)) as u32);
        }
    }
    FiniteGroup::from_table(n, table, format!("{} x {}", g.label, h.label))
}

#[derive(Debug)]
struct GroupRing {
    base: Ring,
    group: FiniteGroup,
    card: usize,
}

impl GroupRing {
    fn decode(&self, a: Elem) -> Vec<Elem> {
        let b = self.base.card();
        let mut x = a.idx();
        (0..self.group.order)
            .map(|_| {
                let c = Elem::from_idx(x % b);
                x /= b;
                c
            })
            .collect()
    }

    fn encode(&self, coeffs: &[Elem]) -> Elem {
        let b = self.base.card();
        Elem::from_idx(coeffs.iter().rev().fold(0, |acc, c| acc * b + c.idx()))
    }
}

impl RingOps for GroupRing {
    fn card(&self) -> usize {
        self.card
    }
    fn zero(&self) -> Elem {
        Elem(0)
    }
    fn one(&self) -> Elem {
        let mut c = vec![self.base.zero(); self.group.order];
        c[0] = self.base.one();
        self.encode(&c)
    }
    fn add(&self, a: Elem, b: Elem) -> Elem {
        let (x, y) = (self.decode(a), self.decode(b));
        let s: Vec<Elem> = x.iter().zip(&y).map(|(&p, &q)| self.base.add(p, q)).collect();
        self.encode(&s)
    }
    fn neg(&self, a: Elem) -> Elem {
        let s: Vec<Elem> = self.decode(a).into_iter().map(|p| self.base.neg(p)).collect();
        self.encode(&s)
    }
    fn mul(&self, a: Elem, b: Elem) -> Elem {
        let r = &self.base;
        let (x, y) = (self.decode(a), self.decode(b));
        let mut out = vec![r.zero(); self.group.order];
        for (g, &p) in x.iter().enumerate() {
            if p == r.zero() {
                continue;
            }
            for (h, &q) in y.iter().enumerate() {
                let gh = self.group.mul(g, h);
                out[gh] = r.add(out[gh], r.mul(p, q));
            }
        }
        self.encode(&out)
    }
    fn label(&self) -> String {
        format!("GR({},{})", self.base.label(), self.group.label)
    }
    fn show(&self, a: Elem) -> String {
        let terms: Vec<String> = self
            .decode(a)
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != self.base.zero())
            .map(|(g, &c)| format!("{}·g{g}", self.base.show(c)))
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

/// Group ring `RG`; coefficients little-endian over the group enumeration.
pub fn group_ring(base: &Ring, group: &FiniteGroup, limits: &Limits) -> Result<Ring, BuildError> {
    let card = limits.check(card_power(base.card(), group.order as u32))?;
    let ring = Ring::new(GroupRing {
        base: base.clone(),
        group: group.clone(),
        card,
    });
    Ok(limits.finish(ring))
}

/// Augmentation map `Σ a_g g ↦ Σ a_g` of a group ring built by [`group_ring`].
pub fn augmentation(base: &Ring, group: &FiniteGroup, a: Elem) -> Elem {
    let b = base.card();
    let mut x = a.idx();
    let mut acc = base.zero();
    for _ in 0..group.order {
        acc = base.add(acc, Elem::from_idx(x % b));
        x /= b;
    }
    acc
}
