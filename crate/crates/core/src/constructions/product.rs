use crate::error::BuildError;
use crate::ring::{Elem, Ring, RingOps};

use super::Limits;

#[derive(Debug)]
struct Product {
    left: Ring,
    right: Ring,
}

impl Product {
    fn split(&self, a: Elem) -> (Elem, Elem) {
        let n = self.right.card();
        (Elem::from_idx(a.idx() / n), Elem::from_idx(a.idx() % n))
    }

    fn join(&self, l: Elem, r: Elem) -> Elem {
        Elem::from_idx(l.idx() * self.right.card() + r.idx())
    }
}

impl RingOps for Product {
    fn card(&self) -> usize {
        self.left.card() * self.right.card()
    }
    fn zero(&self) -> Elem {
        self.join(self.left.zero(), self.right.zero())
    }
    fn one(&self) -> Elem {
        self.join(self.left.one(), self.right.one())
    }
    fn add(&self, a: Elem, b: Elem) -> Elem {
        let ((a1, a2), (b1, b2)) = (self.split(a), self.split(b));
        self.join(self.left.add(a1, b1), self.right.add(a2, b2))
    }
    fn neg(&self, a: Elem) -> Elem {
        let (a1, a2) = self.split(a);
        self.join(self.left.neg(a1), self.right.neg(a2))
    }
    fn mul(&self, a: Elem, b: Elem) -> Elem {
        let ((a1, a2), (b1, b2)) = (self.split(a), self.split(b));
        self.join(self.left.mul(a1, b1), self.right.mul(a2, b2))
    }
    fn label(&self) -> String {
        format!("({} x {})", self.left.label(), self.right.label())
    }
    fn show(&self, a: Elem) -> String {
        let (l, r) = self.split(a);
        format!("({}, {})", self.left.show(l), self.right.show(r))
    }
}

/// `R × S` with index `r·|S| + s`.
pub fn direct_product(left: &Ring, right: &Ring, limits: &Limits) -> Result<Ring, BuildError> {
    limits.check(left.card() as u128 * right.card() as u128)?;
    let ring = Ring::new(Product {
        left: left.clone(),
        right: right.clone(),
    });
    Ok(limits.finish(ring))
}

/// Pairs `(r, m)` with `(r, m)(s, n) = (rs, rn + ms)`.
#[derive(Debug)]
struct TrivialExtension {
    base: Ring,
}

impl TrivialExtension {
    fn split(&self, a: Elem) -> (Elem, Elem) {
        let n = self.base.card();
        (Elem::from_idx(a.idx() / n), Elem::from_idx(a.idx() % n))
    }

    fn join(&self, r: Elem, m: Elem) -> Elem {
        Elem::from_idx(r.idx() * self.base.card() + m.idx())
    }
}

impl RingOps for TrivialExtension {
    fn card(&self) -> usize {
        self.base.card() * self.base.card()
    }
    fn zero(&self) -> Elem {
        self.join(self.base.zero(), self.base.zero())
    }
    fn one(&self) -> Elem {
        self.join(self.base.one(), self.base.zero())
    }
    fn add(&self, a: Elem, b: Elem) -> Elem {
        let ((r, m), (s, n)) = (self.split(a), self.split(b));
        self.join(self.base.add(r, s), self.base.add(m, n))
    }
    fn neg(&self, a: Elem) -> Elem {
        let (r, m) = self.split(a);
        self.join(self.base.neg(r), self.base.neg(m))
    }
    fn mul(&self, a: Elem, b: Elem) -> Elem {
        let ((r, m), (s, n)) = (self.split(a), self.split(b));
        let base = &self.base;
        self.join(base.mul(r, s), base.add(base.mul(r, n), base.mul(m, s)))
    }
    fn label(&self) -> String {
        format!("TE({})", self.base.label())
    }
    fn show(&self, a: Elem) -> String {
        let (r, m) = self.split(a);
        format!("({}, {})", self.base.show(r), self.base.show(m))
    }
}

/// Trivial extension `T(R, R)`, index `r·|R| + m`.
pub fn trivial_extension(base: &Ring, limits: &Limits) -> Result<Ring, BuildError> {
    limits.check(base.card() as u128 * base.card() as u128)?;
    Ok(limits.finish(Ring::new(TrivialExtension { base: base.clone() })))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::zmod;
    use crate::ring::check_axioms;

    #[test]
    fn product_layout() {
        let l = Limits::default();
        let p = direct_product(&zmod(2).unwrap(), &zmod(3).unwrap(), &l).unwrap();
        assert_eq!(p.card(), 6);
        assert_eq!(p.one(), Elem(4));
        assert_eq!(p.label(), "(Z(2) x Z(3))");
        check_axioms(&p).unwrap();
    }

    #[test]
    fn trivial_extension_square_zero() {
        let l = Limits::default();
        let z3 = zmod(3).unwrap();
        let t = trivial_extension(&z3, &l).unwrap();
        assert_eq!(t.card(), 9);
        for m in z3.elements() {
            let x = Elem(m.0); // (0, m)
            assert_eq!(t.mul(x, x), t.zero());
        }
        check_axioms(&t).unwrap();
    }
}
