use crate::error::BuildError;
use crate::ring::{Elem, Ring, RingOps};

use super::pattern::{build_pattern_ring, Pattern};
use super::{card_power, Limits, Radix};

/// k×k matrices over `base`, optionally with the product twisted by powers
/// of a central element.
#[derive(Debug)]
struct Matrices {
    base: Ring,
    k: usize,
    radix: Radix,
    /// `[1, s, s²]` for a formal matrix ring, `None` for the usual product.
    twist: Option<[Elem; 3]>,
    label: String,
}

impl Matrices {
    /// Exponent of `s` on the term `a_ik·b_kj`.
    fn exponent(i: usize, k: usize, j: usize) -> usize {
        let d = |x: usize, y: usize| usize::from(x == y);
        1 + d(i, j) - d(i, k) - d(k, j)
    }
}

impl RingOps for Matrices {
    fn card(&self) -> usize {
        self.radix.base.pow(self.radix.len as u32)
    }
    fn zero(&self) -> Elem {
        Elem(0)
    }
    fn one(&self) -> Elem {
        let k = self.k;
        let mut m = vec![self.base.zero(); k * k];
        for i in 0..k {
            m[i * k + i] = self.base.one();
        }
        self.radix.encode(&m)
    }
    fn add(&self, a: Elem, b: Elem) -> Elem {
        let (x, y) = (self.radix.decode(a), self.radix.decode(b));
        let s: Vec<Elem> = x.iter().zip(&y).map(|(&p, &q)| self.base.add(p, q)).collect();
        self.radix.encode(&s)
    }
    fn neg(&self, a: Elem) -> Elem {
        let s: Vec<Elem> = self.radix.decode(a).into_iter().map(|p| self.base.neg(p)).collect();
        self.radix.encode(&s)
    }
    fn mul(&self, a: Elem, b: Elem) -> Elem {
        let r = &self.base;
        let k = self.k;
        let (x, y) = (self.radix.decode(a), self.radix.decode(b));
        let mut out = vec![r.zero(); k * k];
        for i in 0..k {
            for j in 0..k {
                let mut acc = r.zero();
                for t in 0..k {
                    let mut term = r.mul(x[i * k + t], y[t * k + j]);
                    if let Some(powers) = &self.twist {
                        term = r.mul(powers[Self::exponent(i, t, j)], term);
                    }
                    acc = r.add(acc, term);
                }
                out[i * k + j] = acc;
            }
        }
        self.radix.encode(&out)
    }
    fn label(&self) -> String {
        self.label.clone()
    }
    fn show(&self, a: Elem) -> String {
        let m = self.radix.decode(a);
        let rows: Vec<String> = m
            .chunks(self.k)
            .map(|row| {
                let cells: Vec<String> = row.iter().map(|&c| self.base.show(c)).collect();
                format!("[{}]", cells.join(","))
            })
            .collect();
        format!("[{}]", rows.join(","))
    }
}

/// Full k×k matrix ring, row-major with entry (0,0) most significant.
pub fn matrix_ring(k: usize, base: &Ring, limits: &Limits) -> Result<Ring, BuildError> {
    if k == 0 {
        return Err(BuildError::Invalid("matrix size must be ≥ 1".into()));
    }
    limits.check(card_power(base.card(), (k * k) as u32))?;
    let ring = Ring::new(Matrices {
        base: base.clone(),
        k,
        radix: Radix {
            base: base.card(),
            len: k * k,
        },
        twist: None,
        label: format!("M({k},{})", base.label()),
    });
    Ok(limits.finish(ring))
}

/// Upper-triangular k×k matrices; the upper triangle row-major gives the digits.
pub fn upper_triangular(k: usize, base: &Ring, limits: &Limits) -> Result<Ring, BuildError> {
    if k == 0 {
        return Err(BuildError::Invalid("matrix size must be ≥ 1".into()));
    }
    let label = format!("T({k},{})", base.label());
    build_pattern_ring(&Pattern::upper_triangular(k), base, limits, label)
}

/// Formal matrix ring `Mₙ(R; s)`: matrix addition, and
/// `(ab)_ij = Σ_k s^(1 + δ_ij − δ_ik − δ_kj) a_ik b_kj` for central `s`.
pub fn formal_matrix(n: usize, s: Elem, base: &Ring, limits: &Limits) -> Result<Ring, BuildError> {
    if n < 2 {
        return Err(BuildError::Invalid("formal matrix size must be ≥ 2".into()));
    }
    if s.idx() >= base.card() {
        return Err(BuildError::Invalid(format!(
            "{s} is not an element of {}",
            base.label()
        )));
    }
    limits.check(card_power(base.card(), (n * n) as u32))?;
    if base.elements().any(|r| base.mul(s, r) != base.mul(r, s)) {
        return Err(BuildError::NotCentral(s.0));
    }
    let ring = Ring::new(Matrices {
        base: base.clone(),
        k: n,
        radix: Radix {
            base: base.card(),
            len: n * n,
        },
        twist: Some([base.one(), s, base.mul(s, s)]),
        label: format!("FM({n},{s},{})", base.label()),
    });
    Ok(limits.finish(ring))
}
