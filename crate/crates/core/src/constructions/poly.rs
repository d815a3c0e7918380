use crate::error::BuildError;
use crate::ring::{Elem, Ring, RingOps};

use super::{card_power, zmod, Limits};

#[derive(Debug)]
struct PolyQuot {
    base: Ring,
    /// Monic modulus, ascending degree, length `degree + 1`.
    modulus: Vec<Elem>,
    degree: usize,
    card: usize,
    label: String,
}

impl PolyQuot {
    fn decode(&self, a: Elem) -> Vec<Elem> {
        let b = self.base.card();
        let mut x = a.idx();
        (0..self.degree)
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

impl RingOps for PolyQuot {
    fn card(&self) -> usize {
        self.card
    }
    fn zero(&self) -> Elem {
        Elem(0)
    }
    fn one(&self) -> Elem {
        let mut c = vec![self.base.zero(); self.degree];
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
        let d = self.degree;
        let (x, y) = (self.decode(a), self.decode(b));
        let mut prod = vec![r.zero(); 2 * d - 1];
        for (i, &p) in x.iter().enumerate() {
            if p == r.zero() {
                continue;
            }
            for (j, &q) in y.iter().enumerate() {
                prod[i + j] = r.add(prod[i + j], r.mul(p, q));
            }
        }
        for deg in (d..prod.len()).rev() {
            let c = prod[deg];
            if c == r.zero() {
                continue;
            }
            for (i, &f) in self.modulus.iter().enumerate() {
                let k = deg - d + i;
                prod[k] = r.sub(prod[k], r.mul(c, f));
            }
        }
        prod.truncate(d);
        self.encode(&prod)
    }
    fn label(&self) -> String {
        self.label.clone()
    }
    fn show(&self, a: Elem) -> String {
        let terms: Vec<String> = self
            .decode(a)
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != self.base.zero())
            .map(|(i, &c)| match i {
                0 => self.base.show(c),
                1 => format!("{}x", self.base.show(c)),
                _ => format!("{}x^{i}", self.base.show(c)),
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

fn poly_text(coeffs: &[Elem]) -> String {
    let parts: Vec<String> = coeffs.iter().map(|c| c.to_string()).collect();
    format!("[{}]", parts.join(","))
}

/// `R[x]/⟨f⟩` for commutative `R` and monic `f` given in ascending degree.
pub fn poly_quot(base: &Ring, modulus: &[Elem], limits: &Limits) -> Result<Ring, BuildError> {
    let label = format!("PQ({},{})", base.label(), poly_text(modulus));
    build(base, modulus, limits, label)
}

fn build(base: &Ring, modulus: &[Elem], limits: &Limits, label: String) -> Result<Ring, BuildError> {
    if modulus.len() < 2 {
        return Err(BuildError::Invalid("modulus must have degree ≥ 1".into()));
    }
    if let Some(bad) = modulus.iter().find(|c| c.idx() >= base.card()) {
        return Err(BuildError::Invalid(format!(
            "coefficient {bad} is not an element of {}",
            base.label()
        )));
    }
    if *modulus.last().unwrap() != base.one() {
        return Err(BuildError::Invalid(format!(
            "polynomial {} is not monic (leading coefficient must be {})",
            poly_text(modulus),
            base.one()
        )));
    }
    let degree = modulus.len() - 1;
    let card = limits.check(card_power(base.card(), degree as u32))?;
    if !base.is_commutative() {
        return Err(BuildError::NotCommutative(base.label()));
    }
    let ring = Ring::new(PolyQuot {
        base: base.clone(),
        modulus: modulus.to_vec(),
        degree,
        card,
        label,
    });
    Ok(limits.finish(ring))
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Remainder of `a` modulo monic `m` over ℤ/p, both ascending degree.
fn rem_mod_p(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    while r.len() > dm {
        let c = r[r.len() - 1];
        let shift = r.len() - 1 - dm;
        for (i, &mi) in m.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p * p - c * mi % p) % p;
        }
        r.pop();
    }
    r
}

fn monic_polys(p: u64, degree: usize) -> impl Iterator<Item = Vec<u64>> {
    let total = p.pow(degree as u32);
    (0..total).map(move |mut t| {
        // c0 is the most significant digit so the order is lexicographic on [c0, c1, ...].
        let mut c = vec![0u64; degree + 1];
        for slot in c[..degree].iter_mut().rev() {
            *slot = t % p;
            t /= p;
        }
        c[degree] = 1;
        c
    })
}

/// Lexicographically smallest monic irreducible of the given degree over ℤ/p,
/// ascending coefficients.
pub fn smallest_irreducible(p: u64, degree: usize) -> Vec<u64> {
    monic_polys(p, degree)
        .find(|f| {
            (1..=degree / 2).all(|dd| {
                monic_polys(p, dd).all(|g| rem_mod_p(f, &g, p).iter().any(|&c| c != 0))
            })
        })
        .expect("irreducible polynomials exist in every degree")
}

/// The field with `p^k` elements as `ℤ/p[x]/⟨f⟩`, `f` from [`smallest_irreducible`].
pub fn gf(p: u64, k: u32, limits: &Limits) -> Result<Ring, BuildError> {
    if !is_prime(p) {
        return Err(BuildError::Invalid(format!("{p} is not prime")));
    }
    if !(1..=4).contains(&k) {
        return Err(BuildError::Invalid(format!("field degree must be in 1..=4, got {k}")));
    }
    limits.check(card_power(p as usize, k))?;
    let base = limits.finish(zmod(p)?);
    let f: Vec<Elem> = smallest_irreducible(p, k as usize)
        .into_iter()
        .map(|c| Elem(c as u32))
        .collect();
    build(&base, &f, limits, format!("GF({p},{k})"))
}
