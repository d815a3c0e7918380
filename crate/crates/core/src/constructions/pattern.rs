use std::collections::HashMap;
use std::hash::Hash;

use crate::error::BuildError;
use crate::ring::{Elem, Ring, RingOps};

use super::{card_power, Limits, Radix};

/// Rings this small get the full pairwise closure scan; above it the scan
/// runs over the additive generators `r·E_C` (complete by bilinearity).
const FULL_CLOSURE_SCAN_MAX: usize = 2048;

/// Shape of a subring of k×k upper-triangular matrices: each upper cell is
/// either forced to zero or belongs to an equality class of cells.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pattern {
    name: String,
    size: usize,
    /// Row-major k×k; `None` below the diagonal and on zero-forced cells.
    cells: Vec<Option<usize>>,
    /// First cell (row-major) of every class, in class order.
    reps: Vec<(usize, usize)>,
}

impl Pattern {
    /// Builds a pattern from a key per upper cell; equal keys share a class,
    /// `None` forces zero. Classes are numbered by first row-major cell.
    pub fn from_fn<K: Eq + Hash>(
        name: impl Into<String>,
        size: usize,
        mut key: impl FnMut(usize, usize) -> Option<K>,
    ) -> Result<Self, BuildError> {
        if size == 0 {
            return Err(BuildError::Invalid("pattern size must be ≥ 1".into()));
        }
        let mut ids: HashMap<K, usize> = HashMap::new();
        let mut cells = vec![None; size * size];
        let mut reps = Vec::new();
        for i in 0..size {
            for j in i..size {
                if let Some(k) = key(i, j) {
                    let next = ids.len();
                    let id = *ids.entry(k).or_insert(next);
                    if id == reps.len() {
                        reps.push((i, j));
                    }
                    cells[i * size + j] = Some(id);
                }
            }
        }
        let p = Pattern {
            name: name.into(),
            size,
            cells,
            reps,
        };
        p.validate()?;
        Ok(p)
    }

    fn validate(&self) -> Result<(), BuildError> {
        let k = self.size;
        for i in 0..k {
            let Some(c) = self.cells[i * k + i] else {
                return Err(BuildError::Invalid(format!(
                    "pattern {}: diagonal cell ({i},{i}) is zero-forced",
                    self.name
                )));
            };
            for a in 0..k {
                for b in a + 1..k {
                    if self.cells[a * k + b] == Some(c) {
                        return Err(BuildError::Invalid(format!(
                            "pattern {}: off-diagonal cell ({a},{b}) shares a class with the diagonal",
                            self.name
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn classes(&self) -> usize {
        self.reps.len()
    }

    /// Class of cell `(i, j)`, `None` when forced to zero.
    pub fn class_of(&self, i: usize, j: usize) -> Option<usize> {
        self.cells[i * self.size + j]
    }

    /// All upper-triangular k×k matrices.
    pub fn upper_triangular(k: usize) -> Self {
        Self::from_fn(format!("T({k})"), k, |i, j| Some((i, j))).expect("well-formed")
    }

    /// `Sₙ`: upper-triangular with one shared diagonal entry.
    pub fn scalar_diagonal(n: usize) -> Result<Self, BuildError> {
        need(n >= 2, "S(n) needs n ≥ 2")?;
        Self::from_fn(format!("S({n})"), n, |i, j| Some(if i == j { (0, 0) } else { (i, j) }))
    }

    /// `S_{n,m}`: size n+m−1; the leading n×n and trailing m×m blocks are
    /// Toeplitz sharing the diagonal, the remaining upper-right cells are free.
    pub fn s_nm(n: usize, m: usize) -> Result<Self, BuildError> {
        need(n >= 2 && m >= 2, "S(n,m) needs n, m ≥ 2")?;
        let split = n - 1;
        Self::from_fn(format!("S({n},{m})"), n + m - 1, |i, j| {
            Some(if i == j {
                (0, 0, 0)
            } else if j <= split {
                (1, j - i, 0)
            } else if i >= split {
                (2, j - i, 0)
            } else {
                (3, i, j)
            })
        })
    }

    /// `T_{n,m}`: block-diagonal pair of Toeplitz blocks (n×n, m×m) sharing
    /// the diagonal entry; the off-diagonal block is zero.
    pub fn t_nm(n: usize, m: usize) -> Result<Self, BuildError> {
        need(n >= 2 && m >= 2, "Tb(n,m) needs n, m ≥ 2")?;
        Self::from_fn(format!("Tb({n},{m})"), n + m, |i, j| {
            if i == j {
                Some((0, 0))
            } else if j < n {
                Some((1, j - i))
            } else if i >= n {
                Some((2, j - i))
            } else {
                None
            }
        })
    }

    /// `Uₙ`: shared diagonal; above it, odd rows (1-based) repeat one
    /// sequence by distance from the diagonal and even rows another.
    pub fn u_n(n: usize) -> Result<Self, BuildError> {
        need(n >= 2, "U(n) needs n ≥ 2")?;
        Self::from_fn(format!("U({n})"), n, |i, j| {
            Some(if i == j { (2, 0) } else { (i % 2, j - i) })
        })
    }

    /// The 4×4 shape `[[a,b,c,d],[0,a,0,c],[0,0,a,b],[0,0,0,a]]`.
    pub fn double_trivial() -> Self {
        const SHAPE: [[Option<u8>; 4]; 4] = [
            [Some(0), Some(1), Some(2), Some(3)],
            [None, Some(0), None, Some(2)],
            [None, None, Some(0), Some(1)],
            [None, None, None, Some(0)],
        ];
        Self::from_fn("DT", 4, |i, j| SHAPE[i][j]).expect("well-formed")
    }

    /// Looks up a built-in pattern by DSL name and parameters.
    pub fn named(name: &str, params: &[usize]) -> Result<Self, BuildError> {
        match (name, params) {
            ("S", [n]) => Self::scalar_diagonal(*n),
            ("S", [n, m]) => Self::s_nm(*n, *m),
            ("Tb", [n, m]) => Self::t_nm(*n, *m),
            ("U", [n]) => Self::u_n(*n),
            _ => Err(BuildError::Invalid(format!(
                "unknown pattern {name} with {} parameter(s)",
                params.len()
            ))),
        }
    }
}

fn need(ok: bool, msg: &str) -> Result<(), BuildError> {
    if ok {
        Ok(())
    } else {
        Err(BuildError::Invalid(msg.into()))
    }
}

#[derive(Debug)]
struct PatternRing {
    base: Ring,
    pattern: Pattern,
    radix: Radix,
    label: String,
}

impl PatternRing {
    fn expand(&self, a: Elem) -> Vec<Elem> {
        let digits = self.radix.decode(a);
        self.pattern
            .cells
            .iter()
            .map(|c| c.map_or(self.base.zero(), |id| digits[id]))
            .collect()
    }

    fn compress(&self, m: &[Elem]) -> Elem {
        let k = self.pattern.size;
        let digits: Vec<Elem> = self.pattern.reps.iter().map(|&(i, j)| m[i * k + j]).collect();
        self.radix.encode(&digits)
    }

    fn product(&self, x: &[Elem], y: &[Elem]) -> Vec<Elem> {
        let r = &self.base;
        let k = self.pattern.size;
        let mut out = vec![r.zero(); k * k];
        for i in 0..k {
            for j in i..k {
                let mut acc = r.zero();
                for t in i..=j {
                    acc = r.add(acc, r.mul(x[i * k + t], y[t * k + j]));
                }
                out[i * k + j] = acc;
            }
        }
        out
    }

    /// Whether an upper-triangular matrix satisfies the pattern's constraints.
    fn conforms(&self, m: &[Elem]) -> bool {
        let k = self.pattern.size;
        (0..k).all(|i| {
            (i..k).all(|j| match self.pattern.cells[i * k + j] {
                None => m[i * k + j] == self.base.zero(),
                Some(id) => {
                    let (ri, rj) = self.pattern.reps[id];
                    m[i * k + j] == m[ri * k + rj]
                }
            })
        })
    }

    fn check_closure(&self) -> Result<(), BuildError> {
        let card = self.card();
        let candidates: Vec<Elem> = if card <= FULL_CLOSURE_SCAN_MAX {
            (0..card).map(Elem::from_idx).collect()
        } else {
            let nclass = self.pattern.classes();
            let mut gens = Vec::new();
            for class in 0..nclass {
                for r in self.base.elements().skip(1) {
                    let mut digits = vec![self.base.zero(); nclass];
                    digits[class] = r;
                    gens.push(self.radix.encode(&digits));
                }
            }
            gens
        };
        let expanded: Vec<Vec<Elem>> = candidates.iter().map(|&a| self.expand(a)).collect();
        for (x, ex) in candidates.iter().zip(&expanded) {
            for (y, ey) in candidates.iter().zip(&expanded) {
                if !self.conforms(&self.product(ex, ey)) {
                    return Err(BuildError::Closure {
                        left: x.0,
                        right: y.0,
                    });
                }
            }
        }
        Ok(())
    }
}

impl RingOps for PatternRing {
    fn card(&self) -> usize {
        self.radix.base.pow(self.radix.len as u32)
    }
    fn zero(&self) -> Elem {
        Elem(0)
    }
    fn one(&self) -> Elem {
        let k = self.pattern.size;
        let mut m = vec![self.base.zero(); k * k];
        for i in 0..k {
            m[i * k + i] = self.base.one();
        }
        self.compress(&m)
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
        let p = self.product(&self.expand(a), &self.expand(b));
        self.compress(&p)
    }
    fn label(&self) -> String {
        self.label.clone()
    }
    fn show(&self, a: Elem) -> String {
        let k = self.pattern.size;
        let m = self.expand(a);
        let rows: Vec<String> = m
            .chunks(k)
            .map(|row| {
                let cells: Vec<String> = row.iter().map(|&c| self.base.show(c)).collect();
                format!("[{}]", cells.join(","))
            })
            .collect();
        format!("[{}]", rows.join(","))
    }
}

pub(super) fn build_pattern_ring(
    pattern: &Pattern,
    base: &Ring,
    limits: &Limits,
    label: String,
) -> Result<Ring, BuildError> {
    limits.check(card_power(base.card(), pattern.classes() as u32))?;
    let pr = PatternRing {
        base: base.clone(),
        pattern: pattern.clone(),
        radix: Radix {
            base: base.card(),
            len: pattern.classes(),
        },
        label,
    };
    pr.check_closure()?;
    Ok(limits.finish(Ring::new(pr)))
}

/// Subring of upper-triangular matrices cut out by `pattern`, with
/// multiplicative closure verified at construction.
pub fn pattern_subring(pattern: &Pattern, base: &Ring, limits: &Limits) -> Result<Ring, BuildError> {
    let label = format!("PAT({},{})", pattern.name, base.label());
    build_pattern_ring(pattern, base, limits, label)
}

/// Explicit coordinate map from `TE(TE(R))` to the 4×4 [`Pattern::double_trivial`]
/// ring over `R`, where `q = |R|`: `((a,b),(c,d)) ↦ a + bx + cy + dxy ↦`
/// `[[a,b,c,d],[0,a,0,c],[0,0,a,b],[0,0,0,a]]`.
pub fn dt_coordinate_map(q: usize) -> impl Fn(Elem) -> Elem {
    let pattern = Pattern::double_trivial();
    let radix = Radix {
        base: q,
        len: pattern.classes(),
    };
    move |x: Elem| {
        let q2 = q * q;
        let (r, m) = (x.idx() / q2, x.idx() % q2);
        let (a, b, c, d) = (r / q, r % q, m / q, m % q);
        let z = 0;
        let matrix = [
            [a, b, c, d],
            [z, a, z, c],
            [z, z, a, b],
            [z, z, z, a],
        ];
        let digits: Vec<Elem> = pattern
            .reps
            .iter()
            .map(|&(i, j)| Elem::from_idx(matrix[i][j]))
            .collect();
        radix.encode(&digits)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{trivial_extension, zmod};
    use crate::ring::check_axioms;

    fn l() -> Limits {
        Limits::default()
    }

    #[test]
    fn class_counts() {
        assert_eq!(Pattern::scalar_diagonal(2).unwrap().classes(), 2);
        assert_eq!(Pattern::scalar_diagonal(3).unwrap().classes(), 4);
        assert_eq!(Pattern::s_nm(2, 2).unwrap().classes(), 4);
        assert_eq!(Pattern::s_nm(3, 2).unwrap().classes(), 6);
        assert_eq!(Pattern::t_nm(2, 2).unwrap().classes(), 3);
        assert_eq!(Pattern::u_n(3).unwrap().classes(), 4);
        assert_eq!(Pattern::u_n(4).unwrap().classes(), 6);
        assert_eq!(Pattern::double_trivial().classes(), 4);
        assert_eq!(Pattern::upper_triangular(3).classes(), 6);
    }

    #[test]
    fn built_in_patterns_are_closed() {
        for base in [zmod(2).unwrap(), zmod(3).unwrap()] {
            for p in [
                Pattern::scalar_diagonal(2).unwrap(),
                Pattern::scalar_diagonal(3).unwrap(),
                Pattern::s_nm(2, 2).unwrap(),
                Pattern::s_nm(2, 3).unwrap(),
                Pattern::t_nm(2, 2).unwrap(),
                Pattern::u_n(3).unwrap(),
                Pattern::u_n(4).unwrap(),
                Pattern::double_trivial(),
            ] {
                let r = pattern_subring(&p, &base, &l()).unwrap();
                if r.card() <= 81 {
                    check_axioms(&r).unwrap();
                }
            }
        }
        let s2 = pattern_subring(&Pattern::scalar_diagonal(2).unwrap(), &zmod(3).unwrap(), &l()).unwrap();
        assert_eq!(s2.card(), 9);
    }

    #[test]
    fn closure_violation_is_reported() {
        // (0,1) and (1,2) free but (0,2) forced zero: E01·E12 = E02 escapes.
        let p = Pattern::from_fn("bad", 3, |i, j| if (i, j) == (0, 2) { None } else { Some((i, j)) })
            .unwrap();
        let err = pattern_subring(&p, &zmod(2).unwrap(), &l()).unwrap_err();
        assert!(matches!(err, BuildError::Closure { .. }), "{err}");
    }

    #[test]
    fn generator_scan_agrees_on_large_pattern() {
        // card 6^6 = 46656 forces the generator scan
        let r = pattern_subring(&Pattern::s_nm(3, 2).unwrap(), &zmod(6).unwrap(), &l()).unwrap();
        assert_eq!(r.card(), 46656);
        let p = Pattern::from_fn("bad", 3, |i, j| if (i, j) == (0, 2) { None } else { Some((i, j)) })
            .unwrap();
        assert!(pattern_subring(&p, &zmod(7).unwrap(), &l()).is_err());
    }

    #[test]
    fn dt_map_is_a_ring_isomorphism() {
        for n in [2u64, 3] {
            let base = zmod(n).unwrap();
            let te2 = trivial_extension(&trivial_extension(&base, &l()).unwrap(), &l()).unwrap();
            let dt = pattern_subring(&Pattern::double_trivial(), &base, &l()).unwrap();
            let phi = dt_coordinate_map(base.card());
            let mut image: Vec<Elem> = te2.elements().map(&phi).collect();
            assert_eq!(phi(te2.one()), dt.one());
            for a in te2.elements() {
                for b in te2.elements() {
                    assert_eq!(phi(te2.add(a, b)), dt.add(phi(a), phi(b)));
                    assert_eq!(phi(te2.mul(a, b)), dt.mul(phi(a), phi(b)));
                }
            }
            image.sort();
            image.dedup();
            assert_eq!(image.len(), dt.card());
        }
    }

    #[test]
    fn unknown_pattern() {
        assert!(Pattern::named("Q", &[2]).is_err());
        assert!(Pattern::named("S", &[1]).is_err());
        assert_eq!(Pattern::named("Tb", &[2, 3]).unwrap().size(), 5);
    }
}
