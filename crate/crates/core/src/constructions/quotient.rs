use crate::error::BuildError;
use crate::ring::{Elem, Ring, RingOps};
use crate::subset::Subset;

/// Smallest two-sided ideal containing `gens`, by saturation to a fixpoint.
pub fn ideal_generated(r: &Ring, gens: &[Elem]) -> Subset {
    let mut members = Subset::empty(r.card());
    let mut list: Vec<Elem> = Vec::new();
    let push = |x: Elem, members: &mut Subset, list: &mut Vec<Elem>| {
        if members.insert(x) {
            list.push(x);
        }
    };
    push(r.zero(), &mut members, &mut list);
    for &g in gens {
        push(g, &mut members, &mut list);
    }
    let mut next = 0;
    while next < list.len() {
        let x = list[next];
        next += 1;
        push(r.neg(x), &mut members, &mut list);
        for s in r.elements() {
            push(r.mul(s, x), &mut members, &mut list);
            push(r.mul(x, s), &mut members, &mut list);
        }
        for i in 0..list.len() {
            let y = list[i];
            push(r.add(x, y), &mut members, &mut list);
        }
    }
    members
}

/// Checks that `s` is a two-sided ideal, naming the first violation.
pub fn is_ideal(r: &Ring, s: &Subset) -> Result<(), String> {
    if s.universe() != r.card() {
        return Err("subset belongs to a different carrier".into());
    }
    if !s.contains(r.zero()) {
        return Err("does not contain zero".into());
    }
    let members = s.to_vec();
    for &x in &members {
        if !s.contains(r.neg(x)) {
            return Err(format!("not closed under negation at {x}"));
        }
        for &y in &members {
            if !s.contains(r.add(x, y)) {
                return Err(format!("not closed under addition at ({x},{y})"));
            }
        }
        for t in r.elements() {
            if !s.contains(r.mul(t, x)) || !s.contains(r.mul(x, t)) {
                return Err(format!("not absorbing at ({t},{x})"));
            }
        }
    }
    Ok(())
}

/// A quotient ring together with its projection from the parent.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub ring: Ring,
    /// Parent element index ↦ coset index.
    pub projection: Vec<Elem>,
    /// Smallest member of each coset.
    pub reps: Vec<Elem>,
}

impl Quotient {
    pub fn project(&self, a: Elem) -> Elem {
        self.projection[a.idx()]
    }
}

#[derive(Debug)]
struct QuotientRing {
    parent: Ring,
    projection: Vec<Elem>,
    reps: Vec<Elem>,
    label: String,
}

impl QuotientRing {
    fn lift(&self, a: Elem) -> Elem {
        self.reps[a.idx()]
    }
}

impl RingOps for QuotientRing {
    fn card(&self) -> usize {
        self.reps.len()
    }
    fn zero(&self) -> Elem {
        self.projection[self.parent.zero().idx()]
    }
    fn one(&self) -> Elem {
        self.projection[self.parent.one().idx()]
    }
    fn add(&self, a: Elem, b: Elem) -> Elem {
        self.projection[self.parent.add(self.lift(a), self.lift(b)).idx()]
    }
    fn neg(&self, a: Elem) -> Elem {
        self.projection[self.parent.neg(self.lift(a)).idx()]
    }
    fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.projection[self.parent.mul(self.lift(a), self.lift(b)).idx()]
    }
    fn label(&self) -> String {
        self.label.clone()
    }
    fn show(&self, a: Elem) -> String {
        format!("{} + I", self.parent.show(self.lift(a)))
    }
}

/// `R/I` with cosets numbered in order of their smallest member.
pub fn quotient_by_ideal(r: &Ring, ideal: &Subset) -> Result<Quotient, BuildError> {
    let label = format!("{}/<{} elements>", r.label(), ideal.count());
    quotient_labeled(r, ideal, label)
}

pub(crate) fn quotient_labeled(r: &Ring, ideal: &Subset, label: String) -> Result<Quotient, BuildError> {
    is_ideal(r, ideal).map_err(BuildError::NotIdeal)?;
    if ideal.count() == r.card() {
        return Err(BuildError::Invalid("quotient by the whole ring is the zero ring".into()));
    }
    let members = ideal.to_vec();
    let unset = Elem(u32::MAX);
    let mut projection = vec![unset; r.card()];
    let mut reps = Vec::new();
    for x in r.elements() {
        if projection[x.idx()] != unset {
            continue;
        }
        let id = Elem::from_idx(reps.len());
        reps.push(x);
        for &i in &members {
            projection[r.add(x, i).idx()] = id;
        }
    }
    let ring = Ring::new(QuotientRing {
        parent: r.clone(),
        projection: projection.clone(),
        reps: reps.clone(),
        label,
    });
    Ok(Quotient {
        ring,
        projection,
        reps,
    })
}
