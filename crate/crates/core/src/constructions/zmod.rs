use crate::error::BuildError;
use crate::ring::{Elem, Ring, RingOps};

#[derive(Debug)]
struct Zmod {
    n: u32,
}

impl RingOps for Zmod {
    fn card(&self) -> usize {
        self.n as usize
    }
    fn zero(&self) -> Elem {
        Elem(0)
    }
    fn one(&self) -> Elem {
        Elem(1)
    }
    fn add(&self, a: Elem, b: Elem) -> Elem {
        Elem(((a.0 as u64 + b.0 as u64) % self.n as u64) as u32)
    }
    fn neg(&self, a: Elem) -> Elem {
        Elem((self.n - a.0) % self.n)
    }
    fn mul(&self, a: Elem, b: Elem) -> Elem {
        Elem(((a.0 as u64 * b.0 as u64) % self.n as u64) as u32)
    }
    fn label(&self) -> String {
        format!("Z({})", self.n)
    }
}

/// Integers modulo `n`; index = residue.
pub fn zmod(n: u64) -> Result<Ring, BuildError> {
    if n < 2 {
        return Err(BuildError::Invalid(format!("modulus must be ≥ 2, got {n}")));
    }
    let n = u32::try_from(n).map_err(|_| BuildError::Invalid(format!("modulus {n} too large")))?;
    Ok(Ring::new(Zmod { n }))
}
