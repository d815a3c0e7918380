use thiserror::Error;

/// Construction-level failures.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuildError {
    #[error("card {required} exceeds guard {guard}")]
    Guard { required: u128, guard: u64 },
    #[error("{0}")]
    Invalid(String),
    #[error("pattern not closed under multiplication: {left} * {right} leaves the pattern")]
    Closure { left: u32, right: u32 },
    #[error("element {0} is not central")]
    NotCentral(u32),
    #[error("base ring {0} is not commutative")]
    NotCommutative(String),
    #[error("subset is not a two-sided ideal: {0}")]
    NotIdeal(String),
    #[error("ring is not semisimple (J(R) has {0} elements)")]
    NotSemisimple(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("card {card} exceeds memoization threshold {threshold}")]
pub struct MemoError {
    pub card: usize,
    pub threshold: usize,
}
