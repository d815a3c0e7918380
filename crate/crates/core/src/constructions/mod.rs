//! Builders for the finite ring families, each with a fixed index encoding.
//!
//! | family | encoding |
//! |---|---|
//! | `zmod(n)` | index = residue |
//! | `poly_quot(R, f)` | coefficients little-endian: index = Σ cᵢ·|R|ⁱ |
//! | `matrix_ring(k, R)` | row-major, entry (0,0) most significant |
//! | `upper_triangular`, `pattern_subring` | one digit per pattern class, classes ordered by first row-major cell, first class most significant |
//! | `direct_product(R, S)` | index = r·|S| + s |
//! | `trivial_extension(R)` | (r, m) ↦ r·|R| + m |
//! | `formal_matrix(n, s, R)` | as `matrix_ring` |
//! | `group_ring(R, G)` | coefficients little-endian over the group enumeration, g₀ = identity |
//! | quotients | cosets numbered in order of their smallest member |

mod group;
mod matrix;
mod pattern;
mod poly;
mod product;
mod quotient;
mod zmod;

pub use group::{augmentation, cyclic_group, group_product, group_ring, FiniteGroup};
pub use matrix::{formal_matrix, matrix_ring, upper_triangular};
pub use pattern::{dt_coordinate_map, pattern_subring, Pattern};
pub use poly::{gf, poly_quot, smallest_irreducible};
pub use product::{direct_product, trivial_extension};
pub use quotient::{ideal_generated, is_ideal, quotient_by_ideal, Quotient};
pub(crate) use quotient::quotient_labeled;
pub use zmod::zmod;

use crate::error::BuildError;
use crate::ring::{memo_threshold_from_env, Elem, Ring, DEFAULT_MEMO_THRESHOLD};

/// Default cap on the card of any constructed ring.
pub const DEFAULT_MAX_CARD: u64 = 200_000;

/// Environment variable overriding [`DEFAULT_MAX_CARD`].
pub const MAX_CARD_ENV: &str = "RINGLAB_MAX_CARD";

/// Size limits applied while building rings.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest card any construction may produce.
    pub max_card: u64,
    /// Rings with card at most this get operation tables; 0 disables tables.
    pub memo_threshold: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_card: DEFAULT_MAX_CARD,
            memo_threshold: DEFAULT_MEMO_THRESHOLD,
        }
    }
}

impl Limits {
    pub fn from_env() -> Self {
        let max_card = std::env::var(MAX_CARD_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .unwrap_or(DEFAULT_MAX_CARD);
        Limits {
            max_card,
            memo_threshold: memo_threshold_from_env(),
        }
    }

    pub fn with_max_card(self, max_card: u64) -> Self {
        Limits { max_card, ..self }
    }

    pub fn with_memo_threshold(self, memo_threshold: usize) -> Self {
        Limits {
            memo_threshold,
            ..self
        }
    }

    /// Fails unless `required` fits under the guard.
    pub fn check(&self, required: u128) -> Result<usize, BuildError> {
        if required > self.max_card as u128 {
            Err(BuildError::Guard {
                required,
                guard: self.max_card,
            })
        } else {
            Ok(required as usize)
        }
    }

    pub(crate) fn finish(&self, ring: Ring) -> Ring {
        ring.memoized_or_self(self.memo_threshold)
    }
}

/// `base^exp`, saturating instead of overflowing.
pub fn card_power(base: usize, exp: u32) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base as u128);
    }
    acc
}

/// Fixed-width mixed-radix codec with most significant digit first.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Radix {
    pub base: usize,
    pub len: usize,
}

impl Radix {
    pub fn decode(&self, index: Elem) -> Vec<Elem> {
        let mut x = index.idx();
        let mut out = vec![Elem(0); self.len];
        for slot in out.iter_mut().rev() {
            *slot = Elem::from_idx(x % self.base);
            x /= self.base;
        }
        out
    }

    pub fn encode(&self, digits: &[Elem]) -> Elem {
        debug_assert_eq!(digits.len(), self.len);
        Elem::from_idx(digits.iter().fold(0, |acc, d| acc * self.base + d.idx()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn radix_round_trip() {
        let r = Radix { base: 3, len: 4 };
        for i in 0..81 {
            assert_eq!(r.encode(&r.decode(Elem(i))), Elem(i));
        }
        assert_eq!(r.decode(Elem(1)), vec![Elem(0), Elem(0), Elem(0), Elem(1)]);
    }

    #[test]
    fn guard_math() {
        let l = Limits::default();
        assert_eq!(card_power(5, 9), 1_953_125);
        let err = l.check(card_power(5, 9)).unwrap_err();
        assert_eq!(err.to_string(), "card 1953125 exceeds guard 200000");
        assert_eq!(l.check(19683).unwrap(), 19683);
    }
}
