//! Strictly increasing integer index sequences and their generators.
//!
//! These are the subsequences along which averages are sampled: the full
//! integers, squares, primes, `floor(n^c)`, lacunary ramps, syndetic blocks
//! with alternating gaps, and sequences produced elsewhere in the crate
//! (greedy orbit-descent indices, arc self-intersection times).

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// How an [`IndexSequence`] was produced.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SequenceKind {
    /// 1, 2, 3, ...
    Full,
    /// 1, 4, 9, ...
    Squares,
    /// 2, 3, 5, 7, ...
    Primes,
    /// floor(n^(p/q)) for a non-integer exponent p/q > 1, deduplicated.
    FloorPow { p: u64, q: u64 },
    /// Geometric growth: next = max(prev + 1, ceil(prev * p/q)), ratio p/q > 1.
    Lacunary { p: u64, q: u64 },
    /// Alternating blocks of gap-2 and gap-3 integers.
    SyndeticBlocks { block: u64 },
    /// Greedy indices N with {(N+1)α} strictly decreasing (see `torus`).
    Descent,
    /// Times n at which an arc meets its own rotate by n·α (see `recurrence`).
    SelfIntersection,
    Custom,
}

/// A strictly increasing sequence of positive integers with provenance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexSequence {
    pub values: Vec<u64>,
    pub kind: SequenceKind,
}

impl IndexSequence {
    /// Wraps explicit values, enforcing strict increase from 1 upward.
    pub fn new(values: Vec<u64>, kind: SequenceKind) -> Result<Self> {
        if values.first().is_some_and(|&v| v == 0) {
            return Err(Error::domain("index sequences start at 1"));
        }
        if values.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::domain("index sequence must be strictly increasing"));
        }
        Ok(IndexSequence { values, kind })
    }

    pub fn custom(values: Vec<u64>) -> Result<Self> {
        Self::new(values, SequenceKind::Custom)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn full(count: u64) -> Self {
        IndexSequence {
            values: (1..=count).collect(),
            kind: SequenceKind::Full,
        }
    }

    pub fn squares(count: u64) -> Self {
        IndexSequence {
            values: (1..=count).map(|i| i * i).collect(),
            kind: SequenceKind::Squares,
        }
    }

    /// First `count` primes, by trial sieve over growing segments.
    pub fn primes(count: usize) -> Self {
        let mut values = Vec::with_capacity(count);
        let mut limit = 64.max(count * 16);
        while values.len() < count {
            values.clear();
            let mut composite = vec![false; limit + 1];
            for n in 2..=limit {
                if !composite[n] {
                    values.push(n as u64);
                    if values.len() == count {
                        break;
                    }
                    let mut m = n * n;
                    while m <= limit {
                        composite[m] = true;
                        m += n;
                    }
                }
            }
            limit *= 2;
        }
        IndexSequence {
            values,
            kind: SequenceKind::Primes,
        }
    }

    /// `floor(n^(p/q))` for n = 1, 2, ..., deduplicated, computed by exact
    /// integer power comparisons (k = floor(n^(p/q)) iff k^q <= n^p < (k+1)^q).
    pub fn floor_pow(p: u64, q: u64, count: usize) -> Result<Self> {
        if q == 0 || p <= q || p % q == 0 {
            return Err(Error::domain(
                "floor-power exponent must be a non-integer rational > 1",
            ));
        }
        let mut values: Vec<u64> = Vec::with_capacity(count);
        let mut k: u64 = 0; // floor(n^c) is nondecreasing in n
        let mut n: u64 = 1;
        while values.len() < count {
            let np = BigUint::from(n).pow(p as u32);
            while BigUint::from(k + 1).pow(q as u32) <= np {
                k += 1;
            }
            if k >= 1 && values.last() != Some(&k) {
                values.push(k);
            }
            n += 1;
        }
        Ok(IndexSequence {
            values,
            kind: SequenceKind::FloorPow { p, q },
        })
    }

    /// Geometric sequence with ratio at least p/q > 1.
    pub fn lacunary(p: u64, q: u64, count: usize) -> Result<Self> {
        if q == 0 || p <= q {
            return Err(Error::domain("lacunary ratio must exceed 1"));
        }
        let mut values = Vec::with_capacity(count);
        let mut prev: u64 = 1;
        for _ in 0..count {
            let next = (prev * p).div_ceil(q).max(prev + 1);
            values.push(next);
            prev = next;
        }
        Ok(IndexSequence {
            values,
            kind: SequenceKind::Lacunary { p, q },
        })
    }

    /// Bounded-gap sequence alternating a block of gap-2 steps with a block
    /// of gap-3 steps, and so on.
    pub fn syndetic_blocks(block: u64, count: usize) -> Result<Self> {
        if block == 0 {
            return Err(Error::domain("block length must be positive"));
        }
        let mut values = Vec::with_capacity(count);
        let mut v: u64 = 1;
        let mut gap: u64 = 2;
        let mut in_block: u64 = 0;
        for _ in 0..count {
            values.push(v);
            v += gap;
            in_block += 1;
            if in_block == block {
                in_block = 0;
                gap = if gap == 2 { 3 } else { 2 };
            }
        }
        Ok(IndexSequence {
            values,
            kind: SequenceKind::SyndeticBlocks { block },
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_primes() {
        assert_eq!(IndexSequence::primes(5).values, vec![2, 3, 5, 7, 11]);
        assert_eq!(IndexSequence::primes(100).values.len(), 100);
        assert_eq!(IndexSequence::primes(100).values[99], 541);
    }

    #[test]
    fn floor_pow_three_halves() {
        // floor(n^1.5) for n = 1..: 1, 2, 5, 8, 11, ...
        let s = IndexSequence::floor_pow(3, 2, 5).unwrap();
        assert_eq!(s.values, vec![1, 2, 5, 8, 11]);
    }

    #[test]
    fn floor_pow_rejects_integer_exponent() {
        assert!(IndexSequence::floor_pow(4, 2, 5).is_err());
        assert!(IndexSequence::floor_pow(1, 2, 5).is_err());
    }

    #[test]
    fn lacunary_powers_of_two() {
        let s = IndexSequence::lacunary(2, 1, 5).unwrap();
        assert_eq!(s.values, vec![2, 4, 8, 16, 32]);
    }

    #[test]
    fn lacunary_slow_ratio_still_increases() {
        let s = IndexSequence::lacunary(3, 2, 8).unwrap();
        assert!(s.values.windows(2).all(|w| w[0] < w[1]));
        // ratio eventually respected
        let last = s.values[s.values.len() - 1] as f64;
        let prev = s.values[s.values.len() - 2] as f64;
        assert!(last / prev >= 1.5 - 1e-12);
    }

    #[test]
    fn syndetic_blocks_alternate_gaps() {
        let s = IndexSequence::syndetic_blocks(3, 7).unwrap();
        // gaps: 2,2,2 then 3,3,3 ...
        assert_eq!(s.values, vec![1, 3, 5, 7, 10, 13, 16]);
    }

    #[test]
    fn rejects_non_increasing() {
        assert!(IndexSequence::custom(vec![1, 2, 2]).is_err());
        assert!(IndexSequence::custom(vec![0, 1]).is_err());
        assert!(IndexSequence::custom(vec![3, 9, 27]).is_ok());
    }
}
