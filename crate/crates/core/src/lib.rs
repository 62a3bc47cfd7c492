//! Enumeration and exact counting of δ-partitions: set partitions of
//! `{1, ..., n}` in which every block holds more than `delta` elements.
//!
//! Partitions are represented as restricted growth strings (RGS): element
//! `i` carries the label of its block, the first element is labelled `1`,
//! and every later label is at most one more than the largest label seen
//! before it. Each set partition has exactly one such string.
//!
//! The search ([`Enumerator`]) is a backtracking traversal over RGS
//! prefixes that keeps two counters up to date in constant time per step:
//! the number of *small* blocks (nonempty, size at most `delta`) and the
//! total *deficit* of those blocks, i.e. how many more elements they need
//! before every one of them is large enough. A prefix is abandoned as soon
//! as the deficit exceeds the number of unassigned elements, and when the
//! two are equal the next element is only offered to the small blocks.
//!
//! ```
//! use delta_partitions::{count, enumerate, Params};
//!
//! let params = Params::new(4, 1).unwrap();
//! let mut seen = Vec::new();
//! enumerate(params, |view| seen.push(view.to_vec())).unwrap();
//! assert_eq!(seen, vec![
//!     vec![1, 1, 1, 1],
//!     vec![1, 1, 2, 2],
//!     vec![1, 2, 1, 2],
//!     vec![1, 2, 2, 1],
//! ]);
//! assert_eq!(count(params).unwrap(), 4u32.into());
//! ```

pub mod oracle;
pub mod output;
mod search;
mod state;

pub use search::{count, enumerate, try_enumerate, Enumerator, Outcome, PartitionView};
pub use state::{CounterMismatch, PruneCheck, SearchState, SearchStats};

use thiserror::Error;

/// Errors raised for invalid problem parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum ParamError {
    #[error("the set must contain at least one element (got n = 0)")]
    EmptySet,
}

/// Problem size `n` and block-size threshold `delta`.
///
/// Every block of a reported partition has at least `delta + 1` elements.
/// `delta >= n` is accepted and simply admits no partition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Params {
    n: usize,
    delta: usize,
}

impl Params {
    pub fn new(n: usize, delta: usize) -> Result<Self, ParamError> {
        if n == 0 {
            return Err(ParamError::EmptySet);
        }
        Ok(Params { n, delta })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn delta(&self) -> usize {
        self.delta
    }

    /// Minimum admissible block size, `delta + 1`.
    pub fn min_block_size(&self) -> usize {
        self.delta.saturating_add(1)
    }

    /// True when no partition can satisfy the threshold (`delta >= n`).
    pub fn is_degenerate(&self) -> bool {
        self.delta >= self.n
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_empty_set() {
        assert_eq!(Params::new(0, 0), Err(ParamError::EmptySet));
    }

    #[test]
    fn accepts_large_delta() {
        let p = Params::new(3, 5).unwrap();
        assert!(p.is_degenerate());
        assert_eq!(p.min_block_size(), 6);
        assert!(!Params::new(3, 2).unwrap().is_degenerate());
    }
}
