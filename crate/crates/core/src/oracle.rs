//! Brute-force reference implementations.
//!
//! [`all_partitions`] is the plain restricted-growth generator with no
//! pruning at all; [`naive_delta_partitions`] runs it and keeps the strings
//! whose blocks are all large enough. Neither shares code with the pruned
//! search, so agreement between the two is a meaningful check.

use num_bigint::BigUint;

use crate::{ParamError, Params, SearchStats};

/// Output of the generate-and-test enumerator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    /// Accepted strings, lexicographically increasing.
    pub partitions: Vec<Vec<usize>>,
    /// `nodes` counts every element assignment of the underlying generator.
    pub stats: SearchStats,
}

struct Generator<'v, F> {
    labels: Vec<usize>,
    nodes: u64,
    emitted: u64,
    visit: &'v mut F,
}

impl<F: FnMut(&[usize])> Generator<'_, F> {
    fn extend(&mut self, position: usize, max_so_far: usize) {
        if position == self.labels.len() {
            self.emitted += 1;
            (self.visit)(&self.labels);
            return;
        }
        for label in 1..=max_so_far + 1 {
            self.labels[position] = label;
            self.nodes += 1;
            self.extend(position + 1, max_so_far.max(label));
        }
        self.labels[position] = 0;
    }
}

/// Visit every restricted growth string of length `n` in lexicographic
/// order. The returned `solutions` is the Bell number `B_n`.
pub fn all_partitions<F>(n: usize, mut visitor: F) -> Result<SearchStats, ParamError>
where
    F: FnMut(&[usize]),
{
    if n == 0 {
        return Err(ParamError::EmptySet);
    }
    let mut g = Generator {
        labels: vec![0; n],
        nodes: 0,
        emitted: 0,
        visit: &mut visitor,
    };
    g.extend(0, 0);
    Ok(SearchStats {
        nodes: g.nodes,
        solutions: g.emitted,
        ..SearchStats::default()
    })
}

/// True when every block of the labelling has more than `delta` elements.
pub fn min_block_exceeds(labels: &[usize], delta: usize) -> bool {
    let mut sizes = vec![0usize; labels.len() + 1];
    for &l in labels {
        sizes[l] += 1;
    }
    sizes.iter().all(|&s| s == 0 || s > delta)
}

/// Generate-and-test: visit the δ-partitions among all partitions.
/// `stats.solutions` counts accepted strings only.
pub fn naive_delta_partitions_with<F>(
    params: Params,
    mut visitor: F,
) -> Result<SearchStats, ParamError>
where
    F: FnMut(&[usize]),
{
    let delta = params.delta();
    let mut accepted = 0u64;
    let mut stats = all_partitions(params.n(), |labels| {
        if min_block_exceeds(labels, delta) {
            accepted += 1;
            visitor(labels);
        }
    })?;
    stats.solutions = accepted;
    Ok(stats)
}

pub fn naive_delta_partitions(n: usize, delta: usize) -> Result<OracleResult, ParamError> {
    let params = Params::new(n, delta)?;
    let mut partitions = Vec::new();
    let stats = naive_delta_partitions_with(params, |l| partitions.push(l.to_vec()))?;
    Ok(OracleResult { partitions, stats })
}

/// Bell numbers `B_0..=B_n` from the Bell triangle.
pub fn bell_numbers(n: usize) -> Vec<BigUint> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(BigUint::from(1u32));
    let mut row = vec![BigUint::from(1u32)];
    for _ in 0..n {
        // each row starts with the last entry of the previous one
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(row.last().unwrap().clone());
        for x in &row {
            let v = next.last().unwrap() + x;
            next.push(v);
        }
        out.push(next[0].clone());
        row = next;
    }
    out
}

/// Number of set partitions of an `n`-element set.
pub fn bell_number(n: usize) -> BigUint {
    bell_numbers(n).pop().unwrap()
}

/// Element assignments [`all_partitions`] makes for size `n`: every RGS
/// prefix of length `k` is one node, and there are `B_k` of those.
pub fn unpruned_node_count(n: usize) -> BigUint {
    bell_numbers(n).into_iter().skip(1).sum()
}
