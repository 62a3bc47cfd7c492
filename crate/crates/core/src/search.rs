use std::ops::ControlFlow;

use num_bigint::BigUint;

use crate::state::{SearchState, SearchStats, Verdict};
use crate::{ParamError, Params};

/// Borrowed view of a complete partition as a restricted growth string.
///
/// Only valid while the enumerator is not advanced; copy with
/// [`to_vec`](Self::to_vec) to keep it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PartitionView<'a> {
    labels: &'a [usize],
    blocks: usize,
}

impl<'a> PartitionView<'a> {
    /// Wrap an arbitrary label slice. The caller vouches that it is a
    /// restricted growth string.
    pub fn new(labels: &'a [usize]) -> Self {
        let blocks = labels.iter().copied().max().unwrap_or(0);
        PartitionView { labels, blocks }
    }

    #[inline]
    pub fn labels(&self) -> &'a [usize] {
        self.labels
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    #[inline]
    pub fn num_blocks(&self) -> usize {
        self.blocks
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.labels.to_vec()
    }

    /// Blocks in label order, each listing its 1-based elements ascending.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.blocks];
        for (i, &label) in self.labels.iter().enumerate() {
            out[label - 1].push(i + 1);
        }
        out
    }
}

/// Result of a traversal that the visitor may stop early.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome<B> {
    pub stats: SearchStats,
    pub flow: ControlFlow<B>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Branch {
    /// Any label in `1..=max_label + 1`.
    Full,
    /// Only the current small blocks.
    Forced,
}

/// Pending children of one prefix: the next label to try and which
/// candidates are allowed.
#[derive(Debug, Clone, Copy)]
struct Frame {
    branch: Branch,
    next: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Phase {
    Running,
    /// The state holds a reported partition that must be undone first.
    AtSolution,
    Done,
}

/// Streaming δ-partition enumerator.
///
/// Emits every δ-partition exactly once as a restricted growth string, in
/// strictly increasing lexicographic order. The traversal uses an explicit
/// stack of at most `n` frames, so its depth is not bounded by the call
/// stack, and after construction it performs no heap allocation.
///
/// ```
/// use delta_partitions::{Enumerator, Params};
///
/// let mut it = Enumerator::new(Params::new(3, 0).unwrap());
/// let mut all = Vec::new();
/// while let Some(view) = it.next_solution() {
///     all.push(view.to_vec());
/// }
/// assert_eq!(all.len(), 5);
/// assert_eq!(it.stats().solutions, 5);
/// ```
#[derive(Debug, Clone)]
pub struct Enumerator {
    state: SearchState,
    stack: Vec<Frame>,
    phase: Phase,
    check_counters: bool,
    node_limit: Option<u64>,
    truncated: bool,
}

impl Enumerator {
    pub fn new(params: Params) -> Self {
        let mut stack = Vec::with_capacity(params.n());
        stack.push(Frame {
            branch: Branch::Full,
            next: 1,
        });
        Enumerator {
            state: SearchState::new(params),
            stack,
            phase: Phase::Running,
            check_counters: false,
            node_limit: None,
            truncated: false,
        }
    }

    /// Recount the block sizes and deficit at every node and panic on any
    /// disagreement with the incremental counters. Slow; meant for tests.
    pub fn with_counter_checks(mut self, on: bool) -> Self {
        self.check_counters = on;
        self
    }

    /// Stop once `limit` element assignments have been made.
    /// [`truncated`](Self::truncated) reports whether that happened.
    pub fn with_node_limit(mut self, limit: u64) -> Self {
        self.node_limit = Some(limit);
        self
    }

    #[inline]
    pub fn params(&self) -> Params {
        self.state.params()
    }

    #[inline]
    pub fn stats(&self) -> &SearchStats {
        self.state.stats()
    }

    /// The underlying search state (the current prefix while running).
    #[inline]
    pub fn state(&self) -> &SearchState {
        &self.state
    }

    pub fn truncated(&self) -> bool {
        self.truncated
    }

    pub fn is_done(&self) -> bool {
        self.phase == Phase::Done
    }

    /// Heap capacity, in elements, of the state arrays plus the frame stack.
    pub fn capacity(&self) -> usize {
        self.state.capacity() + self.stack.capacity()
    }

    /// Advance to the next δ-partition.
    pub fn next_solution(&mut self) -> Option<PartitionView<'_>> {
        match self.phase {
            Phase::Done => return None,
            Phase::AtSolution => {
                self.state.unassign();
                self.phase = Phase::Running;
            }
            Phase::Running => {}
        }

        // The top frame belongs to the prefix of length `stack.len() - 1`.
        while let Some(&frame) = self.stack.last() {
            let candidate = match frame.branch {
                Branch::Full => Some(frame.next).filter(|&k| k <= self.state.max_label() + 1),
                Branch::Forced => self.state.small_labels_from(frame.next).next(),
            };
            let Some(label) = candidate else {
                self.stack.pop();
                if self.state.assigned() > 0 {
                    self.state.unassign();
                }
                continue;
            };
            if self
                .node_limit
                .is_some_and(|limit| self.state.stats().nodes >= limit)
            {
                self.truncated = true;
                break;
            }

            if let Some(top) = self.stack.last_mut() {
                top.next = label + 1;
            }
            self.state.assign(label);
            if self.check_counters {
                if let Err(e) = self.state.check_counters() {
                    panic!("{e}");
                }
            }

            match self.state.verdict() {
                Verdict::Prune => {
                    self.state.stats_mut().prunes_deficit += 1;
                    self.state.unassign();
                }
                Verdict::Forced => {
                    self.state.stats_mut().forced_branches += 1;
                    self.stack.push(Frame {
                        branch: Branch::Forced,
                        next: 1,
                    });
                }
                Verdict::Continue if self.state.is_complete() => {
                    self.state.stats_mut().solutions += 1;
                    self.phase = Phase::AtSolution;
                    return Some(PartitionView {
                        labels: self.state.labels(),
                        blocks: self.state.max_label(),
                    });
                }
                Verdict::Continue => {
                    self.stack.push(Frame {
                        branch: Branch::Full,
                        next: 1,
                    });
                }
            }
        }

        self.finish();
        None
    }

    /// Abandon the traversal and reset the prefix, keeping the statistics.
    pub fn finish(&mut self) {
        self.state.clear();
        self.stack.clear();
        self.phase = Phase::Done;
    }

    /// Drive the traversal to completion, handing each partition to
    /// `visitor`. Stops early, after cleaning up, if the visitor breaks.
    pub fn run<B, F>(&mut self, mut visitor: F) -> ControlFlow<B>
    where
        F: FnMut(PartitionView<'_>) -> ControlFlow<B>,
    {
        while let Some(view) = self.next_solution() {
            if let ControlFlow::Break(b) = visitor(view) {
                self.finish();
                return ControlFlow::Break(b);
            }
        }
        ControlFlow::Continue(())
    }

    /// Count the remaining partitions without visiting them.
    pub fn count_remaining(&mut self) -> BigUint {
        let mut total = BigUint::ZERO;
        let mut fast = 0u64;
        while self.next_solution().is_some() {
            fast = match fast.checked_add(1) {
                Some(v) => v,
                None => {
                    total += fast;
                    1
                }
            };
        }
        total + fast
    }
}

/// Visit every δ-partition of `{1..n}` in lexicographic RGS order.
pub fn enumerate<F>(params: Params, mut visitor: F) -> Result<SearchStats, ParamError>
where
    F: FnMut(PartitionView<'_>),
{
    let mut it = Enumerator::new(params);
    let _ = it.run(|view| -> ControlFlow<()> {
        visitor(view);
        ControlFlow::Continue(())
    });
    Ok(*it.stats())
}

/// Like [`enumerate`], but the visitor can stop the traversal.
pub fn try_enumerate<B, F>(params: Params, visitor: F) -> Result<Outcome<B>, ParamError>
where
    F: FnMut(PartitionView<'_>) -> ControlFlow<B>,
{
    let mut it = Enumerator::new(params);
    let flow = it.run(visitor);
    Ok(Outcome {
        stats: *it.stats(),
        flow,
    })
}

/// Exact number of δ-partitions.
pub fn count(params: Params) -> Result<BigUint, ParamError> {
    Ok(Enumerator::new(params).count_remaining())
}
