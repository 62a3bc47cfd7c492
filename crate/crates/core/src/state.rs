use std::fmt;

use crate::{ParamError, Params};

/// Counters collected during a traversal.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct SearchStats {
    /// Element assignments performed.
    pub nodes: u64,
    /// Prefixes abandoned because the deficit exceeded the unassigned count.
    pub prunes_deficit: u64,
    /// Prefixes whose next element was restricted to the small blocks.
    pub forced_branches: u64,
    /// Complete partitions reported.
    pub solutions: u64,
}

/// Outcome of inspecting the current prefix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PruneCheck {
    /// No restriction: extend with any label in `1..=max_label + 1`, or report
    /// if the prefix is complete.
    Continue,
    /// The small blocks need more elements than remain unassigned.
    Prune,
    /// The small blocks need exactly the remaining elements; the next element
    /// must join one of these labels (ascending).
    Forced(Vec<usize>),
}

/// Internal, allocation-free form of [`PruneCheck`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Verdict {
    Continue,
    Prune,
    Forced,
}

/// Disagreement between the incremental counters and a full recount.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CounterMismatch {
    pub prefix: usize,
    pub deficit: u64,
    pub recounted_deficit: u64,
    pub small_blocks: usize,
    pub recounted_small_blocks: usize,
    pub sizes_consistent: bool,
}

impl fmt::Display for CounterMismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "counter mismatch at prefix {}: deficit {} (recount {}), small blocks {} (recount {}), block sizes {}",
            self.prefix,
            self.deficit,
            self.recounted_deficit,
            self.small_blocks,
            self.recounted_small_blocks,
            if self.sizes_consistent { "consistent" } else { "inconsistent" },
        )
    }
}

impl std::error::Error for CounterMismatch {}

/// Partial assignment of labels to elements together with the incrementally
/// maintained block sizes, deficit and small-block count.
///
/// Elements are assigned strictly left to right. `assign` and `unassign`
/// are exact inverses and each costs O(1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchState {
    params: Params,
    /// `labels[i]` is the label of element `i + 1`, 0 while unassigned.
    labels: Vec<usize>,
    prefix: usize,
    /// Indexed by label; slot 0 is unused.
    sizes: Vec<usize>,
    max_label: usize,
    deficit: u64,
    small_blocks: usize,
    stats: SearchStats,
}

impl SearchState {
    pub fn new(params: Params) -> Self {
        let n = params.n();
        SearchState {
            params,
            labels: vec![0; n],
            prefix: 0,
            sizes: vec![0; n + 1],
            max_label: 0,
            deficit: 0,
            small_blocks: 0,
            stats: SearchStats::default(),
        }
    }

    pub fn with_size(n: usize, delta: usize) -> Result<Self, ParamError> {
        Params::new(n, delta).map(Self::new)
    }

    #[inline]
    pub fn params(&self) -> Params {
        self.params
    }

    /// Full label array; entries past [`assigned`](Self::assigned) are 0.
    #[inline]
    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    #[inline]
    pub fn assigned(&self) -> usize {
        self.prefix
    }

    #[inline]
    pub fn unassigned(&self) -> usize {
        self.params.n() - self.prefix
    }

    #[inline]
    pub fn is_complete(&self) -> bool {
        self.prefix == self.params.n()
    }

    #[inline]
    pub fn max_label(&self) -> usize {
        self.max_label
    }

    /// Number of elements currently carrying `label` (0 for unused labels).
    pub fn block_size(&self, label: usize) -> usize {
        self.sizes.get(label).copied().unwrap_or(0)
    }

    /// Block sizes for labels `1..=max_label`.
    pub fn block_sizes(&self) -> &[usize] {
        &self.sizes[1..=self.max_label]
    }

    /// Elements still needed to lift every small block above `delta`.
    #[inline]
    pub fn deficit(&self) -> u64 {
        self.deficit
    }

    /// Number of nonempty blocks of size at most `delta`.
    #[inline]
    pub fn small_block_count(&self) -> usize {
        self.small_blocks
    }

    #[inline]
    pub fn stats(&self) -> &SearchStats {
        &self.stats
    }

    pub(crate) fn stats_mut(&mut self) -> &mut SearchStats {
        &mut self.stats
    }

    /// Heap capacity, in elements, of the label and block-size arrays.
    pub fn capacity(&self) -> usize {
        self.labels.capacity() + self.sizes.capacity()
    }

    /// Assign `label` to the next unassigned element.
    ///
    /// # Panics
    ///
    /// If every element is already assigned, or `label` is outside
    /// `1..=max_label + 1`.
    pub fn assign(&mut self, label: usize) {
        assert!(
            self.prefix < self.params.n(),
            "assign: all {} elements are already assigned",
            self.params.n()
        );
        assert!(
            label >= 1 && label <= self.max_label + 1,
            "assign: label {label} outside 1..={}",
            self.max_label + 1
        );

        let delta = self.params.delta();
        self.labels[self.prefix] = label;
        self.prefix += 1;
        let size = self.sizes[label] + 1;
        self.sizes[label] = size;

        if size == 1 {
            self.max_label = label;
            self.deficit += delta as u64;
            if delta >= 1 {
                self.small_blocks += 1;
            }
        } else if size <= delta + 1 {
            // block was small before this element
            self.deficit -= 1;
            if size == delta + 1 {
                self.small_blocks -= 1;
            }
        }
        self.stats.nodes += 1;
    }

    /// Remove the most recently assigned label.
    ///
    /// # Panics
    ///
    /// If nothing is assigned.
    pub fn unassign(&mut self) {
        assert!(self.prefix > 0, "unassign: nothing is assigned");

        let delta = self.params.delta();
        self.prefix -= 1;
        let label = std::mem::take(&mut self.labels[self.prefix]);
        let size = self.sizes[label];
        self.sizes[label] = size - 1;

        if size == 1 {
            // a singleton at the end of an RGS prefix is the newest label
            debug_assert_eq!(label, self.max_label);
            self.max_label -= 1;
            self.deficit -= delta as u64;
            if delta >= 1 {
                self.small_blocks -= 1;
            }
        } else if size <= delta + 1 {
            self.deficit += 1;
            if size == delta + 1 {
                self.small_blocks += 1;
            }
        }
    }

    /// Unassign everything, keeping the statistics.
    pub fn clear(&mut self) {
        while self.prefix > 0 {
            self.unassign();
        }
    }

    /// Labels of the small blocks in ascending order.
    pub fn small_blocks(&self) -> Vec<usize> {
        self.small_labels_from(1).collect()
    }

    /// Small-block labels `>= from`, ascending, without allocating.
    pub(crate) fn small_labels_from(&self, from: usize) -> impl Iterator<Item = usize> + '_ {
        let delta = self.params.delta();
        (from.max(1)..=self.max_label).filter(move |&j| {
            let s = self.sizes[j];
            s > 0 && s <= delta
        })
    }

    pub(crate) fn verdict(&self) -> Verdict {
        if self.small_blocks == 0 {
            return Verdict::Continue;
        }
        let remaining = self.unassigned() as u64;
        if self.deficit > remaining {
            Verdict::Prune
        } else if self.deficit == remaining {
            Verdict::Forced
        } else {
            Verdict::Continue
        }
    }

    /// Classify the current prefix.
    pub fn prune_check(&self) -> PruneCheck {
        match self.verdict() {
            Verdict::Continue => PruneCheck::Continue,
            Verdict::Prune => PruneCheck::Prune,
            Verdict::Forced => PruneCheck::Forced(self.small_blocks()),
        }
    }

    /// Recount block sizes, deficit and small blocks from the labels and
    /// compare them with the incrementally maintained values.
    pub fn check_counters(&self) -> Result<(), CounterMismatch> {
        let delta = self.params.delta();
        let mut recount = vec![0usize; self.sizes.len()];
        for &label in &self.labels[..self.prefix] {
            recount[label] += 1;
        }
        let recounted_max = recount.iter().rposition(|&s| s > 0).unwrap_or(0);
        let sizes_consistent = recount == self.sizes
            && recounted_max == self.max_label
            && self.labels[self.prefix..].iter().all(|&l| l == 0);

        let mut recounted_deficit = 0u64;
        let mut recounted_small_blocks = 0usize;
        for &s in &recount[1..] {
            if s > 0 && s <= delta {
                recounted_deficit += (delta - s + 1) as u64;
                recounted_small_blocks += 1;
            }
        }

        if sizes_consistent
            && recounted_deficit == self.deficit
            && recounted_small_blocks == self.small_blocks
        {
            Ok(())
        } else {
            Err(CounterMismatch {
                prefix: self.prefix,
                deficit: self.deficit,
                recounted_deficit,
                small_blocks: self.small_blocks,
                recounted_small_blocks,
                sizes_consistent,
            })
        }
    }
}
