//! Run and pivot-position detection.
//!
//! Positions are 0-based throughout the crate and windows are half-open
//! `[lo, hi)`. A pivot position is stored as the index of the first element
//! of its right part, so the 1-based position `p` of the usual definition is
//! stored as `p - 1`.

use std::cmp::Ordering;
use std::ops::Range;

use crate::array::InstrumentedArray;

/// The maximal non-decreasing runs of an input.
///
/// Besides the boundaries, the decomposition keeps the outcome of every
/// in-run comparison made while scanning: `is_tie(p)` tells whether
/// `values[p] == values[p + 1]` inside a run. Later phases read these
/// outcomes instead of comparing again.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunDecomposition {
    starts: Vec<usize>,
    ties: Vec<bool>,
}

impl RunDecomposition {
    /// Builds a decomposition from known boundaries without comparisons.
    /// `starts` must begin with 0 (for nonempty inputs) and be strictly
    /// increasing; `ties` must have one entry per position.
    pub fn from_parts(starts: Vec<usize>, ties: Vec<bool>) -> Self {
        let n = ties.len();
        let mut starts = starts;
        starts.push(n);
        Self { starts, ties }
    }

    /// Number of runs, ρ.
    pub fn len(&self) -> usize {
        self.starts.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Total number of elements, n.
    pub fn n(&self) -> usize {
        *self.starts.last().unwrap_or(&0)
    }

    /// Start position of every run.
    pub fn boundaries(&self) -> &[usize] {
        &self.starts[..self.len()]
    }

    pub fn run(&self, id: usize) -> Range<usize> {
        self.starts[id]..self.starts[id + 1]
    }

    pub fn runs(&self) -> impl Iterator<Item = Range<usize>> + '_ {
        self.starts.windows(2).map(|w| w[0]..w[1])
    }

    pub fn run_sizes(&self) -> Vec<usize> {
        self.starts.windows(2).map(|w| w[1] - w[0]).collect()
    }

    /// Index of the run containing position `p`.
    pub fn run_of(&self, p: usize) -> usize {
        self.starts.partition_point(|&s| s <= p) - 1
    }

    /// Whether `values[p] == values[p + 1]` with both inside one run.
    #[inline]
    pub fn is_tie(&self, p: usize) -> bool {
        self.ties[p]
    }
}

/// Scans the input once, splitting it into maximal non-decreasing runs.
/// Performs exactly `max(n - 1, 0)` comparisons.
pub fn detect_runs<T: Ord>(a: &InstrumentedArray<T>) -> RunDecomposition {
    let n = a.len();
    let mut starts = Vec::new();
    let mut ties = vec![false; n];
    if n > 0 {
        starts.push(0);
    }
    for p in 1..n {
        match a.cmp(p - 1, p) {
            Ordering::Greater => starts.push(p),
            Ordering::Equal => ties[p - 1] = true,
            Ordering::Less => {}
        }
    }
    RunDecomposition::from_parts(starts, ties)
}

/// Positions `p` (0-based start of the right part) such that every element
/// before `p` is at most every element from `p` on.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PivotPositions {
    positions: Vec<usize>,
    left_max: Vec<usize>,
    right_min: Vec<usize>,
}

impl PivotPositions {
    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    /// The positions in the 1-based convention (`p ∈ [2..n]`).
    pub fn one_based(&self) -> Vec<usize> {
        self.positions.iter().map(|p| p + 1).collect()
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    /// Position of a maximum element left of the `k`-th pivot position.
    pub fn left_max(&self, k: usize) -> usize {
        self.left_max[k]
    }

    /// Position of a minimum element at or right of the `k`-th pivot
    /// position.
    pub fn right_min(&self, k: usize) -> usize {
        self.right_min[k]
    }
}

/// Finds every pivot position with a prefix-maximum sweep, a suffix-minimum
/// sweep and one test per interior position: at most `3(n - 1)` comparisons.
pub fn detect_pivot_positions<T: Ord>(a: &InstrumentedArray<T>) -> PivotPositions {
    let n = a.len();
    if n < 2 {
        return PivotPositions::default();
    }
    // prefix_max[p] = position of a maximum of values[0..=p]
    let mut prefix_max = vec![0; n];
    for p in 1..n {
        let best = prefix_max[p - 1];
        prefix_max[p] = if a.cmp(p, best) == Ordering::Less {
            best
        } else {
            p
        };
    }
    // suffix_min[p] = position of a minimum of values[p..]
    let mut suffix_min = vec![n - 1; n];
    for p in (0..n - 1).rev() {
        let best = suffix_min[p + 1];
        suffix_min[p] = if a.cmp(p, best) == Ordering::Greater {
            best
        } else {
            p
        };
    }
    let mut out = PivotPositions::default();
    for p in 1..n {
        if a.cmp(prefix_max[p - 1], suffix_min[p]) != Ordering::Greater {
            out.positions.push(p);
            out.left_max.push(prefix_max[p - 1]);
            out.right_min.push(suffix_min[p]);
        }
    }
    out
}

/// Cuts `[0, n)` at the pivot positions into `φ + 1` contiguous windows.
pub fn split_by_pivot_positions(n: usize, p: &PivotPositions) -> Vec<Range<usize>> {
    if n == 0 {
        return Vec::new();
    }
    let mut out = Vec::with_capacity(p.len() + 1);
    let mut lo = 0;
    for &q in p.positions() {
        out.push(lo..q);
        lo = q;
    }
    out.push(lo..n);
    out
}

/// A half-open unresolved window `[lo, hi)` inside one run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RunCursor {
    pub run: usize,
    pub lo: usize,
    pub hi: usize,
}

impl RunCursor {
    pub fn new(run: usize, lo: usize, hi: usize) -> Self {
        debug_assert!(lo <= hi);
        Self { run, lo, hi }
    }

    pub fn len(&self) -> usize {
        self.hi - self.lo
    }

    pub fn is_empty(&self) -> bool {
        self.lo == self.hi
    }

    pub fn range(&self) -> Range<usize> {
        self.lo..self.hi
    }
}

/// The nonempty run windows of `runs` restricted to the positions `range`.
pub fn windows_in(runs: &RunDecomposition, range: Range<usize>) -> Vec<RunCursor> {
    if range.is_empty() {
        return Vec::new();
    }
    let first = runs.run_of(range.start);
    let last = runs.run_of(range.end - 1);
    (first..=last)
        .map(|id| {
            let r = runs.run(id);
            RunCursor::new(id, r.start.max(range.start), r.end.min(range.end))
        })
        .collect()
}
