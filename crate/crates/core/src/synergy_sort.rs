//! DLM sort (merging runs through a heap of run heads) and Quick Synergy
//! Sort (splitting runs around the median of their middles).

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::array::InstrumentedArray;
use crate::baselines::CountedSortedMultiset;
use crate::partition::{split, Band};
use crate::runs::{
    detect_pivot_positions, detect_runs, split_by_pivot_positions, windows_in, RunCursor, RunDecomposition,
};
use crate::search::{search_boundary, Anchor, Mode};

/// A block certified by the union, as a segment of one run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TraceBlock {
    pub run: usize,
    pub start: usize,
    pub len: usize,
}

/// Result of a union of sorted runs: `(position of a representative,
/// multiplicity)` per distinct value in ascending order, plus the blocks
/// the union certified, in output order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct UnionOutput {
    pub entries: Vec<(usize, usize)>,
    pub trace: Vec<TraceBlock>,
}

impl UnionOutput {
    pub fn to_multiset<T: Ord + Clone>(&self, a: &InstrumentedArray<T>) -> CountedSortedMultiset<T> {
        CountedSortedMultiset {
            pairs: self.entries.iter().map(|&(p, m)| (a.get(p).clone(), m)).collect(),
        }
    }
}

/// A run head in the union heap. Ordering it costs one counted comparison;
/// equal keys fall back to run order at no cost.
struct Head<'a, T> {
    a: &'a InstrumentedArray<T>,
    pos: usize,
    run: usize,
}

impl<T: Ord> PartialEq for Head<'_, T> {
    fn eq(&self, other: &Self) -> bool {
        self.pos == other.pos
    }
}
impl<T: Ord> Eq for Head<'_, T> {}
impl<T: Ord> PartialOrd for Head<'_, T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<T: Ord> Ord for Head<'_, T> {
    // Reversed: the heap's maximum is the smallest head.
    fn cmp(&self, other: &Self) -> Ordering {
        self.a.cmp(other.pos, self.pos).then(other.run.cmp(&self.run))
    }
}

/// Appends the run segment `[lo, hi)` (all values below every other run's
/// head) to the output, splitting out equal neighbours as repeated values.
fn emit_segment(runs: &RunDecomposition, run: usize, lo: usize, hi: usize, out: &mut UnionOutput) {
    let mut open = false;
    let mut p = lo;
    while p < hi {
        let mut e = p + 1;
        while e < hi && runs.is_tie(e - 1) {
            e += 1;
        }
        out.entries.push((p, e - p));
        if e - p > 1 {
            out.trace.extend((p..e).map(|q| TraceBlock { run, start: q, len: 1 }));
            open = false;
        } else if open {
            out.trace.last_mut().unwrap().len += 1;
        } else {
            out.trace.push(TraceBlock { run, start: p, len: 1 });
            open = true;
        }
        p = e;
    }
}

/// Union of all runs of `a`.
pub fn dlm_union<T: Ord>(a: &InstrumentedArray<T>, runs: &RunDecomposition) -> UnionOutput {
    let mut out = UnionOutput::default();
    let mut heap: BinaryHeap<Head<'_, T>> = runs
        .runs()
        .enumerate()
        .map(|(run, r)| Head { a, pos: r.start, run })
        .collect();
    while let Some(h) = heap.pop() {
        let mut group = vec![h];
        while let Some(top) = heap.peek() {
            if a.cmp(top.pos, group[0].pos) != Ordering::Equal {
                break;
            }
            group.push(heap.pop().unwrap());
        }
        if group.len() > 1 {
            // Several runs share the minimum: take each run's copies, which
            // the run scan already recorded as ties.
            let mut total = 0;
            for g in &group {
                let end = runs.run(g.run).end;
                let mut e = g.pos + 1;
                while e < end && runs.is_tie(e - 1) {
                    e += 1;
                }
                out.trace.extend((g.pos..e).map(|q| TraceBlock { run: g.run, start: q, len: 1 }));
                total += e - g.pos;
                if e < end {
                    heap.push(Head { a, pos: e, run: g.run });
                }
            }
            out.entries.push((group[0].pos, total));
        } else {
            // Unique minimum: everything in its run below the second
            // minimum forms one block.
            let h = &group[0];
            let end = runs.run(h.run).end;
            let boundary = match heap.peek() {
                None => end,
                Some(s) => search_boundary(h.pos + 1..end, Anchor::Start, Mode::FirstGeq, Some(runs), |p| {
                    a.cmp(p, s.pos)
                }),
            };
            emit_segment(runs, h.run, h.pos, boundary, &mut out);
            if boundary < end {
                heap.push(Head { a, pos: boundary, run: h.run });
            }
        }
    }
    out
}

/// Detects runs, then merges them with [`dlm_union`].
pub fn dlm_sort<T: Ord + Clone>(a: &InstrumentedArray<T>) -> CountedSortedMultiset<T> {
    let runs = detect_runs(a);
    dlm_union(a, &runs).to_multiset(a)
}

/// Sorted output of a splitting sorter together with the positions of the
/// pivots (μ of every splitting step) it used.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SortOutcome<T> {
    pub sorted: Vec<T>,
    pub pivots: Vec<usize>,
}

enum Task {
    Solve(Vec<RunCursor>),
    Emit(Band),
}

/// Sorts one sub-instance, appending its positions in sorted order.
pub(crate) fn sort_windows<T: Ord>(
    a: &InstrumentedArray<T>,
    runs: &RunDecomposition,
    windows: Vec<RunCursor>,
    order: &mut Vec<usize>,
    pivots: &mut Vec<usize>,
) {
    let mut stack = vec![Task::Solve(windows)];
    while let Some(task) = stack.pop() {
        match task {
            Task::Solve(w) if w.len() <= 1 => {
                if let Some(w) = w.first() {
                    order.extend(w.range());
                }
            }
            Task::Solve(w) => {
                let s = split(a, runs, &w);
                pivots.push(s.band.mu);
                stack.push(Task::Solve(s.right));
                stack.push(Task::Emit(s.band));
                stack.push(Task::Solve(s.left));
            }
            Task::Emit(b) => order.extend(b.positions()),
        }
    }
}

fn gather<T: Clone + Ord>(a: &InstrumentedArray<T>, order: &[usize]) -> Vec<T> {
    order.iter().map(|&p| a.get(p).clone()).collect()
}

/// Quick Synergy Sort: detect runs, then split recursively around the
/// median of the runs' middles.
pub fn quick_synergy_sort<T: Ord + Clone>(a: &InstrumentedArray<T>) -> SortOutcome<T> {
    let runs = detect_runs(a);
    let mut order = Vec::with_capacity(a.len());
    let mut pivots = Vec::new();
    sort_windows(a, &runs, windows_in(&runs, 0..a.len()), &mut order, &mut pivots);
    SortOutcome {
        sorted: gather(a, &order),
        pivots,
    }
}

/// Quick Synergy Sort run independently on each sub-instance delimited by
/// the input's pivot positions.
pub fn global_sort<T: Ord + Clone>(a: &InstrumentedArray<T>) -> SortOutcome<T> {
    let runs = detect_runs(a);
    let pp = detect_pivot_positions(a);
    let mut order = Vec::with_capacity(a.len());
    let mut pivots = Vec::new();
    for range in split_by_pivot_positions(a.len(), &pp) {
        sort_windows(a, &runs, windows_in(&runs, range), &mut order, &mut pivots);
    }
    SortOutcome {
        sorted: gather(a, &order),
        pivots,
    }
}
