//! Reference sorters: merge sort with counters, minimal merge sort, small
//! versus small sort, and the cooperative race of the first two.
//!
//! Each sorter charges its comparisons to the input's meter. Internally the
//! sorters run against a [`Meter`] that may carry a budget, which is how
//! the race stops a contender.

use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;

use crate::array::{InstrumentedArray, Meter};

/// Distinct values in ascending order with their multiplicities.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CountedSortedMultiset<T> {
    pub pairs: Vec<(T, usize)>,
}

impl<T: Clone> CountedSortedMultiset<T> {
    /// σ, the number of distinct values.
    pub fn sigma(&self) -> usize {
        self.pairs.len()
    }

    pub fn total(&self) -> usize {
        self.pairs.iter().map(|p| p.1).sum()
    }

    /// The sorted multiset with every value repeated by its multiplicity.
    pub fn expand(&self) -> Vec<T> {
        let mut out = Vec::with_capacity(self.total());
        for (v, m) in &self.pairs {
            out.extend(std::iter::repeat_n(v.clone(), *m));
        }
        out
    }
}

type Counted<T> = Vec<(T, usize)>;

/// Merges two counted lists, collapsing equal values. `None` when the
/// meter's budget runs out.
fn merge_counted<T: Ord>(l: Counted<T>, r: Counted<T>, m: &Meter) -> Option<Counted<T>> {
    let mut out = Vec::with_capacity(l.len() + r.len());
    let mut l = l.into_iter().peekable();
    let mut r = r.into_iter().peekable();
    while let (Some(x), Some(y)) = (l.peek(), r.peek()) {
        match m.try_cmp(&x.0, &y.0)? {
            Ordering::Less => out.push(l.next().unwrap()),
            Ordering::Greater => out.push(r.next().unwrap()),
            Ordering::Equal => {
                let (v, a) = l.next().unwrap();
                let (_, b) = r.next().unwrap();
                out.push((v, a + b));
            }
        }
    }
    out.extend(l);
    out.extend(r);
    Some(out)
}

fn merge_plain<T: Ord>(l: Vec<T>, r: Vec<T>, m: &Meter) -> Option<Vec<T>> {
    let mut out = Vec::with_capacity(l.len() + r.len());
    let mut l = l.into_iter().peekable();
    let mut r = r.into_iter().peekable();
    while let (Some(x), Some(y)) = (l.peek(), r.peek()) {
        if m.try_cmp(x, y)? == Ordering::Greater {
            out.push(r.next().unwrap());
        } else {
            out.push(l.next().unwrap());
        }
    }
    out.extend(l);
    out.extend(r);
    Some(out)
}

fn msc_rec<T: Ord + Clone>(v: &[T], m: &Meter) -> Option<Counted<T>> {
    match v.len() {
        0 => Some(Vec::new()),
        1 => Some(vec![(v[0].clone(), 1)]),
        len => {
            let l = msc_rec(&v[..len / 2], m)?;
            let r = msc_rec(&v[len / 2..], m)?;
            merge_counted(l, r, m)
        }
    }
}

/// Top-down merge sort whose merges collapse equal values into counters.
pub fn merge_sort_counters<T: Ord + Clone>(a: &InstrumentedArray<T>) -> CountedSortedMultiset<T> {
    let pairs = msc_rec(a.values(), a.meter()).expect("unbudgeted meter never refuses");
    CountedSortedMultiset { pairs }
}

/// Splits into maximal non-decreasing runs, each given as counted pairs
/// (equal neighbours are recognised by the same three-way comparison that
/// scans the run).
fn counted_runs<T: Ord + Clone>(v: &[T], m: &Meter) -> Option<Vec<Counted<T>>> {
    let mut runs: Vec<Counted<T>> = Vec::new();
    let mut cur: Counted<T> = Vec::new();
    for (p, x) in v.iter().enumerate() {
        if p > 0 {
            match m.try_cmp(&v[p - 1], x)? {
                Ordering::Equal => {
                    cur.last_mut().unwrap().1 += 1;
                    continue;
                }
                Ordering::Greater => runs.push(std::mem::take(&mut cur)),
                Ordering::Less => {}
            }
        }
        cur.push((x.clone(), 1));
    }
    if !cur.is_empty() {
        runs.push(cur);
    }
    Some(runs)
}

/// Repeatedly merges the two smallest lists; ties on size go to the list
/// created first. `size` measures a list.
fn huffman_merge<L>(
    lists: Vec<L>,
    size: impl Fn(&L) -> usize,
    mut merge: impl FnMut(L, L) -> Option<L>,
    mut trace: Option<&mut Vec<(usize, usize)>>,
) -> Option<Option<L>> {
    let mut slots: Vec<Option<L>> = Vec::with_capacity(2 * lists.len());
    let mut heap = BinaryHeap::new();
    for l in lists {
        heap.push(Reverse((size(&l), slots.len())));
        slots.push(Some(l));
    }
    while heap.len() > 1 {
        let Reverse((sa, a)) = heap.pop().unwrap();
        let Reverse((sb, b)) = heap.pop().unwrap();
        if let Some(t) = trace.as_deref_mut() {
            t.push((sa, sb));
        }
        let merged = merge(slots[a].take().unwrap(), slots[b].take().unwrap())?;
        heap.push(Reverse((size(&merged), slots.len())));
        slots.push(Some(merged));
    }
    Some(heap.pop().map(|Reverse((_, i))| slots[i].take().unwrap()))
}

fn mms_core<T: Ord + Clone>(v: &[T], m: &Meter, trace: Option<&mut Vec<(usize, usize)>>) -> Option<Vec<T>> {
    let mut runs: Vec<Vec<T>> = Vec::new();
    for (p, x) in v.iter().enumerate() {
        if p == 0 || m.try_cmp(&v[p - 1], x)? == Ordering::Greater {
            runs.push(Vec::new());
        }
        runs.last_mut().unwrap().push(x.clone());
    }
    let merged = huffman_merge(runs, Vec::len, |l, r| merge_plain(l, r, m), trace)?;
    Some(merged.unwrap_or_default())
}

/// Detects runs, then merges the two shortest runs until one remains.
pub fn minimal_merge_sort<T: Ord + Clone>(a: &InstrumentedArray<T>) -> Vec<T> {
    mms_core(a.values(), a.meter(), None).expect("unbudgeted meter never refuses")
}

/// [`minimal_merge_sort`] that also reports the sizes of each merge.
pub fn minimal_merge_sort_traced<T: Ord + Clone>(a: &InstrumentedArray<T>) -> (Vec<T>, Vec<(usize, usize)>) {
    let mut trace = Vec::new();
    let out = mms_core(a.values(), a.meter(), Some(&mut trace)).expect("unbudgeted meter never refuses");
    (out, trace)
}

/// Runs with counters, merged shortest-first by their current number of
/// distinct values.
pub fn small_vs_small_sort<T: Ord + Clone>(a: &InstrumentedArray<T>) -> CountedSortedMultiset<T> {
    let m = a.meter();
    let runs = counted_runs(a.values(), m).expect("unbudgeted meter never refuses");
    let pairs = huffman_merge(runs, Vec::len, |l, r| merge_counted(l, r, m), None)
        .expect("unbudgeted meter never refuses")
        .unwrap_or_default();
    CountedSortedMultiset { pairs }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Contender {
    MergeSortCounters,
    MinimalMergeSort,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RaceOutcome<T> {
    pub sorted: Vec<T>,
    pub winner: Contender,
    /// Comparisons each contender had made when the race stopped.
    pub msc_comparisons: u64,
    pub mms_comparisons: u64,
    /// Twice the winner's count: the cost of alternating one comparison
    /// per turn.
    pub comparisons: u64,
}

/// Alternates merge sort with counters and minimal merge sort one
/// comparison at a time (the former moving first) and stops as soon as
/// either finishes. The alternation is simulated by rerunning both
/// contenders under doubling budgets; the charged cost is `2 · min`.
pub fn parallel_race<T: Ord + Clone>(a: &InstrumentedArray<T>) -> RaceOutcome<T> {
    let v = a.values();
    let mut budget = 0u64;
    loop {
        let m1 = Meter::with_limit(budget);
        let m2 = Meter::with_limit(budget);
        let r1 = msc_rec(v, &m1);
        let r2 = mms_core(v, &m2, None);
        let done1 = r1.as_ref().map(|_| m1.count());
        let done2 = r2.as_ref().map(|_| m2.count());
        let msc_wins = match (done1, done2) {
            (None, None) => {
                budget = if budget == 0 { 1 } else { 2 * budget };
                continue;
            }
            (Some(c1), Some(c2)) => c1 <= c2,
            (Some(_), None) => true,
            (None, Some(_)) => false,
        };
        let out = if msc_wins {
            let c = done1.unwrap();
            RaceOutcome {
                sorted: CountedSortedMultiset { pairs: r1.unwrap() }.expand(),
                winner: Contender::MergeSortCounters,
                msc_comparisons: c,
                mms_comparisons: c.saturating_sub(1),
                comparisons: 2 * c,
            }
        } else {
            let c = done2.unwrap();
            RaceOutcome {
                sorted: r2.unwrap(),
                winner: Contender::MinimalMergeSort,
                msc_comparisons: c,
                mms_comparisons: c,
                comparisons: 2 * c,
            }
        };
        a.meter().charge(out.comparisons);
        return out;
    }
}
