//! Offline multiselection: answer a batch of select queries while sorting
//! only the parts of the input that separate the queried ranks.

use std::ops::Range;

use crate::array::InstrumentedArray;
use crate::error::{Error, Result};
use crate::measures::predictor_multiselect;
use crate::partition::split;
use crate::runs::{
    detect_pivot_positions, detect_runs, split_by_pivot_positions, windows_in, RunCursor, RunDecomposition,
};

/// Select ranks (1-based), sorted and deduplicated, remembering the order
/// in which the caller asked for them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QueryBatch {
    ranks: Vec<usize>,
    back: Vec<usize>,
}

impl QueryBatch {
    /// Validates every rank against `[1..n]` before anything else happens.
    pub fn new(ranks: &[usize], n: usize) -> Result<Self> {
        if let Some(&rank) = ranks.iter().find(|&&r| r == 0 || r > n) {
            return Err(Error::RankOutOfRange { rank, n });
        }
        let mut distinct = ranks.to_vec();
        distinct.sort_unstable();
        distinct.dedup();
        let back = ranks
            .iter()
            .map(|r| distinct.binary_search(r).expect("present"))
            .collect();
        Ok(Self { ranks: distinct, back })
    }

    /// The distinct ranks in increasing order.
    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    /// Number of queries as asked, duplicates included.
    pub fn len(&self) -> usize {
        self.back.len()
    }

    pub fn is_empty(&self) -> bool {
        self.back.is_empty()
    }

    /// Maps one answer per distinct rank back to the caller's order.
    pub fn fan_out<A: Clone>(&self, per_distinct: &[A]) -> Vec<A> {
        self.back.iter().map(|&i| per_distinct[i].clone()).collect()
    }
}

/// A pivot computed during multiselection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PivotInfo {
    /// Position of μ in the input.
    pub position: usize,
    /// 0-based rank interval occupied by μ's band.
    pub ranks: Range<usize>,
    /// Number of runs holding a copy of μ.
    pub pivot_blocks: usize,
}

/// A rank interval whose elements are known to lie between its neighbours
/// but have not been ordered.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gap {
    pub ranks: Range<usize>,
    pub windows: Vec<RunCursor>,
}

/// What a multiselection learned about the order of the input.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PartialOrderState {
    pub n: usize,
    /// Start of every run, followed by `n`.
    pub run_bounds: Vec<usize>,
    /// Pivots in increasing rank order.
    pub pivots: Vec<PivotInfo>,
    /// Cuts made inside runs, sorted and distinct.
    pub cuts: Vec<usize>,
    /// Rank intervals that were left unsorted.
    pub gaps: Vec<Gap>,
    /// Rank intervals whose elements are in final position.
    pub resolved: Vec<Range<usize>>,
}

impl PartialOrderState {
    fn new(runs: &RunDecomposition) -> Self {
        let mut run_bounds = runs.boundaries().to_vec();
        run_bounds.push(runs.n());
        Self {
            n: runs.n(),
            run_bounds,
            ..Self::default()
        }
    }

    fn finish(&mut self) {
        self.pivots.sort_by_key(|p| p.ranks.start);
        self.gaps.sort_by_key(|g| g.ranks.start);
        self.resolved.sort_by_key(|r| r.start);
        self.cuts.sort_unstable();
        self.cuts.dedup();
    }

    /// ρ, the number of runs.
    pub fn rho(&self) -> usize {
        self.run_bounds.len().saturating_sub(1)
    }

    /// Sizes `s_i` of the nonempty run segments delimited by run
    /// boundaries and pivot cuts.
    pub fn selection_block_sizes(&self) -> Vec<usize> {
        let mut points: Vec<usize> = self.run_bounds.iter().chain(&self.cuts).copied().collect();
        points.sort_unstable();
        points.dedup();
        points.windows(2).map(|w| w[1] - w[0]).filter(|&s| s > 0).collect()
    }

    /// β, the number of selection blocks.
    pub fn beta(&self) -> usize {
        self.selection_block_sizes().len()
    }

    /// `m_i` of every pivot whose value occurs in more than one run.
    pub fn pivot_block_weights(&self) -> Vec<usize> {
        self.pivots.iter().map(|p| p.pivot_blocks).filter(|&m| m > 1).collect()
    }

    /// `ρ_i`: for each unsorted interval between consecutive pivots, the
    /// number of runs with elements in it.
    pub fn segment_run_counts(&self) -> Vec<usize> {
        self.gaps.iter().map(|g| g.windows.len()).collect()
    }

    /// The cost formula evaluated on this execution's parameters.
    pub fn predictor(&self) -> f64 {
        predictor_multiselect(
            self.n,
            &self.selection_block_sizes(),
            self.beta(),
            self.rho(),
            &self.pivot_block_weights(),
            &self.segment_run_counts(),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiSelectOutcome<T> {
    /// Answers in the caller's order.
    pub answers: Vec<T>,
    /// Input position of each answer, in the caller's order.
    pub positions: Vec<usize>,
    pub state: PartialOrderState,
}

/// Runs the splitting machinery on one sub-instance occupying ranks
/// `base..`, descending only into parts that contain queried ranks.
/// `ranks` are 0-based, sorted; `answer[k]` receives the position for
/// `ranks[k]`.
pub(crate) fn select_in<T: Ord>(
    a: &InstrumentedArray<T>,
    runs: &RunDecomposition,
    windows: Vec<RunCursor>,
    base: usize,
    ranks: &[usize],
    answer: &mut [usize],
    state: &mut PartialOrderState,
) {
    let mut stack = vec![(windows, base, 0..ranks.len())];
    while let Some((w, base, qs)) = stack.pop() {
        let len: usize = w.iter().map(RunCursor::len).sum();
        if qs.is_empty() {
            if len > 0 {
                state.gaps.push(Gap {
                    ranks: base..base + len,
                    windows: w,
                });
            }
            continue;
        }
        if w.len() == 1 {
            state.resolved.push(base..base + len);
            for q in qs {
                answer[q] = w[0].lo + (ranks[q] - base);
            }
            continue;
        }
        let s = split(a, runs, &w);
        let band_lo = base + s.left_len();
        let band_hi = band_lo + s.band.len();
        state.pivots.push(PivotInfo {
            position: s.band.mu,
            ranks: band_lo..band_hi,
            pivot_blocks: s.band.pivot_blocks(),
        });
        state.resolved.push(band_lo..band_hi);
        state.cuts.extend(s.cuts.iter().map(|c| c.1));
        let first_mid = qs.start + ranks[qs.clone()].partition_point(|&r| r < band_lo);
        let first_right = qs.start + ranks[qs.clone()].partition_point(|&r| r < band_hi);
        for q in first_mid..first_right {
            answer[q] = s.band.position_at(ranks[q] - band_lo);
        }
        stack.push((s.right, band_hi, first_right..qs.end));
        stack.push((s.left, base, qs.start..first_mid));
    }
}

fn outcome<T: Ord + Clone>(
    a: &InstrumentedArray<T>,
    queries: &QueryBatch,
    answer: Vec<usize>,
    mut state: PartialOrderState,
) -> MultiSelectOutcome<T> {
    state.finish();
    let positions = queries.fan_out(&answer);
    MultiSelectOutcome {
        answers: positions.iter().map(|&p| a.get(p).clone()).collect(),
        positions,
        state,
    }
}

/// Answers every rank in `queries`, leaving parts without queries unsorted.
pub fn multiselect<T: Ord + Clone>(a: &InstrumentedArray<T>, queries: &QueryBatch) -> MultiSelectOutcome<T> {
    let runs = detect_runs(a);
    let ranks: Vec<usize> = queries.ranks().iter().map(|r| r - 1).collect();
    let mut answer = vec![0; ranks.len()];
    let mut state = PartialOrderState::new(&runs);
    select_in(a, &runs, windows_in(&runs, 0..a.len()), 0, &ranks, &mut answer, &mut state);
    outcome(a, queries, answer, state)
}

/// Splits the input at its pivot positions first and routes each query to
/// the sub-instance covering its rank.
pub fn multiselect_with_global<T: Ord + Clone>(a: &InstrumentedArray<T>, queries: &QueryBatch) -> MultiSelectOutcome<T> {
    let runs = detect_runs(a);
    let pp = detect_pivot_positions(a);
    let ranks: Vec<usize> = queries.ranks().iter().map(|r| r - 1).collect();
    let mut answer = vec![0; ranks.len()];
    let mut state = PartialOrderState::new(&runs);
    state.cuts.extend_from_slice(pp.positions());
    for range in split_by_pivot_positions(a.len(), &pp) {
        let lo = ranks.partition_point(|&r| r < range.start);
        let hi = ranks.partition_point(|&r| r < range.end);
        let start = range.start;
        select_in(
            a,
            &runs,
            windows_in(&runs, range),
            start,
            &ranks[lo..hi],
            &mut answer[lo..hi],
            &mut state,
        );
    }
    outcome(a, queries, answer, state)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::synergy_sort::quick_synergy_sort;
    use proptest::prelude::*;

    const INTRO: [i64; 10] = [2, 3, 1, 3, 7, 8, 9, 4, 5, 6];

    #[test]
    fn batch_validation_and_fan_out() {
        assert!(matches!(QueryBatch::new(&[0], 3), Err(Error::RankOutOfRange { rank: 0, n: 3 })));
        assert!(matches!(QueryBatch::new(&[4], 3), Err(Error::RankOutOfRange { rank: 4, n: 3 })));
        let q = QueryBatch::new(&[3, 1, 3], 3).unwrap();
        assert_eq!(q.ranks(), &[1, 3]);
        assert_eq!(q.fan_out(&["a", "b"]), vec!["b", "a", "b"]);
    }

    #[test]
    fn introductory_select() {
        let a = InstrumentedArray::new(INTRO.to_vec());
        let out = multiselect(&a, &QueryBatch::new(&[4], 10).unwrap());
        assert_eq!(out.answers, vec![3]);
    }

    #[test]
    fn global_variant_routes_by_sub_instance() {
        let a = InstrumentedArray::new(vec![3i64, 2, 1, 6, 5, 4]);
        let out = multiselect_with_global(&a, &QueryBatch::new(&[2, 5], 6).unwrap());
        assert_eq!(out.answers, vec![2, 5]);

        let n = 1000;
        let a = InstrumentedArray::new((0..n as i64).collect::<Vec<_>>());
        let out = multiselect_with_global(&a, &QueryBatch::new(&[1, 500, 1000], n).unwrap());
        assert_eq!(out.answers, vec![0, 499, 999]);
        assert!(a.comparisons() as usize <= 4 * n);
    }

    #[test]
    fn all_ranks_degenerates_to_full_sort() {
        let v: Vec<i64> = vec![5, 1, 4, 1, 5, 9, 2, 6, 5, 3, 5, 8, 9, 7, 9, 3, 2, 3, 8, 4];
        let a = InstrumentedArray::new(v.clone());
        let all: Vec<usize> = (1..=v.len()).collect();
        let out = multiselect(&a, &QueryBatch::new(&all, v.len()).unwrap());
        let b = InstrumentedArray::new(v.clone());
        let full = quick_synergy_sort(&b);
        assert_eq!(out.answers, full.sorted);
        assert_eq!(a.comparisons(), b.comparisons());
        let mut mine: Vec<usize> = out.state.pivots.iter().map(|p| p.position).collect();
        let mut theirs = full.pivots.clone();
        mine.sort();
        theirs.sort();
        assert_eq!(mine, theirs);
        assert!(out.state.gaps.is_empty());
    }

    #[test]
    fn state_parameters_are_consistent() {
        let v: Vec<i64> = (0..64).map(|i| (i * 37 % 64) as i64).collect();
        let a = InstrumentedArray::new(v.clone());
        let out = multiselect(&a, &QueryBatch::new(&[10, 40], 64).unwrap());
        let st = &out.state;
        assert_eq!(st.selection_block_sizes().iter().sum::<usize>(), 64);
        let covered: usize = st.gaps.iter().map(|g| g.ranks.len()).sum::<usize>()
            + st.resolved.iter().map(|r| r.len()).sum::<usize>();
        assert_eq!(covered, 64);
        assert!(st.predictor() >= 64.0 - st.segment_run_counts().iter().map(|&r| r as f64 * (r as f64).log2()).sum::<f64>());
    }

    proptest! {
        #[test]
        fn answers_match_oracle(
            v in proptest::collection::vec(0i64..20, 1..150),
            picks in proptest::collection::vec(0usize..1000, 1..20),
        ) {
            let n = v.len();
            let ranks: Vec<usize> = picks.iter().map(|p| p % n + 1).collect();
            let mut sorted = v.clone();
            sorted.sort();
            let want: Vec<i64> = ranks.iter().map(|&r| sorted[r - 1]).collect();
            let q = QueryBatch::new(&ranks, n).unwrap();
            let a = InstrumentedArray::new(v.clone());
            let out = multiselect(&a, &q);
            prop_assert_eq!(&out.answers, &want);
            let out = multiselect_with_global(&InstrumentedArray::new(v.clone()), &q);
            prop_assert_eq!(&out.answers, &want);

            let full = quick_synergy_sort(&InstrumentedArray::new(v.clone()));
            let mine = multiselect(&InstrumentedArray::new(v), &q);
            for p in &mine.state.pivots {
                prop_assert!(full.pivots.contains(&p.position));
            }
        }
    }
}
