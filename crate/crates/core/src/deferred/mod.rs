//! Online rank/select structures that sort only as much as the queries
//! force.
//!
//! Both variants share [`DeferredState`]: the input, its runs, a table of
//! pivot records (sorted bands and pure separators, in rank order), the
//! unresolved gaps between records, and the mark vector over ranks. They
//! differ in how they find the record or gap that a query lands in:
//!
//! * [`RamDeferred`] keeps an ordered map keyed by rank and descends over
//!   rank space for `rank` queries.
//! * [`FingerDeferred`] keeps two finger-searchable lists over the records,
//!   one navigated by rank and one by value, so queries close to the
//!   previous one are cheap to locate.
//!
//! Key comparisons go to the instance's meter. Navigation inside the
//! indexes is counted separately as index steps.

mod finger;
mod ram;
pub mod skiplist;

use std::cmp::Ordering;
use std::collections::HashMap;
use std::ops::Range;

use crate::array::InstrumentedArray;
use crate::error::{Error, Result};
use crate::multiselect::Gap;
use crate::partition::{split, Band};
use crate::runs::{detect_pivot_positions, detect_runs, split_by_pivot_positions, windows_in, RunDecomposition};

pub use finger::FingerDeferred;
pub use ram::RamDeferred;

/// What a record says about its rank interval.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RecordKind {
    /// The interval's elements, in sorted order.
    Band(Band),
    /// An empty interval at a pivot position of the input: every element
    /// before it is at most every element after it.
    Separator { left_max: usize, right_min: usize },
}

/// A resolved piece of the sorted order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PivotRecord {
    /// 0-based rank interval; empty for separators.
    pub ranks: Range<usize>,
    pub kind: RecordKind,
    /// Cuts `(run, position)` made inside runs when the record was found.
    pub cuts: Vec<(usize, usize)>,
}

impl PivotRecord {
    pub fn band(&self) -> Option<&Band> {
        match &self.kind {
            RecordKind::Band(b) => Some(b),
            RecordKind::Separator { .. } => None,
        }
    }

    pub fn is_separator(&self) -> bool {
        self.band().is_none()
    }

    /// Position of the largest element at or before this record in rank
    /// order. Non-decreasing along the records.
    pub fn key_max(&self) -> usize {
        match &self.kind {
            RecordKind::Band(b) => b.position_at(b.len() - 1),
            RecordKind::Separator { left_max, .. } => *left_max,
        }
    }

    /// Ordering key: by rank, separators before a band at the same rank.
    pub(crate) fn order_key(&self) -> (usize, u8) {
        (self.ranks.start, u8::from(!self.is_separator()))
    }
}

/// Which question a gap refinement is trying to answer.
pub(crate) enum Goal<'x, T> {
    /// 0-based rank.
    Select(usize),
    /// Count of elements strictly below the key.
    Rank(&'x T),
}

pub(crate) enum Found {
    Position(usize),
    Rank(usize),
}

/// The partially sorted state shared by both deferred variants.
#[derive(Debug)]
pub struct DeferredState<T> {
    a: InstrumentedArray<T>,
    runs: RunDecomposition,
    records: Vec<PivotRecord>,
    /// Unresolved gaps keyed by their first rank.
    gaps: HashMap<usize, Gap>,
    /// Mark vector over ranks: set once a band covers the rank.
    resolved: Vec<bool>,
    build_comparisons: u64,
}

impl<T: Ord> DeferredState<T> {
    /// Detects runs and pivot positions and seeds one record per pivot
    /// position and per sub-instance that is already a single sorted
    /// window. Returns the state and its record ids in rank order.
    fn build(values: Vec<T>) -> (Self, Vec<usize>) {
        let a = InstrumentedArray::new(values);
        let n = a.len();
        let runs = detect_runs(&a);
        let pp = detect_pivot_positions(&a);
        let mut s = Self {
            runs,
            records: Vec::new(),
            gaps: HashMap::new(),
            resolved: vec![false; n],
            build_comparisons: 0,
            a,
        };
        let mut order = Vec::new();
        for (k, range) in split_by_pivot_positions(n, &pp).into_iter().enumerate() {
            if k > 0 {
                order.push(s.push(PivotRecord {
                    ranks: range.start..range.start,
                    kind: RecordKind::Separator {
                        left_max: pp.left_max(k - 1),
                        right_min: pp.right_min(k - 1),
                    },
                    cuts: Vec::new(),
                }));
            }
            let windows = windows_in(&s.runs, range.clone());
            if windows.len() == 1 {
                s.resolved[range.clone()].fill(true);
                order.push(s.push(PivotRecord {
                    ranks: range,
                    kind: RecordKind::Band(Band::whole(windows[0])),
                    cuts: Vec::new(),
                }));
            } else {
                s.gaps.insert(range.start, Gap { ranks: range, windows });
            }
        }
        s.build_comparisons = s.a.comparisons();
        (s, order)
    }

    fn push(&mut self, r: PivotRecord) -> usize {
        self.records.push(r);
        self.records.len() - 1
    }

    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }

    pub fn array(&self) -> &InstrumentedArray<T> {
        &self.a
    }

    pub fn runs(&self) -> &RunDecomposition {
        &self.runs
    }

    /// Key comparisons so far, construction included.
    pub fn comparisons(&self) -> u64 {
        self.a.comparisons()
    }

    pub fn build_comparisons(&self) -> u64 {
        self.build_comparisons
    }

    pub fn record(&self, id: usize) -> &PivotRecord {
        &self.records[id]
    }

    /// Records in rank order.
    pub fn records(&self) -> Vec<&PivotRecord> {
        let mut v: Vec<&PivotRecord> = self.records.iter().collect();
        v.sort_by_key(|r| r.order_key());
        v
    }

    pub fn band_count(&self) -> usize {
        self.records.iter().filter(|r| !r.is_separator()).count()
    }

    pub fn gap_count(&self) -> usize {
        self.gaps.len()
    }

    /// Whether the 0-based rank is covered by a band.
    pub fn is_resolved(&self, rank: usize) -> bool {
        self.resolved[rank]
    }

    pub fn resolved_count(&self) -> usize {
        self.resolved.iter().filter(|&&b| b).count()
    }

    /// For every rank, the input position placed there, if resolved.
    pub fn reconstruct(&self) -> Vec<Option<usize>> {
        let mut out = vec![None; self.len()];
        for r in &self.records {
            if let Some(b) = r.band() {
                for (k, p) in b.positions().enumerate() {
                    out[r.ranks.start + k] = Some(p);
                }
            }
        }
        out
    }

    fn check_rank(&self, i: usize) -> Result<usize> {
        if i == 0 || i > self.len() {
            return Err(Error::RankOutOfRange { rank: i, n: self.len() });
        }
        Ok(i - 1)
    }

    /// Refines the gap starting at `start` (whose left neighbour record is
    /// `left`) until `goal` is answered. Returns the answer and every new
    /// record paired with its left neighbour at the time of insertion.
    fn refine(&mut self, mut start: usize, mut left: Option<usize>, goal: Goal<'_, T>) -> (Found, Vec<(usize, Option<usize>)>) {
        let mut inserted = Vec::new();
        loop {
            let gap = self.gaps.remove(&start).expect("a gap starts here");
            let (band, cuts, left_part, right_part) = if gap.windows.len() == 1 {
                (Band::whole(gap.windows[0]), Vec::new(), Vec::new(), Vec::new())
            } else {
                let s = split(&self.a, &self.runs, &gap.windows);
                (s.band, s.cuts, s.left, s.right)
            };
            let left_len: usize = left_part.iter().map(|w| w.len()).sum();
            let band_lo = gap.ranks.start + left_len;
            let band_hi = band_lo + band.len();
            let has_left = !left_part.is_empty();
            let has_right = band_hi < gap.ranks.end;
            if has_left {
                self.gaps.insert(
                    gap.ranks.start,
                    Gap {
                        ranks: gap.ranks.start..band_lo,
                        windows: left_part,
                    },
                );
            }
            if has_right {
                self.gaps.insert(
                    band_hi,
                    Gap {
                        ranks: band_hi..gap.ranks.end,
                        windows: right_part,
                    },
                );
            }
            self.resolved[band_lo..band_hi].fill(true);
            let len = band.len();
            let min_pos = band.position_at(0);
            let max_pos = band.position_at(len - 1);
            let id = self.push(PivotRecord {
                ranks: band_lo..band_hi,
                kind: RecordKind::Band(band),
                cuts,
            });
            inserted.push((id, left));

            // Decide which side the answer lies on.
            let go_right = match goal {
                Goal::Select(r) => {
                    if r < band_lo {
                        false
                    } else if r < band_hi {
                        let b = self.records[id].band().expect("band");
                        return (Found::Position(b.position_at(r - band_lo)), inserted);
                    } else {
                        true
                    }
                }
                Goal::Rank(x) => {
                    let c_max = self.a.cmp_value(max_pos, x);
                    if c_max == Ordering::Less {
                        if !has_right {
                            return (Found::Rank(band_hi), inserted);
                        }
                        true
                    } else {
                        let c_min = if len == 1 { c_max } else { self.a.cmp_value(min_pos, x) };
                        match c_min {
                            Ordering::Less => {
                                let b = self.records[id].band().expect("band");
                                let k = b.count_less_between(&self.a, x, 1, len - 1);
                                return (Found::Rank(band_lo + k), inserted);
                            }
                            Ordering::Equal => return (Found::Rank(band_lo), inserted),
                            Ordering::Greater => {
                                if !has_left {
                                    return (Found::Rank(band_lo), inserted);
                                }
                                false
                            }
                        }
                    }
                }
            };
            if go_right {
                start = band_hi;
                left = Some(id);
            } else {
                start = gap.ranks.start;
            }
        }
    }
}

/// The query interface shared by both variants.
pub trait DeferredStructure<T: Ord> {
    /// The `i`-th smallest element (1-based).
    fn select(&mut self, i: usize) -> Result<&T>;
    /// Number of elements strictly smaller than `x`.
    fn rank(&mut self, x: &T) -> usize;
    fn state(&self) -> &DeferredState<T>;
    /// Navigation steps spent inside the index structures.
    fn index_steps(&self) -> u64;

    fn comparisons(&self) -> u64 {
        self.state().comparisons()
    }
}
