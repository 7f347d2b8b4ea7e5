//! The splitting step shared by sorting, multiselection and the deferred
//! structures.
//!
//! One step takes a sub-instance (a list of run windows), picks μ as the
//! median of the windows' middles, and cuts every window into a part that
//! goes left, a part that goes into the middle band, and a part that goes
//! right. The band's elements are then in their final relative order and
//! occupy a known interval of ranks within the sub-instance.

use std::cmp::Ordering;
use std::ops::Range;

use crate::array::InstrumentedArray;
use crate::middles::{median_of_middles, middle_of};
use crate::runs::{RunCursor, RunDecomposition};
use crate::search::{equal_range_search, search_boundary, Anchor, Mode};

/// A sorted band: a segment of the owner run around μ, with the copies of
/// μ found in other runs spliced in at μ's position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Band {
    pub owner_run: usize,
    /// Position of μ (inside `seg`).
    pub mu: usize,
    /// The owner run's contribution.
    pub seg: Range<usize>,
    /// Equal ranges of μ in the other runs, in run order.
    pub copies: Vec<RunCursor>,
}

impl Band {
    /// A band made of one whole window, already sorted.
    pub fn whole(w: RunCursor) -> Self {
        Self {
            owner_run: w.run,
            mu: w.lo,
            seg: w.range(),
            copies: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.seg.len() + self.copies.iter().map(RunCursor::len).sum::<usize>()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Input position of the band element with the given offset in sorted
    /// order.
    pub fn position_at(&self, offset: usize) -> usize {
        let before = self.mu - self.seg.start;
        if offset < before {
            return self.seg.start + offset;
        }
        let mut o = offset - before;
        for c in &self.copies {
            if o < c.len() {
                return c.lo + o;
            }
            o -= c.len();
        }
        self.mu + o
    }

    /// Input positions of the band in sorted order.
    pub fn positions(&self) -> impl Iterator<Item = usize> + '_ {
        (self.seg.start..self.mu)
            .chain(self.copies.iter().flat_map(RunCursor::range))
            .chain(self.mu..self.seg.end)
    }

    /// Number of runs contributing an element equal to μ.
    pub fn pivot_blocks(&self) -> usize {
        1 + self.copies.len()
    }

    /// Number of band elements strictly smaller than `x`, by binary search
    /// over the band's sorted order.
    pub fn count_less<T: Ord>(&self, a: &InstrumentedArray<T>, x: &T) -> usize {
        self.count_less_between(a, x, 0, self.len())
    }

    /// Like [`Band::count_less`] when the offsets below `lo` are already
    /// known to hold elements smaller than `x` and those from `hi` on are
    /// known not to.
    pub fn count_less_between<T: Ord>(&self, a: &InstrumentedArray<T>, x: &T, lo: usize, hi: usize) -> usize {
        let (mut lo, mut hi) = (lo, hi);
        while lo < hi {
            let mid = lo + (hi - lo) / 2;
            if a.cmp_value(self.position_at(mid), x) == Ordering::Less {
                lo = mid + 1;
            } else {
                hi = mid;
            }
        }
        lo
    }
}

/// The outcome of one splitting step.
#[derive(Debug, Clone)]
pub struct Split {
    pub left: Vec<RunCursor>,
    pub band: Band,
    pub right: Vec<RunCursor>,
    /// Every cut made inside a run, as `(run, position)`.
    pub cuts: Vec<(usize, usize)>,
}

impl Split {
    pub fn left_len(&self) -> usize {
        self.left.iter().map(RunCursor::len).sum()
    }

    pub fn right_len(&self) -> usize {
        self.right.iter().map(RunCursor::len).sum()
    }
}

/// Performs one splitting step on a sub-instance of at least one window.
/// Windows must be nonempty and listed in run order.
pub fn split<T: Ord>(a: &InstrumentedArray<T>, runs: &RunDecomposition, windows: &[RunCursor]) -> Split {
    let med = median_of_middles(a, windows);
    let j = med.owner;
    let mu = med.position;

    // Equal range of μ in every other window, searched from both ends.
    let ranges: Vec<(usize, usize)> = windows
        .iter()
        .enumerate()
        .map(|(i, w)| {
            if i == j {
                return (mu, mu);
            }
            let known = Some((middle_of(w), med.relations[i]));
            equal_range_search(w.range(), Some(runs), known, |p| a.cmp(p, mu))
        })
        .collect();

    // Largest element below μ and smallest above μ outside the owner run.
    let mut max_l: Option<usize> = None;
    let mut min_r: Option<usize> = None;
    for (i, w) in windows.iter().enumerate() {
        if i == j {
            continue;
        }
        let (lo, hi) = ranges[i];
        if lo > w.lo {
            let c = lo - 1;
            max_l = Some(match max_l {
                Some(b) if a.cmp(c, b) != Ordering::Greater => b,
                _ => c,
            });
        }
        if hi < w.hi {
            min_r = Some(match min_r {
                Some(b) if a.cmp(hi, b) != Ordering::Less => b,
                _ => hi,
            });
        }
    }

    // The owner run's segment strictly between max_l and min_r.
    let wj = windows[j];
    let seg_lo = match max_l {
        None => wj.lo,
        Some(x) => search_boundary(wj.lo..mu, Anchor::End, Mode::FirstGt, Some(runs), |p| a.cmp(p, x)),
    };
    let seg_hi = match min_r {
        None => wj.hi,
        Some(y) => search_boundary(mu + 1..wj.hi, Anchor::Start, Mode::FirstGeq, Some(runs), |p| a.cmp(p, y)),
    };

    let mut left = Vec::new();
    let mut right = Vec::new();
    let mut copies = Vec::new();
    let mut cuts = Vec::with_capacity(2 * windows.len());
    for (i, w) in windows.iter().enumerate() {
        let (lo, hi) = if i == j { (seg_lo, seg_hi) } else { ranges[i] };
        if lo > w.lo {
            left.push(RunCursor::new(w.run, w.lo, lo));
        }
        if hi < w.hi {
            right.push(RunCursor::new(w.run, hi, w.hi));
        }
        if i != j && hi > lo {
            copies.push(RunCursor::new(w.run, lo, hi));
        }
        cuts.push((w.run, lo));
        if hi != lo {
            cuts.push((w.run, hi));
        }
    }
    Split {
        left,
        band: Band {
            owner_run: wj.run,
            mu,
            seg: seg_lo..seg_hi,
            copies,
        },
        right,
        cuts,
    }
}
