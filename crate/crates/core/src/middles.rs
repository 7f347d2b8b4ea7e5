//! The median of the middle elements of a set of run windows.

use std::cmp::Ordering;

use crate::array::InstrumentedArray;
use crate::runs::RunCursor;

/// Result of a median-of-middles selection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MedianOfMiddles {
    /// Index (into the window slice) of the window owning μ.
    pub owner: usize,
    /// Position of μ in the input.
    pub position: usize,
    /// How each window's middle compares with μ. Every relation was
    /// established by a comparison made during the selection, so callers
    /// may reuse them for free.
    pub relations: Vec<Ordering>,
}

/// The middle of a window of length ℓ: 1-based offset ⌈ℓ/2⌉.
#[inline]
pub fn middle_of(w: &RunCursor) -> usize {
    w.lo + (w.len() - 1) / 2
}

/// Lower median, by (value, window index), of the windows' middles.
///
/// Uses a three-way-partition quickselect with sampled pivots, falling
/// back to median-of-medians pivots after too many rounds, so the number
/// of comparisons is linear in the number of windows.
///
/// # Panics
/// If `windows` is empty or contains an empty window.
pub fn median_of_middles<T: Ord>(a: &InstrumentedArray<T>, windows: &[RunCursor]) -> MedianOfMiddles {
    assert!(!windows.is_empty(), "median of middles needs at least one window");
    let pos: Vec<usize> = windows.iter().map(middle_of).collect();
    let k = (pos.len() - 1) / 2;
    let (owner, relations) = select_with_relations(a, &pos, k);
    MedianOfMiddles {
        owner,
        position: pos[owner],
        relations,
    }
}

/// Selects the item of 0-based rank `k` by (value, index) among `pos` and
/// reports how every item's value compares with the selected value.
fn select_with_relations<T: Ord>(a: &InstrumentedArray<T>, pos: &[usize], k: usize) -> (usize, Vec<Ordering>) {
    let m = pos.len();
    let mut rel = vec![Ordering::Equal; m];
    let mut active: Vec<usize> = (0..m).collect();
    let mut k = k;
    let sampled_rounds = 2 * (usize::BITS - m.leading_zeros()) as usize + 8;
    let mut round = 0;
    loop {
        if active.len() == 1 {
            return (active[0], rel);
        }
        let pivot = if round < sampled_rounds {
            sample_pivot(a, pos, &active)
        } else {
            median_of_medians_pivot(a, pos, &active)
        };
        round += 1;
        let (mut lt, mut eq, mut gt) = (Vec::new(), Vec::new(), Vec::new());
        for &x in &active {
            if x == pivot {
                eq.push(x);
                continue;
            }
            match a.cmp(pos[x], pos[pivot]) {
                Ordering::Less => lt.push(x),
                Ordering::Equal => eq.push(x),
                Ordering::Greater => gt.push(x),
            }
        }
        if k < lt.len() {
            for &x in eq.iter().chain(&gt) {
                rel[x] = Ordering::Greater;
            }
            active = lt;
        } else if k < lt.len() + eq.len() {
            for &x in &lt {
                rel[x] = Ordering::Less;
            }
            for &x in &gt {
                rel[x] = Ordering::Greater;
            }
            return (eq[k - lt.len()], rel);
        } else {
            for &x in lt.iter().chain(&eq) {
                rel[x] = Ordering::Less;
            }
            k -= lt.len() + eq.len();
            active = gt;
        }
    }
}

fn median3<T: Ord>(a: &InstrumentedArray<T>, pos: &[usize], x: usize, y: usize, z: usize) -> usize {
    let (lo, hi) = if a.cmp(pos[x], pos[y]) == Ordering::Greater {
        (y, x)
    } else {
        (x, y)
    };
    if a.cmp(pos[hi], pos[z]) != Ordering::Greater {
        hi
    } else if a.cmp(pos[lo], pos[z]) != Ordering::Greater {
        z
    } else {
        lo
    }
}

fn sample_pivot<T: Ord>(a: &InstrumentedArray<T>, pos: &[usize], active: &[usize]) -> usize {
    let len = active.len();
    if len < 3 {
        return active[0];
    }
    if len < 64 {
        return median3(a, pos, active[0], active[len / 2], active[len - 1]);
    }
    let s = len / 8;
    let m1 = median3(a, pos, active[0], active[s], active[2 * s]);
    let m2 = median3(a, pos, active[len / 2 - s], active[len / 2], active[len / 2 + s]);
    let m3 = median3(a, pos, active[len - 1 - 2 * s], active[len - 1 - s], active[len - 1]);
    median3(a, pos, m1, m2, m3)
}

fn median_of_medians_pivot<T: Ord>(a: &InstrumentedArray<T>, pos: &[usize], active: &[usize]) -> usize {
    let mut medians = Vec::with_capacity(active.len() / 5 + 1);
    for group in active.chunks(5) {
        let mut g = group.to_vec();
        for i in 1..g.len() {
            let mut j = i;
            while j > 0 && a.cmp(pos[g[j - 1]], pos[g[j]]) == Ordering::Greater {
                g.swap(j - 1, j);
                j -= 1;
            }
        }
        medians.push(g[(g.len() - 1) / 2]);
    }
    let med_pos: Vec<usize> = medians.iter().map(|&x| pos[x]).collect();
    let (chosen, _) = select_with_relations(a, &med_pos, (med_pos.len() - 1) / 2);
    medians[chosen]
}
