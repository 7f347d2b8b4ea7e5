//! The RAM variant: records indexed by an ordered map over rank space.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::ops::Bound::{Excluded, Included, Unbounded};

use super::{DeferredState, DeferredStructure, Found, Goal};
use crate::error::Result;

/// Deferred rank/select over an ordered map keyed by `(first rank, kind)`.
///
/// Each map operation is billed `⌈log₂(size + 2)⌉` index steps, the depth
/// of a balanced search tree of that size.
#[derive(Debug)]
pub struct RamDeferred<T> {
    state: DeferredState<T>,
    index: BTreeMap<(usize, u8), usize>,
    index_steps: u64,
}

impl<T: Ord> RamDeferred<T> {
    pub fn new(values: Vec<T>) -> Self {
        let (state, order) = DeferredState::build(values);
        let index = order.iter().map(|&id| (state.record(id).order_key(), id)).collect();
        Self {
            state,
            index,
            index_steps: 0,
        }
    }

    fn bill(&mut self) {
        self.index_steps += u64::from((self.index.len() + 2).next_power_of_two().trailing_zeros());
    }

    /// The last record at or before rank `r`.
    fn pred(&mut self, r: usize) -> Option<usize> {
        self.bill();
        self.index.range(..=(r, 1)).next_back().map(|(_, &id)| id)
    }

    /// The first record strictly after `id`.
    fn succ(&mut self, id: usize) -> Option<usize> {
        self.bill();
        let key = self.state.record(id).order_key();
        self.index.range((Excluded(key), Unbounded)).next().map(|(_, &id)| id)
    }

    fn first(&mut self) -> Option<usize> {
        self.bill();
        self.index.values().next().copied()
    }

    fn separator_at(&mut self, p: usize) -> Option<usize> {
        self.bill();
        self.index.range((Included((p, 0)), Included((p, 0)))).next().map(|(_, &id)| id)
    }

    /// Position of the element with resolved rank `r`.
    fn position_of(&mut self, r: usize) -> usize {
        let id = self.pred(r).expect("a band covers every resolved rank");
        let rec = self.state.record(id);
        rec.band().expect("band").position_at(r - rec.ranks.start)
    }

    /// The unresolved gap containing rank `r`: its bounds and left
    /// neighbour record.
    fn gap_around(&mut self, r: usize) -> (usize, usize, Option<usize>) {
        let left = self.pred(r);
        let (start, next) = match left {
            Some(id) => (self.state.record(id).ranks.end, self.succ(id)),
            None => (0, self.first()),
        };
        let end = next.map_or(self.state.len(), |id| self.state.record(id).ranks.start);
        (start, end, left)
    }

    fn absorb(&mut self, inserted: Vec<(usize, Option<usize>)>) {
        for (id, _) in inserted {
            self.bill();
            self.index.insert(self.state.record(id).order_key(), id);
        }
    }

    /// Position of the largest element with rank below the gap start `gs`.
    fn max_before(&mut self, gs: usize) -> usize {
        if self.state.is_resolved(gs - 1) {
            self.position_of(gs - 1)
        } else {
            let id = self.separator_at(gs).expect("an unresolved rank before a gap start means a separator");
            self.state.record(id).key_max()
        }
    }

    /// Position of the smallest element with rank at least the gap end `ge`.
    fn min_from(&mut self, ge: usize) -> usize {
        if self.state.is_resolved(ge) {
            self.position_of(ge)
        } else {
            let id = self.separator_at(ge).expect("an unresolved rank after a gap end means a separator");
            match self.state.record(id).kind {
                super::RecordKind::Separator { right_min, .. } => right_min,
                super::RecordKind::Band(_) => unreachable!(),
            }
        }
    }
}

impl<T: Ord> DeferredStructure<T> for RamDeferred<T> {
    fn select(&mut self, i: usize) -> Result<&T> {
        let r = self.state.check_rank(i)?;
        let pos = if self.state.is_resolved(r) {
            self.position_of(r)
        } else {
            let (gs, _, left) = self.gap_around(r);
            let (found, inserted) = self.state.refine(gs, left, Goal::Select(r));
            self.absorb(inserted);
            match found {
                Found::Position(p) => p,
                Found::Rank(_) => unreachable!(),
            }
        };
        Ok(self.state.array().get(pos))
    }

    /// Binary descent over rank space. A resolved probe costs one
    /// comparison; an unresolved probe compares `x` with the elements just
    /// outside its gap, and refines the gap only when `x` falls inside it.
    fn rank(&mut self, x: &T) -> usize {
        let (mut lo, mut hi) = (0, self.state.len());
        while lo < hi {
            let mid = lo + (hi - lo) / 2;
            if self.state.is_resolved(mid) {
                let p = self.position_of(mid);
                if self.state.array().cmp_value(p, x) == Ordering::Less {
                    lo = mid + 1;
                } else {
                    hi = mid;
                }
                continue;
            }
            let (gs, ge, left) = self.gap_around(mid);
            if gs > lo {
                let p = self.max_before(gs);
                if self.state.array().cmp_value(p, x) != Ordering::Less {
                    hi = gs - 1;
                    continue;
                }
            }
            if ge < hi {
                let p = self.min_from(ge);
                if self.state.array().cmp_value(p, x) == Ordering::Less {
                    lo = ge + 1;
                    continue;
                }
            }
            // x lies within the gap's value range: only refining it helps.
            let (found, inserted) = self.state.refine(gs, left, Goal::Rank(x));
            self.absorb(inserted);
            return match found {
                Found::Rank(k) => k,
                Found::Position(_) => unreachable!(),
            };
        }
        lo
    }

    fn state(&self) -> &DeferredState<T> {
        &self.state
    }

    fn index_steps(&self) -> u64 {
        self.index_steps
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_keys_track_the_mark_vector() {
        let v: Vec<i64> = (0..400).map(|i| (i * 131) % 97).collect();
        let mut d = RamDeferred::new(v.clone());
        for i in [200, 13, 399, 1, 250, 251] {
            d.select(i).unwrap();
            let mut covered = vec![false; v.len()];
            for (&(lo, kind), &id) in &d.index {
                let rec = d.state.record(id);
                assert_eq!((lo, kind), rec.order_key());
                covered[rec.ranks.clone()].fill(true);
            }
            assert_eq!(covered.iter().filter(|&&b| b).count(), d.state.resolved_count());
            assert!((0..v.len()).all(|r| covered[r] == d.state.is_resolved(r)));
        }
    }

    #[test]
    fn rank_inside_a_resolved_band() {
        let mut d = RamDeferred::new(vec![9i64, 1, 8, 2, 7, 3, 6, 4, 5]);
        assert_eq!(*d.select(5).unwrap(), 5);
        assert_eq!(d.rank(&5), 4);
        assert_eq!(d.rank(&10), 9);
        assert_eq!(d.rank(&1), 0);
    }
}
