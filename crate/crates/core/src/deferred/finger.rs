//! The finger variant: two finger-searchable lists over the records.
//!
//! `F_select` is navigated by rank and `F_rank` by value. Both hold the
//! same records in the same order (rank order and value order coincide on
//! records), each with its own finger left at the last accessed record.

use std::cmp::Ordering;

use super::skiplist::{FingerList, NodeId};
use super::{DeferredState, DeferredStructure, Found, Goal, RecordKind};
use crate::error::Result;

#[derive(Debug)]
pub struct FingerDeferred<T> {
    state: DeferredState<T>,
    f_select: FingerList,
    f_rank: FingerList,
    /// Node of each record in each list, indexed by record id.
    sel_node: Vec<NodeId>,
    rank_node: Vec<NodeId>,
}

impl<T: Ord> FingerDeferred<T> {
    /// `seed` drives the skip lists' tower heights.
    pub fn new(values: Vec<T>, seed: u64) -> Self {
        let (state, order) = DeferredState::build(values);
        let mut d = Self {
            state,
            f_select: FingerList::new(seed),
            f_rank: FingerList::new(seed ^ 0x9e37_79b9_7f4a_7c15),
            sel_node: Vec::new(),
            rank_node: Vec::new(),
        };
        let mut prev = None;
        for id in order {
            d.link(id, prev);
            prev = Some(id);
        }
        d.f_select.link_steps = 0;
        d.f_rank.link_steps = 0;
        d.f_select.set_finger(None);
        d.f_rank.set_finger(None);
        d
    }

    fn link(&mut self, id: usize, after: Option<usize>) {
        if self.sel_node.len() <= id {
            self.sel_node.resize(id + 1, 0);
            self.rank_node.resize(id + 1, 0);
        }
        self.sel_node[id] = self.f_select.insert_after(after.map(|a| self.sel_node[a]), id);
        self.rank_node[id] = self.f_rank.insert_after(after.map(|a| self.rank_node[a]), id);
    }

    fn absorb(&mut self, inserted: &[(usize, Option<usize>)]) {
        for &(id, after) in inserted {
            self.link(id, after);
        }
        if let Some(&(last, _)) = inserted.last() {
            self.focus(Some(last));
        }
    }

    /// Moves both fingers to a record (or to the front).
    fn focus(&mut self, id: Option<usize>) {
        self.f_select.set_finger(id.map(|i| self.sel_node[i]));
        self.f_rank.set_finger(id.map(|i| self.rank_node[i]));
    }

    /// Hops made by searches in both lists.
    pub fn nav_steps(&self) -> u64 {
        self.f_select.nav_steps + self.f_rank.nav_steps
    }

    /// Hops made while linking new records in.
    pub fn link_steps(&self) -> u64 {
        self.f_select.link_steps + self.f_rank.link_steps
    }

    /// Records in list order (for inspection).
    pub fn record_order(&self) -> Vec<usize> {
        self.f_select.items()
    }

    fn run_refine(&mut self, gs: usize, left: Option<usize>, goal: Goal<'_, T>) -> Found {
        let (found, inserted) = self.state.refine(gs, left, goal);
        self.absorb(&inserted);
        found
    }
}

impl<T: Ord> DeferredStructure<T> for FingerDeferred<T> {
    fn select(&mut self, i: usize) -> Result<&T> {
        let r = self.state.check_rank(i)?;
        let records = &self.state.records;
        let node = self.f_select.last_true(|id| records[id].ranks.start <= r);
        let left = node.map(|n| self.f_select.item(n));
        if let Some(id) = left {
            let rec = self.state.record(id);
            if let Some(b) = rec.band() {
                if r < rec.ranks.end {
                    let p = b.position_at(r - rec.ranks.start);
                    self.focus(Some(id));
                    return Ok(self.state.array().get(p));
                }
            }
        }
        let gs = left.map_or(0, |id| self.state.record(id).ranks.end);
        let pos = match self.run_refine(gs, left, Goal::Select(r)) {
            Found::Position(p) => p,
            Found::Rank(_) => unreachable!(),
        };
        Ok(self.state.array().get(pos))
    }

    /// Finds the last record whose largest element is below `x`; the
    /// answer then lies in the following record or in the gap between.
    fn rank(&mut self, x: &T) -> usize {
        let records = &self.state.records;
        let a = &self.state.a;
        let node = self.f_rank.last_true(|id| a.cmp_value(records[id].key_max(), x) == Ordering::Less);
        let left = node.map(|n| self.f_rank.item(n));
        let next = self.f_rank.successor(node).map(|n| self.f_rank.item(n));
        self.focus(left);
        let gs = left.map_or(0, |id| self.state.record(id).ranks.end);
        let ge = next.map_or(self.state.len(), |id| self.state.record(id).ranks.start);
        if let Some(id) = next {
            if let RecordKind::Band(b) = &self.state.record(id).kind {
                // x is at most the band's maximum.
                let len = b.len();
                match self.state.a.cmp_value(b.position_at(0), x) {
                    Ordering::Less => {
                        let k = b.count_less_between(&self.state.a, x, 1, len - 1);
                        self.focus(Some(id));
                        return ge + k;
                    }
                    Ordering::Equal => {
                        self.focus(Some(id));
                        return ge;
                    }
                    Ordering::Greater => {}
                }
            }
        }
        if gs == ge {
            return ge;
        }
        match self.run_refine(gs, left, Goal::Rank(x)) {
            Found::Rank(k) => k,
            Found::Position(_) => unreachable!(),
        }
    }

    fn state(&self) -> &DeferredState<T> {
        &self.state
    }

    fn index_steps(&self) -> u64 {
        self.nav_steps()
    }
}
