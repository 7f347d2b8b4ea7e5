//! The rank-aware and select-aware compressed representations.
//!
//! Both describe how the input splits into blocks: maximal pieces of a run
//! that stay contiguous in sorted order (every copy of a repeated value is
//! a block of its own). Components, with `n` elements and `δ` blocks:
//!
//! * `A` (n bits): block starts in sorted order.
//! * `B` (n bits): block starts in input order.
//! * `V` (δ bits): which sorted blocks start a new value group, so that
//!   `rank` can return the number of strictly smaller elements.
//! * rank-aware adds `C` (n bits, run starts) and `S` (run of every sorted
//!   block, a sequence of length δ over ρ symbols).
//! * select-aware adds `π`, mapping each sorted block to its index among
//!   the blocks in input order.

use std::fmt;

use super::bitvec::BitVectorRS;
use super::permutation::PermutationRS;
use super::sequence::SequenceRS;
use crate::error::{Error, Result};
use crate::measures::{block_decomposition, plain_run_ids, BlockDecomposition};

/// Bits used by each component.
#[derive(Debug, Clone, PartialEq)]
pub struct SpaceReport {
    pub n: usize,
    pub delta: usize,
    pub rho: usize,
    pub components: Vec<(&'static str, u64)>,
    /// The formula the structure is measured against.
    pub bound: f64,
}

impl SpaceReport {
    pub fn total_bits(&self) -> u64 {
        self.components.iter().map(|c| c.1).sum()
    }

    /// Total bits over the formula.
    pub fn ratio(&self) -> f64 {
        self.total_bits() as f64 / self.bound
    }
}

impl fmt::Display for SpaceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n = {}, delta = {}, rho = {}", self.n, self.delta, self.rho)?;
        for (name, bits) in &self.components {
            writeln!(f, "  {name:<4} {bits:>12} bits")?;
        }
        write!(
            f,
            "  total {:>11} bits ({:.3} x bound of {:.0})",
            self.total_bits(),
            self.ratio(),
            self.bound
        )
    }
}

/// `δ·log₂ρ + 3n`.
pub fn rank_aware_bound(n: usize, delta: usize, rho: usize) -> f64 {
    delta as f64 * (rho.max(1) as f64).log2() + 3.0 * n as f64
}

/// `δ·log₂δ + 2n + 2δ·log₂log₂δ`.
pub fn select_aware_bound(n: usize, delta: usize) -> f64 {
    let d = delta.max(2) as f64;
    let loglog = d.log2().log2().max(0.0);
    delta as f64 * d.log2() + 2.0 * n as f64 + 2.0 * delta as f64 * loglog
}

/// Components shared by both representations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Common {
    pub n: usize,
    pub rho: usize,
    pub a: BitVectorRS,
    pub b: BitVectorRS,
    pub v: BitVectorRS,
}

impl Common {
    fn new(bd: &BlockDecomposition) -> Self {
        let n = bd.n;
        let mut sorted_starts = Vec::with_capacity(bd.delta());
        let mut acc = 0;
        for blk in &bd.blocks {
            sorted_starts.push(acc);
            acc += blk.len;
        }
        Self {
            n,
            rho: bd.rho,
            a: BitVectorRS::from_ones(n, sorted_starts),
            b: BitVectorRS::from_ones(n, bd.blocks.iter().map(|blk| blk.start)),
            v: BitVectorRS::from_bits(bd.member_starts()),
        }
    }

    fn delta(&self) -> usize {
        self.a.count_ones()
    }

    /// Sorted block containing 0-based rank `r`, and the offset inside it.
    fn sorted_block(&self, r: usize) -> (usize, usize) {
        let g = self.a.rank1(r + 1) - 1;
        (g, r - self.a.select1(g + 1).expect("block start"))
    }

    /// Input-order block containing position `p`, and the offset inside it.
    fn input_block(&self, p: usize) -> (usize, usize) {
        let b = self.b.rank1(p + 1) - 1;
        (b, p - self.b.select1(b + 1).expect("block start"))
    }

    fn position(&self, block: usize, offset: usize) -> usize {
        self.b.select1(block + 1).expect("block start") + offset
    }

    /// Strictly smaller elements before offset `o` of sorted block `g`.
    fn strict_rank(&self, g: usize, o: usize) -> usize {
        let group = self.v.select1(self.v.rank1(g + 1)).expect("group start");
        self.a.select1(group + 1).expect("block start") + o
    }

    fn check_rank(&self, i: usize) -> Result<usize> {
        if i == 0 || i > self.n {
            return Err(Error::RankOutOfRange { rank: i, n: self.n });
        }
        Ok(i - 1)
    }

    fn check_position(&self, p: usize) -> Result<()> {
        if p >= self.n {
            return Err(Error::IndexOutOfRange { index: p, len: self.n });
        }
        Ok(())
    }

    fn components(&self) -> Vec<(&'static str, u64)> {
        vec![
            ("A", self.a.size_bits()),
            ("B", self.b.size_bits()),
            ("V", self.v.size_bits()),
        ]
    }
}

/// Fast `rank`, `O(log ρ)` `select`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankAwareCds {
    pub(crate) common: Common,
    pub(crate) c: BitVectorRS,
    pub(crate) s: SequenceRS,
}

impl RankAwareCds {
    pub fn build<T: Ord>(values: &[T]) -> Self {
        let bd = block_decomposition(values);
        let common = Common::new(&bd);
        let (run_of, _) = plain_run_ids(values);
        let run_starts = (0..bd.n).filter(|&p| p == 0 || run_of[p] != run_of[p - 1]);
        let runs: Vec<usize> = bd.blocks.iter().map(|blk| blk.run).collect();
        Self {
            c: BitVectorRS::from_ones(bd.n, run_starts),
            s: SequenceRS::new(&runs, bd.rho.max(1)),
            common,
        }
    }

    pub fn len(&self) -> usize {
        self.common.n
    }

    pub fn is_empty(&self) -> bool {
        self.common.n == 0
    }

    pub fn delta(&self) -> usize {
        self.common.delta()
    }

    pub fn rho(&self) -> usize {
        self.common.rho
    }

    pub fn a(&self) -> &BitVectorRS {
        &self.common.a
    }

    pub fn b(&self) -> &BitVectorRS {
        &self.common.b
    }

    pub fn c(&self) -> &BitVectorRS {
        &self.c
    }

    pub fn s(&self) -> &SequenceRS {
        &self.s
    }

    /// Input position of the `i`-th smallest element (1-based).
    pub fn select(&self, i: usize) -> Result<usize> {
        let cm = &self.common;
        let (g, o) = cm.sorted_block(cm.check_rank(i)?);
        let run = self.s.access(g);
        let k = self.s.rank(run, g);
        let first = cm.b.rank1(self.c.select1(run + 1).expect("run start"));
        Ok(cm.position(first + k, o))
    }

    /// Number of elements strictly smaller than the element at input
    /// position `p`.
    pub fn rank(&self, p: usize) -> Result<usize> {
        let cm = &self.common;
        cm.check_position(p)?;
        let run = self.c.rank1(p + 1) - 1;
        let (b, o) = cm.input_block(p);
        let first = cm.b.rank1(self.c.select1(run + 1).expect("run start"));
        let g = self.s.select(run, b - first + 1).expect("block of the run");
        Ok(cm.strict_rank(g, o))
    }

    pub fn space(&self) -> SpaceReport {
        let mut components = self.common.components();
        components.push(("C", self.c.size_bits()));
        components.push(("S", self.s.size_bits()));
        SpaceReport {
            n: self.len(),
            delta: self.delta(),
            rho: self.rho(),
            components,
            bound: rank_aware_bound(self.len(), self.delta(), self.rho()),
        }
    }
}

/// Fast `select`, `rank` through the permutation's inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelectAwareCds {
    pub(crate) common: Common,
    pub(crate) pi: PermutationRS,
}

impl SelectAwareCds {
    pub fn build<T: Ord>(values: &[T]) -> Self {
        let bd = block_decomposition(values);
        let common = Common::new(&bd);
        let pi: Vec<usize> = bd.blocks.iter().map(|blk| common.b.rank1(blk.start)).collect();
        Self {
            pi: PermutationRS::new(&pi),
            common,
        }
    }

    pub fn len(&self) -> usize {
        self.common.n
    }

    pub fn is_empty(&self) -> bool {
        self.common.n == 0
    }

    pub fn delta(&self) -> usize {
        self.common.delta()
    }

    pub fn rho(&self) -> usize {
        self.common.rho
    }

    pub fn permutation(&self) -> &PermutationRS {
        &self.pi
    }

    pub fn select(&self, i: usize) -> Result<usize> {
        let cm = &self.common;
        let (g, o) = cm.sorted_block(cm.check_rank(i)?);
        Ok(cm.position(self.pi.apply(g), o))
    }

    pub fn rank(&self, p: usize) -> Result<usize> {
        let cm = &self.common;
        cm.check_position(p)?;
        let (b, o) = cm.input_block(p);
        Ok(cm.strict_rank(self.pi.inverse(b), o))
    }

    pub fn space(&self) -> SpaceReport {
        let mut components = self.common.components();
        components.push(("pi", self.pi.size_bits()));
        SpaceReport {
            n: self.len(),
            delta: self.delta(),
            rho: self.rho(),
            components,
            bound: select_aware_bound(self.len(), self.delta()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const INTRO: [i64; 10] = [2, 3, 1, 3, 7, 8, 9, 4, 5, 6];

    fn ones(bv: &BitVectorRS) -> Vec<usize> {
        (1..=bv.count_ones()).map(|j| bv.select1(j).unwrap() + 1).collect()
    }

    fn bits(bv: &BitVectorRS) -> String {
        (0..bv.len()).map(|i| if bv.get(i) { '1' } else { '0' }).collect()
    }

    #[test]
    fn introductory_instance() {
        let r = RankAwareCds::build(&INTRO);
        assert_eq!((r.delta(), r.rho()), (6, 3));
        assert_eq!(ones(r.a()), vec![1, 2, 3, 4, 5, 8]);
        assert_eq!(bits(r.a()), "1111100100");
        let p = r.select(4).unwrap();
        assert_eq!(INTRO[p], 3);
        assert_eq!(r.rank(2).unwrap(), 0);
        let s = SelectAwareCds::build(&INTRO);
        assert_eq!(INTRO[s.select(4).unwrap()], 3);
        assert_eq!(s.rank(2).unwrap(), 0);
        // Both copies of 3 have two smaller elements.
        assert_eq!((r.rank(1).unwrap(), r.rank(3).unwrap()), (2, 2));
        assert_eq!((s.rank(1).unwrap(), s.rank(3).unwrap()), (2, 2));
        assert!(r.select(0).is_err() && r.select(11).is_err() && s.rank(10).is_err());
    }

    #[test]
    fn single_sorted_run() {
        let v: Vec<i64> = (0..8).collect();
        let r = RankAwareCds::build(&v);
        assert_eq!(r.delta(), 1);
        for bv in [r.a(), r.b(), r.c()] {
            assert_eq!(bits(bv), "10000000");
        }
        assert_eq!((r.s().len(), r.s().access(0)), (1, 0));
    }

    #[test]
    fn repeated_values_become_singleton_blocks() {
        // One run, but every copy of the repeated value is its own block.
        let v = vec![4i64; 5];
        let r = RankAwareCds::build(&v);
        assert_eq!(r.delta(), 5);
        assert!((0..5).all(|p| r.rank(p).unwrap() == 0));
    }

    proptest! {
        #[test]
        fn round_trips_match_the_oracle(v in proptest::collection::vec(0i64..20, 0..150)) {
            let mut sorted = v.clone();
            sorted.sort();
            let r = RankAwareCds::build(&v);
            let s = SelectAwareCds::build(&v);
            prop_assert_eq!(r.c().count_ones(), r.rho());
            prop_assert_eq!(r.b().count_ones(), r.delta());
            for i in 1..=v.len() {
                prop_assert_eq!(v[r.select(i).unwrap()], sorted[i - 1]);
                prop_assert_eq!(v[s.select(i).unwrap()], sorted[i - 1]);
            }
            let mut seen = vec![false; v.len()];
            for i in 1..=v.len() {
                let p = s.select(i).unwrap();
                prop_assert!(!seen[p]);
                seen[p] = true;
            }
            for (p, x) in v.iter().enumerate() {
                let want = sorted.partition_point(|y| y < x);
                prop_assert_eq!(r.rank(p).unwrap(), want);
                prop_assert_eq!(s.rank(p).unwrap(), want);
            }
        }
    }
}
