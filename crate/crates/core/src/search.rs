//! Doubling (exponential) searches over sorted windows.
//!
//! A search for a value `v` in a sorted window tracks two boundaries at
//! once: the first index whose key is `>= v` and the first whose key is
//! `> v`. Each is kept as a bracket `[lo, hi]` known to contain it. A single
//! three-way probe tightens both brackets, so nothing learned by one search
//! direction is ever paid for twice.

use std::cmp::Ordering;
use std::ops::Range;

use crate::array::InstrumentedArray;
use crate::runs::RunDecomposition;

/// Where a one-directional doubling search starts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Anchor {
    /// Probe `start, start + 1, start + 3, start + 7, ...`.
    Start,
    /// Probe `end - 1, end - 2, end - 4, ...`.
    End,
    /// Probe the given position, then gallop away from it.
    At(usize),
}

/// Which boundary of the equal range of `v` to return.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    FirstGeq,
    FirstGt,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Bracket {
    pub lo: usize,
    pub hi: usize,
}

impl Bracket {
    #[inline]
    fn closed(&self) -> bool {
        self.lo == self.hi
    }
    #[inline]
    fn raise(&mut self, x: usize) {
        self.lo = self.lo.max(x);
    }
    #[inline]
    fn lower(&mut self, x: usize) {
        self.hi = self.hi.min(x);
    }
}

/// Brackets on both boundaries of the equal range of one value.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Brackets {
    pub geq: Bracket,
    pub gt: Bracket,
    start: usize,
}

impl Brackets {
    pub fn new(window: &Range<usize>) -> Self {
        let b = Bracket {
            lo: window.start,
            hi: window.end,
        };
        Self {
            geq: b,
            gt: b,
            start: window.start,
        }
    }

    pub fn get(&self, mode: Mode) -> Bracket {
        match mode {
            Mode::FirstGeq => self.geq,
            Mode::FirstGt => self.gt,
        }
    }

    /// Records `ord = key[p].cmp(v)`. With `ties`, an equal outcome also
    /// settles the neighbours that are known to differ from `key[p]`.
    pub fn observe(&mut self, p: usize, ord: Ordering, ties: Option<&RunDecomposition>) {
        match ord {
            Ordering::Less => {
                self.geq.raise(p + 1);
                self.gt.raise(p + 1);
            }
            Ordering::Equal => {
                self.geq.lower(p);
                self.gt.raise(p + 1);
                if let Some(t) = ties {
                    if p + 1 < self.gt.hi && !t.is_tie(p) {
                        self.gt.lower(p + 1);
                    }
                    if p > self.start && self.geq.lo < p && !t.is_tie(p - 1) {
                        self.geq.raise(p);
                    }
                }
            }
            Ordering::Greater => {
                self.geq.lower(p);
                self.gt.lower(p);
            }
        }
        self.gt.raise(self.geq.lo);
        self.geq.lower(self.gt.hi);
    }
}

#[derive(Debug, Clone, Copy)]
enum Direction {
    Forward,
    Backward,
}

/// One galloping searcher: exponential steps away from `base`, then
/// bisection of whatever bracket remains.
#[derive(Debug, Clone, Copy)]
struct Galloper {
    dir: Direction,
    base: usize,
    step: u32,
    bisecting: bool,
    target: Mode,
}

impl Galloper {
    fn forward(base: usize, target: Mode) -> Self {
        Self {
            dir: Direction::Forward,
            base,
            step: 0,
            bisecting: false,
            target,
        }
    }

    fn backward(base: usize, target: Mode) -> Self {
        Self {
            dir: Direction::Backward,
            base,
            step: 0,
            bisecting: false,
            target,
        }
    }

    /// Next position to probe, skipping positions whose outcome is already
    /// implied by the bracket; `None` once the bracket is closed.
    fn next(&mut self, br: Bracket) -> Option<usize> {
        if br.closed() {
            return None;
        }
        while !self.bisecting {
            match self.dir {
                Direction::Forward => {
                    let off = 1usize.checked_shl(self.step).map_or(usize::MAX, |x| x - 1);
                    let p = self.base.saturating_add(off);
                    if p >= br.hi {
                        self.bisecting = true;
                        break;
                    }
                    self.step += 1;
                    if p >= br.lo {
                        return Some(p);
                    }
                }
                Direction::Backward => {
                    let off = 1usize.checked_shl(self.step).unwrap_or(usize::MAX);
                    if off > self.base || self.base - off < br.lo {
                        self.bisecting = true;
                        break;
                    }
                    let p = self.base - off;
                    self.step += 1;
                    if p < br.hi {
                        return Some(p);
                    }
                }
            }
        }
        Some(br.lo + (br.hi - br.lo) / 2)
    }
}

/// One-directional doubling search with a caller-supplied probe
/// `probe(p) = key[p].cmp(v)`.
pub(crate) fn search_boundary(
    window: Range<usize>,
    anchor: Anchor,
    mode: Mode,
    ties: Option<&RunDecomposition>,
    mut probe: impl FnMut(usize) -> Ordering,
) -> usize {
    if window.is_empty() {
        return window.start;
    }
    let mut br = Brackets::new(&window);
    let mut g = match anchor {
        Anchor::Start => Galloper::forward(window.start, mode),
        Anchor::End => Galloper::backward(window.end, mode),
        Anchor::At(p) if p >= window.end => Galloper::backward(window.end, mode),
        Anchor::At(p) => {
            let p = p.max(window.start);
            br.observe(p, probe(p), ties);
            if br.get(mode).hi <= p {
                Galloper::backward(p, mode)
            } else {
                Galloper::forward(p + 1, mode)
            }
        }
    };
    while let Some(p) = g.next(br.get(mode)) {
        br.observe(p, probe(p), ties);
    }
    br.get(mode).lo
}

/// Equal range of `v` by two searchers probing in strict alternation, one
/// from each end of the window. A searcher whose boundary is settled turns
/// to the other boundary, starting from the one it found. `known` seeds the
/// brackets with an outcome paid for elsewhere.
pub(crate) fn equal_range_search(
    window: Range<usize>,
    ties: Option<&RunDecomposition>,
    known: Option<(usize, Ordering)>,
    mut probe: impl FnMut(usize) -> Ordering,
) -> (usize, usize) {
    let mut br = Brackets::new(&window);
    if let Some((p, ord)) = known {
        br.observe(p, ord, ties);
    }
    let mut left = Galloper::forward(window.start, Mode::FirstGeq);
    let mut right = Galloper::backward(window.end, Mode::FirstGt);
    loop {
        let mut progressed = false;
        for g in [&mut left, &mut right] {
            let mut p = g.next(br.get(g.target));
            if p.is_none() {
                *g = match g.dir {
                    Direction::Forward => Galloper::forward(br.geq.lo, Mode::FirstGt),
                    Direction::Backward => Galloper::backward(br.gt.lo, Mode::FirstGeq),
                };
                p = g.next(br.get(g.target));
            }
            if let Some(p) = p {
                br.observe(p, probe(p), ties);
                progressed = true;
            }
        }
        if !progressed {
            return (br.geq.lo, br.gt.lo);
        }
    }
}

/// First index in `window` whose key satisfies `mode` relative to `v`
/// (`window.end` if none). Indices are absolute positions in `a`.
pub fn doubling_search<T: Ord>(
    a: &InstrumentedArray<T>,
    window: Range<usize>,
    v: &T,
    anchor: Anchor,
    mode: Mode,
) -> usize {
    search_boundary(window, anchor, mode, None, |p| a.cmp_value(p, v))
}

/// `(first >= v, first > v)` in `window`, searching from both ends at once.
pub fn doubling_search_bidir<T: Ord>(
    a: &InstrumentedArray<T>,
    window: Range<usize>,
    v: &T,
) -> (usize, usize) {
    equal_range_search(window, None, None, |p| a.cmp_value(p, v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn ceil_log2(x: usize) -> u64 {
        (usize::BITS - (x.max(1) - 1).leading_zeros()) as u64
    }

    fn scan(v: &[i64], x: i64, mode: Mode) -> usize {
        v.iter()
            .position(|&y| match mode {
                Mode::FirstGeq => y >= x,
                Mode::FirstGt => y > x,
            })
            .unwrap_or(v.len())
    }

    #[test]
    fn worked_examples() {
        let a = InstrumentedArray::new(vec![1i64, 3, 7, 8, 9]);
        // 1-based index 3 is 0-based 2
        assert_eq!(doubling_search(&a, 0..5, &6, Anchor::Start, Mode::FirstGeq), 2);
        assert_eq!(doubling_search(&a, 0..5, &3, Anchor::Start, Mode::FirstGt), 2);
        assert_eq!(doubling_search(&a, 0..5, &3, Anchor::Start, Mode::FirstGeq), 1);
        assert_eq!(doubling_search_bidir(&a, 0..5, &6), (2, 2));

        let b = InstrumentedArray::new(vec![4i64, 5, 6]);
        assert_eq!(doubling_search(&b, 0..3, &3, Anchor::Start, Mode::FirstGeq), 0);
        let c = InstrumentedArray::new(vec![3i64, 3, 3]);
        assert_eq!(doubling_search_bidir(&c, 0..3, &3), (0, 3));
        let d = InstrumentedArray::new(vec![1i64, 2]);
        assert_eq!(doubling_search_bidir(&d, 0..2, &0), (0, 0));
    }

    #[test]
    fn one_directional_agrees_with_scan_within_bound() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10_000 {
            let len = rng.gen_range(0..80);
            let mut v: Vec<i64> = (0..len).map(|_| rng.gen_range(0..40)).collect();
            v.sort();
            let a = InstrumentedArray::new(v.clone());
            let x = rng.gen_range(-2..42);
            let mode = if rng.gen() { Mode::FirstGeq } else { Mode::FirstGt };
            let anchor = match rng.gen_range(0..3) {
                0 => Anchor::Start,
                1 => Anchor::End,
                _ => Anchor::At(rng.gen_range(0..len.max(1))),
            };
            let got = doubling_search(&a, 0..len, &x, anchor, mode);
            let want = scan(&v, x, mode);
            assert_eq!(got, want, "{v:?} {x} {anchor:?} {mode:?}");
            let d = match anchor {
                Anchor::Start => want,
                Anchor::End => len - want,
                Anchor::At(p) => p.abs_diff(want),
            };
            assert!(a.comparisons() <= 2 * ceil_log2(d + 2) + 2);
        }
    }

    #[test]
    fn bidirectional_agrees_with_scan_within_bound() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for round in 0..10_000 {
            let len = rng.gen_range(0..200);
            let distinct = round % 2 == 0;
            let mut v: Vec<i64> = if distinct {
                let mut v: Vec<i64> = (0..len as i64).map(|i| 2 * i).collect();
                v.truncate(len);
                v
            } else {
                (0..len).map(|_| rng.gen_range(0..30)).collect()
            };
            v.sort();
            let a = InstrumentedArray::new(v.clone());
            let x = rng.gen_range(-2..(2 * len as i64 + 2));
            let (lo, hi) = doubling_search_bidir(&a, 0..len, &x);
            assert_eq!((lo, hi), (scan(&v, x, Mode::FirstGeq), scan(&v, x, Mode::FirstGt)));
            let d = lo.min(len - hi);
            let eq = hi - lo;
            let bound = 4 * ceil_log2(d + 2) + 4 + if distinct { 0 } else { 4 * ceil_log2(eq + 2) };
            assert!(a.comparisons() <= bound, "{} > {bound} for d={d} eq={eq}", a.comparisons());
        }
    }

    #[test]
    fn known_outcomes_and_ties_save_probes() {
        let v = vec![1i64, 2, 5, 9, 9, 9, 12, 13];
        let runs = RunDecomposition::from_parts(vec![0], vec![false, false, false, true, true, false, false, false]);
        let a = InstrumentedArray::new(v);
        // Middle position 4 is known to equal 9; only the ends remain open.
        let r = equal_range_search(0..8, Some(&runs), Some((4, Ordering::Equal)), |p| a.cmp_value(p, &9));
        assert_eq!(r, (3, 6));
        // Position 1 known equal to 2 with strict neighbours: nothing to probe.
        let before = a.comparisons();
        let r = equal_range_search(0..8, Some(&runs), Some((1, Ordering::Equal)), |p| a.cmp_value(p, &2));
        assert_eq!(r, (1, 2));
        assert_eq!(a.comparisons(), before);
    }
}
