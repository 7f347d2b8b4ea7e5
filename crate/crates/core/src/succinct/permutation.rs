//! A permutation with constant-time application and a shortcut-accelerated
//! inverse.
//!
//! Along every cycle longer than `t`, every `t`-th element is marked and
//! stores the element `t` steps behind it. Inverting walks forward to the
//! next mark, jumps back once, and walks forward again, evaluating at most
//! `t + 1` elements.

use super::bitvec::BitVectorRS;

/// Fixed-width unsigned integers packed into 64-bit words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PackedInts {
    width: usize,
    len: usize,
    words: Vec<u64>,
}

impl PackedInts {
    pub fn new(width: usize, values: &[usize]) -> Self {
        assert!(width <= 64);
        let mut p = Self {
            width,
            len: values.len(),
            words: vec![0; (values.len() * width).div_ceil(64)],
        };
        for (i, &v) in values.iter().enumerate() {
            p.set(i, v);
        }
        p
    }

    pub(crate) fn from_words(width: usize, len: usize, words: Vec<u64>) -> Self {
        Self { width, len, words }
    }

    /// Bits needed to store values below `bound`.
    pub fn width_for(bound: usize) -> usize {
        (usize::BITS - bound.saturating_sub(1).leading_zeros()) as usize
    }

    fn set(&mut self, i: usize, v: usize) {
        if self.width == 0 {
            return;
        }
        let bit = i * self.width;
        let (w, o) = (bit / 64, bit % 64);
        let v = v as u64;
        self.words[w] |= v << o;
        if o + self.width > 64 {
            self.words[w + 1] |= v >> (64 - o);
        }
    }

    #[inline]
    pub fn get(&self, i: usize) -> usize {
        assert!(i < self.len, "index {i} outside {} packed values", self.len);
        if self.width == 0 {
            return 0;
        }
        let bit = i * self.width;
        let (w, o) = (bit / 64, bit % 64);
        let mut v = self.words[w] >> o;
        if o + self.width > 64 {
            v |= self.words[w + 1] << (64 - o);
        }
        let mask = if self.width == 64 { u64::MAX } else { (1u64 << self.width) - 1 };
        (v & mask) as usize
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub(crate) fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn size_bits(&self) -> u64 {
        (self.len * self.width) as u64
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermutationRS {
    pi: PackedInts,
    t: usize,
    marks: BitVectorRS,
    /// For the k-th marked element, the element `t` steps behind it.
    back: PackedInts,
}

/// The shortcut spacing `max(1, ⌈log₂δ / log₂log₂δ⌉)`.
pub fn shortcut_spacing(len: usize) -> usize {
    if len < 4 {
        return 1;
    }
    let l = (len as f64).log2();
    ((l / l.log2()).ceil() as usize).max(1)
}

impl PermutationRS {
    pub fn new(pi: &[usize]) -> Self {
        let n = pi.len();
        let t = shortcut_spacing(n);
        let mut seen = vec![false; n];
        let mut back_of = vec![usize::MAX; n];
        let mut cycle = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            cycle.clear();
            let mut x = s;
            while !seen[x] {
                assert!(x < n, "not a permutation");
                seen[x] = true;
                cycle.push(x);
                x = pi[x];
            }
            assert_eq!(x, s, "not a permutation");
            if cycle.len() > t {
                let len = cycle.len();
                for k in (0..len).step_by(t) {
                    back_of[cycle[k]] = cycle[(k + len - t) % len];
                }
            }
        }
        let marks = BitVectorRS::from_bits(back_of.iter().map(|&b| b != usize::MAX));
        let width = PackedInts::width_for(n);
        let back: Vec<usize> = back_of.into_iter().filter(|&b| b != usize::MAX).collect();
        Self {
            pi: PackedInts::new(width, pi),
            t,
            marks,
            back: PackedInts::new(width, &back),
        }
    }

    pub(crate) fn from_parts(pi: PackedInts, t: usize, marks: BitVectorRS, back: PackedInts) -> Self {
        Self { pi, t, marks, back }
    }

    pub(crate) fn parts(&self) -> (&PackedInts, usize, &BitVectorRS, &PackedInts) {
        (&self.pi, self.t, &self.marks, &self.back)
    }

    pub fn len(&self) -> usize {
        self.pi.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pi.is_empty()
    }

    pub fn spacing(&self) -> usize {
        self.t
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.pi.get(i)
    }

    pub fn inverse(&self, i: usize) -> usize {
        self.inverse_counted(i).0
    }

    /// The preimage of `i` and the number of elements evaluated.
    pub fn inverse_counted(&self, i: usize) -> (usize, usize) {
        let mut x = i;
        let mut jumped = false;
        let mut visits = 0;
        loop {
            visits += 1;
            let y = self.pi.get(x);
            if y == i {
                return (x, visits);
            }
            if !jumped && self.marks.get(x) {
                jumped = true;
                x = self.back.get(self.marks.rank1(x));
            } else {
                x = y;
            }
        }
    }

    pub fn size_bits(&self) -> u64 {
        self.pi.size_bits() + self.marks.size_bits() + self.back.size_bits()
    }
}
