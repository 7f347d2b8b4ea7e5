//! A sequence over `[0, σ)` with access, rank and select, stored as a
//! wavelet matrix: one bitvector per bit of the symbol, most significant
//! first, with each level's elements stably partitioned by the previous
//! bit. Every operation touches each level once, so it costs `O(log σ)`.

use super::bitvec::BitVectorRS;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceRS {
    len: usize,
    sigma: usize,
    levels: Vec<BitVectorRS>,
    /// Number of zeros on each level.
    zeros: Vec<usize>,
}

fn width(sigma: usize) -> usize {
    (usize::BITS - sigma.saturating_sub(1).leading_zeros()) as usize
}

impl SequenceRS {
    pub fn new(symbols: &[usize], sigma: usize) -> Self {
        assert!(symbols.iter().all(|&c| c < sigma), "symbol outside the alphabet");
        let bits = width(sigma);
        let mut cur = symbols.to_vec();
        let mut levels = Vec::with_capacity(bits);
        let mut zeros = Vec::with_capacity(bits);
        for l in 0..bits {
            let shift = bits - 1 - l;
            let bv = BitVectorRS::from_bits(cur.iter().map(|&c| c >> shift & 1 == 1));
            zeros.push(bv.count_zeros());
            levels.push(bv);
            let (z, o): (Vec<usize>, Vec<usize>) = cur.iter().partition(|&&c| c >> shift & 1 == 0);
            cur = z;
            cur.extend(o);
        }
        Self {
            len: symbols.len(),
            sigma,
            levels,
            zeros,
        }
    }

    /// Rebuilds from stored levels (used by deserialization).
    pub(crate) fn from_levels(len: usize, sigma: usize, levels: Vec<BitVectorRS>) -> Self {
        let zeros = levels.iter().map(BitVectorRS::count_zeros).collect();
        Self {
            len,
            sigma,
            levels,
            zeros,
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn sigma(&self) -> usize {
        self.sigma
    }

    pub(crate) fn levels(&self) -> &[BitVectorRS] {
        &self.levels
    }

    pub fn access(&self, mut i: usize) -> usize {
        assert!(i < self.len, "index {i} outside a sequence of {}", self.len);
        let mut c = 0;
        for (bv, &z) in self.levels.iter().zip(&self.zeros) {
            let b = bv.get(i);
            c = c << 1 | usize::from(b);
            i = if b { z + bv.rank1(i) } else { bv.rank0(i) };
        }
        c
    }

    /// Occurrences of `c` in `[0, i)`.
    pub fn rank(&self, c: usize, i: usize) -> usize {
        assert!(i <= self.len, "rank past the end");
        if c >= self.sigma {
            return 0;
        }
        let (mut p, mut i) = (0, i);
        let bits = self.levels.len();
        for (l, (bv, &z)) in self.levels.iter().zip(&self.zeros).enumerate() {
            if c >> (bits - 1 - l) & 1 == 1 {
                p = z + bv.rank1(p);
                i = z + bv.rank1(i);
            } else {
                p = bv.rank0(p);
                i = bv.rank0(i);
            }
        }
        i - p
    }

    /// Position of the `j`-th occurrence (1-based) of `c`, if any.
    pub fn select(&self, c: usize, j: usize) -> Option<usize> {
        if j == 0 || c >= self.sigma {
            return None;
        }
        let bits = self.levels.len();
        let (mut p, mut e) = (0, self.len);
        for (l, (bv, &z)) in self.levels.iter().zip(&self.zeros).enumerate() {
            if c >> (bits - 1 - l) & 1 == 1 {
                p = z + bv.rank1(p);
                e = z + bv.rank1(e);
            } else {
                p = bv.rank0(p);
                e = bv.rank0(e);
            }
        }
        // Occurrences of c occupy [p, e) on the last level.
        if j > e - p {
            return None;
        }
        let mut pos = p + j - 1;
        for (l, (bv, &z)) in self.levels.iter().zip(&self.zeros).enumerate().rev() {
            pos = if c >> (bits - 1 - l) & 1 == 1 {
                bv.select1(pos.checked_sub(z)? + 1)?
            } else {
                bv.select0(pos + 1)?
            };
        }
        Some(pos)
    }

    pub fn size_bits(&self) -> u64 {
        self.levels.iter().map(BitVectorRS::size_bits).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn operations_agree_with_scans() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for (len, sigma) in [(0, 1), (1, 1), (50, 1), (300, 2), (1000, 7), (5000, 64), (3000, 1000)] {
            let s: Vec<usize> = (0..len).map(|_| rng.gen_range(0..sigma)).collect();
            let seq = SequenceRS::new(&s, sigma);
            for (i, &c) in s.iter().enumerate() {
                assert_eq!(seq.access(i), c);
            }
            for _ in 0..500 {
                let c = rng.gen_range(0..sigma);
                let i = rng.gen_range(0..=len);
                assert_eq!(seq.rank(c, i), s[..i].iter().filter(|&&x| x == c).count());
                let j = rng.gen_range(1..=len.max(1));
                let naive = s.iter().enumerate().filter(|(_, &x)| x == c).nth(j - 1).map(|(p, _)| p);
                assert_eq!(seq.select(c, j), naive);
                if let Some(p) = naive {
                    assert!(seq.select(c, seq.rank(c, p + 1)).unwrap() <= p);
                }
            }
        }
    }
}
