//! A static bitvector with constant-time rank and sampled select.
//!
//! Directory layout: one 64-bit word per 512-bit superblock. Its low 32
//! bits hold the number of ones before the superblock; bits 32.., in three
//! 9-bit fields, hold the ones inside the superblock before words 2, 4 and
//! 6. A rank query reads one directory word and popcounts at most two
//! words. Select keeps the superblock of every 8192-th one (and zero) and
//! binary-searches the directory between samples.

const SUPER_BITS: usize = 512;
const WORDS_PER_SUPER: usize = SUPER_BITS / 64;
const SELECT_SAMPLE: usize = 8192;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitVectorRS {
    len: usize,
    words: Vec<u64>,
    dir: Vec<u64>,
    ones: usize,
    sel1: Vec<u32>,
    sel0: Vec<u32>,
}

/// Position (0-based) of the `r`-th set bit (1-based) of `w`.
#[inline]
fn select_in_word(mut w: u64, r: usize) -> usize {
    for _ in 1..r {
        w &= w - 1;
    }
    w.trailing_zeros() as usize
}

impl BitVectorRS {
    pub fn from_bits(bits: impl IntoIterator<Item = bool>) -> Self {
        let mut words = Vec::new();
        let mut len = 0;
        for b in bits {
            if len % 64 == 0 {
                words.push(0);
            }
            if b {
                words[len / 64] |= 1 << (len % 64);
            }
            len += 1;
        }
        Self::from_words(words, len)
    }

    /// A vector of `len` bits with ones exactly at `positions`.
    pub fn from_ones(len: usize, positions: impl IntoIterator<Item = usize>) -> Self {
        let mut words = vec![0u64; len.div_ceil(64)];
        for p in positions {
            assert!(p < len, "bit {p} outside a vector of {len}");
            words[p / 64] |= 1 << (p % 64);
        }
        Self::from_words(words, len)
    }

    /// Takes ownership of raw words (bit `i` is bit `i % 64` of word
    /// `i / 64`); bits past `len` are cleared.
    pub fn from_words(mut words: Vec<u64>, len: usize) -> Self {
        assert!(len < (1usize << 32), "bitvectors are limited to 2^32 bits");
        words.resize(len.div_ceil(64), 0);
        if !len.is_multiple_of(64) {
            let last = words.len() - 1;
            words[last] &= (1u64 << (len % 64)) - 1;
        }
        let supers = len.div_ceil(SUPER_BITS).max(1);
        let mut dir = Vec::with_capacity(supers);
        let mut total = 0usize;
        for s in 0..supers {
            let mut word = total as u64;
            let mut inside = 0u64;
            for k in 0..WORDS_PER_SUPER {
                if k > 0 && k % 2 == 0 {
                    word |= inside << (32 + 9 * (k / 2 - 1));
                }
                if let Some(w) = words.get(s * WORDS_PER_SUPER + k) {
                    inside += u64::from(w.count_ones());
                }
            }
            total += inside as usize;
            dir.push(word);
        }
        let mut bv = Self {
            len,
            words,
            dir,
            ones: total,
            sel1: Vec::new(),
            sel0: Vec::new(),
        };
        bv.build_samples();
        bv
    }

    fn build_samples(&mut self) {
        let (mut next1, mut next0) = (1usize, 1usize);
        for s in 0..self.dir.len() {
            let start = s * SUPER_BITS;
            let end = (start + SUPER_BITS).min(self.len);
            let ones_end = self.abs(s) + self.ones_in_super(s);
            let zeros_end = end - ones_end;
            while next1 <= ones_end {
                self.sel1.push(s as u32);
                next1 += SELECT_SAMPLE;
            }
            while next0 <= zeros_end {
                self.sel0.push(s as u32);
                next0 += SELECT_SAMPLE;
            }
        }
    }

    fn ones_in_super(&self, s: usize) -> usize {
        let lo = s * WORDS_PER_SUPER;
        let hi = (lo + WORDS_PER_SUPER).min(self.words.len());
        self.words[lo..hi].iter().map(|w| w.count_ones() as usize).sum()
    }

    #[inline]
    fn abs(&self, s: usize) -> usize {
        (self.dir[s] & 0xffff_ffff) as usize
    }

    /// Ones inside superblock `s` before word `2 * pair`.
    #[inline]
    fn rel(&self, s: usize, pair: usize) -> usize {
        if pair == 0 {
            0
        } else {
            ((self.dir[s] >> (32 + 9 * (pair - 1))) & 0x1ff) as usize
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn count_ones(&self) -> usize {
        self.ones
    }

    pub fn count_zeros(&self) -> usize {
        self.len - self.ones
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit {i} outside a vector of {}", self.len);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    /// Number of ones in `[0, i)`.
    #[inline]
    pub fn rank1(&self, i: usize) -> usize {
        assert!(i <= self.len, "rank past the end");
        let w = i / 64;
        let s = w / WORDS_PER_SUPER;
        if s == self.dir.len() {
            return self.ones;
        }
        let k = w % WORDS_PER_SUPER;
        let mut r = self.abs(s) + self.rel(s, k / 2);
        if k % 2 == 1 {
            r += self.words[w - 1].count_ones() as usize;
        }
        if !i.is_multiple_of(64) {
            r += (self.words[w] & ((1u64 << (i % 64)) - 1)).count_ones() as usize;
        }
        r
    }

    #[inline]
    pub fn rank0(&self, i: usize) -> usize {
        i - self.rank1(i)
    }

    /// Position of the `j`-th one (1-based), if any.
    pub fn select1(&self, j: usize) -> Option<usize> {
        if j == 0 || j > self.ones {
            return None;
        }
        Some(self.select_generic(j, &self.sel1, |bv, s| bv.abs(s), |bv, s, pair| bv.rel(s, pair), |w| w))
    }

    /// Position of the `j`-th zero (1-based), if any.
    pub fn select0(&self, j: usize) -> Option<usize> {
        if j == 0 || j > self.count_zeros() {
            return None;
        }
        Some(self.select_generic(
            j,
            &self.sel0,
            |bv, s| s * SUPER_BITS - bv.abs(s),
            |bv, s, pair| pair * 128 - bv.rel(s, pair),
            |w| !w,
        ))
    }

    fn select_generic(
        &self,
        j: usize,
        samples: &[u32],
        before: impl Fn(&Self, usize) -> usize,
        rel: impl Fn(&Self, usize, usize) -> usize,
        flip: impl Fn(u64) -> u64,
    ) -> usize {
        let k = (j - 1) / SELECT_SAMPLE;
        let lo = samples[k] as usize;
        let hi = samples.get(k + 1).map_or(self.dir.len(), |&s| s as usize + 1);
        // Last superblock in [lo, hi) with fewer than j bits before it.
        let (mut a, mut b) = (lo, hi);
        while b - a > 1 {
            let mid = a + (b - a) / 2;
            if before(self, mid) < j {
                a = mid;
            } else {
                b = mid;
            }
        }
        let s = a;
        let mut r = j - before(self, s);
        let mut pair = 3;
        while pair > 0 && rel(self, s, pair) >= r {
            pair -= 1;
        }
        r -= rel(self, s, pair);
        let mut w = s * WORDS_PER_SUPER + 2 * pair;
        loop {
            let word = flip(self.words[w]);
            let c = word.count_ones() as usize;
            if c >= r {
                return w * 64 + select_in_word(word, r);
            }
            r -= c;
            w += 1;
        }
    }

    /// Bits spent on the rank directory and select samples.
    pub fn directory_bits(&self) -> u64 {
        64 * self.dir.len() as u64 + 32 * (self.sel1.len() + self.sel0.len()) as u64
    }

    /// Payload plus directory bits.
    pub fn size_bits(&self) -> u64 {
        self.len as u64 + self.directory_bits()
    }
}
