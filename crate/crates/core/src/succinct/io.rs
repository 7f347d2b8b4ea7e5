//! Binary serialization of the compressed representations.
//!
//! Layout: the magic `SMCDS1`, a kind byte (1 rank-aware, 2 select-aware),
//! then every component as little-endian `u64` fields. A bitvector is its
//! length followed by its words; directories are rebuilt on load, which is
//! deterministic, so save, load and save again yields identical bytes.

use std::path::Path;

use super::bitvec::BitVectorRS;
use super::cds::{Common, RankAwareCds, SelectAwareCds};
use super::permutation::{PackedInts, PermutationRS};
use super::sequence::SequenceRS;
use crate::error::{Error, Result};

const MAGIC: &[u8; 6] = b"SMCDS1";
const RANK_AWARE: u8 = 1;
const SELECT_AWARE: u8 = 2;

struct Writer(Vec<u8>);

impl Writer {
    fn u64(&mut self, x: u64) {
        self.0.extend_from_slice(&x.to_le_bytes());
    }

    fn usize(&mut self, x: usize) {
        self.u64(x as u64);
    }

    fn words(&mut self, w: &[u64]) {
        self.usize(w.len());
        for &x in w {
            self.u64(x);
        }
    }

    fn bitvec(&mut self, bv: &BitVectorRS) {
        self.usize(bv.len());
        self.words(bv.words());
    }

    fn packed(&mut self, p: &PackedInts) {
        self.usize(p.width());
        self.usize(p.len());
        self.words(p.words());
    }

    fn common(&mut self, c: &Common) {
        self.usize(c.n);
        self.usize(c.rho);
        self.bitvec(&c.a);
        self.bitvec(&c.b);
        self.bitvec(&c.v);
    }
}

struct Reader<'a> {
    buf: &'a [u8],
    at: usize,
}

impl Reader<'_> {
    fn u64(&mut self) -> Result<u64> {
        let end = self.at + 8;
        let bytes = self
            .buf
            .get(self.at..end)
            .ok_or_else(|| Error::Format(format!("truncated input at byte {}", self.at)))?;
        self.at = end;
        Ok(u64::from_le_bytes(bytes.try_into().expect("eight bytes")))
    }

    fn usize(&mut self) -> Result<usize> {
        usize::try_from(self.u64()?).map_err(|_| Error::Format("length does not fit in memory".into()))
    }

    fn words(&mut self) -> Result<Vec<u64>> {
        let len = self.usize()?;
        if len > (self.buf.len() - self.at) / 8 {
            return Err(Error::Format(format!("word count {len} exceeds the input")));
        }
        (0..len).map(|_| self.u64()).collect()
    }

    fn bitvec(&mut self) -> Result<BitVectorRS> {
        let len = self.usize()?;
        let words = self.words()?;
        if words.len() != len.div_ceil(64) {
            return Err(Error::Format(format!("bitvector of {len} bits has {} words", words.len())));
        }
        Ok(BitVectorRS::from_words(words, len))
    }

    fn packed(&mut self) -> Result<PackedInts> {
        let width = self.usize()?;
        let len = self.usize()?;
        let words = self.words()?;
        if width > 64 || words.len() != (len * width).div_ceil(64) {
            return Err(Error::Format("malformed packed integer array".into()));
        }
        Ok(PackedInts::from_words(width, len, words))
    }

    fn common(&mut self) -> Result<Common> {
        Ok(Common {
            n: self.usize()?,
            rho: self.usize()?,
            a: self.bitvec()?,
            b: self.bitvec()?,
            v: self.bitvec()?,
        })
    }

    fn header(&mut self, kind: u8) -> Result<()> {
        if self.buf.len() < 7 || &self.buf[..6] != MAGIC {
            return Err(Error::Format("missing SMCDS1 header".into()));
        }
        if self.buf[6] != kind {
            return Err(Error::Format(format!("expected structure kind {kind}, found {}", self.buf[6])));
        }
        self.at = 7;
        Ok(())
    }

    fn finish(&self) -> Result<()> {
        if self.at != self.buf.len() {
            return Err(Error::Format(format!("{} trailing bytes", self.buf.len() - self.at)));
        }
        Ok(())
    }
}

fn start(kind: u8) -> Writer {
    let mut w = Writer(MAGIC.to_vec());
    w.0.push(kind);
    w
}

impl RankAwareCds {
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut w = start(RANK_AWARE);
        w.common(&self.common);
        w.bitvec(&self.c);
        w.usize(self.s.len());
        w.usize(self.s.sigma());
        w.usize(self.s.levels().len());
        for l in self.s.levels() {
            w.bitvec(l);
        }
        w.0
    }

    pub fn from_bytes(buf: &[u8]) -> Result<Self> {
        let mut r = Reader { buf, at: 0 };
        r.header(RANK_AWARE)?;
        let common = r.common()?;
        let c = r.bitvec()?;
        let (len, sigma, count) = (r.usize()?, r.usize()?, r.usize()?);
        if count > 64 {
            return Err(Error::Format(format!("{count} sequence levels")));
        }
        let levels = (0..count).map(|_| r.bitvec()).collect::<Result<Vec<_>>>()?;
        r.finish()?;
        Ok(Self {
            common,
            c,
            s: SequenceRS::from_levels(len, sigma, levels),
        })
    }
}

impl SelectAwareCds {
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut w = start(SELECT_AWARE);
        w.common(&self.common);
        let (pi, t, marks, back) = self.pi.parts();
        w.packed(pi);
        w.usize(t);
        w.bitvec(marks);
        w.packed(back);
        w.0
    }

    pub fn from_bytes(buf: &[u8]) -> Result<Self> {
        let mut r = Reader { buf, at: 0 };
        r.header(SELECT_AWARE)?;
        let common = r.common()?;
        let pi = r.packed()?;
        let t = r.usize()?;
        let marks = r.bitvec()?;
        let back = r.packed()?;
        r.finish()?;
        Ok(Self {
            common,
            pi: PermutationRS::from_parts(pi, t, marks, back),
        })
    }
}

/// Writes serialized bytes to `path`.
pub fn save(path: &Path, bytes: &[u8]) -> Result<()> {
    std::fs::write(path, bytes).map_err(|e| Error::io(path, e))
}

/// Reads a file written by [`save`].
pub fn load(path: &Path) -> Result<Vec<u8>> {
    std::fs::read(path).map_err(|e| Error::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips_are_bit_exact() {
        let v: Vec<i64> = (0..5000).map(|i| (i * 7919 % 1013) as i64).collect();
        let r = RankAwareCds::build(&v);
        let bytes = r.to_bytes();
        let back = RankAwareCds::from_bytes(&bytes).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.to_bytes(), bytes);

        let s = SelectAwareCds::build(&v);
        let bytes = s.to_bytes();
        let back = SelectAwareCds::from_bytes(&bytes).unwrap();
        assert_eq!(back, s);
        assert_eq!(back.to_bytes(), bytes);
    }

    #[test]
    fn malformed_input_is_rejected() {
        let r = RankAwareCds::build(&[3, 1, 2]);
        let bytes = r.to_bytes();
        assert!(RankAwareCds::from_bytes(&bytes[..bytes.len() - 1]).is_err());
        assert!(SelectAwareCds::from_bytes(&bytes).is_err());
        assert!(RankAwareCds::from_bytes(b"nope").is_err());
        let mut extra = bytes.clone();
        extra.push(0);
        assert!(RankAwareCds::from_bytes(&extra).is_err());
    }
}
