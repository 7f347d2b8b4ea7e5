//! The comparison-counted input array.
//!
//! Every cost claim in this crate is a count of three-way key comparisons.
//! All algorithms obtain their comparisons through a [`Meter`], so a single
//! counter observes everything an algorithm learns about the keys.

use std::cell::Cell;
use std::cmp::Ordering;

/// Monotone tally of three-way key comparisons, with an optional budget.
#[derive(Debug, Default)]
pub struct Meter {
    count: Cell<u64>,
    limit: Option<u64>,
}

impl Meter {
    pub fn new() -> Self {
        Self::default()
    }

    /// A meter that refuses comparisons once `limit` have been performed.
    /// Only [`Meter::try_cmp`] honours the limit.
    pub fn with_limit(limit: u64) -> Self {
        Self {
            count: Cell::new(0),
            limit: Some(limit),
        }
    }

    #[inline]
    pub fn count(&self) -> u64 {
        self.count.get()
    }

    #[inline]
    pub fn cmp<T: Ord + ?Sized>(&self, a: &T, b: &T) -> Ordering {
        self.count.set(self.count.get() + 1);
        a.cmp(b)
    }

    /// Bills `k` comparisons performed elsewhere (on private copies).
    pub(crate) fn charge(&self, k: u64) {
        self.count.set(self.count.get() + k);
    }

    /// Like [`Meter::cmp`], but returns `None` instead of comparing when the
    /// budget is spent.
    #[inline]
    pub fn try_cmp<T: Ord + ?Sized>(&self, a: &T, b: &T) -> Option<Ordering> {
        match self.limit {
            Some(limit) if self.count.get() >= limit => None,
            _ => Some(self.cmp(a, b)),
        }
    }
}

/// A multiset in input order together with the meter charged for every
/// comparison between its keys.
#[derive(Debug)]
pub struct InstrumentedArray<T> {
    values: Vec<T>,
    meter: Meter,
}

impl<T: Ord> InstrumentedArray<T> {
    pub fn new(values: Vec<T>) -> Self {
        Self {
            values,
            meter: Meter::new(),
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.values.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Read access to the keys. Reading is free; comparing is not, so
    /// algorithms must go through [`InstrumentedArray::cmp`] and friends.
    #[inline]
    pub fn values(&self) -> &[T] {
        &self.values
    }

    #[inline]
    pub fn get(&self, i: usize) -> &T {
        &self.values[i]
    }

    pub fn into_values(self) -> Vec<T> {
        self.values
    }

    #[inline]
    pub fn meter(&self) -> &Meter {
        &self.meter
    }

    #[inline]
    pub fn comparisons(&self) -> u64 {
        self.meter.count()
    }

    /// Compares the keys at positions `i` and `j`.
    #[inline]
    pub fn cmp(&self, i: usize, j: usize) -> Ordering {
        self.meter.cmp(&self.values[i], &self.values[j])
    }

    /// Compares the key at position `i` with an external key `v`.
    #[inline]
    pub fn cmp_value(&self, i: usize, v: &T) -> Ordering {
        self.meter.cmp(&self.values[i], v)
    }
}

impl<T: Ord> From<Vec<T>> for InstrumentedArray<T> {
    fn from(values: Vec<T>) -> Self {
        Self::new(values)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_comparison_is_counted_once() {
        let a = InstrumentedArray::new(vec![3, 1, 2]);
        assert_eq!(a.comparisons(), 0);
        assert_eq!(a.cmp(0, 1), Ordering::Greater);
        assert_eq!(a.cmp_value(2, &2), Ordering::Equal);
        assert_eq!(a.comparisons(), 2);
    }

    #[test]
    fn budget_stops_comparisons() {
        let m = Meter::with_limit(2);
        assert!(m.try_cmp(&1, &2).is_some());
        assert!(m.try_cmp(&1, &2).is_some());
        assert!(m.try_cmp(&1, &2).is_none());
        assert_eq!(m.count(), 2);
    }
}
