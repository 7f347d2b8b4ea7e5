//! Ground truth computed without comparison accounting.

use crate::error::{Error, Result};
use crate::measures::{block_decomposition, BlockDecomposition};

pub fn oracle_sort<T: Ord + Clone>(values: &[T]) -> Vec<T> {
    let mut v = values.to_vec();
    v.sort();
    v
}

/// The `i`-th smallest value (1-based).
pub fn oracle_select<T: Ord + Clone>(values: &[T], i: usize) -> Result<T> {
    if i == 0 || i > values.len() {
        return Err(Error::RankOutOfRange { rank: i, n: values.len() });
    }
    Ok(oracle_sort(values)[i - 1].clone())
}

/// Number of values strictly smaller than `x`.
pub fn oracle_rank<T: Ord>(values: &[T], x: &T) -> usize {
    values.iter().filter(|v| *v < x).count()
}

pub fn oracle_blocks<T: Ord>(values: &[T]) -> BlockDecomposition {
    block_decomposition(values)
}

#[cfg(test)]
mod tests {
    use super::*;

    const INTRO: [i64; 10] = [2, 3, 1, 3, 7, 8, 9, 4, 5, 6];

    #[test]
    fn introductory_answers() {
        assert_eq!(oracle_select(&INTRO, 4).unwrap(), 3);
        assert_eq!(oracle_rank(&INTRO, &3), 2);
        assert_eq!(oracle_rank(&INTRO, &0), 0);
        assert!(oracle_select(&INTRO, 11).is_err());
        assert_eq!(oracle_blocks(&INTRO).delta(), 6);
    }
}
