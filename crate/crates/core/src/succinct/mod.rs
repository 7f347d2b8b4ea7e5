//! Compressed multiset representations with rank and select.
//!
//! Building blocks: [`BitVectorRS`] (rank/select bitvector),
//! [`SequenceRS`] (wavelet matrix) and [`PermutationRS`] (permutation with
//! inverse shortcuts). On top of them, [`RankAwareCds`] answers `rank`
//! quickly and [`SelectAwareCds`] answers `select` quickly; both report
//! their space per component and serialize to a versioned binary layout.

pub mod bitvec;
pub mod cds;
pub mod io;
pub mod permutation;
pub mod sequence;

pub use bitvec::BitVectorRS;
pub use cds::{rank_aware_bound, select_aware_bound, RankAwareCds, SelectAwareCds, SpaceReport};
pub use permutation::{PackedInts, PermutationRS};
pub use sequence::SequenceRS;
