//! Synergistic sorting and searching of multisets.
//!
//! The algorithms here exploit two kinds of structure at once: the order of
//! the input (how it splits into sorted runs) and the structure of the
//! multiset (how many copies each value has). Every algorithm charges its
//! key comparisons to an [`InstrumentedArray`], so costs can be measured
//! exactly and set against the entropy- and block-based formulas in
//! [`measures`].
//!
//! * [`synergy_sort`]: DLM sort and Quick Synergy Sort.
//! * [`baselines`]: merge sort with counters, minimal merge sort, small
//!   versus small sort.
//! * [`multiselect`]: offline multiselection that sorts only as much as the
//!   queries require.
//! * [`deferred`]: online rank/select structures that refine themselves as
//!   queries arrive.
//! * [`succinct`]: compressed representations with rank/select access.
//! * [`harness`]: instance generators, oracles and the benchmark runner.

pub mod array;
pub mod baselines;
pub mod deferred;
pub mod error;
pub mod harness;
pub mod measures;
pub mod middles;
pub mod multiselect;
pub mod partition;
pub mod runs;
pub mod search;
pub mod succinct;
pub mod synergy_sort;

pub use array::{InstrumentedArray, Meter};
pub use error::{Error, Result};
pub use runs::{detect_pivot_positions, detect_runs, PivotPositions, RunCursor, RunDecomposition};
