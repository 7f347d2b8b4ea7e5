//! Instance and query generation, brute-force oracles and the benchmark
//! runner behind the command-line tool.

pub mod bench;
pub mod gen;
pub mod oracle;
pub mod queries;
pub mod trace;

pub use bench::{bench_run, run_verified, Algorithm, BenchPlan, BenchRow, Measurement, Workload, CSV_HEADER};
pub use gen::{gen_instance, read_instance, write_instance, Family, InstanceSpec};
pub use oracle::{oracle_blocks, oracle_rank, oracle_select, oracle_sort};
pub use queries::{gen_rank_set, gen_ranks, gen_trace, GapProfile, QueryKind, QueryOrder, QuerySpec};
pub use trace::{checksum, read_trace, write_trace, Query};
