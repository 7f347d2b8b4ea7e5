//! The benchmark runner: instance specs × algorithms × query workloads,
//! every answer checked against the oracle, rows written as CSV.

use std::cmp::Ordering;
use std::fmt;
use std::io::Write;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;

use super::gen::{gen_instance, InstanceSpec};
use super::oracle::{oracle_rank, oracle_sort};
use super::queries::{gen_trace, QuerySpec};
use super::trace::{checksum, Query};
use crate::array::{InstrumentedArray, Meter};
use crate::baselines::{merge_sort_counters, minimal_merge_sort, parallel_race, small_vs_small_sort};
use crate::deferred::{DeferredStructure, FingerDeferred, RamDeferred};
use crate::error::{Error, Result};
use crate::measures::{predictor_envelope, InstanceProfile};
use crate::multiselect::{multiselect, multiselect_with_global, QueryBatch};
use crate::succinct::{RankAwareCds, SelectAwareCds};
use crate::synergy_sort::{dlm_sort, global_sort, quick_synergy_sort};

pub const CSV_HEADER: [&str; 16] = [
    "family",
    "n",
    "sigma",
    "rho",
    "phi",
    "delta",
    "chi",
    "algorithm",
    "qspec",
    "comparisons",
    "index_steps",
    "wall_ns",
    "pred_ms",
    "pred_tk",
    "pred_syn",
    "pred_env",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    MergeSortCounters,
    MinimalMergeSort,
    SmallVsSmall,
    Race,
    Dlm,
    QuickSynergy,
    Global,
    Multiselect,
    MultiselectGlobal,
    Ram,
    Finger,
    RankAware,
    SelectAware,
}

impl Algorithm {
    pub const ALL: [Algorithm; 13] = [
        Algorithm::MergeSortCounters,
        Algorithm::MinimalMergeSort,
        Algorithm::SmallVsSmall,
        Algorithm::Race,
        Algorithm::Dlm,
        Algorithm::QuickSynergy,
        Algorithm::Global,
        Algorithm::Multiselect,
        Algorithm::MultiselectGlobal,
        Algorithm::Ram,
        Algorithm::Finger,
        Algorithm::RankAware,
        Algorithm::SelectAware,
    ];

    pub const SORTERS: [Algorithm; 7] = [
        Algorithm::MergeSortCounters,
        Algorithm::MinimalMergeSort,
        Algorithm::SmallVsSmall,
        Algorithm::Race,
        Algorithm::Dlm,
        Algorithm::QuickSynergy,
        Algorithm::Global,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::MergeSortCounters => "msc",
            Algorithm::MinimalMergeSort => "mms",
            Algorithm::SmallVsSmall => "svs",
            Algorithm::Race => "race",
            Algorithm::Dlm => "dlm",
            Algorithm::QuickSynergy => "qss",
            Algorithm::Global => "global",
            Algorithm::Multiselect => "multiselect",
            Algorithm::MultiselectGlobal => "multiselect_global",
            Algorithm::Ram => "ram",
            Algorithm::Finger => "finger",
            Algorithm::RankAware => "rank_aware",
            Algorithm::SelectAware => "select_aware",
        }
    }

    /// Whether the algorithm answers queries (as opposed to sorting).
    pub fn takes_queries(self) -> bool {
        !Self::SORTERS.contains(&self)
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = Self::ALL.iter().map(|a| a.name()).collect();
                Error::InvalidSpec(format!("unknown algorithm `{s}` (expected one of {})", names.join(", ")))
            })
    }
}

/// Where the queries of a cell come from.
#[derive(Debug, Clone, PartialEq)]
pub enum Workload {
    Generated(QuerySpec),
    /// A recorded trace, tagged in the CSV by its checksum.
    Trace(Vec<Query>),
}

impl Workload {
    fn label(&self) -> String {
        match self {
            Workload::Generated(q) => q.to_string(),
            Workload::Trace(t) => format!("trace:{:016x}", checksum(t)),
        }
    }

    fn queries(&self, values: &[i64]) -> Result<Vec<Query>> {
        match self {
            Workload::Generated(q) => gen_trace(q, values),
            Workload::Trace(t) => Ok(t.clone()),
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct BenchPlan {
    pub instances: Vec<InstanceSpec>,
    pub algorithms: Vec<Algorithm>,
    /// Applied to query-answering algorithms; sorters run once per
    /// instance regardless.
    pub workloads: Vec<Workload>,
    pub repetitions: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub family: String,
    pub n: usize,
    pub sigma: usize,
    pub rho: usize,
    pub phi: usize,
    pub delta: usize,
    pub chi: usize,
    pub algorithm: Algorithm,
    pub qspec: String,
    pub comparisons: u64,
    pub index_steps: u64,
    pub wall_ns: u128,
    pub pred_ms: f64,
    pub pred_tk: f64,
    pub pred_syn: f64,
    pub pred_env: Option<f64>,
}

impl BenchRow {
    pub fn record(&self) -> [String; 16] {
        [
            self.family.clone(),
            self.n.to_string(),
            self.sigma.to_string(),
            self.rho.to_string(),
            self.phi.to_string(),
            self.delta.to_string(),
            self.chi.to_string(),
            self.algorithm.to_string(),
            self.qspec.clone(),
            self.comparisons.to_string(),
            self.index_steps.to_string(),
            self.wall_ns.to_string(),
            format!("{:.3}", self.pred_ms),
            format!("{:.3}", self.pred_tk),
            format!("{:.3}", self.pred_syn),
            self.pred_env.map(|e| format!("{e:.3}")).unwrap_or_default(),
        ]
    }
}

/// Cost of one verified run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Measurement {
    pub comparisons: u64,
    pub index_steps: u64,
    pub wall_ns: u128,
}

fn mismatch(algorithm: Algorithm, detail: String) -> Error {
    Error::Mismatch {
        algorithm: algorithm.to_string(),
        detail,
    }
}

fn check_sorted(algorithm: Algorithm, got: &[i64], want: &[i64]) -> Result<()> {
    match got.iter().zip(want).position(|(g, w)| g != w) {
        _ if got.len() != want.len() => Err(mismatch(algorithm, format!("output has {} values, expected {}", got.len(), want.len()))),
        Some(i) => Err(mismatch(algorithm, format!("sorted output differs at index {i}: {} != {}", got[i], want[i]))),
        None => Ok(()),
    }
}

fn check_select(algorithm: Algorithm, i: usize, got: i64, sorted: &[i64]) -> Result<()> {
    if got != sorted[i - 1] {
        return Err(mismatch(algorithm, format!("select({i}) returned {got}, expected {}", sorted[i - 1])));
    }
    Ok(())
}

fn check_rank(algorithm: Algorithm, x: i64, got: usize, values: &[i64]) -> Result<()> {
    let want = oracle_rank(values, &x);
    if got != want {
        return Err(mismatch(algorithm, format!("rank({x}) returned {got}, expected {want}")));
    }
    Ok(())
}

fn validate(queries: &[Query], n: usize) -> Result<()> {
    match queries.iter().find(|q| matches!(q, Query::Select(i) if *i == 0 || *i > n)) {
        Some(Query::Select(i)) => Err(Error::RankOutOfRange { rank: *i, n }),
        _ => Ok(()),
    }
}

fn replay<D: DeferredStructure<i64>>(
    algorithm: Algorithm,
    d: &mut D,
    queries: &[Query],
    values: &[i64],
    sorted: &[i64],
) -> Result<()> {
    for q in queries {
        match *q {
            Query::Select(i) => {
                let got = *d.select(i)?;
                check_select(algorithm, i, got, sorted)?;
            }
            Query::Rank(x) => {
                let got = d.rank(&x);
                check_rank(algorithm, x, got, values)?;
            }
        }
    }
    Ok(())
}

/// Rank by value on a structure that selects by rank: binary search over
/// ranks, one counted comparison per probe.
fn rank_by_select(n: usize, x: i64, meter: &Meter, select: impl Fn(usize) -> Result<usize>, values: &[i64]) -> Result<usize> {
    let (mut lo, mut hi) = (0, n);
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if meter.cmp(&values[select(mid + 1)?], &x) == Ordering::Less {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

fn answer_succinct(
    algorithm: Algorithm,
    select: impl Fn(usize) -> Result<usize>,
    rank_at: impl Fn(usize) -> Result<usize>,
    queries: &[Query],
    values: &[i64],
    sorted: &[i64],
) -> Result<u64> {
    let meter = Meter::new();
    for q in queries {
        match *q {
            Query::Select(i) => check_select(algorithm, i, values[select(i)?], sorted)?,
            Query::Rank(x) => {
                let got = rank_by_select(values.len(), x, &meter, &select, values)?;
                check_rank(algorithm, x, got, values)?;
                // Present keys also exercise the positional rank.
                if let Some(p) = values.iter().position(|&v| v == x) {
                    check_rank(algorithm, x, rank_at(p)?, values)?;
                }
            }
        }
    }
    Ok(meter.count())
}

/// Runs one algorithm on one instance and verifies every answer.
pub fn run_verified(algorithm: Algorithm, values: &[i64], queries: &[Query], seed: u64) -> Result<Measurement> {
    let sorted = oracle_sort(values);
    validate(queries, values.len())?;
    let a = InstrumentedArray::new(values.to_vec());
    let start = Instant::now();
    let mut index_steps = 0;
    let mut extra = 0;
    let output: Option<Vec<i64>> = match algorithm {
        Algorithm::MergeSortCounters => Some(merge_sort_counters(&a).expand()),
        Algorithm::MinimalMergeSort => Some(minimal_merge_sort(&a)),
        Algorithm::SmallVsSmall => Some(small_vs_small_sort(&a).expand()),
        Algorithm::Race => {
            let r = parallel_race(&a);
            extra = r.comparisons;
            Some(r.sorted)
        }
        Algorithm::Dlm => Some(dlm_sort(&a).expand()),
        Algorithm::QuickSynergy => Some(quick_synergy_sort(&a).sorted),
        Algorithm::Global => Some(global_sort(&a).sorted),
        Algorithm::Multiselect | Algorithm::MultiselectGlobal => {
            let ranks: Vec<usize> = queries
                .iter()
                .map(|q| match *q {
                    Query::Select(i) => Ok(i),
                    Query::Rank(_) => Err(Error::InvalidQuerySpec(format!("{algorithm} answers select queries only"))),
                })
                .collect::<Result<_>>()?;
            let batch = QueryBatch::new(&ranks, values.len())?;
            let out = if algorithm == Algorithm::Multiselect {
                multiselect(&a, &batch)
            } else {
                multiselect_with_global(&a, &batch)
            };
            for (&i, &got) in ranks.iter().zip(&out.answers) {
                check_select(algorithm, i, got, &sorted)?;
            }
            None
        }
        Algorithm::Ram => {
            let mut d = RamDeferred::new(values.to_vec());
            replay(algorithm, &mut d, queries, values, &sorted)?;
            index_steps = d.index_steps();
            extra = d.comparisons();
            None
        }
        Algorithm::Finger => {
            let mut d = FingerDeferred::new(values.to_vec(), seed);
            replay(algorithm, &mut d, queries, values, &sorted)?;
            index_steps = d.index_steps();
            extra = d.comparisons();
            None
        }
        Algorithm::RankAware => {
            let c = RankAwareCds::build(values);
            extra = answer_succinct(algorithm, |i| c.select(i), |p| c.rank(p), queries, values, &sorted)?;
            None
        }
        Algorithm::SelectAware => {
            let c = SelectAwareCds::build(values);
            extra = answer_succinct(algorithm, |i| c.select(i), |p| c.rank(p), queries, values, &sorted)?;
            None
        }
    };
    let wall_ns = start.elapsed().as_nanos();
    if let Some(out) = output {
        check_sorted(algorithm, &out, &sorted)?;
    }
    // The race and the deferred structures keep their own tallies; the
    // others charge the shared array.
    let comparisons = match algorithm {
        Algorithm::Race | Algorithm::Ram | Algorithm::Finger | Algorithm::RankAware | Algorithm::SelectAware => extra,
        _ => a.comparisons(),
    };
    Ok(Measurement {
        comparisons,
        index_steps,
        wall_ns,
    })
}

struct Cell<'a> {
    instance: usize,
    algorithm: Algorithm,
    workload: Option<&'a Workload>,
}

/// The pool size requested through `SMS_THREADS`, if any.
pub fn worker_threads() -> Option<usize> {
    std::env::var("SMS_THREADS").ok()?.trim().parse().ok().filter(|&t| t > 0)
}

fn run_cell(cell: &Cell, instances: &[(InstanceSpec, Vec<i64>, InstanceProfile)]) -> Result<BenchRow> {
    let (spec, values, profile) = &instances[cell.instance];
    let (queries, qspec, pred_env) = match cell.workload {
        Some(w) => {
            let q = w.queries(values)?;
            let ranks: Vec<usize> = q
                .iter()
                .filter_map(|q| match q {
                    Query::Select(i) => Some(*i),
                    Query::Rank(_) => None,
                })
                .collect();
            let env = predictor_envelope(values.len(), &ranks).ok();
            (q, w.label(), env)
        }
        None => (Vec::new(), "-".to_string(), None),
    };
    let m = run_verified(cell.algorithm, values, &queries, spec.seed)?;
    let d = profile.descriptors;
    Ok(BenchRow {
        family: spec.family.to_string(),
        n: d.n,
        sigma: d.sigma,
        rho: d.rho,
        phi: d.phi,
        delta: d.delta,
        chi: d.chi,
        algorithm: cell.algorithm,
        qspec,
        comparisons: m.comparisons,
        index_steps: m.index_steps,
        wall_ns: m.wall_ns,
        pred_ms: profile.munro_spira,
        pred_tk: profile.takaoka,
        pred_syn: profile.synergy,
        pred_env,
    })
}

/// Runs the whole matrix and writes one CSV row per verified cell, in
/// cell order. If any cell fails, the rows that did verify are still
/// written and the first failure is returned.
pub fn bench_run(plan: &BenchPlan, sink: impl Write) -> Result<Vec<BenchRow>> {
    let mut out = csv::Writer::from_writer(sink);
    out.write_record(CSV_HEADER)?;
    if plan.algorithms.is_empty() {
        out.flush()?;
        return Ok(Vec::new());
    }
    let instances = plan
        .instances
        .iter()
        .map(|s| {
            let v = gen_instance(s)?;
            let p = InstanceProfile::of(&v);
            Ok((s.clone(), v, p))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut cells = Vec::new();
    for i in 0..instances.len() {
        for &algorithm in &plan.algorithms {
            for _ in 0..plan.repetitions.max(1) {
                if algorithm.takes_queries() {
                    cells.extend(plan.workloads.iter().map(|w| Cell {
                        instance: i,
                        algorithm,
                        workload: Some(w),
                    }));
                } else {
                    cells.push(Cell {
                        instance: i,
                        algorithm,
                        workload: None,
                    });
                }
            }
        }
    }
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(t) = worker_threads() {
        pool = pool.num_threads(t);
    }
    let pool = pool.build().map_err(|e| Error::InvalidSpec(format!("worker pool: {e}")))?;
    let results: Vec<Result<BenchRow>> = pool.install(|| cells.par_iter().map(|c| run_cell(c, &instances)).collect());
    let mut rows = Vec::with_capacity(results.len());
    let mut first_err = None;
    for r in results {
        match r {
            Ok(row) => {
                out.write_record(row.record())?;
                rows.push(row);
            }
            Err(e) => {
                first_err.get_or_insert(e);
            }
        }
    }
    out.flush()?;
    match first_err {
        Some(e) => Err(e),
        None => Ok(rows),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::gen::Family;
    use crate::harness::queries::{GapProfile, QueryKind, QueryOrder};

    fn csv_of(plan: &BenchPlan) -> String {
        let mut buf = Vec::new();
        bench_run(plan, &mut buf).unwrap();
        String::from_utf8(buf).unwrap()
    }

    fn without_wall_time(csv: &str) -> String {
        csv.lines()
            .map(|l| {
                let mut f: Vec<&str> = l.split(',').collect();
                f[11] = "";
                f.join(",")
            })
            .collect::<Vec<_>>()
            .join("\n")
    }

    #[test]
    fn empty_algorithm_list_gives_header_only() {
        let plan = BenchPlan {
            instances: vec![InstanceSpec::new(Family::Example1, 16)],
            ..Default::default()
        };
        assert_eq!(csv_of(&plan), CSV_HEADER.join(",") + "\n");
    }

    #[test]
    fn every_algorithm_verifies_and_output_is_deterministic() {
        let mut spec = QuerySpec::select(12, GapProfile::Uniform, QueryOrder::PingPong);
        let mut mixed = spec;
        mixed.kind = QueryKind::Mixed(0.5);
        mixed.seed = 4;
        spec.order = QueryOrder::Random(9);
        let plan = BenchPlan {
            instances: vec![
                InstanceSpec::new(Family::Random, 300).rho(7).sigma(40).seed(3),
                InstanceSpec::new(Family::Example4, 64).rho(4),
            ],
            algorithms: Algorithm::ALL.to_vec(),
            workloads: vec![Workload::Generated(spec), Workload::Trace(vec![Query::Select(5), Query::Rank(0), Query::Rank(1000)])],
            repetitions: 1,
        };
        // Multiselect rejects rank queries, so leave it out of the mixed run.
        let mut with_mixed = plan.clone();
        with_mixed.algorithms.retain(|a| !matches!(a, Algorithm::Multiselect | Algorithm::MultiselectGlobal));
        with_mixed.workloads = vec![Workload::Generated(mixed)];
        csv_of(&with_mixed);

        let mut no_ranks = plan.clone();
        no_ranks.workloads.truncate(1);
        let a = csv_of(&no_ranks);
        let b = csv_of(&no_ranks);
        assert_eq!(without_wall_time(&a), without_wall_time(&b));
        // 7 sorters + 6 query algorithms, per instance.
        assert_eq!(a.lines().count(), 1 + 2 * 13);
        assert!(a.lines().nth(1).unwrap().starts_with("random,300,"));
    }

    #[test]
    fn trace_rows_carry_the_checksum() {
        let t = vec![Query::Select(1), Query::Select(8)];
        let plan = BenchPlan {
            instances: vec![InstanceSpec::new(Family::Example1, 8)],
            algorithms: vec![Algorithm::Finger],
            workloads: vec![Workload::Trace(t.clone())],
            repetitions: 2,
        };
        let rows = bench_run(&plan, std::io::sink()).unwrap();
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[0].qspec, format!("trace:{:016x}", checksum(&t)));
    }

    #[test]
    fn out_of_range_trace_is_rejected() {
        let plan = BenchPlan {
            instances: vec![InstanceSpec::new(Family::Example1, 8)],
            algorithms: vec![Algorithm::Ram],
            workloads: vec![Workload::Trace(vec![Query::Select(9)])],
            repetitions: 1,
        };
        assert!(bench_run(&plan, std::io::sink()).is_err());
    }
}
