//! Command-line front end: generate instances, run single algorithms and
//! drive the benchmark matrix.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use synergy::deferred::{DeferredStructure, FingerDeferred, RamDeferred};
use synergy::harness::{
    bench_run, gen_instance, gen_ranks, gen_trace, read_trace, run_verified, write_instance, write_trace, Algorithm,
    BenchPlan, Family, GapProfile, InstanceSpec, Query, QueryKind, QueryOrder, QuerySpec, Workload,
};
use synergy::measures::{predictor_envelope, InstanceProfile};
use synergy::multiselect::{multiselect, multiselect_with_global, QueryBatch};
use synergy::succinct::io::{load, save};
use synergy::succinct::{RankAwareCds, SelectAwareCds};
use synergy::{Error, InstrumentedArray, Result};

#[derive(Parser)]
#[command(name = "synergy", version, about = "Synergistic sorting and searching with exact comparison counts")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct InstanceArgs {
    /// example1..example4, random, or file:<path>.
    #[arg(long, default_value = "random")]
    family: Family,
    #[arg(long, default_value_t = 1024)]
    n: usize,
    #[arg(long)]
    sigma: Option<usize>,
    #[arg(long)]
    rho: Option<usize>,
    #[arg(long)]
    phi: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl InstanceArgs {
    fn spec(&self) -> InstanceSpec {
        InstanceSpec {
            family: self.family.clone(),
            n: self.n,
            sigma: self.sigma,
            rho: self.rho,
            phi: self.phi,
            seed: self.seed,
        }
    }

    fn values(&self) -> Result<Vec<i64>> {
        gen_instance(&self.spec())
    }
}

#[derive(Args, Clone)]
struct QueryArgs {
    /// Number of generated queries.
    #[arg(long, default_value_t = 16)]
    queries: usize,
    /// uniform, clustered(k), single or all.
    #[arg(long, default_value = "uniform")]
    gaps: GapProfile,
    /// sorted, reverse, random:<seed> or ping-pong.
    #[arg(long, default_value = "sorted")]
    order: QueryOrder,
    /// select, rank or mixed:<p>.
    #[arg(long, default_value = "select")]
    kind: QueryKind,
    /// Seed for the select/rank mix.
    #[arg(long, default_value_t = 0)]
    query_seed: u64,
}

impl QueryArgs {
    fn spec(&self) -> QuerySpec {
        QuerySpec {
            kind: self.kind,
            q: self.queries,
            gaps: self.gaps,
            order: self.order,
            seed: self.query_seed,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum DeferredKind {
    Ram,
    Finger,
}

#[derive(Clone, Copy, ValueEnum)]
enum CdsKind {
    RankAware,
    SelectAware,
}

#[derive(Subcommand)]
enum Command {
    /// Write an instance file (one integer per line), and optionally a query trace.
    Gen {
        #[command(flatten)]
        instance: InstanceArgs,
        #[command(flatten)]
        queries: QueryArgs,
        /// Instance destination; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write a query trace here.
        #[arg(long)]
        trace_out: Option<PathBuf>,
    },
    /// Run one sorter and print its cost next to the predictors.
    Sort {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long, default_value = "qss")]
        algo: Algorithm,
        /// Write the sorted values here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Answer a batch of select ranks offline.
    Multiselect {
        #[command(flatten)]
        instance: InstanceArgs,
        #[command(flatten)]
        queries: QueryArgs,
        /// Explicit 1-based ranks (overrides the generated ones).
        #[arg(long, value_delimiter = ',')]
        ranks: Vec<usize>,
        /// A file of ranks, one per line.
        #[arg(long)]
        ranks_file: Option<PathBuf>,
        /// Route queries through the input's pivot positions first.
        #[arg(long)]
        global: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Replay a query trace against a deferred structure.
    Defer {
        #[command(flatten)]
        instance: InstanceArgs,
        #[command(flatten)]
        queries: QueryArgs,
        #[arg(long, value_enum, default_value = "ram")]
        algo: DeferredKind,
        /// Trace file (`S <i>` / `R <x>` per line); generated when absent.
        #[arg(long)]
        trace: Option<PathBuf>,
        /// Write one answer per query here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build, query, measure or serialize a compressed representation.
    Succinct {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long, value_enum, default_value = "rank-aware")]
        algo: CdsKind,
        /// Load a serialized structure instead of building one.
        #[arg(long)]
        load: Option<PathBuf>,
        /// Serialize the structure here.
        #[arg(long)]
        out: Option<PathBuf>,
        /// 1-based ranks to select; prints input positions.
        #[arg(long, value_delimiter = ',')]
        select: Vec<usize>,
        /// 0-based input positions to rank.
        #[arg(long, value_delimiter = ',')]
        rank: Vec<usize>,
        /// Print the per-component space report.
        #[arg(long)]
        space: bool,
    },
    /// Run the full matrix and write CSV.
    Bench {
        #[arg(long, value_delimiter = ',', default_value = "example1,example2,example3,example4,random")]
        family: Vec<Family>,
        #[arg(long, value_delimiter = ',', default_value = "1024")]
        n: Vec<usize>,
        #[arg(long)]
        sigma: Option<usize>,
        #[arg(long)]
        rho: Option<usize>,
        #[arg(long)]
        phi: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Comma-separated algorithms; an explicit empty value gives a header-only CSV.
        #[arg(long, value_delimiter = ',', num_args = 0.., default_value = "msc,mms,svs,dlm,qss,multiselect,ram,finger")]
        algo: Vec<String>,
        /// Query counts for the query-answering algorithms.
        #[arg(long, value_delimiter = ',', default_value = "16")]
        queries: Vec<usize>,
        #[arg(long, default_value = "uniform")]
        gaps: GapProfile,
        #[arg(long, value_delimiter = ',', default_value = "sorted")]
        order: Vec<QueryOrder>,
        #[arg(long, default_value = "select")]
        kind: QueryKind,
        /// Replay these trace files as extra workloads.
        #[arg(long, value_delimiter = ',')]
        trace: Vec<PathBuf>,
        #[arg(long, default_value_t = 1)]
        reps: usize,
        /// CSV destination; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn sink(out: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match out {
        Some(p) => Box::new(BufWriter::new(File::create(p).map_err(|e| Error::Io {
            path: p.clone(),
            source: e,
        })?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn read_ranks(path: &PathBuf) -> Result<Vec<usize>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.clone(),
        source: e,
    })?;
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(k, l)| {
            l.trim().parse().map_err(|e| Error::Parse {
                path: path.clone(),
                line: k + 1,
                message: format!("`{}`: {e}", l.trim()),
            })
        })
        .collect()
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Gen {
            instance,
            queries,
            out,
            trace_out,
        } => {
            let v = instance.values()?;
            let mut w = sink(&out)?;
            write_instance(&mut w, &v)?;
            w.flush()?;
            if let Some(t) = trace_out {
                let trace = gen_trace(&queries.spec(), &v)?;
                let mut w = sink(&Some(t))?;
                write_trace(&mut w, &trace)?;
                w.flush()?;
            }
        }
        Command::Sort { instance, algo, out } => {
            if algo.takes_queries() {
                return Err(Error::InvalidSpec(format!("`{algo}` is not a sorter")));
            }
            let v = instance.values()?;
            let m = run_verified(algo, &v, &[], instance.seed)?;
            let profile = InstanceProfile::of(&v);
            println!("{}", profile.report(algo.name(), m.comparisons, 0));
            if out.is_some() {
                let mut sorted = v.clone();
                sorted.sort_unstable();
                let mut w = sink(&out)?;
                write_instance(&mut w, &sorted)?;
                w.flush()?;
            }
        }
        Command::Multiselect {
            instance,
            queries,
            ranks,
            ranks_file,
            global,
            out,
        } => {
            let v = instance.values()?;
            let ranks = match (ranks.is_empty(), ranks_file) {
                (false, _) => ranks,
                (true, Some(p)) => read_ranks(&p)?,
                (true, None) => gen_ranks(&queries.spec(), v.len())?,
            };
            let batch = QueryBatch::new(&ranks, v.len())?;
            let a = InstrumentedArray::new(v.clone());
            let res = if global {
                multiselect_with_global(&a, &batch)
            } else {
                multiselect(&a, &batch)
            };
            let name = if global { "multiselect_global" } else { "multiselect" };
            let report = InstanceProfile::of(&v)
                .report(name, a.comparisons(), 0)
                .with_predictor("multiselect", res.state.predictor())
                .with_predictor("envelope", predictor_envelope(v.len(), &ranks)?);
            let mut w = sink(&out)?;
            for (r, x) in ranks.iter().zip(&res.answers) {
                writeln!(w, "{r}\t{x}")?;
            }
            w.flush()?;
            eprint!("{report}");
        }
        Command::Defer {
            instance,
            queries,
            algo,
            trace,
            out,
        } => {
            let v = instance.values()?;
            let trace = match trace {
                Some(p) => read_trace(&p)?,
                None => gen_trace(&queries.spec(), &v)?,
            };
            let mut w = sink(&out)?;
            let (name, comparisons, steps) = match algo {
                DeferredKind::Ram => {
                    let mut d = RamDeferred::new(v.clone());
                    replay(&mut d, &trace, &mut w)?;
                    ("ram", d.comparisons(), d.index_steps())
                }
                DeferredKind::Finger => {
                    let mut d = FingerDeferred::new(v.clone(), instance.seed);
                    replay(&mut d, &trace, &mut w)?;
                    ("finger", d.comparisons(), d.index_steps())
                }
            };
            w.flush()?;
            eprint!("{}", InstanceProfile::of(&v).report(name, comparisons, steps));
        }
        Command::Succinct {
            instance,
            algo,
            load: from,
            out,
            select,
            rank,
            space,
        } => {
            let values = || instance.values();
            let (report, answers, bytes) = match algo {
                CdsKind::RankAware => {
                    let c = match &from {
                        Some(p) => RankAwareCds::from_bytes(&load(p)?)?,
                        None => RankAwareCds::build(&values()?),
                    };
                    let ans = answer(|i| c.select(i), |p| c.rank(p), &select, &rank)?;
                    (c.space(), ans, c.to_bytes())
                }
                CdsKind::SelectAware => {
                    let c = match &from {
                        Some(p) => SelectAwareCds::from_bytes(&load(p)?)?,
                        None => SelectAwareCds::build(&values()?),
                    };
                    let ans = answer(|i| c.select(i), |p| c.rank(p), &select, &rank)?;
                    (c.space(), ans, c.to_bytes())
                }
            };
            for line in answers {
                println!("{line}");
            }
            if space {
                println!("{report}");
            }
            if let Some(p) = out {
                save(&p, &bytes)?;
            }
        }
        Command::Bench {
            family,
            n,
            sigma,
            rho,
            phi,
            seed,
            algo,
            queries,
            gaps,
            order,
            kind,
            trace,
            reps,
            out,
        } => {
            let algorithms = algo
                .iter()
                .filter(|a| !a.is_empty())
                .map(|a| a.parse())
                .collect::<Result<Vec<Algorithm>>>()?;
            let mut instances = Vec::new();
            for f in &family {
                for &n in &n {
                    instances.push(InstanceSpec {
                        family: f.clone(),
                        n,
                        sigma,
                        rho,
                        phi,
                        seed,
                    });
                }
            }
            let mut workloads = Vec::new();
            for &q in &queries {
                for &o in &order {
                    workloads.push(Workload::Generated(QuerySpec {
                        kind,
                        q,
                        gaps,
                        order: o,
                        seed,
                    }));
                }
            }
            for p in &trace {
                workloads.push(Workload::Trace(read_trace(p)?));
            }
            let plan = BenchPlan {
                instances,
                algorithms,
                workloads,
                repetitions: reps,
            };
            let mut w = sink(&out)?;
            bench_run(&plan, &mut w)?;
            w.flush()?;
        }
    }
    Ok(())
}

fn replay<D: DeferredStructure<i64>>(d: &mut D, trace: &[Query], w: &mut impl Write) -> Result<()> {
    for q in trace {
        match *q {
            Query::Select(i) => writeln!(w, "{q}\t{}", d.select(i)?)?,
            Query::Rank(x) => writeln!(w, "{q}\t{}", d.rank(&x))?,
        }
    }
    Ok(())
}

fn answer(
    select: impl Fn(usize) -> Result<usize>,
    rank: impl Fn(usize) -> Result<usize>,
    ranks: &[usize],
    positions: &[usize],
) -> Result<Vec<String>> {
    let mut out = Vec::new();
    for &i in ranks {
        out.push(format!("select {i}\tposition {}", select(i)?));
    }
    for &p in positions {
        out.push(format!("rank @{p}\t{}", rank(p)?));
    }
    Ok(out)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e @ Error::Mismatch { .. }) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
