//! A small benchmark matrix written as CSV to standard output. The same
//! runner backs `synergy bench`.

use synergy::harness::{bench_run, Algorithm, BenchPlan, Family, GapProfile, InstanceSpec, QueryOrder, QuerySpec, Workload};

fn main() -> synergy::Result<()> {
    let plan = BenchPlan {
        instances: vec![
            InstanceSpec::new(Family::Example3, 4096).rho(64),
            InstanceSpec::new(Family::Random, 4096).rho(32).sigma(512).seed(2),
        ],
        algorithms: vec![Algorithm::QuickSynergy, Algorithm::Dlm, Algorithm::Multiselect, Algorithm::Finger],
        workloads: vec![
            Workload::Generated(QuerySpec::select(64, GapProfile::Uniform, QueryOrder::Sorted)),
            Workload::Generated(QuerySpec::select(64, GapProfile::Uniform, QueryOrder::PingPong)),
        ],
        repetitions: 1,
    };
    bench_run(&plan, std::io::stdout().lock())?;
    Ok(())
}
