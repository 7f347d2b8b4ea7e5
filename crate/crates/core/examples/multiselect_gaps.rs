//! Offline multiselection: cost tracks how the queried ranks split the
//! input, not how many elements there are.

use synergy::harness::{gen_instance, gen_ranks, Family, GapProfile, InstanceSpec, QueryOrder, QuerySpec};
use synergy::measures::predictor_envelope;
use synergy::multiselect::{multiselect, QueryBatch};
use synergy::InstrumentedArray;

fn main() -> synergy::Result<()> {
    let n = 1 << 14;
    let values = gen_instance(&InstanceSpec::new(Family::Random, n).rho(n).seed(1))?;
    println!("{:>6} {:>12} {:>12} {:>7}", "q", "comparisons", "envelope", "ratio");
    for k in 0..=14 {
        let q = 1usize << k;
        let ranks = gen_ranks(&QuerySpec::select(q, GapProfile::Uniform, QueryOrder::Sorted), n)?;
        let a = InstrumentedArray::new(values.clone());
        let out = multiselect(&a, &QueryBatch::new(&ranks, n)?);
        assert_eq!(out.answers.len(), q);
        let env = predictor_envelope(n, &ranks)?;
        println!("{q:>6} {:>12} {env:>12.0} {:>7.2}", a.comparisons(), a.comparisons() as f64 / env);
    }

    // A handful of clustered ranks costs little more than one.
    let clustered = QuerySpec::select(64, GapProfile::Clustered(2), QueryOrder::Sorted);
    let ranks = gen_ranks(&clustered, n)?;
    let a = InstrumentedArray::new(values);
    let out = multiselect(&a, &QueryBatch::new(&ranks, n)?);
    println!(
        "\n64 ranks in 2 clusters: {} comparisons, {} pivots",
        a.comparisons(),
        out.state.pivots.len()
    );
    Ok(())
}
