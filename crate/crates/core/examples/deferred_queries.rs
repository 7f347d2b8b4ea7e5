//! Online rank and select that sort only what the queries force.

use synergy::deferred::{DeferredStructure, FingerDeferred, RamDeferred};
use synergy::harness::{gen_instance, gen_ranks, Family, GapProfile, InstanceSpec, QueryOrder, QuerySpec};

fn main() -> synergy::Result<()> {
    let mut d = RamDeferred::new(vec![2, 3, 1, 3, 7, 8, 9, 4, 5, 6]);
    println!("select(4) = {}", d.select(4)?);
    println!("rank(3)   = {}", d.rank(&3));
    println!("resolved ranks after two queries: {}/10", d.state().resolved_count());

    // Query order matters to the finger structure only: sorted queries
    // stay near the finger.
    let n = 1 << 14;
    let values = gen_instance(&InstanceSpec::new(Family::Random, n).rho(64).seed(5))?;
    for order in [QueryOrder::Sorted, QueryOrder::Random(1)] {
        let ranks = gen_ranks(&QuerySpec::select(1024, GapProfile::Uniform, order), n)?;
        let mut ram = RamDeferred::new(values.clone());
        let mut finger = FingerDeferred::new(values.clone(), 7);
        for &r in &ranks {
            assert_eq!(ram.select(r)?, finger.select(r)?);
        }
        println!(
            "{order:?}: ram {} comparisons / {} index steps, finger {} comparisons / {} index steps",
            ram.comparisons(),
            ram.index_steps(),
            finger.comparisons(),
            finger.index_steps()
        );
    }
    Ok(())
}
