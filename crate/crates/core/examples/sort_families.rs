//! Every sorter on the four structured families, normalised by `n`.
//!
//! The families pull the algorithms apart: alternating pairs defeat run
//! merging, sorted input defeats value counting, and interleaved or
//! disjoint runs reward exploiting both at once.

use synergy::harness::{gen_instance, run_verified, Algorithm, Family, InstanceSpec};

fn main() -> synergy::Result<()> {
    let n = 1 << 14;
    let families = [
        ("example1", InstanceSpec::new(Family::Example1, n)),
        ("example2", InstanceSpec::new(Family::Example2, n)),
        ("example3", InstanceSpec::new(Family::Example3, n).rho(128)),
        ("example4", InstanceSpec::new(Family::Example4, n).rho(64)),
    ];
    print!("{:<10}", "family");
    for alg in Algorithm::SORTERS {
        print!("{:>9}", alg.name());
    }
    println!();
    for (name, spec) in families {
        let values = gen_instance(&spec)?;
        print!("{name:<10}");
        for alg in Algorithm::SORTERS {
            let m = run_verified(alg, &values, &[], 0)?;
            print!("{:>9.2}", m.comparisons as f64 / n as f64);
        }
        println!();
    }
    println!("\n(comparisons per element, every output checked against a plain sort)");
    Ok(())
}
