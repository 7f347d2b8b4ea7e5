//! Compressed representations of a multiset with many runs: space per
//! component, queries, and a round trip through the binary format.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use synergy::succinct::{RankAwareCds, SelectAwareCds};

fn main() -> synergy::Result<()> {
    let (n, rho) = (1usize << 18, 1usize << 8);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut values = Vec::with_capacity(n);
    for _ in 0..rho {
        let mut run: Vec<u32> = (0..n / rho).map(|_| rng.gen()).collect();
        run.sort_unstable();
        values.extend(run);
    }

    let ra = RankAwareCds::build(&values);
    let sa = SelectAwareCds::build(&values);
    println!("rank-aware\n{}\n", ra.space());
    println!("select-aware\n{}\n", sa.space());

    let mut sorted = values.clone();
    sorted.sort_unstable();
    for i in [1, n / 2, n] {
        let (p, q) = (ra.select(i)?, sa.select(i)?);
        assert_eq!(values[p], sorted[i - 1]);
        println!("select({i}) -> position {p} (value {}), rank of that position = {}", values[p], sa.rank(q)?);
    }

    let bytes = sa.to_bytes();
    assert_eq!(SelectAwareCds::from_bytes(&bytes)?, sa);
    println!("select-aware structure round-trips through {} bytes", bytes.len());
    Ok(())
}
