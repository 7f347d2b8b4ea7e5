//! The building blocks on their own: a bitvector, a sequence over a small
//! alphabet and a permutation with a fast inverse.

use synergy::succinct::{BitVectorRS, PermutationRS, SequenceRS};

fn main() {
    let bits = BitVectorRS::from_ones(1 << 20, (0..1 << 20).filter(|i| i % 3 == 0));
    println!(
        "{} ones; rank1(1000) = {}, select1(1000) = {:?}, directory overhead {:.1}%",
        bits.count_ones(),
        bits.rank1(1000),
        bits.select1(1000),
        100.0 * bits.directory_bits() as f64 / bits.len() as f64
    );

    let text: Vec<usize> = "abracadabra".bytes().map(|b| (b - b'a') as usize).collect();
    let seq = SequenceRS::new(&text, 26);
    let a = 0;
    println!("'a' occurs {} times; the third is at {:?}", seq.rank(a, text.len()), seq.select(a, 3));

    let n = 1 << 16;
    let pi: Vec<usize> = (0..n).map(|i| (i * 40_503 + 7) % n).collect();
    let p = PermutationRS::new(&pi);
    let (x, visits) = p.inverse_counted(12345);
    println!("pi^-1(12345) = {x} after {visits} evaluations (spacing {})", p.spacing());
}
