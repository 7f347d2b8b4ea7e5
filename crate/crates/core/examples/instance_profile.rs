//! Structure of a small multiset: runs, pivot positions, blocks, and the
//! cost formulas that follow from them.

use synergy::measures::{block_decomposition, InstanceProfile};
use synergy::{detect_pivot_positions, detect_runs, InstrumentedArray};

fn main() {
    let values = vec![2, 3, 1, 3, 7, 8, 9, 4, 5, 6];
    let a = InstrumentedArray::new(values.clone());

    let runs = detect_runs(&a);
    let pieces: Vec<_> = runs.runs().map(|r| &values[r]).collect();
    println!("input       {values:?}");
    println!("runs        {pieces:?}  (rho = {})", runs.len());

    let pp = detect_pivot_positions(&a);
    println!("pivot pos.  {:?} (1-based)", pp.one_based());
    println!("detection cost: {} comparisons", a.comparisons());

    let bd = block_decomposition(&values);
    let blocks: Vec<_> = bd.blocks.iter().map(|b| &values[b.start..b.start + b.len]).collect();
    println!("blocks      {blocks:?}  (delta = {})", bd.delta());
    println!("pi weights  {:?}  (chi = {})", bd.weights(), bd.chi());

    println!();
    print!("{}", InstanceProfile::of(&values).report("(none)", 0, 0));
}
