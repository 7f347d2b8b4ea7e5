//! Difficulty measures of an instance and the cost formulas evaluated on
//! them.
//!
//! The functions here are analysis oracles: they read keys directly and are
//! never charged to an algorithm's comparison budget. All logarithms are in
//! base 2 and `0 · log 0 = 0`.

use std::collections::BTreeMap;
use std::fmt;

use statrs::function::factorial::ln_binomial;

use crate::error::{Error, Result};

/// `Σ (c_i / n) · log₂(n / c_i)` with `n = Σ c_i`.
pub fn entropy(counts: &[usize]) -> Result<f64> {
    if counts.is_empty() {
        return Err(Error::EmptyEntropy);
    }
    if let Some(index) = counts.iter().position(|&c| c == 0) {
        return Err(Error::ZeroCount { index });
    }
    let n: f64 = counts.iter().map(|&c| c as f64).sum();
    Ok(counts
        .iter()
        .map(|&c| {
            let c = c as f64;
            c / n * (n / c).log2()
        })
        .sum())
}

/// A maximal segment of a run that is contiguous in the sorted output.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Block {
    pub run: usize,
    pub start: usize,
    pub len: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MemberKind {
    /// One block whose values all occur once.
    Block,
    /// One repeated value; each occurrence is its own size-1 block.
    Multiplicity,
}

/// A member of the partition π of the sorted output.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PiMember {
    pub kind: MemberKind,
    /// `m_i`: 1 for a block, the multiplicity for a repeated value.
    pub weight: usize,
}

/// Blocks in sorted-output order together with the partition π they
/// induce.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockDecomposition {
    pub blocks: Vec<Block>,
    pub members: Vec<PiMember>,
    pub n: usize,
    pub rho: usize,
    pub sigma: usize,
}

impl BlockDecomposition {
    /// δ, the number of blocks.
    pub fn delta(&self) -> usize {
        self.blocks.len()
    }

    /// χ, the number of members of π.
    pub fn chi(&self) -> usize {
        self.members.len()
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.len).collect()
    }

    pub fn weights(&self) -> Vec<usize> {
        self.members.iter().map(|m| m.weight).collect()
    }

    /// For every block, whether it starts a new member of π (as opposed to
    /// continuing a run of equal values).
    pub fn member_starts(&self) -> Vec<bool> {
        let mut out = Vec::with_capacity(self.delta());
        for m in &self.members {
            let span = match m.kind {
                MemberKind::Block => 1,
                MemberKind::Multiplicity => m.weight,
            };
            out.push(true);
            out.extend(std::iter::repeat_n(false, span - 1));
        }
        out
    }

    /// The sorted output, as input positions, read off the blocks.
    pub fn sorted_positions(&self) -> Vec<usize> {
        self.blocks.iter().flat_map(|b| b.start..b.start + b.len).collect()
    }
}

/// Run start positions by a plain scan (no comparison accounting).
pub(crate) fn plain_run_ids<T: Ord>(values: &[T]) -> (Vec<usize>, usize) {
    let mut ids = Vec::with_capacity(values.len());
    let mut run = 0;
    for p in 0..values.len() {
        if p > 0 && values[p - 1] > values[p] {
            run += 1;
        }
        ids.push(run);
    }
    let rho = if values.is_empty() { 0 } else { run + 1 };
    (ids, rho)
}

/// Computes the blocks of `values` by sorting: a block grows while the next
/// output element is the next position of the same run and neither value
/// is repeated anywhere in the input.
pub fn block_decomposition<T: Ord>(values: &[T]) -> BlockDecomposition {
    let n = values.len();
    let (run_of, rho) = plain_run_ids(values);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| values[i].cmp(&values[j]).then(i.cmp(&j)));

    let mut blocks: Vec<Block> = Vec::new();
    let mut members: Vec<PiMember> = Vec::new();
    let mut sigma = 0;
    let mut k = 0;
    let mut open = false;
    while k < n {
        let mut e = k + 1;
        while e < n && values[order[e]] == values[order[k]] {
            e += 1;
        }
        sigma += 1;
        if e - k > 1 {
            for &p in &order[k..e] {
                blocks.push(Block {
                    run: run_of[p],
                    start: p,
                    len: 1,
                });
            }
            members.push(PiMember {
                kind: MemberKind::Multiplicity,
                weight: e - k,
            });
            open = false;
        } else {
            let p = order[k];
            match blocks.last_mut() {
                Some(b) if open && b.start + b.len == p && b.run == run_of[p] => b.len += 1,
                _ => {
                    blocks.push(Block {
                        run: run_of[p],
                        start: p,
                        len: 1,
                    });
                    members.push(PiMember {
                        kind: MemberKind::Block,
                        weight: 1,
                    });
                    open = true;
                }
            }
        }
        k = e;
    }
    BlockDecomposition {
        blocks,
        members,
        n,
        rho,
        sigma,
    }
}

/// Multiplicities of the distinct values (oracle).
pub fn multiplicities<T: Ord>(values: &[T]) -> Vec<usize> {
    let mut sorted: Vec<&T> = values.iter().collect();
    sorted.sort();
    let mut out = Vec::new();
    let mut k = 0;
    while k < sorted.len() {
        let mut e = k + 1;
        while e < sorted.len() && sorted[e] == sorted[k] {
            e += 1;
        }
        out.push(e - k);
        k = e;
    }
    out
}

/// Number of pivot positions (oracle).
pub fn pivot_position_count<T: Ord>(values: &[T]) -> usize {
    let n = values.len();
    if n < 2 {
        return 0;
    }
    let mut suffix_min: Vec<&T> = Vec::with_capacity(n);
    suffix_min.resize(n, &values[n - 1]);
    for p in (0..n - 1).rev() {
        suffix_min[p] = std::cmp::min(&values[p], suffix_min[p + 1]);
    }
    let mut max = &values[0];
    let mut count = 0;
    for p in 1..n {
        if max <= suffix_min[p] {
            count += 1;
        }
        max = std::cmp::max(max, &values[p]);
    }
    count
}

fn n_one_plus_entropy(n: usize, counts: &[usize]) -> f64 {
    if n == 0 {
        return 0.0;
    }
    n as f64 * (1.0 + entropy(counts).unwrap_or(0.0))
}

/// `n (1 + H(m_1, ..., m_σ))`.
pub fn predictor_munro_spira(n: usize, multiplicities: &[usize]) -> f64 {
    n_one_plus_entropy(n, multiplicities)
}

/// `n (1 + H(r_1, ..., r_ρ))`.
pub fn predictor_takaoka(n: usize, run_sizes: &[usize]) -> f64 {
    n_one_plus_entropy(n, run_sizes)
}

/// `log₂ C(ρ, m)`, with `C(ρ, m) = 1` when `m >= ρ`.
pub fn log2_binomial(rho: usize, m: usize) -> f64 {
    if m >= rho || m == 0 {
        return 0.0;
    }
    ln_binomial(rho as u64, m as u64) / std::f64::consts::LN_2
}

fn sum_log2(xs: &[usize]) -> f64 {
    xs.iter().filter(|&&x| x > 0).map(|&x| (x as f64).log2()).sum()
}

fn sum_x_log2_x(xs: &[usize]) -> f64 {
    xs.iter().filter(|&&x| x > 1).map(|&x| x as f64 * (x as f64).log2()).sum()
}

/// `n + Σ log₂ g_i + Σ log₂ C(ρ, m_i)`.
pub fn predictor_synergy(n: usize, block_sizes: &[usize], weights: &[usize], rho: usize) -> f64 {
    n as f64 + sum_log2(block_sizes) + weights.iter().map(|&m| log2_binomial(rho, m)).sum::<f64>()
}

/// `n + Σ log₂ s_i + β log₂ ρ − Σ m_i log₂ m_i − Σ ρ_i log₂ ρ_i`.
pub fn predictor_multiselect(
    n: usize,
    selection_block_sizes: &[usize],
    beta: usize,
    rho: usize,
    pivot_block_weights: &[usize],
    segment_run_counts: &[usize],
) -> f64 {
    let log_rho = if rho > 0 { (rho as f64).log2() } else { 0.0 };
    n as f64 + sum_log2(selection_block_sizes) + beta as f64 * log_rho
        - sum_x_log2_x(pivot_block_weights)
        - sum_x_log2_x(segment_run_counts)
}

/// `n log₂ n − Σ Δ_i log₂ Δ_i` over the gaps between consecutive distinct
/// query ranks (with `r_0 = 0` and `r_{q+1} = n`).
pub fn predictor_envelope(n: usize, ranks: &[usize]) -> Result<f64> {
    let mut r: Vec<usize> = ranks.to_vec();
    if let Some(&bad) = r.iter().find(|&&x| x == 0 || x > n) {
        return Err(Error::RankOutOfRange { rank: bad, n });
    }
    if r.is_empty() {
        return Ok(0.0);
    }
    r.sort_unstable();
    r.dedup();
    let mut gaps = Vec::with_capacity(r.len() + 1);
    let mut prev = 0;
    for &x in r.iter().chain(std::iter::once(&n)) {
        gaps.push(x - prev);
        prev = x;
    }
    Ok(sum_x_log2_x(&[n]) - sum_x_log2_x(&gaps))
}

/// The shape of an instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Descriptors {
    pub n: usize,
    pub rho: usize,
    pub sigma: usize,
    pub delta: usize,
    pub chi: usize,
    pub phi: usize,
}

/// Measured cost of one algorithm run next to the formulas it is judged by.
#[derive(Debug, Clone, PartialEq)]
pub struct CostReport {
    pub algorithm: String,
    pub comparisons: u64,
    pub index_steps: u64,
    pub predictors: BTreeMap<&'static str, f64>,
    pub descriptors: Descriptors,
}

/// Everything the predictors need, computed once per instance.
#[derive(Debug, Clone)]
pub struct InstanceProfile {
    pub descriptors: Descriptors,
    pub munro_spira: f64,
    pub takaoka: f64,
    pub synergy: f64,
}

impl InstanceProfile {
    pub fn of<T: Ord>(values: &[T]) -> Self {
        let n = values.len();
        let bd = block_decomposition(values);
        let mult = multiplicities(values);
        let (run_of, rho) = plain_run_ids(values);
        let mut run_sizes = vec![0; rho];
        for r in run_of {
            run_sizes[r] += 1;
        }
        Self {
            descriptors: Descriptors {
                n,
                rho,
                sigma: mult.len(),
                delta: bd.delta(),
                chi: bd.chi(),
                phi: pivot_position_count(values),
            },
            munro_spira: predictor_munro_spira(n, &mult),
            takaoka: predictor_takaoka(n, &run_sizes),
            synergy: predictor_synergy(n, &bd.block_sizes(), &bd.weights(), rho),
        }
    }

    pub fn report(&self, algorithm: impl Into<String>, comparisons: u64, index_steps: u64) -> CostReport {
        let mut predictors = BTreeMap::new();
        predictors.insert("munro_spira", self.munro_spira);
        predictors.insert("takaoka", self.takaoka);
        predictors.insert("synergy", self.synergy);
        CostReport {
            algorithm: algorithm.into(),
            comparisons,
            index_steps,
            predictors,
            descriptors: self.descriptors,
        }
    }
}

impl CostReport {
    /// Adds the query-dependent predictors.
    pub fn with_predictor(mut self, name: &'static str, value: f64) -> Self {
        self.predictors.insert(name, value);
        self
    }
}

impl fmt::Display for CostReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = &self.descriptors;
        writeln!(f, "algorithm    {}", self.algorithm)?;
        writeln!(
            f,
            "instance     n={} rho={} sigma={} delta={} chi={} phi={}",
            d.n, d.rho, d.sigma, d.delta, d.chi, d.phi
        )?;
        writeln!(f, "comparisons  {}", self.comparisons)?;
        if self.index_steps > 0 {
            writeln!(f, "index_steps  {}", self.index_steps)?;
        }
        for (k, v) in &self.predictors {
            let ratio = if *v > 0.0 { self.comparisons as f64 / v } else { f64::NAN };
            writeln!(f, "pred {k:<12} {v:>14.1}   ratio {ratio:.3}")?;
        }
        Ok(())
    }
}
