//! Query generators: which ranks are asked, and in which order.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::{seq::SliceRandom, Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::oracle::oracle_sort;
use super::trace::Query;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum QueryKind {
    Select,
    Rank,
    /// Each query is a rank query with this probability.
    Mixed(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GapProfile {
    /// `q` ranks with equal gaps.
    Uniform,
    /// `k` clusters of consecutive ranks, centred at equal gaps.
    Clustered(usize),
    /// The median rank only.
    Single,
    /// Every rank.
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QueryOrder {
    Sorted,
    Reverse,
    Random(u64),
    /// Alternately the smallest and the largest remaining rank.
    PingPong,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuerySpec {
    pub kind: QueryKind,
    pub q: usize,
    pub gaps: GapProfile,
    pub order: QueryOrder,
    /// Drives the select/rank mix.
    pub seed: u64,
}

impl QuerySpec {
    pub fn select(q: usize, gaps: GapProfile, order: QueryOrder) -> Self {
        Self {
            kind: QueryKind::Select,
            q,
            gaps,
            order,
            seed: 0,
        }
    }
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidQuerySpec(msg.into())
}

impl FromStr for GapProfile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "uniform" => GapProfile::Uniform,
            "single" => GapProfile::Single,
            "all" => GapProfile::All,
            _ => {
                let k = s
                    .strip_prefix("clustered")
                    .map(|k| k.trim_matches(|c| c == '(' || c == ')' || c == ':'))
                    .and_then(|k| k.parse().ok())
                    .ok_or_else(|| invalid(format!("unknown gap profile `{s}`")))?;
                GapProfile::Clustered(k)
            }
        })
    }
}

impl FromStr for QueryOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "sorted" => QueryOrder::Sorted,
            "reverse" => QueryOrder::Reverse,
            "ping-pong" | "pingpong" => QueryOrder::PingPong,
            "random" => QueryOrder::Random(0),
            _ => QueryOrder::Random(
                s.strip_prefix("random:")
                    .and_then(|x| x.parse().ok())
                    .ok_or_else(|| invalid(format!("unknown order `{s}`")))?,
            ),
        })
    }
}

impl FromStr for QueryKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "select" => QueryKind::Select,
            "rank" => QueryKind::Rank,
            _ => {
                let p: f64 = s
                    .strip_prefix("mixed:")
                    .and_then(|p| p.parse().ok())
                    .ok_or_else(|| invalid(format!("unknown query kind `{s}`")))?;
                if !(0.0..=1.0).contains(&p) {
                    return Err(invalid(format!("mixed probability {p} outside [0, 1]")));
                }
                QueryKind::Mixed(p)
            }
        })
    }
}

impl fmt::Display for QuerySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            QueryKind::Select => f.write_str("select")?,
            QueryKind::Rank => f.write_str("rank")?,
            QueryKind::Mixed(p) => write!(f, "mixed:{p}")?,
        }
        match self.gaps {
            GapProfile::Uniform => write!(f, ":uniform:q={}", self.q)?,
            GapProfile::Clustered(k) => write!(f, ":clustered({k}):q={}", self.q)?,
            GapProfile::Single => f.write_str(":single")?,
            GapProfile::All => f.write_str(":all")?,
        }
        match self.order {
            QueryOrder::Sorted => f.write_str(":sorted"),
            QueryOrder::Reverse => f.write_str(":reverse"),
            QueryOrder::Random(s) => write!(f, ":random:{s}"),
            QueryOrder::PingPong => f.write_str(":ping-pong"),
        }
    }
}

/// `q` ranks at equal gaps: `⌈i·n/(q+1)⌉` for `i = 1..=q`.
pub fn uniform_ranks(q: usize, n: usize) -> Vec<usize> {
    (1..=q).map(|i| (i * n + q) / (q + 1)).collect()
}

/// The distinct 1-based ranks of a spec, in increasing order.
pub fn gen_rank_set(spec: &QuerySpec, n: usize) -> Result<Vec<usize>> {
    if n == 0 {
        return Ok(Vec::new());
    }
    match spec.gaps {
        GapProfile::Single => Ok(uniform_ranks(1, n)),
        GapProfile::All => Ok((1..=n).collect()),
        GapProfile::Uniform => {
            if spec.q > n {
                return Err(invalid(format!("q = {} exceeds n = {n} for distinct ranks", spec.q)));
            }
            Ok(uniform_ranks(spec.q, n))
        }
        GapProfile::Clustered(k) => {
            if spec.q > n {
                return Err(invalid(format!("q = {} exceeds n = {n} for distinct ranks", spec.q)));
            }
            if k == 0 || k > spec.q {
                return Err(invalid(format!("clustered needs 1 <= k <= q, got k = {k}")));
            }
            let mut set = BTreeSet::new();
            for (j, c) in uniform_ranks(k, n).into_iter().enumerate() {
                let size = spec.q / k + usize::from(j < spec.q % k);
                let start = c.saturating_sub(size / 2).max(1).min(n + 1 - size);
                set.extend(start..start + size);
            }
            // Overlapping clusters are topped up from the smallest free rank.
            let mut r = 1;
            while set.len() < spec.q {
                set.insert(r);
                r += 1;
            }
            Ok(set.into_iter().collect())
        }
    }
}

/// Arranges increasing ranks in the requested order.
pub fn arrange(ranks: &[usize], order: QueryOrder) -> Vec<usize> {
    let mut out = ranks.to_vec();
    match order {
        QueryOrder::Sorted => {}
        QueryOrder::Reverse => out.reverse(),
        QueryOrder::Random(seed) => out.shuffle(&mut ChaCha8Rng::seed_from_u64(seed)),
        QueryOrder::PingPong => {
            out.clear();
            let (mut lo, mut hi) = (0, ranks.len());
            while lo < hi {
                out.push(ranks[lo]);
                lo += 1;
                if lo < hi {
                    hi -= 1;
                    out.push(ranks[hi]);
                }
            }
        }
    }
    out
}

/// The ranks of a spec in query order.
pub fn gen_ranks(spec: &QuerySpec, n: usize) -> Result<Vec<usize>> {
    Ok(arrange(&gen_rank_set(spec, n)?, spec.order))
}

/// An online query sequence. Rank queries ask for the value holding the
/// generated rank, so they exercise present keys.
pub fn gen_trace(spec: &QuerySpec, values: &[i64]) -> Result<Vec<Query>> {
    let ranks = gen_ranks(spec, values.len())?;
    let sorted = oracle_sort(values);
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    Ok(ranks
        .into_iter()
        .map(|r| {
            let rank = match spec.kind {
                QueryKind::Select => false,
                QueryKind::Rank => true,
                QueryKind::Mixed(p) => rng.gen_bool(p),
            };
            if rank {
                Query::Rank(sorted[r - 1])
            } else {
                Query::Select(r)
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worked_examples() {
        let s = |gaps, order| QuerySpec::select(4, gaps, order);
        assert_eq!(gen_ranks(&s(GapProfile::Uniform, QueryOrder::Sorted), 100).unwrap(), vec![20, 40, 60, 80]);
        assert_eq!(gen_ranks(&s(GapProfile::Single, QueryOrder::Sorted), 100).unwrap(), vec![50]);
        assert_eq!(gen_ranks(&s(GapProfile::Uniform, QueryOrder::PingPong), 100).unwrap(), vec![20, 80, 40, 60]);
        assert_eq!(gen_ranks(&s(GapProfile::Uniform, QueryOrder::Reverse), 100).unwrap(), vec![80, 60, 40, 20]);
        assert_eq!(uniform_ranks(8, 8), (1..=8).collect::<Vec<_>>());
    }

    #[test]
    fn clusters_and_errors() {
        let spec = QuerySpec::select(12, GapProfile::Clustered(3), QueryOrder::Sorted);
        let r = gen_ranks(&spec, 1000).unwrap();
        assert_eq!(r.len(), 12);
        assert!(r.windows(2).all(|w| w[0] < w[1]));
        assert!(gen_ranks(&QuerySpec::select(5, GapProfile::Uniform, QueryOrder::Sorted), 4).is_err());
        let mut shuffled = gen_ranks(&QuerySpec::select(50, GapProfile::Uniform, QueryOrder::Random(3)), 500).unwrap();
        shuffled.sort();
        assert_eq!(shuffled, uniform_ranks(50, 500));
    }

    #[test]
    fn parsing_and_display() {
        assert_eq!("clustered(4)".parse::<GapProfile>().unwrap(), GapProfile::Clustered(4));
        assert_eq!("random:7".parse::<QueryOrder>().unwrap(), QueryOrder::Random(7));
        assert_eq!("mixed:0.5".parse::<QueryKind>().unwrap(), QueryKind::Mixed(0.5));
        assert!("mixed:2".parse::<QueryKind>().is_err());
        let s = QuerySpec::select(16, GapProfile::Uniform, QueryOrder::PingPong);
        assert_eq!(s.to_string(), "select:uniform:q=16:ping-pong");
    }

    #[test]
    fn traces_mix_kinds() {
        let v: Vec<i64> = (0..200).rev().collect();
        let mut spec = QuerySpec::select(100, GapProfile::Uniform, QueryOrder::Sorted);
        spec.kind = QueryKind::Mixed(0.5);
        let t = gen_trace(&spec, &v).unwrap();
        let ranks = t.iter().filter(|q| matches!(q, Query::Rank(_))).count();
        assert!(ranks > 20 && ranks < 80);
    }
}
