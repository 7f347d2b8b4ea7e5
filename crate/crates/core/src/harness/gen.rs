//! Instance generators and the plain-text instance format (one decimal
//! integer per line).

use std::fmt;
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    /// `1,2,1,2,…`: many runs, two values.
    Example1,
    /// `1,2,…,n`: one run, all distinct.
    Example2,
    /// `1..σ` repeated ρ times.
    Example3,
    /// ρ value-disjoint runs in decreasing value order.
    Example4,
    /// ρ sorted chunks of random values from `[1, σ]`.
    Random,
    File(PathBuf),
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "example1" => Family::Example1,
            "example2" => Family::Example2,
            "example3" => Family::Example3,
            "example4" => Family::Example4,
            "random" => Family::Random,
            _ => match s.strip_prefix("file:") {
                Some(p) => Family::File(PathBuf::from(p)),
                None => {
                    return Err(Error::InvalidSpec(format!(
                        "unknown family `{s}` (expected example1..example4, random or file:<path>)"
                    )))
                }
            },
        })
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Example1 => f.write_str("example1"),
            Family::Example2 => f.write_str("example2"),
            Family::Example3 => f.write_str("example3"),
            Family::Example4 => f.write_str("example4"),
            Family::Random => f.write_str("random"),
            Family::File(p) => write!(f, "file:{}", p.display()),
        }
    }
}

/// What to generate. Unset parameters take family defaults.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceSpec {
    pub family: Family,
    pub n: usize,
    pub sigma: Option<usize>,
    pub rho: Option<usize>,
    pub phi: Option<usize>,
    pub seed: u64,
}

impl InstanceSpec {
    pub fn new(family: Family, n: usize) -> Self {
        Self {
            family,
            n,
            sigma: None,
            rho: None,
            phi: None,
            seed: 0,
        }
    }

    pub fn sigma(mut self, sigma: usize) -> Self {
        self.sigma = Some(sigma);
        self
    }

    pub fn rho(mut self, rho: usize) -> Self {
        self.rho = Some(rho);
        self
    }

    pub fn phi(mut self, phi: usize) -> Self {
        self.phi = Some(phi);
        self
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidSpec(msg.into())
}

/// Generates an instance; deterministic for a given spec.
pub fn gen_instance(spec: &InstanceSpec) -> Result<Vec<i64>> {
    let n = spec.n;
    match &spec.family {
        Family::Example1 => Ok((0..n).map(|i| 1 + (i % 2) as i64).collect()),
        Family::Example2 => Ok((1..=n as i64).collect()),
        Family::Example3 => {
            let (rho, sigma) = match (spec.rho, spec.sigma) {
                (Some(r), Some(s)) if r * s == n => (r, s),
                (Some(r), Some(s)) => return Err(invalid(format!("example3 requires n = rho * sigma, got {n} != {r} * {s}"))),
                (Some(r), None) if r > 0 && n.is_multiple_of(r) => (r, n / r),
                (None, Some(s)) if s > 0 && n.is_multiple_of(s) => (n / s, s),
                (None, None) => return Err(invalid("example3 requires rho or sigma")),
                _ => return Err(invalid(format!("example3 requires rho or sigma dividing n = {n}"))),
            };
            Ok((0..rho).flat_map(|_| 1..=sigma as i64).collect())
        }
        Family::Example4 => {
            let rho = spec.rho.ok_or_else(|| invalid("example4 requires rho"))?;
            if rho == 0 || !n.is_multiple_of(rho) {
                return Err(invalid(format!("example4 requires rho dividing n, got n = {n}, rho = {rho}")));
            }
            let len = n / rho;
            Ok((0..rho)
                .flat_map(|j| {
                    let base = ((rho - 1 - j) * len) as i64;
                    (1..=len as i64).map(move |i| base + i)
                })
                .collect())
        }
        Family::Random => gen_random(spec),
        Family::File(path) => {
            let v = read_instance(path)?;
            if spec.n != 0 && v.len() != spec.n {
                return Err(invalid(format!("{} holds {} values, expected n = {}", path.display(), v.len(), spec.n)));
            }
            Ok(v)
        }
    }
}

/// ρ sorted chunks of random values. A φ target splits the chunks into
/// φ + 1 consecutive groups drawing from increasing, disjoint value bands,
/// which creates a pivot position at every group boundary.
fn gen_random(spec: &InstanceSpec) -> Result<Vec<i64>> {
    let n = spec.n;
    if n == 0 {
        return Ok(Vec::new());
    }
    let rho = spec.rho.unwrap_or(1);
    let sigma = spec.sigma.unwrap_or(n);
    let groups = spec.phi.unwrap_or(0) + 1;
    if rho == 0 || rho > n {
        return Err(invalid(format!("random requires 1 <= rho <= n, got rho = {rho}")));
    }
    if sigma == 0 {
        return Err(invalid("random requires sigma >= 1"));
    }
    if groups > rho || groups > sigma {
        return Err(invalid(format!("random requires phi < rho and phi < sigma, got phi = {}", groups - 1)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut out = Vec::with_capacity(n);
    for c in 0..rho {
        let len = n / rho + usize::from(c < n % rho);
        let g = c * groups / rho;
        let lo = 1 + (g * sigma / groups) as i64;
        let hi = ((g + 1) * sigma / groups) as i64;
        let mut chunk: Vec<i64> = (0..len).map(|_| rng.gen_range(lo..=hi)).collect();
        chunk.sort_unstable();
        out.extend(chunk);
    }
    Ok(out)
}

pub fn read_instance(path: &Path) -> Result<Vec<i64>> {
    let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    let mut out = Vec::new();
    for (k, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(|e| Error::io(path, e))?;
        let t = line.trim();
        if t.is_empty() {
            continue;
        }
        out.push(t.parse().map_err(|e| Error::Parse {
            path: path.to_path_buf(),
            line: k + 1,
            message: format!("`{t}`: {e}"),
        })?);
    }
    Ok(out)
}

pub fn write_instance(out: &mut impl Write, values: &[i64]) -> std::io::Result<()> {
    for v in values {
        writeln!(out, "{v}")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::InstanceProfile;

    #[test]
    fn example_templates() {
        let g = |s: InstanceSpec| gen_instance(&s).unwrap();
        assert_eq!(g(InstanceSpec::new(Family::Example1, 8)), vec![1, 2, 1, 2, 1, 2, 1, 2]);
        assert_eq!(g(InstanceSpec::new(Family::Example2, 4)), vec![1, 2, 3, 4]);
        assert_eq!(g(InstanceSpec::new(Family::Example3, 6).rho(2)), vec![1, 2, 3, 1, 2, 3]);
        assert_eq!(g(InstanceSpec::new(Family::Example4, 9).rho(3)), vec![7, 8, 9, 4, 5, 6, 1, 2, 3]);
        assert!(g(InstanceSpec::new(Family::Random, 0)).is_empty());
    }

    #[test]
    fn inconsistent_specs_name_the_constraint() {
        let e = gen_instance(&InstanceSpec::new(Family::Example3, 10).rho(3).sigma(3)).unwrap_err();
        assert!(e.to_string().contains("n = rho * sigma"), "{e}");
        let e = gen_instance(&InstanceSpec::new(Family::Example4, 10).rho(3)).unwrap_err();
        assert!(e.to_string().contains("rho dividing n"), "{e}");
        assert!("bogus".parse::<Family>().is_err());
    }

    #[test]
    fn random_is_deterministic_and_reports_its_shape() {
        let spec = InstanceSpec::new(Family::Random, 2000).rho(40).sigma(500).phi(3).seed(9);
        let a = gen_instance(&spec).unwrap();
        assert_eq!(a, gen_instance(&spec).unwrap());
        assert_eq!(a.len(), 2000);
        assert!(a.iter().all(|&x| (1..=500).contains(&x)));
        let d = InstanceProfile::of(&a).descriptors;
        assert!(d.rho <= 40 && d.rho >= 30);
        assert!(d.phi >= 3);
    }

    #[test]
    fn file_round_trip() {
        let dir = std::env::temp_dir().join(format!("synergy-gen-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("inst.txt");
        let mut buf = Vec::new();
        write_instance(&mut buf, &[3, -1, 7]).unwrap();
        std::fs::write(&path, &buf).unwrap();
        assert_eq!(gen_instance(&InstanceSpec::new(Family::File(path.clone()), 3)).unwrap(), vec![3, -1, 7]);
        std::fs::write(&path, "1\nx\n").unwrap();
        match read_instance(&path) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
        assert!(matches!(read_instance(&dir.join("missing")), Err(Error::Io { .. })));
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
