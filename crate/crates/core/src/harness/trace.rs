//! The query trace format: one query per line, `S <i>` for select and
//! `R <x>` for rank.

use std::fmt;
use std::io::Write;
use std::path::Path;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Query {
    /// 1-based rank.
    Select(usize),
    /// Count of elements strictly smaller than the key.
    Rank(i64),
}

impl fmt::Display for Query {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Query::Select(i) => write!(f, "S {i}"),
            Query::Rank(x) => write!(f, "R {x}"),
        }
    }
}

pub fn parse_trace(text: &str, path: &Path) -> Result<Vec<Query>> {
    let mut out = Vec::new();
    for (k, line) in text.lines().enumerate() {
        let t = line.trim();
        if t.is_empty() {
            continue;
        }
        let bad = |message: String| Error::Parse {
            path: path.to_path_buf(),
            line: k + 1,
            message,
        };
        let (tag, arg) = t.split_once(char::is_whitespace).ok_or_else(|| bad(format!("`{t}` lacks an argument")))?;
        let arg = arg.trim();
        out.push(match tag {
            "S" => Query::Select(arg.parse().map_err(|e| bad(format!("`{arg}`: {e}")))?),
            "R" => Query::Rank(arg.parse().map_err(|e| bad(format!("`{arg}`: {e}")))?),
            _ => return Err(bad(format!("unknown query tag `{tag}`"))),
        });
    }
    Ok(out)
}

pub fn read_trace(path: &Path) -> Result<Vec<Query>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_trace(&text, path)
}

pub fn write_trace(out: &mut impl Write, trace: &[Query]) -> std::io::Result<()> {
    for q in trace {
        writeln!(out, "{q}")?;
    }
    Ok(())
}

/// FNV-1a over the canonical text of the trace; tags bench rows that
/// replay a trace file.
pub fn checksum(trace: &[Query]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for q in trace {
        for b in format!("{q}\n").bytes() {
            h ^= u64::from(b);
            h = h.wrapping_mul(0x0000_0100_0000_01b3);
        }
    }
    h
}
