//! `.grp` and `.sig` files.
//!
//! ```text
//! # S3
//! degree: 3
//! gen: (1 2)
//! gen: (1 2 3)
//! ```
//!
//! ```text
//! block: 2 3
//! block: 5
//! ```

use std::collections::BTreeSet;
use std::fs;
use std::path::Path;

use ssn_core::primes::is_prime;
use ssn_core::{Caps, FiniteGroup, GroupError, Permutation, SigmaPartition};

use crate::error::HarnessError;

/// Line content with any `#` comment removed, paired with its 1-based number.
fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

fn field<'a>(line: &'a str, key: &str) -> Option<&'a str> {
    line.strip_prefix(key)?.trim_start().strip_prefix(':').map(str::trim)
}

pub fn parse_group(text: &str, caps: Caps) -> Result<FiniteGroup, HarnessError> {
    let mut degree: Option<usize> = None;
    let mut gens = Vec::new();
    for (line, content) in lines(text) {
        if let Some(v) = field(content, "degree") {
            if degree.is_some() {
                return Err(HarnessError::Syntax {
                    line,
                    msg: "repeated degree line".into(),
                });
            }
            let d: usize = v.parse().map_err(|_| HarnessError::Syntax {
                line,
                msg: format!("bad degree `{v}`"),
            })?;
            if d == 0 {
                return Err(HarnessError::AtLine {
                    line,
                    source: GroupError::EmptyDegree,
                });
            }
            degree = Some(d);
        } else if let Some(v) = field(content, "gen") {
            let d = degree.ok_or_else(|| HarnessError::Syntax {
                line,
                msg: "gen line before degree line".into(),
            })?;
            let p = Permutation::parse(v, d).map_err(|source| HarnessError::AtLine { line, source })?;
            gens.push(p);
        } else {
            return Err(HarnessError::Syntax {
                line,
                msg: format!("expected `degree:` or `gen:`, found `{content}`"),
            });
        }
    }
    let degree = degree.ok_or_else(|| HarnessError::Syntax {
        line: 0,
        msg: "missing degree line".into(),
    })?;
    if gens.is_empty() {
        return Err(HarnessError::Syntax {
            line: 0,
            msg: "no gen lines".into(),
        });
    }
    Ok(FiniteGroup::with_caps(degree, gens, caps)?)
}

pub fn format_group(g: &FiniteGroup) -> String {
    let mut out = format!("degree: {}\n", g.degree());
    if g.generators().is_empty() {
        out.push_str("gen: ()\n");
    }
    for p in g.generators() {
        out.push_str(&format!("gen: {p}\n"));
    }
    out
}

pub fn parse_partition(text: &str) -> Result<SigmaPartition, HarnessError> {
    let mut seen = BTreeSet::new();
    let mut blocks = Vec::new();
    for (line, content) in lines(text) {
        let v = field(content, "block").ok_or_else(|| HarnessError::Syntax {
            line,
            msg: format!("expected `block:`, found `{content}`"),
        })?;
        let mut block = Vec::new();
        for tok in v
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
        {
            let p: u64 = tok.parse().map_err(|_| HarnessError::Syntax {
                line,
                msg: format!("bad prime `{tok}`"),
            })?;
            let at = |source| HarnessError::AtLine { line, source };
            if !is_prime(p) {
                return Err(at(GroupError::NotPrime(p)));
            }
            if !seen.insert(p) {
                return Err(at(GroupError::OverlappingBlocks(p)));
            }
            block.push(p);
        }
        if block.is_empty() {
            return Err(HarnessError::AtLine {
                line,
                source: GroupError::EmptyBlock(blocks.len()),
            });
        }
        blocks.push(block);
    }
    Ok(SigmaPartition::new(blocks)?)
}

pub fn format_partition(sigma: &SigmaPartition) -> String {
    sigma
        .blocks()
        .iter()
        .map(|b| {
            let primes: Vec<String> = b.iter().map(u64::to_string).collect();
            format!("block: {}\n", primes.join(" "))
        })
        .collect()
}

fn read(path: &Path) -> Result<String, HarnessError> {
    fs::read_to_string(path).map_err(|e| HarnessError::io(path, e))
}

pub fn load_group(path: &Path, caps: Caps) -> Result<FiniteGroup, HarnessError> {
    parse_group(&read(path)?, caps)
}

pub fn save_group(g: &FiniteGroup, path: &Path) -> Result<(), HarnessError> {
    fs::write(path, format_group(g)).map_err(|e| HarnessError::io(path, e))
}

pub fn load_partition(path: &Path) -> Result<SigmaPartition, HarnessError> {
    parse_partition(&read(path)?)
}

pub fn save_partition(sigma: &SigmaPartition, path: &Path) -> Result<(), HarnessError> {
    fs::write(path, format_partition(sigma)).map_err(|e| HarnessError::io(path, e))
}
