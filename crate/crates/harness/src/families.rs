//! Builtin group families and their descriptor syntax, e.g. `direct_product(cyclic(2),symmetric(3))`.

use std::fmt;
use std::str::FromStr;

use ssn_core::{Caps, FiniteGroup, Permutation};

use crate::error::HarnessError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    Cyclic(usize),
    /// Symmetries of the regular `n`-gon, order `2n`.
    Dihedral(usize),
    Symmetric(usize),
    Alternating(usize),
    /// `C_p ≀ C_q` on `p·q` points, block `i` being `{i·p, …, i·p + p − 1}`.
    WreathCyclic(usize, usize),
    DirectProduct(Vec<Family>),
}

impl Family {
    pub fn degree(&self) -> usize {
        match self {
            Family::Cyclic(n) | Family::Symmetric(n) | Family::Alternating(n) => (*n).max(1),
            Family::Dihedral(n) => match n {
                1 => 2,
                2 => 4,
                n => *n,
            },
            Family::WreathCyclic(p, q) => p * q,
            Family::DirectProduct(fs) => fs.iter().map(Family::degree).sum::<usize>().max(1),
        }
    }

    /// Generators on `degree()` points.
    pub fn generators(&self) -> Vec<Permutation> {
        let d = self.degree();
        let cycle = |pts: Vec<usize>| Permutation::from_cycles(d, &[pts]).expect("valid cycle");
        match *self {
            Family::Cyclic(n) if n >= 2 => vec![cycle((0..n).collect())],
            Family::Cyclic(_) => vec![],
            Family::Dihedral(1) => vec![cycle(vec![0, 1])],
            Family::Dihedral(2) => vec![
                Permutation::from_cycles(4, &[vec![0, 1], vec![2, 3]]).unwrap(),
                Permutation::from_cycles(4, &[vec![0, 2], vec![1, 3]]).unwrap(),
            ],
            Family::Dihedral(n) => {
                let reflection: Vec<u32> = (0..n).map(|i| ((n - i) % n) as u32).collect();
                vec![
                    cycle((0..n).collect()),
                    Permutation::from_images(reflection).expect("reflection is a bijection"),
                ]
            }
            Family::Symmetric(n) if n >= 2 => {
                let mut gens = vec![cycle(vec![0, 1])];
                if n >= 3 {
                    gens.push(cycle((0..n).collect()));
                }
                gens
            }
            Family::Symmetric(_) => vec![],
            Family::Alternating(n) => (2..n).map(|i| cycle(vec![0, 1, i])).collect(),
            Family::WreathCyclic(p, q) => {
                let mut gens = Vec::new();
                if p >= 2 {
                    gens.push(cycle((0..p).collect()));
                }
                if q >= 2 {
                    let shift: Vec<u32> = (0..p * q).map(|i| ((i + p) % (p * q)) as u32).collect();
                    gens.push(Permutation::from_images(shift).expect("block shift is a bijection"));
                }
                gens
            }
            Family::DirectProduct(ref fs) => {
                let mut gens = Vec::new();
                let mut offset = 0;
                for f in fs {
                    gens.extend(f.generators().iter().map(|g| g.shifted(offset, d)));
                    offset += f.degree();
                }
                gens
            }
        }
    }

    pub fn build(&self, caps: Caps) -> Result<FiniteGroup, HarnessError> {
        Ok(FiniteGroup::with_caps(self.degree(), self.generators(), caps)?)
    }
}

/// Parses a descriptor and builds the group under `caps`.
pub fn builtin_family(spec: &str, caps: Caps) -> Result<FiniteGroup, HarnessError> {
    spec.parse::<Family>()?.build(caps)
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Cyclic(n) => write!(f, "cyclic({n})"),
            Family::Dihedral(n) => write!(f, "dihedral({n})"),
            Family::Symmetric(n) => write!(f, "symmetric({n})"),
            Family::Alternating(n) => write!(f, "alternating({n})"),
            Family::WreathCyclic(p, q) => write!(f, "wreath_cyclic({p},{q})"),
            Family::DirectProduct(fs) => {
                f.write_str("direct_product(")?;
                for (i, x) in fs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{x}")?;
                }
                f.write_str(")")
            }
        }
    }
}

impl FromStr for Family {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut p = Parser { s: &compact, pos: 0 };
        let fam = p.family()?;
        if p.pos != compact.len() {
            return Err(p.err("trailing input"));
        }
        Ok(fam)
    }
}

struct Parser<'a> {
    s: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> HarnessError {
        HarnessError::Family(format!("{msg} at offset {} in `{}`", self.pos, self.s))
    }

    fn eat(&mut self, c: char) -> Result<(), HarnessError> {
        if self.s[self.pos..].starts_with(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected `{c}`")))
        }
    }

    fn ident(&mut self) -> &str {
        let start = self.pos;
        let rest = &self.s[start..];
        let len = rest
            .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
            .unwrap_or(rest.len());
        self.pos += len;
        &self.s[start..start + len]
    }

    fn number(&mut self) -> Result<usize, HarnessError> {
        let start = self.pos;
        let digits = self.ident().to_string();
        digits.parse().map_err(|_| {
            self.pos = start;
            self.err("expected a positive integer")
        })
    }

    fn family(&mut self) -> Result<Family, HarnessError> {
        let start = self.pos;
        let name = self.ident().to_string();
        self.eat('(')?;
        let fam = match name.as_str() {
            "direct_product" => {
                let mut parts = vec![self.family()?];
                while self.s[self.pos..].starts_with(',') {
                    self.pos += 1;
                    parts.push(self.family()?);
                }
                Family::DirectProduct(parts)
            }
            "wreath_cyclic" => {
                let p = self.number()?;
                self.eat(',')?;
                let q = self.number()?;
                if p == 0 || q == 0 {
                    return Err(self.err("wreath_cyclic needs positive parameters"));
                }
                Family::WreathCyclic(p, q)
            }
            "cyclic" | "dihedral" | "symmetric" | "alternating" => {
                let n = self.number()?;
                if n == 0 {
                    return Err(self.err("parameter must be positive"));
                }
                match name.as_str() {
                    "cyclic" => Family::Cyclic(n),
                    "dihedral" => Family::Dihedral(n),
                    "symmetric" => Family::Symmetric(n),
                    _ => Family::Alternating(n),
                }
            }
            _ => {
                self.pos = start;
                return Err(self.err(&format!("unknown family `{name}`")));
            }
        };
        self.eat(')')?;
        Ok(fam)
    }
}
