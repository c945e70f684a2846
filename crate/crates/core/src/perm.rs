//! Permutations on `0..degree`, with 1-based disjoint cycle notation for text I/O.

use std::fmt;

use crate::error::{GroupError, Result};

/// A bijection on `0..degree`, stored as its image sequence.
///
/// The derived ordering compares image sequences lexicographically; it is the
/// canonical element order used by [`crate::FiniteGroup`].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from 0-based images, checking that they form a bijection.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let degree = images.len();
        let mut seen = vec![false; degree];
        for &i in &images {
            let i = i as usize;
            if i >= degree {
                return Err(GroupError::PointOutOfRange { point: i + 1, degree });
            }
            if seen[i] {
                return Err(GroupError::RepeatedPoint(i + 1));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation from 0-based disjoint cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut used = vec![false; degree];
        for cycle in cycles {
            for (k, &p) in cycle.iter().enumerate() {
                if p >= degree {
                    return Err(GroupError::PointOutOfRange { point: p + 1, degree });
                }
                if used[p] {
                    return Err(GroupError::RepeatedPoint(p + 1));
                }
                used[p] = true;
                images[p] = cycle[(k + 1) % cycle.len()] as u32;
            }
        }
        Ok(Permutation { images })
    }

    /// Parses 1-based disjoint cycle notation such as `(1 2 3)(4 5)` or `()`.
    ///
    /// Points inside a cycle may be separated by whitespace or commas.
    pub fn parse(text: &str, degree: usize) -> Result<Self> {
        if degree == 0 {
            return Err(GroupError::EmptyDegree);
        }
        let bytes = text.as_bytes();
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut pos = 0;
        let mut saw_cycle = false;
        let err = |pos: usize, msg: &str| GroupError::Parse {
            pos,
            msg: msg.to_string(),
        };
        while pos < bytes.len() {
            let c = bytes[pos];
            if c.is_ascii_whitespace() {
                pos += 1;
                continue;
            }
            if c != b'(' {
                return Err(err(pos, "expected '('"));
            }
            saw_cycle = true;
            pos += 1;
            let mut cycle = Vec::new();
            loop {
                while pos < bytes.len() && (bytes[pos].is_ascii_whitespace() || bytes[pos] == b',') {
                    pos += 1;
                }
                if pos >= bytes.len() {
                    return Err(err(pos, "unclosed '('"));
                }
                match bytes[pos] {
                    b')' => {
                        pos += 1;
                        break;
                    }
                    b'0'..=b'9' => {
                        let start = pos;
                        while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                            pos += 1;
                        }
                        let point: usize = text[start..pos]
                            .parse()
                            .map_err(|_| err(start, "point does not fit in an integer"))?;
                        if point == 0 || point > degree {
                            return Err(GroupError::PointOutOfRange { point, degree });
                        }
                        cycle.push(point - 1);
                    }
                    _ => return Err(err(pos, "unexpected character inside cycle")),
                }
            }
            if !cycle.is_empty() {
                cycles.push(cycle);
            }
        }
        if !saw_cycle {
            return Err(err(0, "empty input (use \"()\" for the identity)"));
        }
        Permutation::from_cycles(degree, &cycles)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// The product that applies `self` first and then `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self.images.iter().map(|&x| other.images[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x as usize] = i as u32;
        }
        Permutation { images }
    }

    /// Nontrivial cycles, 0-based, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.apply(start) == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut p = self.apply(start);
            while p != start {
                seen[p] = true;
                cycle.push(p);
                p = self.apply(p);
            }
            out.push(cycle);
        }
        out
    }

    /// Element order: the lcm of the cycle lengths.
    pub fn order(&self) -> u64 {
        self.cycles().iter().fold(1u64, |acc, c| lcm(acc, c.len() as u64))
    }

    /// The same permutation acting on `offset..offset + degree` inside `new_degree` points.
    pub fn shifted(&self, offset: usize, new_degree: usize) -> Permutation {
        let mut images: Vec<u32> = (0..new_degree as u32).collect();
        for (i, &x) in self.images.iter().enumerate() {
            images[i + offset] = x + offset as u32;
        }
        Permutation { images }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for cycle in cycles {
            f.write_str("(")?;
            for (k, p) in cycle.iter().enumerate() {
                if k > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", p + 1)?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}
