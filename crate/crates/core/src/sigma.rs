//! Partitions of the primes and the classification predicates built on them.
//!
//! A [`SigmaPartition`] lists finitely many disjoint prime blocks; every
//! unlisted prime belongs to one implicit remainder block. For finite groups
//! σ-hypercentral and σ-nilpotent coincide, so only [`is_sigma_nilpotent`] is
//! provided.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{GroupError, Result};
use crate::group::{normal_subgroups, prime_set, Subgroup};
use crate::primes::{is_prime, prime_divisors};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BlockId {
    Listed(usize),
    Remainder,
}

impl fmt::Display for BlockId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BlockId::Listed(i) => write!(f, "{i}"),
            BlockId::Remainder => f.write_str("rest"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SigmaPartition {
    blocks: Vec<BTreeSet<u64>>,
}

impl SigmaPartition {
    /// Validates that every entry is prime, blocks are nonempty and pairwise disjoint.
    pub fn new(blocks: Vec<Vec<u64>>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::with_capacity(blocks.len());
        for (i, block) in blocks.into_iter().enumerate() {
            if block.is_empty() {
                return Err(GroupError::EmptyBlock(i));
            }
            let mut set = BTreeSet::new();
            for p in block {
                if !is_prime(p) {
                    return Err(GroupError::NotPrime(p));
                }
                if !seen.insert(p) {
                    return Err(GroupError::OverlappingBlocks(p));
                }
                set.insert(p);
            }
            out.push(set);
        }
        Ok(SigmaPartition { blocks: out })
    }

    /// The partition `{ℙ}`: a single remainder block.
    pub fn whole() -> Self {
        SigmaPartition { blocks: Vec::new() }
    }

    /// The finest partition on the given primes: each one its own block.
    pub fn singletons(primes: &[u64]) -> Result<Self> {
        SigmaPartition::new(primes.iter().map(|&p| vec![p]).collect())
    }

    pub fn blocks(&self) -> &[BTreeSet<u64>] {
        &self.blocks
    }

    /// Listed blocks in order, then the remainder.
    pub fn block_ids(&self) -> Vec<BlockId> {
        (0..self.blocks.len())
            .map(BlockId::Listed)
            .chain(std::iter::once(BlockId::Remainder))
            .collect()
    }

    pub fn check_block(&self, b: BlockId) -> Result<()> {
        match b {
            BlockId::Listed(i) if i >= self.blocks.len() => Err(GroupError::UnknownBlock(i)),
            _ => Ok(()),
        }
    }

    pub fn block_of(&self, p: u64) -> Result<BlockId> {
        if !is_prime(p) {
            return Err(GroupError::NotPrime(p));
        }
        Ok(self.block_of_prime(p))
    }

    pub(crate) fn block_of_prime(&self, p: u64) -> BlockId {
        self.blocks
            .iter()
            .position(|b| b.contains(&p))
            .map_or(BlockId::Remainder, BlockId::Listed)
    }

    /// Whether prime `p` lies in block `b`.
    pub fn in_block(&self, b: BlockId, p: u64) -> bool {
        self.block_of_prime(p) == b
    }

    /// Distinct blocks meeting `primes`, sorted.
    pub fn blocks_meeting(&self, primes: &BTreeSet<u64>) -> Vec<BlockId> {
        let set: BTreeSet<BlockId> = primes.iter().map(|&p| self.block_of_prime(p)).collect();
        set.into_iter().collect()
    }

    /// The single block containing all of `primes`, if there is one (`None` for the empty set).
    pub fn common_block(&self, primes: &BTreeSet<u64>) -> Option<BlockId> {
        match self.blocks_meeting(primes).as_slice() {
            [b] => Some(*b),
            _ => None,
        }
    }

    /// Whether `self` refines `coarser` on `primes`: any two of them sharing a
    /// block of `self` also share a block of `coarser`.
    pub fn refines_on(&self, coarser: &SigmaPartition, primes: &BTreeSet<u64>) -> bool {
        primes.iter().all(|&p| {
            primes.iter().all(|&q| {
                self.block_of_prime(p) != self.block_of_prime(q)
                    || coarser.block_of_prime(p) == coarser.block_of_prime(q)
            })
        })
    }
}

impl fmt::Display for SigmaPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for b in &self.blocks {
            let ps: Vec<String> = b.iter().map(u64::to_string).collect();
            write!(f, "{{{}}}, ", ps.join(","))?;
        }
        f.write_str("rest}")
    }
}

/// True iff `primes` is empty or lies inside a single block.
pub fn is_sigma_primary(sigma: &SigmaPartition, primes: &BTreeSet<u64>) -> bool {
    primes.is_empty() || sigma.common_block(primes).is_some()
}

/// Whether `x` is a `b`-group.
pub fn is_block_group(sigma: &SigmaPartition, b: BlockId, x: &Subgroup<'_>) -> bool {
    prime_divisors(x.order() as u64)
        .into_iter()
        .all(|p| sigma.in_block(b, p))
}

/// The largest normal subgroup of `x` whose primes lie in block `b`.
pub fn sigma_component<'g>(x: &Subgroup<'g>, sigma: &SigmaPartition, b: BlockId) -> Subgroup<'g> {
    let mut comp = x.group().trivial();
    for n in normal_subgroups(x) {
        if is_block_group(sigma, b, &n) && !n.is_subgroup_of(&comp) {
            comp = comp.join_unchecked(&n);
        }
    }
    debug_assert!(is_block_group(sigma, b, &comp));
    comp
}

/// Whether `x` is the direct product of its σ-components.
///
/// The components for distinct blocks have coprime orders, so their product
/// has order `∏ |O_b|` and equals `x` exactly when the orders multiply to `|x|`.
pub fn is_sigma_nilpotent(x: &Subgroup<'_>, sigma: &SigmaPartition) -> bool {
    let normals = normal_subgroups(x);
    let product: usize = sigma
        .blocks_meeting(&prime_set(x))
        .into_iter()
        .map(|b| {
            normals
                .iter()
                .filter(|n| is_block_group(sigma, b, n))
                .map(Subgroup::order)
                .max()
                .unwrap_or(1)
        })
        .product();
    product == x.order()
}

/// Whether some chief series of `x` has only σ-primary factors.
///
/// A chief series is a maximal chain in the lattice of normal subgroups of
/// `x`; it is built by repeatedly stepping to a minimal normal subgroup above
/// the current term. By Jordan–Hölder one series decides.
pub fn is_sigma_soluble(x: &Subgroup<'_>, sigma: &SigmaPartition) -> bool {
    let normals = normal_subgroups(x);
    quotient_is_sigma_soluble(&normals, 0, sigma)
}

/// Whether `x / normals[from]` is σ-soluble, given all normal subgroups of `x` in canonical order.
pub(crate) fn quotient_is_sigma_soluble(normals: &[Subgroup<'_>], from: usize, sigma: &SigmaPartition) -> bool {
    let mut current = from;
    loop {
        let base = &normals[current];
        // Canonical order sorts by order first, so the first proper normal
        // overgroup found is minimal among them.
        let next = (0..normals.len()).find(|&k| normals[k].order() > base.order() && base.is_subgroup_of(&normals[k]));
        let Some(next) = next else {
            return true;
        };
        let factor = normals[next].order() / base.order();
        if !is_sigma_primary(sigma, &prime_divisors(factor as u64)) {
            return false;
        }
        current = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{quotient, FiniteGroup};
    use crate::perm::Permutation;

    fn group(degree: usize, gens: &[&str]) -> FiniteGroup {
        FiniteGroup::new(
            degree,
            gens.iter().map(|s| Permutation::parse(s, degree).unwrap()).collect(),
        )
        .unwrap()
    }

    fn s3() -> FiniteGroup {
        group(3, &["(1 2)", "(1 2 3)"])
    }

    fn a5() -> FiniteGroup {
        group(5, &["(1 2 3)", "(1 2 3 4 5)"])
    }

    fn part(blocks: &[&[u64]]) -> SigmaPartition {
        SigmaPartition::new(blocks.iter().map(|b| b.to_vec()).collect()).unwrap()
    }

    /// Independent σ-solubility check by repeated quotients by a minimal normal subgroup.
    fn soluble_by_quotients(g: &FiniteGroup, sigma: &SigmaPartition) -> bool {
        if g.order() == 1 {
            return true;
        }
        let whole = g.whole();
        let normals = normal_subgroups(&whole);
        let minimal = normals.iter().find(|n| !n.is_trivial()).unwrap();
        if !is_sigma_primary(sigma, &prime_set(minimal)) {
            return false;
        }
        let q = quotient(&whole, minimal).unwrap().into_group();
        soluble_by_quotients(&q, sigma)
    }

    #[test]
    fn block_lookup() {
        let s = part(&[&[2, 3]]);
        assert_eq!(s.block_of(3).unwrap(), BlockId::Listed(0));
        assert_eq!(s.block_of(5).unwrap(), BlockId::Remainder);
        assert_eq!(part(&[&[2], &[3]]).block_of(2).unwrap(), BlockId::Listed(0));
        assert_eq!(s.block_of(4).unwrap_err(), GroupError::NotPrime(4));
    }

    #[test]
    fn partition_validation() {
        assert_eq!(
            SigmaPartition::new(vec![vec![2, 3], vec![3]]).unwrap_err(),
            GroupError::OverlappingBlocks(3)
        );
        assert_eq!(SigmaPartition::new(vec![vec![4]]).unwrap_err(), GroupError::NotPrime(4));
        assert_eq!(
            SigmaPartition::new(vec![vec![]]).unwrap_err(),
            GroupError::EmptyBlock(0)
        );
        assert!(part(&[&[2]]).check_block(BlockId::Listed(1)).is_err());
    }

    #[test]
    fn partition_is_total_on_small_primes() {
        let s = part(&[&[2, 5], &[3]]);
        for p in (2..1000u64).filter(|&p| is_prime(p)) {
            let b = s.block_of(p).unwrap();
            let hits = s.block_ids().into_iter().filter(|&c| s.in_block(c, p)).count();
            assert_eq!(hits, 1, "prime {p}");
            match p {
                2 | 5 => assert_eq!(b, BlockId::Listed(0)),
                3 => assert_eq!(b, BlockId::Listed(1)),
                _ => assert_eq!(b, BlockId::Remainder),
            }
        }
    }

    #[test]
    fn primary_predicate() {
        assert!(is_sigma_primary(&part(&[&[2], &[3]]), &BTreeSet::new()));
        assert!(is_sigma_primary(&part(&[&[2, 3]]), &BTreeSet::from([2, 3])));
        assert!(!is_sigma_primary(&part(&[&[2], &[3]]), &BTreeSet::from([2, 3])));
        assert!(is_sigma_primary(&part(&[&[2]]), &BTreeSet::from([3, 5])));
    }

    #[test]
    fn components_of_s3() {
        let g = s3();
        let s = part(&[&[2], &[3]]);
        assert_eq!(sigma_component(&g.whole(), &s, BlockId::Listed(1)).order(), 3);
        assert!(sigma_component(&g.whole(), &s, BlockId::Listed(0)).is_trivial());
        let merged = part(&[&[2, 3]]);
        assert!(sigma_component(&g.whole(), &merged, BlockId::Listed(0)).is_whole());
    }

    #[test]
    fn nilpotency() {
        let c6 = group(6, &["(1 2 3 4 5 6)"]);
        let split = part(&[&[2], &[3]]);
        assert!(is_sigma_nilpotent(&c6.whole(), &split));
        assert!(!is_sigma_nilpotent(&s3().whole(), &split));
        assert!(is_sigma_nilpotent(&s3().whole(), &part(&[&[2, 3]])));
        assert!(is_sigma_nilpotent(&a5().whole(), &SigmaPartition::whole()));
    }

    #[test]
    fn solubility() {
        let s4 = group(4, &["(1 2)", "(1 2 3 4)"]);
        for sigma in [part(&[&[2], &[3]]), part(&[&[5]]), SigmaPartition::whole()] {
            assert!(is_sigma_soluble(&s4.whole(), &sigma));
        }
        assert!(!is_sigma_soluble(&a5().whole(), &part(&[&[5]])));
        assert!(is_sigma_soluble(&a5().whole(), &part(&[&[2, 3, 5]])));
        let s5 = group(5, &["(1 2)", "(1 2 3 4 5)"]);
        for sigma in [
            part(&[&[5]]),
            part(&[&[2, 3, 5]]),
            part(&[&[2], &[3]]),
            part(&[&[2, 3], &[5]]),
        ] {
            for g in [&s4, &a5(), &s5] {
                assert_eq!(
                    is_sigma_soluble(&g.whole(), &sigma),
                    soluble_by_quotients(g, &sigma),
                    "{g:?} under {sigma}"
                );
            }
        }
    }
}
