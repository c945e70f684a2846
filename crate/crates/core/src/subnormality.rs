//! Chain-based decision procedures: subnormality, σ-normality and σ-subnormality.
//!
//! [`sigma_subnormal_fast`] decides σ-subnormality by a recursion over a
//! small candidate set of penultimate chain terms. It rests on two facts
//! about finite groups: `M ⊴_σ Y` iff `M ⊴ Y` or `O^{σ_b}(Y) ≤ M` for some
//! block `b`, and σ-subnormality passes to every intermediate subgroup.
//! [`SigmaOracle`] searches the full subgroup lattice with the literal
//! definition and is the ground truth the fast procedure is tested against.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::elemset::ElemSet;
use crate::error::{GroupError, Result};
use crate::group::{normal_closure_unchecked, normal_core_unchecked, normal_subgroups, prime_set, Subgroup};
use crate::lattice::SubgroupLattice;
use crate::primes::prime_divisors;
use crate::residuals::{block_residual, sigma_residual};
use crate::sigma::{BlockId, SigmaPartition};

/// How one chain term sits in the next.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Step {
    PlainNormal,
    /// The next term modulo the core of this one is a group of the given block.
    BlockNormal(BlockId),
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Step::PlainNormal => f.write_str("normal"),
            Step::BlockNormal(b) => write!(f, "block:{b}"),
        }
    }
}

/// A witness `X = X_0 ⊴_σ X_1 ⊴_σ … ⊴_σ X_n` with one tag per link.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaChain<'g> {
    pub terms: Vec<Subgroup<'g>>,
    pub steps: Vec<Step>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("link {link}: {reason}")]
pub struct ChainViolation {
    pub link: usize,
    pub reason: &'static str,
}

impl<'g> SigmaChain<'g> {
    pub fn trivial(x: &Subgroup<'g>) -> Self {
        SigmaChain {
            terms: vec![x.clone()],
            steps: Vec::new(),
        }
    }

    /// Number of links.
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn bottom(&self) -> &Subgroup<'g> {
        &self.terms[0]
    }

    pub fn top(&self) -> &Subgroup<'g> {
        self.terms.last().expect("chains are nonempty")
    }

    fn push(&mut self, term: Subgroup<'g>, step: Step) {
        self.terms.push(term);
        self.steps.push(step);
    }

    /// Re-checks every link from scratch.
    pub fn validate(&self, sigma: &SigmaPartition) -> std::result::Result<(), ChainViolation> {
        if self.terms.len() != self.steps.len() + 1 {
            return Err(ChainViolation {
                link: 0,
                reason: "term and step counts disagree",
            });
        }
        for (k, step) in self.steps.iter().enumerate() {
            let (lo, hi) = (&self.terms[k], &self.terms[k + 1]);
            let fail = |reason| Err(ChainViolation { link: k, reason });
            if !lo.same_parent(hi) || !lo.is_subgroup_of(hi) || lo.order() == hi.order() {
                return fail("terms are not strictly increasing");
            }
            match *step {
                Step::PlainNormal => {
                    if !lo.is_normal_in(hi) {
                        return fail("term is not normal in its successor");
                    }
                }
                Step::BlockNormal(b) => {
                    if sigma.check_block(b).is_err() {
                        return fail("unknown block");
                    }
                    let core = normal_core_unchecked(hi, lo);
                    let index = hi.index_of(&core) as u64;
                    if !prime_divisors(index).into_iter().all(|p| sigma.in_block(b, p)) {
                        return fail("successor modulo the core is not a group of the tagged block");
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for SigmaChain<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, t) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " -[{}]-> ", self.steps[k - 1])?;
            }
            write!(f, "<{}> (order {})", t.describe(), t.order())?;
        }
        Ok(())
    }
}

/// Subnormal defect of `x` in `y`, following the normal closure series
/// `y ⊵ x^y ⊵ x^{x^y} ⊵ …`; `None` when the series stops above `x`.
pub fn is_subnormal(x: &Subgroup<'_>, y: &Subgroup<'_>) -> Result<Option<usize>> {
    x.check_inside(y)?;
    let mut current = y.clone();
    let mut steps = 0;
    while current != *x {
        let next = normal_closure_unchecked(&current, x);
        if next == current {
            return Ok(None);
        }
        current = next;
        steps += 1;
    }
    Ok(Some(steps))
}

/// The tag of a σ-normal link `x ⊴_σ y`, preferring plain normality.
pub fn sigma_normal_step(x: &Subgroup<'_>, y: &Subgroup<'_>, sigma: &SigmaPartition) -> Option<Step> {
    if x.is_normalized_by(y) {
        return Some(Step::PlainNormal);
    }
    let core = normal_core_unchecked(y, x);
    sigma
        .common_block(&prime_divisors(y.index_of(&core) as u64))
        .map(Step::BlockNormal)
}

/// `x ⊴_σ y`: `x ⊴ y` or `y / core_y(x)` is σ-primary.
pub fn is_sigma_normal(x: &Subgroup<'_>, y: &Subgroup<'_>, sigma: &SigmaPartition) -> Result<bool> {
    x.check_inside(y)?;
    Ok(sigma_normal_step(x, y, sigma).is_some())
}

/// Decides σ-subnormality of `x` in `y`, returning a validated witness chain.
///
/// Success is immediate if `x = y`, `x ⊴ y` or `O^{σ_b}(y) ≤ x` for a block
/// `b` meeting `π(y)`. Otherwise the penultimate term of any chain contains
/// `x^y` or some `⟨x, O^{σ_b}(y)⟩`, so the search recurses into those
/// candidates that are proper in `y`.
pub fn sigma_subnormal_fast<'g>(
    x: &Subgroup<'g>,
    y: &Subgroup<'g>,
    sigma: &SigmaPartition,
) -> Result<Option<SigmaChain<'g>>> {
    x.check_inside(y)?;
    let mut memo: HashMap<ElemSet, Option<SigmaChain<'g>>> = HashMap::new();
    let chain = fast_search(x, y, sigma, &mut memo);
    if let Some(c) = &chain {
        debug_assert!(c.validate(sigma).is_ok(), "fast chain failed validation: {c}");
        if let Err(v) = c.validate(sigma) {
            panic!("fast procedure produced an invalid chain ({v}): {c}");
        }
    }
    Ok(chain)
}

fn fast_search<'g>(
    x: &Subgroup<'g>,
    y: &Subgroup<'g>,
    sigma: &SigmaPartition,
    memo: &mut HashMap<ElemSet, Option<SigmaChain<'g>>>,
) -> Option<SigmaChain<'g>> {
    if let Some(hit) = memo.get(y.members()) {
        return hit.clone();
    }
    let result = fast_search_uncached(x, y, sigma, memo);
    memo.insert(y.members().clone(), result.clone());
    result
}

fn fast_search_uncached<'g>(
    x: &Subgroup<'g>,
    y: &Subgroup<'g>,
    sigma: &SigmaPartition,
    memo: &mut HashMap<ElemSet, Option<SigmaChain<'g>>>,
) -> Option<SigmaChain<'g>> {
    if x == y {
        return Some(SigmaChain::trivial(x));
    }
    let one_step = |step| {
        let mut c = SigmaChain::trivial(x);
        c.push(y.clone(), step);
        Some(c)
    };
    if x.is_normalized_by(y) {
        return one_step(Step::PlainNormal);
    }
    let blocks = sigma.blocks_meeting(&prime_set(y));
    let residuals: Vec<(BlockId, Subgroup<'g>)> = blocks.iter().map(|&b| (b, block_residual(y, sigma, b))).collect();
    if let Some((b, _)) = residuals.iter().find(|(_, r)| r.is_subgroup_of(x)) {
        return one_step(Step::BlockNormal(*b));
    }
    let mut candidates: Vec<(Subgroup<'g>, Step)> = Vec::new();
    candidates.push((normal_closure_unchecked(y, x), Step::PlainNormal));
    for (b, r) in &residuals {
        candidates.push((x.join_unchecked(r), Step::BlockNormal(*b)));
    }
    let mut tried: Vec<&ElemSet> = Vec::new();
    for (m, step) in &candidates {
        if m.order() == y.order() || tried.contains(&m.members()) {
            continue;
        }
        tried.push(m.members());
        if let Some(mut chain) = fast_search(x, m, sigma, memo) {
            let step = if m.is_normalized_by(y) {
                Step::PlainNormal
            } else {
                *step
            };
            chain.push(y.clone(), step);
            return Some(chain);
        }
    }
    None
}

/// Shortest-chain search over the subgroup lattice using the literal
/// definition of σ-normality for every link.
pub struct SigmaOracle<'a, 'g> {
    lattice: &'a SubgroupLattice<'g>,
    sigma: SigmaPartition,
    below: Vec<Vec<(usize, Step)>>,
}

impl<'a, 'g> SigmaOracle<'a, 'g> {
    pub fn new(lattice: &'a SubgroupLattice<'g>, sigma: &SigmaPartition) -> Self {
        SigmaOracle::with_links(lattice, sigma, |lo, hi| {
            sigma_normal_step(lattice.node(lo), lattice.node(hi), sigma)
        })
    }

    /// Builds the link relation from a caller-supplied σ-normality decision.
    pub fn with_links(
        lattice: &'a SubgroupLattice<'g>,
        sigma: &SigmaPartition,
        link: impl Fn(usize, usize) -> Option<Step>,
    ) -> Self {
        let n = lattice.len();
        let below = (0..n)
            .map(|hi| {
                (0..hi)
                    .filter(|&lo| lattice.node(lo).order() < lattice.node(hi).order() && lattice.contains(lo, hi))
                    .filter_map(|lo| link(lo, hi).map(|s| (lo, s)))
                    .collect()
            })
            .collect();
        SigmaOracle {
            lattice,
            sigma: sigma.clone(),
            below,
        }
    }

    pub fn lattice(&self) -> &'a SubgroupLattice<'g> {
        self.lattice
    }

    pub fn sigma(&self) -> &SigmaPartition {
        &self.sigma
    }

    /// Whether node `lo` is a σ-normal proper subgroup of node `hi`.
    pub fn link(&self, lo: usize, hi: usize) -> Option<Step> {
        self.below[hi].iter().find(|(l, _)| *l == lo).map(|(_, s)| *s)
    }

    /// Backward breadth-first search from `hi`; `next[k]` is the successor of
    /// node `k` on a shortest chain to `hi`. Nodes not containing `lo` are pruned.
    fn search_from(&self, lo: Option<usize>, hi: usize) -> Vec<Option<(usize, Step, usize)>> {
        let n = self.lattice.len();
        let mut next: Vec<Option<(usize, Step, usize)>> = vec![None; n];
        let mut reached = vec![false; n];
        reached[hi] = true;
        let mut dist = vec![0usize; n];
        let mut queue = VecDeque::from([hi]);
        while let Some(m) = queue.pop_front() {
            if Some(m) == lo {
                break;
            }
            for &(k, step) in &self.below[m] {
                if reached[k] || lo.is_some_and(|l| !self.lattice.contains(l, k)) {
                    continue;
                }
                reached[k] = true;
                dist[k] = dist[m] + 1;
                next[k] = Some((m, step, dist[k]));
                queue.push_back(k);
            }
        }
        next
    }

    fn assemble(&self, lo: usize, hi: usize, next: &[Option<(usize, Step, usize)>]) -> Option<(SigmaChain<'g>, usize)> {
        if lo == hi {
            return Some((SigmaChain::trivial(self.lattice.node(lo)), 0));
        }
        let (_, _, defect) = next[lo]?;
        let mut chain = SigmaChain::trivial(self.lattice.node(lo));
        let mut k = lo;
        while k != hi {
            let (m, step, _) = next[k].expect("path reaches the top");
            chain.push(self.lattice.node(m).clone(), step);
            k = m;
        }
        Some((chain, defect))
    }

    /// A shortest σ-chain from node `lo` to node `hi` and its length.
    pub fn shortest_chain(&self, lo: usize, hi: usize) -> Option<(SigmaChain<'g>, usize)> {
        if !self.lattice.contains(lo, hi) {
            return None;
        }
        let next = self.search_from(Some(lo), hi);
        self.assemble(lo, hi, &next)
    }

    /// σ-defect of every node in the lattice top (`None` if not σ-subnormal).
    pub fn defects_to_top(&self) -> Vec<Option<usize>> {
        let top = self.lattice.top();
        let next = self.search_from(None, top);
        (0..self.lattice.len())
            .map(|k| if k == top { Some(0) } else { next[k].map(|(_, _, d)| d) })
            .collect()
    }
}

/// Definitional σ-subnormality test: a shortest witness chain and the σ-defect.
pub fn sigma_subnormal_oracle<'g>(
    lattice: &SubgroupLattice<'g>,
    x: &Subgroup<'g>,
    y: &Subgroup<'g>,
    sigma: &SigmaPartition,
) -> Result<Option<(SigmaChain<'g>, usize)>> {
    x.check_inside(y)?;
    let lo = lattice.index_of(x).ok_or(GroupError::NotContained)?;
    let hi = lattice.index_of(y).ok_or(GroupError::NotContained)?;
    let interval = lattice.interval(lo, hi);
    let oracle = SigmaOracle::with_links(lattice, sigma, |a, b| {
        if interval.binary_search(&a).is_ok() && interval.binary_search(&b).is_ok() {
            sigma_normal_step(lattice.node(a), lattice.node(b), sigma)
        } else {
            None
        }
    });
    Ok(oracle.shortest_chain(lo, hi))
}

/// Whether a chain `x = X_0 < X_1 < … < X_n = y` exists whose `i`-th link has
/// `X_{i+1} / core(X_i)` a `block_seq[i]`-group.
pub fn is_strictly_sigma_subnormal(
    lattice: &SubgroupLattice<'_>,
    x: &Subgroup<'_>,
    y: &Subgroup<'_>,
    sigma: &SigmaPartition,
    block_seq: &[BlockId],
) -> Result<bool> {
    x.check_inside(y)?;
    for &b in block_seq {
        sigma.check_block(b)?;
    }
    let lo = lattice.index_of(x).ok_or(GroupError::NotContained)?;
    let hi = lattice.index_of(y).ok_or(GroupError::NotContained)?;
    let interval = lattice.interval(lo, hi);
    let mut layer = vec![lo];
    for &b in block_seq {
        let mut next: Vec<usize> = Vec::new();
        for &m in &interval {
            let top = lattice.node(m);
            let reachable = layer.iter().any(|&k| {
                let low = lattice.node(k);
                low.order() < top.order() && lattice.contains(k, m) && {
                    let core = normal_core_unchecked(top, low);
                    prime_divisors(top.index_of(&core) as u64)
                        .into_iter()
                        .all(|p| sigma.in_block(b, p))
                }
            });
            if reachable {
                next.push(m);
            }
        }
        if next.is_empty() {
            return Ok(false);
        }
        layer = next;
    }
    Ok(layer.contains(&hi))
}

/// A chain `x = H_0 ⊴ H_1 ⊴ … ⊴ H_n = y` whose factors are groups of the
/// recorded blocks; with `normal_in_ambient` every term is normal in `y`.
#[derive(Debug, Clone)]
pub struct EmbeddingWitness<'g> {
    pub terms: Vec<Subgroup<'g>>,
    pub block_seq: Vec<BlockId>,
    pub normal_in_ambient: bool,
}

impl<'g> EmbeddingWitness<'g> {
    pub fn validate(&self, sigma: &SigmaPartition) -> bool {
        let top = self.terms.last().expect("nonempty");
        self.terms.len() == self.block_seq.len() + 1
            && self.terms.windows(2).zip(&self.block_seq).all(|(w, &b)| {
                w[0].is_normal_in(&w[1])
                    && (!self.normal_in_ambient || w[0].is_normal_in(top))
                    && prime_divisors(w[1].index_of(&w[0]) as u64)
                        .into_iter()
                        .all(|p| sigma.in_block(b, p))
            })
    }

    /// Every link is a normal step, so the witness is also a σ-chain.
    pub fn into_sigma_chain(self) -> SigmaChain<'g> {
        let steps = vec![Step::PlainNormal; self.block_seq.len()];
        SigmaChain {
            terms: self.terms,
            steps,
        }
    }
}

/// Searches for a σ-(normally-)embedding of `x` in `y`, returning a shortest witness.
///
/// The normal variant searches the normal subgroups of `y` above `x`; the
/// general variant searches the subgroup lattice between `x` and `y`.
pub fn is_sigma_embedded<'g>(
    lattice: &SubgroupLattice<'g>,
    x: &Subgroup<'g>,
    y: &Subgroup<'g>,
    sigma: &SigmaPartition,
    normal_in_ambient: bool,
) -> Result<Option<EmbeddingWitness<'g>>> {
    x.check_inside(y)?;
    let nodes: Vec<Subgroup<'g>> = if normal_in_ambient {
        if !x.is_normalized_by(y) {
            return Ok(None);
        }
        normal_subgroups(y)
            .into_iter()
            .filter(|n| x.is_subgroup_of(n))
            .collect()
    } else {
        let lo = lattice.index_of(x).ok_or(GroupError::NotContained)?;
        let hi = lattice.index_of(y).ok_or(GroupError::NotContained)?;
        lattice
            .interval(lo, hi)
            .into_iter()
            .map(|k| lattice.node(k).clone())
            .collect()
    };
    let start = nodes.iter().position(|n| n == x).expect("x is in its own interval");
    let goal = nodes.iter().position(|n| n == y).expect("y is in its own interval");
    let mut prev: Vec<Option<(usize, BlockId)>> = vec![None; nodes.len()];
    let mut reached = vec![false; nodes.len()];
    reached[start] = true;
    let mut queue = VecDeque::from([start]);
    while let Some(k) = queue.pop_front() {
        if k == goal {
            break;
        }
        for m in 0..nodes.len() {
            if reached[m] || nodes[m].order() <= nodes[k].order() || !nodes[k].is_normal_in(&nodes[m]) {
                continue;
            }
            let primes = prime_divisors(nodes[m].index_of(&nodes[k]) as u64);
            if let Some(b) = sigma.common_block(&primes) {
                reached[m] = true;
                prev[m] = Some((k, b));
                queue.push_back(m);
            }
        }
    }
    if !reached[goal] {
        return Ok(None);
    }
    let mut terms = vec![nodes[goal].clone()];
    let mut block_seq = Vec::new();
    let mut k = goal;
    while let Some((p, b)) = prev[k] {
        terms.push(nodes[p].clone());
        block_seq.push(b);
        k = p;
    }
    terms.reverse();
    block_seq.reverse();
    Ok(Some(EmbeddingWitness {
        terms,
        block_seq,
        normal_in_ambient,
    }))
}

/// For σ-subnormal `h` in `y`, whether `h^σ` is subnormal in `y`.
pub fn residual_subnormality_check(h: &Subgroup<'_>, y: &Subgroup<'_>, sigma: &SigmaPartition) -> Result<bool> {
    if sigma_subnormal_fast(h, y, sigma)?.is_none() {
        return Err(GroupError::NotSigmaSubnormal);
    }
    let r = sigma_residual(h, sigma);
    Ok(is_subnormal(&r, y)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{subgroup_generated, FiniteGroup};
    use crate::lattice::all_subgroups;
    use crate::perm::Permutation;

    fn group(degree: usize, gens: &[&str]) -> FiniteGroup {
        FiniteGroup::new(
            degree,
            gens.iter().map(|s| Permutation::parse(s, degree).unwrap()).collect(),
        )
        .unwrap()
    }

    fn sub<'g>(g: &'g FiniteGroup, gens: &[&str]) -> Subgroup<'g> {
        let perms: Vec<_> = gens
            .iter()
            .map(|s| Permutation::parse(s, g.degree()).unwrap())
            .collect();
        subgroup_generated(g, &perms).unwrap()
    }

    fn part(blocks: &[&[u64]]) -> SigmaPartition {
        SigmaPartition::new(blocks.iter().map(|b| b.to_vec()).collect()).unwrap()
    }

    #[test]
    fn subnormal_defects() {
        let s4 = group(4, &["(1 2)", "(1 2 3 4)"]);
        let w = s4.whole();
        assert_eq!(is_subnormal(&w, &w).unwrap(), Some(0));
        let a4 = sub(&s4, &["(1 2 3)", "(2 3 4)"]);
        assert_eq!(is_subnormal(&a4, &w).unwrap(), Some(1));
        let d8 = sub(&s4, &["(1 2 3 4)", "(1 3)"]);
        assert_eq!(is_subnormal(&d8, &w).unwrap(), None);
        let c2 = sub(&s4, &["(1 2)(3 4)"]);
        assert_eq!(is_subnormal(&c2, &w).unwrap(), Some(2));
        assert!(is_subnormal(&w, &c2).is_err());
    }

    #[test]
    fn sigma_normality() {
        let s4 = group(4, &["(1 2)", "(1 2 3 4)"]);
        let w = s4.whole();
        let d8 = sub(&s4, &["(1 2 3 4)", "(1 3)"]);
        assert!(!is_sigma_normal(&d8, &w, &part(&[&[2], &[3]])).unwrap());
        assert!(is_sigma_normal(&d8, &w, &part(&[&[2, 3]])).unwrap());
        let a4 = sub(&s4, &["(1 2 3)", "(2 3 4)"]);
        assert!(is_sigma_normal(&a4, &w, &part(&[&[2], &[3]])).unwrap());
    }

    #[test]
    fn fast_examples() {
        let s4 = group(4, &["(1 2)", "(1 2 3 4)"]);
        let w = s4.whole();
        let split = part(&[&[2], &[3]]);
        assert_eq!(sigma_subnormal_fast(&w, &w, &split).unwrap().unwrap().len(), 0);
        let d8 = sub(&s4, &["(1 2 3 4)", "(1 3)"]);
        assert!(sigma_subnormal_fast(&d8, &w, &split).unwrap().is_none());
        // S4 / core is all of S4 for every subgroup between C3 and S4 except A4.
        let c3 = sub(&s4, &["(1 2 3)"]);
        assert!(sigma_subnormal_fast(&c3, &w, &split).unwrap().is_none());
        let c2 = sub(&s4, &["(1 2)(3 4)"]);
        let chain = sigma_subnormal_fast(&c2, &w, &split).unwrap().unwrap();
        assert!(chain.validate(&split).is_ok());
        assert_eq!(chain.bottom(), &c2);
        assert_eq!(chain.top(), &w);
        let t = sub(&s4, &["(1 2)"]);
        let chain = sigma_subnormal_fast(&t, &w, &part(&[&[2, 3]])).unwrap().unwrap();
        assert_eq!(chain.steps, vec![Step::BlockNormal(BlockId::Listed(0))]);
    }

    #[test]
    fn wreath_everything_one_step() {
        // C2 wr C3 on 6 points, blocks {1,2},{3,4},{5,6}.
        let g = group(6, &["(1 2)", "(1 3 5)(2 4 6)"]);
        assert_eq!(g.order(), 24);
        let merged = part(&[&[2, 3]]);
        let lattice = all_subgroups(&g).unwrap();
        for x in lattice.nodes() {
            let chain = sigma_subnormal_fast(x, &g.whole(), &merged).unwrap().unwrap();
            assert!(chain.len() <= 1);
        }
    }

    #[test]
    fn oracle_agrees_on_s4() {
        let s4 = group(4, &["(1 2)", "(1 2 3 4)"]);
        let lattice = all_subgroups(&s4).unwrap();
        for sigma in [
            part(&[&[2], &[3]]),
            part(&[&[2, 3]]),
            part(&[&[3]]),
            SigmaPartition::whole(),
        ] {
            let oracle = SigmaOracle::new(&lattice, &sigma);
            let defects = oracle.defects_to_top();
            for (k, x) in lattice.nodes().iter().enumerate() {
                let fast = sigma_subnormal_fast(x, &s4.whole(), &sigma).unwrap();
                assert_eq!(fast.is_some(), defects[k].is_some(), "node {x:?} under {sigma}");
                if let Some((chain, d)) = oracle.shortest_chain(k, lattice.top()) {
                    assert_eq!(Some(d), defects[k]);
                    assert_eq!(chain.len(), d);
                    chain.validate(&sigma).unwrap();
                }
                let direct = sigma_subnormal_oracle(&lattice, x, &s4.whole(), &sigma).unwrap();
                assert_eq!(direct.map(|(_, d)| d), defects[k]);
            }
        }
    }

    #[test]
    fn oracle_defects() {
        let s3 = group(3, &["(1 2)", "(1 2 3)"]);
        let lattice = all_subgroups(&s3).unwrap();
        let split = part(&[&[2], &[3]]);
        let w = s3.whole();
        let a3 = sub(&s3, &["(1 2 3)"]);
        assert_eq!(sigma_subnormal_oracle(&lattice, &a3, &w, &split).unwrap().unwrap().1, 1);
        assert_eq!(sigma_subnormal_oracle(&lattice, &w, &w, &split).unwrap().unwrap().1, 0);
        let t = sub(&s3, &["(1 2)"]);
        assert!(sigma_subnormal_oracle(&lattice, &t, &w, &split).unwrap().is_none());
    }

    #[test]
    fn strict_chains() {
        let s3 = group(3, &["(1 2)", "(1 2 3)"]);
        let lattice = all_subgroups(&s3).unwrap();
        let split = part(&[&[2], &[3]]);
        let w = s3.whole();
        assert!(is_strictly_sigma_subnormal(&lattice, &w, &w, &split, &[]).unwrap());
        let a3 = sub(&s3, &["(1 2 3)"]);
        assert!(is_strictly_sigma_subnormal(&lattice, &a3, &w, &split, &[BlockId::Listed(0)]).unwrap());
        assert!(!is_strictly_sigma_subnormal(&lattice, &a3, &w, &split, &[BlockId::Listed(1)]).unwrap());
        let merged = part(&[&[2, 3]]);
        let t = sub(&s3, &["(1 2)"]);
        assert!(is_strictly_sigma_subnormal(&lattice, &t, &w, &merged, &[BlockId::Listed(0)]).unwrap());
        assert!(is_strictly_sigma_subnormal(&lattice, &w, &w, &split, &[BlockId::Listed(0)]).is_ok_and(|b| !b));
    }

    #[test]
    fn embeddings() {
        let s3 = group(3, &["(1 2)", "(1 2 3)"]);
        let l3 = all_subgroups(&s3).unwrap();
        let split = part(&[&[2], &[3]]);
        let w = s3.whole();
        let e = is_sigma_embedded(&l3, &w, &w, &split, false).unwrap().unwrap();
        assert!(e.block_seq.is_empty());
        let a3 = sub(&s3, &["(1 2 3)"]);
        for normal in [false, true] {
            let e = is_sigma_embedded(&l3, &a3, &w, &split, normal).unwrap().unwrap();
            assert_eq!(e.terms, vec![a3.clone(), w.clone()]);
            assert_eq!(e.block_seq, vec![BlockId::Listed(0)]);
            assert!(e.validate(&split));
        }
        let s4 = group(4, &["(1 2)", "(1 2 3 4)"]);
        let l4 = all_subgroups(&s4).unwrap();
        let d8 = sub(&s4, &["(1 2 3 4)", "(1 3)"]);
        assert!(is_sigma_embedded(&l4, &d8, &s4.whole(), &split, false)
            .unwrap()
            .is_none());
        assert!(is_sigma_embedded(&l4, &d8, &s4.whole(), &split, true)
            .unwrap()
            .is_none());
    }

    #[test]
    fn residual_subnormality() {
        let s4 = group(4, &["(1 2)", "(1 2 3 4)"]);
        let w = s4.whole();
        let split = part(&[&[2], &[3]]);
        assert!(residual_subnormality_check(&w, &w, &split).unwrap());
        let a4 = sub(&s4, &["(1 2 3)", "(2 3 4)"]);
        assert!(residual_subnormality_check(&a4, &w, &split).unwrap());
        let d8 = sub(&s4, &["(1 2 3 4)", "(1 3)"]);
        assert_eq!(
            residual_subnormality_check(&d8, &w, &split).unwrap_err(),
            GroupError::NotSigmaSubnormal
        );
    }
}
