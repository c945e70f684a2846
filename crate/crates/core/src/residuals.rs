//! π-residuals, σ- and τ-residuals, and the σ-soluble residual.

use std::collections::BTreeSet;

use crate::error::Result;
use crate::group::{normal_subgroups, prime_set, quotient, Subgroup};
use crate::primes::{prime_divisors, prime_power_base};
use crate::sigma::{is_sigma_nilpotent, quotient_is_sigma_soluble, BlockId, SigmaPartition};

/// `O^π(x)` for the prime set described by `in_pi`: the subgroup generated by
/// all `q`-elements of `x` with `q ∉ π`.
pub fn residual_outside<'g>(x: &Subgroup<'g>, in_pi: impl Fn(u64) -> bool) -> Subgroup<'g> {
    let g = x.group();
    let mut r = g.trivial();
    for e in x.elements() {
        if r.contains(e) {
            continue;
        }
        if let Some(q) = prime_power_base(g.element_order(e)) {
            if !in_pi(q) {
                r.extend(e);
            }
        }
    }
    r
}

/// Smallest normal subgroup of `x` whose quotient is a π-group.
pub fn pi_residual<'g>(x: &Subgroup<'g>, pi: &BTreeSet<u64>) -> Subgroup<'g> {
    residual_outside(x, |q| pi.contains(&q))
}

/// `O^{σ_b}(x)`.
pub fn block_residual<'g>(x: &Subgroup<'g>, sigma: &SigmaPartition, b: BlockId) -> Subgroup<'g> {
    residual_outside(x, |q| sigma.in_block(b, q))
}

/// `x^σ`: the intersection of `O^{σ_b}(x)` over the blocks meeting `π(x)`.
pub fn sigma_residual<'g>(x: &Subgroup<'g>, sigma: &SigmaPartition) -> Subgroup<'g> {
    intersect_block_residuals(x, sigma, sigma.blocks_meeting(&prime_set(x)))
}

/// `x^τ` for a set of blocks `tau`; `x` itself when `tau` is empty.
pub fn tau_residual<'g>(x: &Subgroup<'g>, sigma: &SigmaPartition, tau: &[BlockId]) -> Result<Subgroup<'g>> {
    for &b in tau {
        sigma.check_block(b)?;
    }
    let primes = prime_set(x);
    let relevant: Vec<BlockId> = tau
        .iter()
        .copied()
        .filter(|&b| primes.iter().any(|&p| sigma.in_block(b, p)))
        .collect();
    Ok(intersect_block_residuals(x, sigma, relevant))
}

fn intersect_block_residuals<'g>(
    x: &Subgroup<'g>,
    sigma: &SigmaPartition,
    blocks: impl IntoIterator<Item = BlockId>,
) -> Subgroup<'g> {
    let mut acc = x.clone();
    for b in blocks {
        if acc.is_trivial() {
            break;
        }
        let r = block_residual(x, sigma, b);
        acc = acc.meet_unchecked(&r);
    }
    acc
}

/// Smallest normal subgroup of `x` with σ-soluble quotient.
///
/// Finite σ-soluble groups are closed under subdirect products, so this is
/// the intersection of all normal subgroups with σ-soluble quotient.
pub fn sigma_soluble_residual<'g>(x: &Subgroup<'g>, sigma: &SigmaPartition) -> Subgroup<'g> {
    let normals = normal_subgroups(x);
    let mut acc = x.members().clone();
    for k in 0..normals.len() {
        if normals[k].members().is_subset(&acc) && quotient_is_sigma_soluble(&normals, k, sigma) {
            acc.intersect_with(normals[k].members());
        }
    }
    let r = normals
        .into_iter()
        .find(|n| *n.members() == acc)
        .expect("the σ-soluble residual is one of the normal subgroups");
    r
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ResidualKind {
    Pi(BTreeSet<u64>),
    Sigma,
    Tau(Vec<BlockId>),
    SigmaSoluble,
}

#[derive(Debug, Clone)]
pub struct ResidualReport<'g> {
    pub subject: Subgroup<'g>,
    pub kind: ResidualKind,
    pub result: Subgroup<'g>,
    pub oracle_result: Option<Subgroup<'g>>,
}

impl<'g> ResidualReport<'g> {
    /// Computes the residual and, when `with_oracle`, the brute-force
    /// characterization from the normal-subgroup lattice.
    pub fn compute(
        subject: &Subgroup<'g>,
        kind: ResidualKind,
        sigma: &SigmaPartition,
        with_oracle: bool,
    ) -> Result<Self> {
        let result = match &kind {
            ResidualKind::Pi(pi) => pi_residual(subject, pi),
            ResidualKind::Sigma => sigma_residual(subject, sigma),
            ResidualKind::Tau(tau) => tau_residual(subject, sigma, tau)?,
            ResidualKind::SigmaSoluble => sigma_soluble_residual(subject, sigma),
        };
        let oracle_result = if with_oracle {
            Some(match &kind {
                ResidualKind::Pi(pi) => oracle::pi_residual(subject, |q| pi.contains(&q)),
                ResidualKind::Sigma => oracle::sigma_residual(subject, sigma)?,
                ResidualKind::Tau(tau) => oracle::tau_residual(subject, sigma, tau),
                ResidualKind::SigmaSoluble => oracle::sigma_soluble_residual(subject, sigma)?,
            })
        } else {
            None
        };
        Ok(ResidualReport {
            subject: subject.clone(),
            kind,
            result,
            oracle_result,
        })
    }

    pub fn agrees(&self) -> bool {
        self.oracle_result.as_ref().is_none_or(|o| *o == self.result)
    }
}

/// Brute-force characterizations over the normal-subgroup lattice.
///
/// Each function returns the unique minimum of a family of normal subgroups,
/// checking that the intersection of the family is itself a member.
pub mod oracle {
    use super::*;
    use crate::group::FiniteGroup;
    use crate::sigma::is_sigma_soluble;

    fn minimum<'g>(x: &Subgroup<'g>, family: Vec<Subgroup<'g>>) -> Subgroup<'g> {
        let mut acc = x.members().clone();
        for n in &family {
            acc.intersect_with(n.members());
        }
        family
            .into_iter()
            .find(|n| *n.members() == acc)
            .expect("family has a minimum")
    }

    /// Minimum of `{N ⊴ x : π(|x:N|) ⊆ π}`.
    pub fn pi_residual<'g>(x: &Subgroup<'g>, in_pi: impl Fn(u64) -> bool) -> Subgroup<'g> {
        let family = normal_subgroups(x)
            .into_iter()
            .filter(|n| prime_divisors(x.index_of(n) as u64).into_iter().all(&in_pi))
            .collect();
        minimum(x, family)
    }

    pub fn tau_residual<'g>(x: &Subgroup<'g>, sigma: &SigmaPartition, tau: &[BlockId]) -> Subgroup<'g> {
        let mut acc = x.clone();
        for &b in tau {
            acc = acc.meet_unchecked(&pi_residual(x, |q| sigma.in_block(b, q)));
        }
        acc
    }

    fn quotient_satisfies(x: &Subgroup<'_>, n: &Subgroup<'_>, pred: impl Fn(&FiniteGroup) -> bool) -> Result<bool> {
        let q = quotient(x, n)?;
        Ok(pred(q.group()))
    }

    /// Minimum normal subgroup with σ-nilpotent quotient, testing each quotient directly.
    pub fn sigma_residual<'g>(x: &Subgroup<'g>, sigma: &SigmaPartition) -> Result<Subgroup<'g>> {
        let mut family = Vec::new();
        for n in normal_subgroups(x) {
            if quotient_satisfies(x, &n, |q| is_sigma_nilpotent(&q.whole(), sigma))? {
                family.push(n);
            }
        }
        Ok(minimum(x, family))
    }

    /// Minimum normal subgroup with σ-soluble quotient, testing each quotient directly.
    pub fn sigma_soluble_residual<'g>(x: &Subgroup<'g>, sigma: &SigmaPartition) -> Result<Subgroup<'g>> {
        let mut family = Vec::new();
        for n in normal_subgroups(x) {
            if quotient_satisfies(x, &n, |q| is_sigma_soluble(&q.whole(), sigma))? {
                family.push(n);
            }
        }
        Ok(minimum(x, family))
    }
}
