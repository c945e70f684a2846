//! Per-group and per-(group, partition) tables shared read-only by the suites.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use ssn_core::residuals::oracle;
use ssn_core::{
    all_subgroups, derived_subgroup, is_sigma_soluble, is_subnormal, pi_residual, primes, sigma_normal_step,
    sigma_residual, sigma_soluble_residual, sigma_subnormal_fast, subgroup_generated, tau_residual, BlockId, ElemSet,
    FiniteGroup, GroupError, Permutation, SigmaChain, SigmaOracle, SigmaPartition, Step, Subgroup, SubgroupLattice,
};

use crate::error::HarnessError;

/// Test hooks that corrupt one decision per (group, partition) context.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Corruption {
    /// Negates the fast σ-subnormality verdict for the trivial subgroup.
    FlipSubnormal,
    /// Replaces the σ-residual of the whole group by the whole group, or by
    /// the trivial subgroup when the residual already is the whole group.
    CorruptResidual,
    /// Adds a σ-normal link from the first subgroup that is not σ-subnormal
    /// straight to the whole group.
    FlipSigmaNormal,
}

/// A group's subgroup lattice with join and meet tables over node indices.
pub struct GroupContext<'g> {
    pub name: String,
    pub group: &'g FiniteGroup,
    pub lattice: SubgroupLattice<'g>,
    join: Vec<u32>,
    meet: Vec<u32>,
    pub normal: Vec<bool>,
    /// Subnormal defect in the whole group.
    pub subnormal: Vec<Option<usize>>,
    pub derived: Vec<usize>,
    /// Primes of `|X : X'|`.
    pub ab_primes: Vec<BTreeSet<u64>>,
    pub cyclic: Vec<usize>,
}

impl<'g> GroupContext<'g> {
    pub fn new(name: &str, group: &'g FiniteGroup) -> Result<Self, GroupError> {
        let lattice = all_subgroups(group)?;
        let n = lattice.len();
        // up[i]: nodes containing node i, as a bitset over node indices.
        let up: Vec<ElemSet> = (0..n)
            .map(|i| {
                let mut s = ElemSet::new(n);
                for k in (i..n).filter(|&k| lattice.contains(i, k)) {
                    s.insert(k);
                }
                s
            })
            .collect();
        let mut join = vec![0u32; n * n];
        let mut meet = vec![0u32; n * n];
        for i in 0..n {
            for j in i..n {
                // Nodes are sorted by order, so the first common upper bound is the join.
                let k = up[i]
                    .intersection(&up[j])
                    .iter()
                    .next()
                    .expect("top contains everything");
                join[i * n + j] = k as u32;
                join[j * n + i] = k as u32;
                let m = lattice
                    .index_of(&lattice.node(i).intersection(lattice.node(j))?)
                    .expect("intersections are subgroups");
                meet[i * n + j] = m as u32;
                meet[j * n + i] = m as u32;
            }
        }
        let whole = group.whole();
        let index = |s: &Subgroup<'_>| lattice.index_of(s).expect("lattice is complete");
        let normal = lattice.nodes().iter().map(|x| x.is_normal_in(&whole)).collect();
        let subnormal = lattice
            .nodes()
            .iter()
            .map(|x| is_subnormal(x, &whole))
            .collect::<Result<_, _>>()?;
        let derived: Vec<usize> = lattice.nodes().iter().map(|x| index(&derived_subgroup(x))).collect();
        let ab_primes = (0..n)
            .map(|i| primes::prime_divisors((lattice.node(i).order() / lattice.node(derived[i]).order()) as u64))
            .collect();
        let cyclic = lattice.cyclic_nodes();
        Ok(GroupContext {
            name: name.to_string(),
            group,
            lattice,
            join,
            meet,
            normal,
            subnormal,
            derived,
            ab_primes,
            cyclic,
        })
    }

    pub fn len(&self) -> usize {
        self.lattice.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lattice.is_empty()
    }

    pub fn top(&self) -> usize {
        self.lattice.top()
    }

    pub fn node(&self, i: usize) -> &Subgroup<'g> {
        self.lattice.node(i)
    }

    pub fn order(&self, i: usize) -> usize {
        self.lattice.node(i).order()
    }

    pub fn join(&self, i: usize, j: usize) -> usize {
        self.join[i * self.len() + j] as usize
    }

    pub fn meet(&self, i: usize, j: usize) -> usize {
        self.meet[i * self.len() + j] as usize
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.join(i, j) == j
    }

    pub fn permutes(&self, i: usize, j: usize) -> bool {
        self.order(self.join(i, j)) * self.order(self.meet(i, j)) == self.order(i) * self.order(j)
    }

    /// Whether the product set `node(i)·node(j)` equals `node(target)`.
    pub fn product_is(&self, i: usize, j: usize, target: usize) -> bool {
        self.contains(i, target)
            && self.contains(j, target)
            && self.order(i) * self.order(j) == self.order(target) * self.order(self.meet(i, j))
    }

    /// Node index of a subgroup given as `;`-separated generators.
    pub fn parse_node(&self, text: &str) -> Result<usize, HarnessError> {
        let d = self.group.degree();
        let perms = text
            .split(';')
            .map(|s| Permutation::parse(s, d))
            .collect::<Result<Vec<_>, _>>()?;
        let s = subgroup_generated(self.group, &perms)?;
        Ok(self.lattice.index_of(&s).expect("lattice is complete"))
    }
}

/// Everything the suites need about one group under one partition.
pub struct SigmaContext<'c, 'g> {
    pub gc: &'c GroupContext<'g>,
    pub name: String,
    pub sigma: SigmaPartition,
    /// Fast σ-subnormality in the whole group.
    pub sn: Vec<bool>,
    pub chains: Vec<Option<SigmaChain<'g>>>,
    /// Node index of each node's σ-residual.
    pub res: Vec<usize>,
    pub soluble: bool,
    /// Blocks meeting `π(G)`; τ masks index into this list.
    pub relevant: Vec<BlockId>,
    corruption: Option<Corruption>,
    oracle: OnceLock<(SigmaOracle<'c, 'g>, Vec<Option<usize>>)>,
    tau: OnceLock<Vec<Vec<usize>>>,
    soluble_res: OnceLock<Vec<usize>>,
}

impl<'c, 'g> SigmaContext<'c, 'g> {
    pub fn new(gc: &'c GroupContext<'g>, name: &str, sigma: &SigmaPartition, corruption: Option<Corruption>) -> Self {
        let whole = gc.group.whole();
        let index = |s: &Subgroup<'_>| gc.lattice.index_of(s).expect("lattice is complete");
        let mut chains: Vec<Option<SigmaChain<'g>>> = gc
            .lattice
            .nodes()
            .iter()
            .map(|x| sigma_subnormal_fast(x, &whole, sigma).expect("nodes lie in the group"))
            .collect();
        let mut sn: Vec<bool> = chains.iter().map(Option::is_some).collect();
        let mut res: Vec<usize> = gc
            .lattice
            .nodes()
            .iter()
            .map(|x| index(&sigma_residual(x, sigma)))
            .collect();
        let top = gc.top();
        match corruption {
            Some(Corruption::FlipSubnormal) => {
                sn[0] = !sn[0];
                chains[0] = None;
            }
            Some(Corruption::CorruptResidual) => res[top] = if res[top] == top { 0 } else { top },
            _ => {}
        }
        SigmaContext {
            gc,
            name: name.to_string(),
            sigma: sigma.clone(),
            sn,
            chains,
            res,
            soluble: is_sigma_soluble(&whole, sigma),
            relevant: sigma.blocks_meeting(&gc.group.prime_set()),
            corruption,
            oracle: OnceLock::new(),
            tau: OnceLock::new(),
            soluble_res: OnceLock::new(),
        }
    }

    /// The definitional oracle and each node's σ-defect in the whole group.
    pub fn oracle(&self) -> &(SigmaOracle<'c, 'g>, Vec<Option<usize>>) {
        self.oracle.get_or_init(|| {
            let lattice = &self.gc.lattice;
            let honest = SigmaOracle::new(lattice, &self.sigma);
            if self.corruption != Some(Corruption::FlipSigmaNormal) {
                let defects = honest.defects_to_top();
                return (honest, defects);
            }
            let top = lattice.top();
            let defects = honest.defects_to_top();
            let Some(target) = defects.iter().position(Option::is_none) else {
                return (honest, defects);
            };
            let sigma = &self.sigma;
            let corrupted = SigmaOracle::with_links(lattice, sigma, |lo, hi| {
                if (lo, hi) == (target, top) {
                    Some(Step::PlainNormal)
                } else {
                    sigma_normal_step(lattice.node(lo), lattice.node(hi), sigma)
                }
            });
            let defects = corrupted.defects_to_top();
            (corrupted, defects)
        })
    }

    pub fn defects(&self) -> &[Option<usize>] {
        &self.oracle().1
    }

    pub fn tau_blocks(&self, mask: usize) -> Vec<BlockId> {
        self.relevant
            .iter()
            .enumerate()
            .filter(|(k, _)| mask & (1 << k) != 0)
            .map(|(_, b)| *b)
            .collect()
    }

    pub fn tau_masks(&self) -> usize {
        1 << self.relevant.len()
    }

    /// Node index of the τ-residual of node `i`, τ given as a mask over `relevant`.
    pub fn tau_res(&self, mask: usize, i: usize) -> usize {
        let table = self.tau.get_or_init(|| {
            (0..self.tau_masks())
                .map(|m| {
                    let tau = self.tau_blocks(m);
                    self.gc
                        .lattice
                        .nodes()
                        .iter()
                        .map(|x| {
                            let r = tau_residual(x, &self.sigma, &tau).expect("relevant blocks are valid");
                            self.gc.lattice.index_of(&r).expect("lattice is complete")
                        })
                        .collect()
                })
                .collect()
        });
        table[mask][i]
    }

    pub fn soluble_res(&self, i: usize) -> usize {
        self.soluble_res.get_or_init(|| {
            self.gc
                .lattice
                .nodes()
                .iter()
                .map(|x| {
                    let r = sigma_soluble_residual(x, &self.sigma);
                    self.gc.lattice.index_of(&r).expect("lattice is complete")
                })
                .collect()
        })[i]
    }

    /// Brute-force residuals of node `i`, compared with the tables above.
    pub fn residual_mismatches(&self, i: usize) -> Vec<String> {
        let gc = self.gc;
        let x = gc.node(i);
        let idx = |s: &Subgroup<'_>| gc.lattice.index_of(s).expect("lattice is complete");
        let mut bad = Vec::new();
        let primes: Vec<u64> = gc.group.prime_set().into_iter().collect();
        for m in 0..1usize << primes.len() {
            let pi: BTreeSet<u64> = primes
                .iter()
                .enumerate()
                .filter(|(k, _)| m & (1 << k) != 0)
                .map(|(_, p)| *p)
                .collect();
            if pi_residual(x, &pi) != oracle::pi_residual(x, |q| pi.contains(&q)) {
                bad.push(format!("pi {pi:?}"));
            }
        }
        let sig = oracle::sigma_residual(x, &self.sigma).expect("normal subgroups give quotients");
        if self.res[i] != idx(&sig) {
            bad.push("sigma".to_string());
        }
        for m in 0..self.tau_masks() {
            let tau = self.tau_blocks(m);
            if self.tau_res(m, i) != idx(&oracle::tau_residual(x, &self.sigma, &tau)) {
                bad.push(format!("tau {}", blocks_label(&tau)));
            }
        }
        let sol = oracle::sigma_soluble_residual(x, &self.sigma).expect("normal subgroups give quotients");
        let t = self.soluble_res(i);
        if t != idx(&sol) {
            bad.push("sigma-soluble".to_string());
        }
        if gc.derived[t] != t {
            bad.push("sigma-soluble residual is not perfect".to_string());
        }
        bad
    }
}

pub fn blocks_label(blocks: &[BlockId]) -> String {
    let parts: Vec<String> = blocks.iter().map(BlockId::to_string).collect();
    format!("[{}]", parts.join(","))
}
