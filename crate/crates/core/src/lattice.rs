//! Exhaustive subgroup lattices.

use std::collections::HashMap;

use crate::elemset::ElemSet;
use crate::error::{GroupError, Result};
use crate::group::{FiniteGroup, Subgroup};

/// Every subgroup of a subgroup `top` of the parent group, in canonical order.
///
/// Node 0 is the trivial subgroup and the last node is `top` itself.
pub struct SubgroupLattice<'g> {
    group: &'g FiniteGroup,
    nodes: Vec<Subgroup<'g>>,
    index: HashMap<ElemSet, usize>,
}

/// All subgroups of `g`, using the group's lattice cap.
pub fn all_subgroups(g: &FiniteGroup) -> Result<SubgroupLattice<'_>> {
    SubgroupLattice::of(&g.whole(), g.caps().lattice)
}

impl<'g> SubgroupLattice<'g> {
    /// Closes the cyclic subgroups of `top` under joins with cyclic subgroups.
    ///
    /// Every subgroup is generated by its cyclic subgroups, so adding one
    /// cyclic subgroup at a time reaches all of them.
    pub fn of(top: &Subgroup<'g>, cap: usize) -> Result<Self> {
        let g = top.group();
        let mut nodes: Vec<Subgroup<'g>> = Vec::new();
        let mut index: HashMap<ElemSet, usize> = HashMap::new();
        let mut push = |s: Subgroup<'g>, nodes: &mut Vec<Subgroup<'g>>| -> Result<()> {
            if index.contains_key(s.members()) {
                return Ok(());
            }
            if nodes.len() >= cap {
                return Err(GroupError::LatticeCapExceeded {
                    cap,
                    reached: nodes.len() + 1,
                });
            }
            index.insert(s.members().clone(), nodes.len());
            nodes.push(s);
            Ok(())
        };
        push(g.trivial(), &mut nodes)?;
        let mut cyclics: Vec<Subgroup<'g>> = Vec::new();
        let mut covered = ElemSet::new(g.order());
        for e in top.elements() {
            if covered.contains(e) {
                continue;
            }
            let c = Subgroup::from_elems(g, [e]);
            // Generators of the same cyclic subgroup share it; skip them.
            for x in c.elements() {
                if g.element_order(x) == c.order() as u64 {
                    covered.insert(x);
                }
            }
            if !c.is_trivial() {
                cyclics.push(c.clone());
                push(c, &mut nodes)?;
            }
        }
        let mut k = 0;
        while k < nodes.len() {
            for c in &cyclics {
                if c.is_subgroup_of(&nodes[k]) {
                    continue;
                }
                let j = nodes[k].join_unchecked(c);
                push(j, &mut nodes)?;
            }
            k += 1;
        }
        nodes.sort();
        let index = nodes
            .iter()
            .enumerate()
            .map(|(i, s)| (s.members().clone(), i))
            .collect();
        Ok(SubgroupLattice { group: g, nodes, index })
    }

    pub fn group(&self) -> &'g FiniteGroup {
        self.group
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[Subgroup<'g>] {
        &self.nodes
    }

    pub fn node(&self, i: usize) -> &Subgroup<'g> {
        &self.nodes[i]
    }

    pub fn top(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn index_of(&self, s: &Subgroup<'_>) -> Option<usize> {
        if !std::ptr::eq(s.group(), self.group) {
            return None;
        }
        self.index.get(s.members()).copied()
    }

    /// Whether node `i` is contained in node `j`.
    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.nodes[i].is_subgroup_of(&self.nodes[j])
    }

    /// Node indices of the cyclic subgroups.
    pub fn cyclic_nodes(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.nodes[i].generators().len() <= 1)
            .collect()
    }

    /// Node indices `k` with `nodes[i] ⊆ nodes[k] ⊆ nodes[j]`.
    pub fn interval(&self, i: usize, j: usize) -> Vec<usize> {
        (0..self.len())
            .filter(|&k| self.contains(i, k) && self.contains(k, j))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Permutation;
    use std::collections::{BTreeMap, BTreeSet};

    fn group(degree: usize, gens: &[&str]) -> FiniteGroup {
        FiniteGroup::new(
            degree,
            gens.iter().map(|s| Permutation::parse(s, degree).unwrap()).collect(),
        )
        .unwrap()
    }

    /// Independent oracle: every subset of the group that contains the
    /// identity and is closed under products, found by growing candidate sets
    /// from every pair of elements, then closing under pairwise joins.
    fn oracle_subgroups(g: &FiniteGroup) -> BTreeSet<Vec<usize>> {
        let n = g.order();
        let close = |seed: &BTreeSet<usize>| -> BTreeSet<usize> {
            let mut set = seed.clone();
            set.insert(g.identity());
            loop {
                let mut next = set.clone();
                for &a in &set {
                    for &b in &set {
                        next.insert(g.mul(a, b));
                    }
                }
                if next.len() == set.len() {
                    return set;
                }
                set = next;
            }
        };
        let mut found: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
        for a in 0..n {
            for b in a..n {
                found.insert(close(&BTreeSet::from([a, b])));
            }
        }
        loop {
            let list: Vec<_> = found.iter().cloned().collect();
            let mut grew = false;
            for x in &list {
                for y in &list {
                    let u: BTreeSet<usize> = x.union(y).copied().collect();
                    if found.insert(close(&u)) {
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
        }
        found.into_iter().map(|s| s.into_iter().collect()).collect()
    }

    fn as_sets(l: &SubgroupLattice<'_>) -> BTreeSet<Vec<usize>> {
        l.nodes().iter().map(|s| s.elements().collect()).collect()
    }

    #[test]
    fn s3_has_six_subgroups() {
        let g = group(3, &["(1 2)", "(1 2 3)"]);
        let l = all_subgroups(&g).unwrap();
        assert_eq!(l.len(), 6);
        assert_eq!(as_sets(&l), oracle_subgroups(&g));
    }

    #[test]
    fn s4_has_thirty_subgroups() {
        let g = group(4, &["(1 2)", "(1 2 3 4)"]);
        let l = all_subgroups(&g).unwrap();
        assert_eq!(l.len(), 30);
        let mut per_order: BTreeMap<usize, usize> = BTreeMap::new();
        for s in l.nodes() {
            *per_order.entry(s.order()).or_default() += 1;
            assert_eq!(24 % s.order(), 0);
        }
        assert_eq!(
            per_order,
            BTreeMap::from([(1, 1), (2, 9), (3, 4), (4, 7), (6, 4), (8, 3), (12, 1), (24, 1)])
        );
        assert_eq!(as_sets(&l), oracle_subgroups(&g));
        assert!(l.node(0).is_trivial());
        assert!(l.node(l.top()).is_whole());
    }

    #[test]
    fn trivial_group_lattice() {
        let g = FiniteGroup::new(1, vec![]).unwrap();
        assert_eq!(all_subgroups(&g).unwrap().len(), 1);
    }

    #[test]
    fn lattice_cap_is_enforced() {
        let g = group(4, &["(1 2)", "(1 2 3 4)"]);
        let r = SubgroupLattice::of(&g.whole(), 10);
        assert!(matches!(r, Err(GroupError::LatticeCapExceeded { cap: 10, .. })));
    }

    #[test]
    fn oracle_agreement_on_more_groups() {
        for (d, gens) in [
            (4usize, vec!["(1 2 3 4)", "(1 3)"]),
            (4, vec!["(1 2 3)", "(2 3 4)"]),
            (6, vec!["(1 2)", "(3 4)", "(5 6)"]),
            (6, vec!["(1 2 3)", "(4 5 6)", "(1 4)(2 5)(3 6)"]),
        ] {
            let g = group(d, &gens);
            let l = all_subgroups(&g).unwrap();
            assert_eq!(as_sets(&l), oracle_subgroups(&g), "group {gens:?}");
        }
    }
}
