//! Fully enumerated permutation groups and bitset subgroups.
//!
//! A [`FiniteGroup`] stores every element, sorted by image sequence, so an
//! element is just its index. A [`Subgroup`] is a member bitset over those
//! indices together with a short generating list; two subgroups are equal
//! exactly when their bitsets are.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;
use std::hash::{Hash, Hasher};

use crate::elemset::ElemSet;
use crate::error::{GroupError, Result};
use crate::perm::Permutation;
use crate::primes::prime_divisors;

/// Largest order for which a full multiplication table is kept.
const TABLE_LIMIT: usize = 2048;

/// Size limits. Exceeding either is always an error, never a truncation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    pub order: usize,
    pub lattice: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            order: 5040,
            lattice: 600,
        }
    }
}

pub struct FiniteGroup {
    degree: usize,
    generators: Vec<Permutation>,
    gen_indices: Vec<usize>,
    elements: Vec<Permutation>,
    identity: usize,
    inverses: Vec<u32>,
    orders: Vec<u64>,
    table: Option<Vec<u16>>,
    caps: Caps,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("degree", &self.degree)
            .field("order", &self.order())
            .field(
                "generators",
                &self.generators.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
            )
            .finish()
    }
}

/// Closure of `gens` under composition, with the default caps.
pub fn group_from_generators(degree: usize, gens: Vec<Permutation>) -> Result<FiniteGroup> {
    FiniteGroup::with_caps(degree, gens, Caps::default())
}

impl FiniteGroup {
    pub fn new(degree: usize, gens: Vec<Permutation>) -> Result<Self> {
        FiniteGroup::with_caps(degree, gens, Caps::default())
    }

    pub fn with_caps(degree: usize, gens: Vec<Permutation>, caps: Caps) -> Result<Self> {
        if degree == 0 {
            return Err(GroupError::EmptyDegree);
        }
        for g in &gens {
            if g.degree() != degree {
                return Err(GroupError::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        let id = Permutation::identity(degree);
        let mut seen: HashSet<Permutation> = HashSet::new();
        seen.insert(id.clone());
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for g in &gens {
                let y = x.then(g);
                if !seen.contains(&y) {
                    if seen.len() >= caps.order {
                        return Err(GroupError::OrderCapExceeded {
                            cap: caps.order,
                            reached: seen.len() + 1,
                        });
                    }
                    seen.insert(y.clone());
                    queue.push_back(y);
                }
            }
        }
        let mut elements: Vec<Permutation> = seen.into_iter().collect();
        elements.sort();
        let n = elements.len();
        let lookup = |p: &Permutation| elements.binary_search(p).expect("closed set");
        let identity = lookup(&Permutation::identity(degree));
        let inverses = elements.iter().map(|e| lookup(&e.inverse()) as u32).collect();
        let orders = elements.iter().map(Permutation::order).collect();
        let gen_indices = gens.iter().map(&lookup).collect();
        let table = (n <= TABLE_LIMIT).then(|| {
            let mut t = Vec::with_capacity(n * n);
            for a in &elements {
                for b in &elements {
                    t.push(lookup(&a.then(b)) as u16);
                }
            }
            t
        });
        Ok(FiniteGroup {
            degree,
            generators: gens,
            gen_indices,
            elements,
            identity,
            inverses,
            orders,
            table,
            caps,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn caps(&self) -> Caps {
        self.caps
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn generator_indices(&self) -> &[usize] {
        &self.gen_indices
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Permutation {
        &self.elements[i]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        if p.degree() != self.degree {
            return None;
        }
        self.elements.binary_search(p).ok()
    }

    /// Product `a` then `b`.
    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.table {
            Some(t) => t[a * self.elements.len() + b] as usize,
            None => self
                .elements
                .binary_search(&self.elements[a].then(&self.elements[b]))
                .expect("group is closed"),
        }
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a] as usize
    }

    /// `a^b = b⁻¹ a b`.
    #[inline]
    pub fn conj(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv(b), a), b)
    }

    /// `[a, b] = a⁻¹ b⁻¹ a b`.
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    pub fn element_order(&self, a: usize) -> u64 {
        self.orders[a]
    }

    pub fn whole(&self) -> Subgroup<'_> {
        Subgroup {
            group: self,
            members: ElemSet::full(self.order()),
            gens: self
                .gen_indices
                .iter()
                .copied()
                .filter(|&g| g != self.identity)
                .collect(),
        }
    }

    pub fn trivial(&self) -> Subgroup<'_> {
        let mut members = ElemSet::new(self.order());
        members.insert(self.identity);
        Subgroup {
            group: self,
            members,
            gens: Vec::new(),
        }
    }

    /// Primes dividing the order of some element.
    pub fn prime_set(&self) -> BTreeSet<u64> {
        prime_set(&self.whole())
    }

    pub fn is_abelian(&self) -> bool {
        self.whole().is_abelian()
    }

    /// Multiset of element orders, sorted; a cheap isomorphism fingerprint.
    pub fn order_statistics(&self) -> Vec<u64> {
        let mut v = self.orders.clone();
        v.sort_unstable();
        v
    }
}

/// A subgroup of a fixed parent group, identified by its member bitset.
#[derive(Clone)]
pub struct Subgroup<'g> {
    group: &'g FiniteGroup,
    members: ElemSet,
    gens: Vec<usize>,
}

impl PartialEq for Subgroup<'_> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.group, other.group) && self.members == other.members
    }
}

impl Eq for Subgroup<'_> {}

impl Hash for Subgroup<'_> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.members.hash(state);
    }
}

impl PartialOrd for Subgroup<'_> {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical order: by order, then by member bitset.
impl Ord for Subgroup<'_> {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.order()
            .cmp(&other.order())
            .then_with(|| self.members.cmp(&other.members))
    }
}

impl fmt::Debug for Subgroup<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup(order {}, <{}>)", self.order(), self.describe())
    }
}

impl<'g> Subgroup<'g> {
    /// Closes `members` (already known to be a subgroup) and derives a short generating list.
    pub(crate) fn from_members(group: &'g FiniteGroup, members: ElemSet) -> Self {
        let mut s = group.trivial();
        for x in members.iter() {
            s.extend(x);
        }
        debug_assert_eq!(s.members, members);
        s
    }

    pub(crate) fn from_elems(group: &'g FiniteGroup, elems: impl IntoIterator<Item = usize>) -> Self {
        let mut s = group.trivial();
        for x in elems {
            s.extend(x);
        }
        s
    }

    pub fn group(&self) -> &'g FiniteGroup {
        self.group
    }

    pub fn members(&self) -> &ElemSet {
        &self.members
    }

    pub fn generators(&self) -> &[usize] {
        &self.gens
    }

    pub fn generator_perms(&self) -> Vec<&'g Permutation> {
        self.gens.iter().map(|&g| self.group.element(g)).collect()
    }

    /// Generators in cycle notation joined by `;`, or `()` for the trivial subgroup.
    pub fn describe(&self) -> String {
        if self.gens.is_empty() {
            return "()".to_string();
        }
        self.gens
            .iter()
            .map(|&g| self.group.element(g).to_string())
            .collect::<Vec<_>>()
            .join(";")
    }

    pub fn order(&self) -> usize {
        self.members.count()
    }

    pub fn contains(&self, elem: usize) -> bool {
        self.members.contains(elem)
    }

    pub fn elements(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter()
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.order() == self.group.order()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup<'_>) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn same_parent(&self, other: &Subgroup<'_>) -> bool {
        std::ptr::eq(self.group, other.group)
    }

    pub(crate) fn check_parent(&self, other: &Subgroup<'_>) -> Result<()> {
        if self.same_parent(other) {
            Ok(())
        } else {
            Err(GroupError::ParentMismatch)
        }
    }

    pub(crate) fn check_inside(&self, ambient: &Subgroup<'_>) -> Result<()> {
        self.check_parent(ambient)?;
        if self.is_subgroup_of(ambient) {
            Ok(())
        } else {
            Err(GroupError::NotContained)
        }
    }

    /// Adds `x` to the subgroup by right-coset extension (Dimino).
    ///
    /// The member set is always a union of right cosets of the old subgroup,
    /// so each new coset representative either lands in a known coset or
    /// opens a fresh one.
    pub(crate) fn extend(&mut self, x: usize) {
        if self.members.contains(x) {
            return;
        }
        let g = self.group;
        let old: Vec<usize> = self.members.iter().collect();
        self.gens.push(x);
        let mut reps = vec![x];
        for &h in &old {
            self.members.insert(g.mul(h, x));
        }
        let mut pos = 0;
        while pos < reps.len() {
            let r = reps[pos];
            for k in 0..self.gens.len() {
                let t = g.mul(r, self.gens[k]);
                if !self.members.contains(t) {
                    for &h in &old {
                        self.members.insert(g.mul(h, t));
                    }
                    reps.push(t);
                }
            }
            pos += 1;
        }
    }

    /// The subgroup generated by `self` and `other`.
    pub(crate) fn join_unchecked(&self, other: &Subgroup<'g>) -> Subgroup<'g> {
        let (mut big, small) = if self.order() >= other.order() {
            (self.clone(), other)
        } else {
            (other.clone(), self)
        };
        for &x in &small.gens {
            big.extend(x);
        }
        big
    }

    pub(crate) fn meet_unchecked(&self, other: &Subgroup<'g>) -> Subgroup<'g> {
        if self.is_subgroup_of(other) {
            return self.clone();
        }
        if other.is_subgroup_of(self) {
            return other.clone();
        }
        Subgroup::from_members(self.group, self.members.intersection(&other.members))
    }

    pub fn intersection(&self, other: &Subgroup<'g>) -> Result<Subgroup<'g>> {
        self.check_parent(other)?;
        Ok(self.meet_unchecked(other))
    }

    /// `self^y = y⁻¹ self y`.
    pub fn conjugate(&self, y: usize) -> Subgroup<'g> {
        let g = self.group;
        let mut members = ElemSet::new(g.order());
        for m in self.members.iter() {
            members.insert(g.conj(m, y));
        }
        Subgroup {
            group: g,
            members,
            gens: self.gens.iter().map(|&x| g.conj(x, y)).collect(),
        }
    }

    /// Whether every generator of `ambient` normalizes `self`.
    pub fn is_normalized_by(&self, ambient: &Subgroup<'_>) -> bool {
        let g = self.group;
        ambient
            .gens
            .iter()
            .all(|&y| self.gens.iter().all(|&x| self.members.contains(g.conj(x, y))))
    }

    /// `self ⊴ ambient`; false when `self` is not contained in `ambient`.
    pub fn is_normal_in(&self, ambient: &Subgroup<'_>) -> bool {
        self.same_parent(ambient) && self.is_subgroup_of(ambient) && self.is_normalized_by(ambient)
    }

    pub fn is_abelian(&self) -> bool {
        let g = self.group;
        self.gens
            .iter()
            .all(|&a| self.gens.iter().all(|&b| g.mul(a, b) == g.mul(b, a)))
    }

    /// `|self : sub|`; the caller guarantees containment.
    pub fn index_of(&self, sub: &Subgroup<'_>) -> usize {
        self.order() / sub.order()
    }

    /// A standalone permutation group with this subgroup's generators.
    pub fn to_group(&self) -> Result<FiniteGroup> {
        FiniteGroup::with_caps(
            self.group.degree,
            self.gens.iter().map(|&x| self.group.element(x).clone()).collect(),
            self.group.caps,
        )
    }
}

/// Smallest subgroup of `parent` containing the permutations in `seed`.
pub fn subgroup_generated<'g>(parent: &'g FiniteGroup, seed: &[Permutation]) -> Result<Subgroup<'g>> {
    let mut s = parent.trivial();
    for p in seed {
        let i = parent.index_of(p).ok_or(GroupError::NotInParent)?;
        s.extend(i);
    }
    Ok(s)
}

/// Smallest subgroup of `parent` containing the given element indices.
pub fn subgroup_from_indices<'g>(parent: &'g FiniteGroup, seed: &[usize]) -> Result<Subgroup<'g>> {
    if seed.iter().any(|&i| i >= parent.order()) {
        return Err(GroupError::NotInParent);
    }
    Ok(Subgroup::from_elems(parent, seed.iter().copied()))
}

/// Smallest subgroup of `ambient` containing `x` and normalized by `ambient`.
pub fn normal_closure<'g>(ambient: &Subgroup<'g>, x: &Subgroup<'g>) -> Result<Subgroup<'g>> {
    x.check_inside(ambient)?;
    Ok(normal_closure_unchecked(ambient, x))
}

pub(crate) fn normal_closure_unchecked<'g>(ambient: &Subgroup<'g>, x: &Subgroup<'g>) -> Subgroup<'g> {
    let g = x.group;
    let mut s = x.clone();
    let mut k = 0;
    // Every generator ever added is conjugated by every ambient generator.
    while k < s.gens.len() {
        let a = s.gens[k];
        for &y in &ambient.gens {
            let c = g.conj(a, y);
            s.extend(c);
        }
        k += 1;
    }
    s
}

/// Intersection of all `ambient`-conjugates of `x`.
pub fn normal_core<'g>(ambient: &Subgroup<'g>, x: &Subgroup<'g>) -> Result<Subgroup<'g>> {
    x.check_inside(ambient)?;
    Ok(normal_core_unchecked(ambient, x))
}

pub(crate) fn normal_core_unchecked<'g>(ambient: &Subgroup<'g>, x: &Subgroup<'g>) -> Subgroup<'g> {
    if x.is_normalized_by(ambient) {
        return x.clone();
    }
    let mut core = x.members.clone();
    let mut seen: HashSet<ElemSet> = HashSet::from([x.members.clone()]);
    let mut queue = VecDeque::from([x.clone()]);
    while let Some(c) = queue.pop_front() {
        for &y in &ambient.gens {
            let d = c.conjugate(y);
            if seen.insert(d.members.clone()) {
                core.intersect_with(&d.members);
                queue.push_back(d);
            }
        }
    }
    Subgroup::from_members(x.group, core)
}

/// The subgroup generated by all commutators of members of `x`.
pub fn derived_subgroup<'g>(x: &Subgroup<'g>) -> Subgroup<'g> {
    let g = x.group;
    let mut seed = g.trivial();
    for &a in &x.gens {
        for &b in &x.gens {
            seed.extend(g.commutator(a, b));
        }
    }
    normal_closure_unchecked(x, &seed)
}

/// Conjugacy classes of `x`, each sorted, ordered by smallest member.
pub fn conjugacy_classes(x: &Subgroup<'_>) -> Vec<Vec<usize>> {
    let g = x.group;
    let mut seen = ElemSet::new(g.order());
    let mut classes = Vec::new();
    for e in x.members.iter() {
        if seen.contains(e) {
            continue;
        }
        let mut class = vec![e];
        seen.insert(e);
        let mut k = 0;
        while k < class.len() {
            for &y in &x.gens {
                let c = g.conj(class[k], y);
                if seen.insert(c) {
                    class.push(c);
                }
            }
            k += 1;
        }
        class.sort_unstable();
        classes.push(class);
    }
    classes
}

/// All normal subgroups of `x`, in canonical order.
///
/// Normal closures of single elements (one per conjugacy class) are closed
/// under pairwise products; every normal subgroup is the product of the
/// normal closures of its elements.
pub fn normal_subgroups<'g>(x: &Subgroup<'g>) -> Vec<Subgroup<'g>> {
    let g = x.group;
    let mut base: Vec<Subgroup<'g>> = Vec::new();
    let mut index: HashMap<ElemSet, usize> = HashMap::new();
    let mut nodes: Vec<Subgroup<'g>> = Vec::new();
    let mut push = |s: Subgroup<'g>, nodes: &mut Vec<Subgroup<'g>>| {
        if !index.contains_key(&s.members) {
            index.insert(s.members.clone(), nodes.len());
            nodes.push(s);
            true
        } else {
            false
        }
    };
    push(g.trivial(), &mut nodes);
    for class in conjugacy_classes(x) {
        let rep = class[0];
        if rep == g.identity() {
            continue;
        }
        let cyclic = Subgroup::from_elems(g, [rep]);
        let n = normal_closure_unchecked(x, &cyclic);
        if push(n.clone(), &mut nodes) {
            base.push(n);
        }
    }
    let mut k = 0;
    while k < nodes.len() {
        for b in &base {
            if b.is_subgroup_of(&nodes[k]) {
                continue;
            }
            let j = nodes[k].join_unchecked(b);
            push(j, &mut nodes);
        }
        k += 1;
    }
    nodes.sort();
    nodes
}

/// Primes dividing the order of some element of `x`.
pub fn prime_set(x: &Subgroup<'_>) -> BTreeSet<u64> {
    let g = x.group;
    let mut out = BTreeSet::new();
    for e in x.members.iter() {
        out.extend(prime_divisors(g.element_order(e)));
    }
    debug_assert_eq!(out, prime_divisors(x.order() as u64));
    out
}

/// `x / n` realized as the action of `x` on the right cosets of `n`.
pub struct Quotient<'g> {
    source: Subgroup<'g>,
    coset_of: Vec<u32>,
    reps: Vec<usize>,
    group: FiniteGroup,
}

impl<'g> Quotient<'g> {
    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn into_group(self) -> FiniteGroup {
        self.group
    }

    pub fn source(&self) -> &Subgroup<'g> {
        &self.source
    }

    /// The coset-action permutation of a member of the source subgroup.
    pub fn action_of(&self, elem: usize) -> Permutation {
        let g = self.source.group;
        let images = self.reps.iter().map(|&r| self.coset_of[g.mul(r, elem)]).collect();
        Permutation::from_images(images).expect("coset action is a bijection")
    }

    /// Index of the image of `elem` in the quotient group.
    pub fn project(&self, elem: usize) -> usize {
        self.group
            .index_of(&self.action_of(elem))
            .expect("image lies in the quotient")
    }

    /// Image `sub·N/N` of a subgroup of the source.
    pub fn image(&self, sub: &Subgroup<'_>) -> Subgroup<'_> {
        Subgroup::from_elems(&self.group, sub.gens.iter().map(|&x| self.project(x)))
    }
}

pub fn quotient<'g>(x: &Subgroup<'g>, n: &Subgroup<'g>) -> Result<Quotient<'g>> {
    n.check_inside(x)?;
    if !n.is_normalized_by(x) {
        return Err(GroupError::NotNormal);
    }
    let g = x.group;
    const UNSET: u32 = u32::MAX;
    let mut coset_of = vec![UNSET; g.order()];
    let mut reps = Vec::new();
    for e in x.members.iter() {
        if coset_of[e] != UNSET {
            continue;
        }
        let id = reps.len() as u32;
        reps.push(e);
        for m in n.members.iter() {
            coset_of[g.mul(m, e)] = id;
        }
    }
    let degree = reps.len();
    let gens = x
        .gens
        .iter()
        .map(|&s| {
            let images = reps.iter().map(|&r| coset_of[g.mul(r, s)]).collect();
            Permutation::from_images(images).expect("coset action is a bijection")
        })
        .collect();
    let group = FiniteGroup::with_caps(degree, gens, g.caps)?;
    debug_assert_eq!(group.order() * n.order(), x.order());
    Ok(Quotient {
        source: x.clone(),
        coset_of,
        reps,
        group,
    })
}

/// `x / n` as a permutation group of degree `|x : n|`.
pub fn quotient_group(x: &Subgroup<'_>, n: &Subgroup<'_>) -> Result<FiniteGroup> {
    quotient(x, n).map(Quotient::into_group)
}
