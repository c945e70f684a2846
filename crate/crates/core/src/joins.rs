//! Joins, permutability, permutizers and orthogonality.

use crate::error::{GroupError, Result};
use crate::group::{derived_subgroup, Subgroup};
use crate::lattice::SubgroupLattice;
use crate::primes::prime_divisors;

/// `⟨x, y⟩`.
pub fn join<'g>(x: &Subgroup<'g>, y: &Subgroup<'g>) -> Result<Subgroup<'g>> {
    x.check_parent(y)?;
    Ok(x.join_unchecked(y))
}

/// Whether the product set `xy` is a subgroup.
pub fn permutes(x: &Subgroup<'_>, y: &Subgroup<'_>) -> Result<bool> {
    x.check_parent(y)?;
    Ok(permutes_unchecked(x, y))
}

fn permutes_unchecked(x: &Subgroup<'_>, y: &Subgroup<'_>) -> bool {
    if x.is_subgroup_of(y) || y.is_subgroup_of(x) {
        return true;
    }
    let meet = x.members().intersection(y.members()).count();
    let mut joined = x.clone();
    for g in y.generators() {
        joined.extend(*g);
        if joined.order() * meet > x.order() * y.order() {
            return false;
        }
    }
    joined.order() * meet == x.order() * y.order()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PermutizerResult<'g> {
    UniqueMaximum(Subgroup<'g>),
    /// The maximal subgroups of `H` permuting with `K`, in canonical order.
    NoUniqueMaximum(Vec<Subgroup<'g>>),
}

/// Largest subgroup of `h` permuting with `k`, if one exists.
pub fn permutizer<'g>(h: &Subgroup<'g>, k: &Subgroup<'g>) -> Result<PermutizerResult<'g>> {
    h.check_parent(k)?;
    let lattice = SubgroupLattice::of(h, h.group().caps().lattice)?;
    permutizer_in(&lattice, h, k)
}

/// [`permutizer`] using a precomputed lattice that contains every subgroup of `h`.
pub fn permutizer_in<'g>(
    lattice: &SubgroupLattice<'g>,
    h: &Subgroup<'g>,
    k: &Subgroup<'g>,
) -> Result<PermutizerResult<'g>> {
    h.check_parent(k)?;
    let top = lattice.node(lattice.top());
    h.check_parent(top)?;
    if !h.is_subgroup_of(top) {
        return Err(GroupError::NotContained);
    }
    let permuting: Vec<&Subgroup<'g>> = lattice
        .nodes()
        .iter()
        .filter(|l| l.is_subgroup_of(h) && permutes_unchecked(l, k))
        .collect();
    let joined = permuting
        .iter()
        .fold(h.group().trivial(), |acc, l| acc.join_unchecked(l));
    if permutes_unchecked(&joined, k) {
        return Ok(PermutizerResult::UniqueMaximum(joined));
    }
    let maximal = permuting
        .iter()
        .filter(|l| !permuting.iter().any(|m| m.order() > l.order() && l.is_subgroup_of(m)))
        .map(|l| (*l).clone())
        .collect();
    Ok(PermutizerResult::NoUniqueMaximum(maximal))
}

/// `H/H' ⊗ K/K'` is trivial, i.e. the abelianizations share no prime.
pub fn is_orthogonal(h: &Subgroup<'_>, k: &Subgroup<'_>) -> bool {
    let ab = |x: &Subgroup<'_>| prime_divisors(x.index_of(&derived_subgroup(x)) as u64);
    ab(h).is_disjoint(&ab(k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{quotient_group, subgroup_generated, FiniteGroup};
    use crate::perm::Permutation;
    use std::collections::BTreeMap;

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

    #[test]
    fn wreath_join_and_permutability() {
        let g = group(6, &["(1 2)", "(1 3 5)(2 4 6)"]);
        let base = sub(&g, &["(1 2)"]);
        let top = sub(&g, &["(1 3 5)(2 4 6)"]);
        assert_eq!(join(&base, &top).unwrap().order(), 24);
        assert!(!permutes(&base, &top).unwrap());
        assert!(!permutes(&top, &base).unwrap());
        assert_eq!(
            permutizer(&base, &top).unwrap(),
            PermutizerResult::UniqueMaximum(g.trivial())
        );
        let lattice = crate::lattice::all_subgroups(&g).unwrap();
        assert_eq!(
            permutizer_in(&lattice, &base, &top).unwrap(),
            PermutizerResult::UniqueMaximum(g.trivial())
        );
    }

    #[test]
    fn trivial_cases() {
        let s4 = group(4, &["(1 2)", "(1 2 3 4)"]);
        let w = s4.whole();
        let t = sub(&s4, &["(1 2)"]);
        assert_eq!(join(&w, &t).unwrap(), w);
        assert_eq!(join(&t, &s4.trivial()).unwrap(), t);
        assert!(permutes(&t, &t).unwrap());
        let v4 = sub(&s4, &["(1 2)(3 4)", "(1 3)(2 4)"]);
        assert!(permutes(&v4, &t).unwrap());
        assert_eq!(permutizer(&t, &w).unwrap(), PermutizerResult::UniqueMaximum(t.clone()));
        assert_eq!(
            permutizer(&s4.trivial(), &t).unwrap(),
            PermutizerResult::UniqueMaximum(s4.trivial())
        );
        let other = group(3, &["(1 2 3)"]);
        assert!(join(&t, &other.whole()).is_err());
    }

    #[test]
    fn orthogonality_examples() {
        let g = group(5, &["(1 2)", "(3 4 5)"]);
        let c2 = sub(&g, &["(1 2)"]);
        let c3 = sub(&g, &["(3 4 5)"]);
        assert!(is_orthogonal(&c2, &c3));
        assert!(!is_orthogonal(&c2, &c2));
        let a5 = group(5, &["(1 2 3 4 5)", "(1 2 3)"]);
        let w = a5.whole();
        for k in [a5.trivial(), sub(&a5, &["(1 2)(3 4)"]), w.clone()] {
            assert!(is_orthogonal(&w, &k));
        }
    }

    /// Elementary divisors `p^e` of an abelian group, from the counts of
    /// elements killed by each `p^k`.
    fn elementary_divisors(g: &FiniteGroup) -> Vec<u64> {
        let orders = g.order_statistics();
        let mut out = Vec::new();
        for p in prime_divisors(g.order() as u64) {
            // log_p |A[p^k]| for k = 0, 1, ...
            let mut logs = vec![0u32];
            let mut k = 1;
            loop {
                let pk = p.pow(k);
                let count = orders.iter().filter(|&&o| pk % o == 0).count() as u64;
                let l = count.ilog(p);
                if l == *logs.last().unwrap() {
                    break;
                }
                logs.push(l);
                k += 1;
            }
            // Number of cyclic factors of exponent >= k is logs[k] - logs[k-1].
            let at_least: Vec<u32> = logs.windows(2).map(|w| w[1] - w[0]).collect();
            for e in 1..=at_least.len() {
                let exactly = at_least[e - 1] - at_least.get(e).copied().unwrap_or(0);
                for _ in 0..exactly {
                    out.push(p.pow(e as u32));
                }
            }
        }
        out
    }

    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }

    fn tensor_order(a: &FiniteGroup, b: &FiniteGroup) -> u64 {
        let (da, db) = (elementary_divisors(a), elementary_divisors(b));
        da.iter().flat_map(|x| db.iter().map(move |y| gcd(*x, *y))).product()
    }

    /// Direct product of cyclic groups on consecutive points.
    fn abelian(factors: &[usize]) -> FiniteGroup {
        let degree: usize = factors.iter().sum::<usize>().max(1);
        let mut gens = Vec::new();
        let mut start = 0;
        for &n in factors {
            gens.push(Permutation::from_cycles(degree, &[(start..start + n).collect()]).unwrap());
            start += n;
        }
        FiniteGroup::new(degree, gens).unwrap()
    }

    #[test]
    fn elementary_divisor_oracle() {
        let g = abelian(&[2, 4, 4, 3]);
        let mut d = elementary_divisors(&g);
        d.sort();
        assert_eq!(d, vec![2, 3, 4, 4]);
        assert_eq!(elementary_divisors(&abelian(&[])), Vec::<u64>::new());
    }

    #[test]
    fn orthogonality_matches_tensor_oracle() {
        let shapes: Vec<Vec<usize>> = vec![
            vec![],
            vec![2],
            vec![3],
            vec![4],
            vec![5],
            vec![2, 2],
            vec![2, 3],
            vec![3, 3],
            vec![4, 2],
            vec![8],
            vec![2, 2, 2],
            vec![9],
            vec![7],
            vec![4, 4],
            vec![2, 2, 2, 2],
            vec![8, 8],
            vec![4, 4, 4],
            vec![5, 3, 4],
        ];
        let groups: Vec<FiniteGroup> = shapes.iter().map(|s| abelian(s)).collect();
        let mut seen = BTreeMap::new();
        for (i, a) in groups.iter().enumerate() {
            assert!(a.order() <= 64);
            for (j, b) in groups.iter().enumerate() {
                // Place both in one parent so `is_orthogonal` sees them as subgroups.
                let parent = direct(a, b);
                let (ha, hb) = halves(&parent, a.degree());
                let expected = tensor_order(a, b) == 1;
                assert_eq!(is_orthogonal(&ha, &hb), expected, "{:?} vs {:?}", shapes[i], shapes[j]);
                *seen.entry(expected).or_insert(0) += 1;
            }
        }
        assert!(seen[&true] > 0 && seen[&false] > 0);
    }

    #[test]
    fn orthogonality_through_abelianization() {
        // S3 x C4: the abelianization of S3 is C2, which meets C4.
        let g = group(7, &["(1 2)", "(1 2 3)", "(4 5 6 7)"]);
        let s3 = sub(&g, &["(1 2)", "(1 2 3)"]);
        let c4 = sub(&g, &["(4 5 6 7)"]);
        let a3 = sub(&g, &["(1 2 3)"]);
        let ab = quotient_group(&s3, &derived_subgroup(&s3)).unwrap();
        let c4g = c4.to_group().unwrap();
        assert_eq!(tensor_order(&ab, &c4g), 2);
        assert!(!is_orthogonal(&s3, &c4));
        assert!(is_orthogonal(&a3, &c4));
    }

    fn direct(a: &FiniteGroup, b: &FiniteGroup) -> FiniteGroup {
        let degree = a.degree() + b.degree();
        let mut gens: Vec<Permutation> = a.generators().iter().map(|p| p.shifted(0, degree)).collect();
        gens.extend(b.generators().iter().map(|p| p.shifted(a.degree(), degree)));
        FiniteGroup::new(degree, gens).unwrap()
    }

    fn halves(g: &FiniteGroup, split: usize) -> (Subgroup<'_>, Subgroup<'_>) {
        let (left, right): (Vec<Permutation>, Vec<Permutation>) = g
            .generators()
            .iter()
            .cloned()
            .partition(|p| (0..split).any(|i| p.apply(i) != i));
        (
            subgroup_generated(g, &left).unwrap(),
            subgroup_generated(g, &right).unwrap(),
        )
    }
}
