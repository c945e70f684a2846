use std::collections::BTreeSet;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime divisors of `n` (empty for `n <= 1`).
pub fn prime_divisors(mut n: u64) -> BTreeSet<u64> {
    let mut out = BTreeSet::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.insert(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.insert(n);
    }
    out
}

/// If `n` is a nontrivial prime power, the prime.
pub fn prime_power_base(n: u64) -> Option<u64> {
    let ps = prime_divisors(n);
    if ps.len() == 1 {
        ps.into_iter().next()
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        assert!(!is_prime(0) && !is_prime(1) && is_prime(2) && is_prime(97) && !is_prime(91));
        assert_eq!(prime_divisors(1), BTreeSet::new());
        assert_eq!(prime_divisors(24), BTreeSet::from([2, 3]));
        assert_eq!(prime_divisors(30), BTreeSet::from([2, 3, 5]));
        assert_eq!(prime_power_base(8), Some(2));
        assert_eq!(prime_power_base(6), None);
        assert_eq!(prime_power_base(1), None);
    }
}
