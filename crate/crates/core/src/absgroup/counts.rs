use std::collections::BTreeMap;

use crate::numt;

use super::{FiniteAbelianGroup, GroupError};

/// Recovers a finite abelian group from the counts `N(d) = #{x : x^d = 1}`.
///
/// The largest key is taken as the exponent; counts are needed at least
/// at every prime power dividing it. For a prime `p`, the ratio
/// `N(p^k) / N(p^{k-1}) = p^{r_k}` where `r_k` is the number of cyclic
/// `p`-factors of order at least `p^k`, which pins down the `p`-part.
/// Every supplied count is checked against the recovered group.
pub fn group_from_order_counts(counts: &BTreeMap<u64, u64>) -> Result<FiniteAbelianGroup, GroupError> {
    let bad = |msg: String| GroupError::InconsistentCounts(msg);
    let get = |d: u64| {
        counts
            .get(&d)
            .copied()
            .ok_or_else(|| bad(format!("missing count for d = {d}")))
    };
    if get(1)? != 1 {
        return Err(bad("N(1) must be 1".into()));
    }
    if counts.contains_key(&0) {
        return Err(bad("d = 0 is not a valid exponent".into()));
    }
    let exponent = *counts.keys().next_back().expect("N(1) present");

    let mut parts = Vec::new();
    for &(p, v) in numt::factorize(exponent)?.pairs() {
        let mut prev_rank = u32::MAX;
        let mut ranks = Vec::with_capacity(v as usize);
        for k in 1..=v {
            let hi = get(p.pow(k))?;
            let lo = get(p.pow(k - 1))?;
            if lo == 0 || hi % lo != 0 {
                return Err(bad(format!("N({}) does not divide N({})", p.pow(k - 1), p.pow(k))));
            }
            let Some(r) = log_exact(hi / lo, p) else {
                return Err(bad(format!("N({})/N({}) is not a power of {p}", p.pow(k), p.pow(k - 1))));
            };
            if r > prev_rank {
                return Err(bad(format!("{p}-ranks increase at level {k}")));
            }
            prev_rank = r;
            ranks.push(r);
        }
        ranks.push(0);
        for k in 1..=v {
            let exactly_k = ranks[k as usize - 1] - ranks[k as usize];
            parts.extend(std::iter::repeat((p, k)).take(exactly_k as usize));
        }
    }
    let group = FiniteAbelianGroup::from_prime_powers(parts);
    for (&d, &n) in counts {
        if group.count_d_torsion(d) != n {
            return Err(bad(format!("N({d}) = {n} disagrees with recovered {group}")));
        }
    }
    Ok(group)
}

/// `Some(r)` when `x = p^r` (including `x = 1`, `r = 0`).
fn log_exact(mut x: u64, p: u64) -> Option<u32> {
    let mut r = 0;
    while x % p == 0 {
        x /= p;
        r += 1;
    }
    (x == 1).then_some(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::absgroup::groups_up_to;

    fn counts(pairs: &[(u64, u64)]) -> BTreeMap<u64, u64> {
        pairs.iter().copied().collect()
    }

    /// Builds every element of `∏ C_{n_i}` as a tuple, computes its order
    /// directly and tallies `#{x : x^d = 1}` for each divisor `d` of the
    /// exponent.
    fn enumerate_and_count(orders: &[u64]) -> BTreeMap<u64, u64> {
        let mut elems: Vec<Vec<u64>> = vec![vec![]];
        for &n in orders {
            elems = elems
                .into_iter()
                .flat_map(|e| {
                    (0..n).map(move |x| {
                        let mut e = e.clone();
                        e.push(x);
                        e
                    })
                })
                .collect();
        }
        let order_of = |e: &[u64]| -> u64 {
            let mut k = 1u64;
            loop {
                if e.iter().zip(orders).all(|(&x, &n)| (x * k) % n == 0) {
                    return k;
                }
                k += 1;
            }
        };
        let elem_orders: Vec<u64> = elems.iter().map(|e| order_of(e)).collect();
        let exponent = elem_orders.iter().copied().max().unwrap_or(1);
        numt::divisors(exponent)
            .into_iter()
            .map(|d| (d, elem_orders.iter().filter(|&&o| d % o == 0).count() as u64))
            .collect()
    }

    #[test]
    fn examples() {
        let g = group_from_order_counts(&counts(&[(1, 1), (2, 4), (4, 8)])).unwrap();
        assert_eq!(g, FiniteAbelianGroup::from_cyclic(&[2, 4]).unwrap());
        let g = group_from_order_counts(&counts(&[(1, 1)])).unwrap();
        assert!(g.is_trivial());
        let g = group_from_order_counts(&counts(&[(1, 1), (3, 9), (9, 27)])).unwrap();
        assert_eq!(g, FiniteAbelianGroup::from_cyclic(&[9, 3]).unwrap());
    }

    #[test]
    fn inconsistent_counts() {
        let err = |c: &[(u64, u64)]| group_from_order_counts(&counts(c)).is_err();
        assert!(err(&[(1, 1), (2, 3)]));
        assert!(err(&[(1, 2)]));
        assert!(err(&[(1, 1), (3, 3), (9, 27)])); // rank would grow
        assert!(err(&[(1, 1), (4, 4)])); // N(2) missing
        assert!(err(&[(1, 1), (2, 2), (3, 3), (6, 5)])); // N(6) ≠ N(2)N(3)
    }

    #[test]
    fn recovers_every_group_up_to_128() {
        for g in groups_up_to(128) {
            let c = enumerate_and_count(&g.invariant_factors());
            assert_eq!(group_from_order_counts(&c).unwrap(), g, "{g}");
        }
    }
}
