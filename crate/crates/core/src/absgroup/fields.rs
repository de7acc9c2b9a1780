use std::collections::{BTreeMap, HashSet};

use crate::numt;

use super::standard::g_of_t;
use super::FiniteAbelianGroup;

type Multiset = BTreeMap<(u64, u32), usize>;

/// Writes `G ≅ ∏ C_{q_i - 1}` for prime powers `q_i ≥ 3`, if possible.
///
/// Returns the `q_i` ascending; `Some(vec![])` for the trivial group.
/// The search repeatedly covers the largest remaining primary part by
/// some `C_{q-1}` whose primary parts all fit in what is left, trying
/// larger `q` first.
pub fn field_units_partition(g: &FiniteAbelianGroup) -> Option<Vec<u64>> {
    let mut dead = HashSet::new();
    let mut out = cover(g.multiset(), &mut dead)?;
    out.sort_unstable();
    Some(out)
}

fn order_of(m: &Multiset) -> u64 {
    m.iter()
        .map(|(&(p, k), &c)| p.pow(k).pow(c as u32))
        .product()
}

fn cover(rem: Multiset, dead: &mut HashSet<Vec<((u64, u32), usize)>>) -> Option<Vec<u64>> {
    let Some((&(p, k), _)) = rem.iter().max_by_key(|(&(p, k), _)| p.pow(k)) else {
        return Some(Vec::new());
    };
    let key: Vec<_> = rem.iter().map(|(&a, &b)| (a, b)).collect();
    if dead.contains(&key) {
        return None;
    }
    let part = p.pow(k);
    let budget = order_of(&rem);
    // q - 1 = part · j with gcd(j, p) = 1 and j built from what remains
    let mut j = budget / part;
    while j >= 1 {
        if j % p != 0 {
            if let Some(q) = (part * j).checked_add(1) {
                if numt::is_prime_power(q).is_some() {
                    if let Some(next) = take(&rem, part * j) {
                        if let Some(mut rest) = cover(next, dead) {
                            rest.push(q);
                            return Some(rest);
                        }
                    }
                }
            }
        }
        j -= 1;
    }
    dead.insert(key);
    None
}

/// Removes the primary parts of `C_n` from `rem`, if they are all present.
fn take(rem: &Multiset, n: u64) -> Option<Multiset> {
    let mut next = rem.clone();
    for &(p, k) in numt::factorize(n).ok()?.pairs() {
        let c = next.get_mut(&(p, k))?;
        *c -= 1;
        if *c == 0 {
            next.remove(&(p, k));
        }
    }
    Some(next)
}

/// A certificate `G ≅ ∏ F_{q_i}^* × T` with `T` of even order.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct ReducedSplit {
    pub fields: Vec<u64>,
    pub t: FiniteAbelianGroup,
    pub g_t: u64,
}

/// Searches all ways to split `G` into a field-units product and an
/// even-order `T` with `g(T) ≤ g`.
///
/// Among valid splits the one with the smallest `g(T)` wins, then the
/// fewest fields, then the lexicographically smallest field list, then
/// the smallest `T`.
pub fn reduced_split_search(g: &FiniteAbelianGroup, max_rank: u64) -> Option<ReducedSplit> {
    let kinds: Vec<((u64, u32), usize)> = g.multiset().into_iter().collect();
    let mut best: Option<ReducedSplit> = None;
    let mut choice = vec![0usize; kinds.len()];
    loop {
        let t = FiniteAbelianGroup::from_prime_powers(
            kinds
                .iter()
                .zip(&choice)
                .flat_map(|(&(pk, _), &c)| std::iter::repeat(pk).take(c)),
        );
        if let Ok(g_t) = g_of_t(&t) {
            if g_t <= max_rank {
                let rest = FiniteAbelianGroup::from_prime_powers(
                    kinds
                        .iter()
                        .zip(&choice)
                        .flat_map(|(&(pk, n), &c)| std::iter::repeat(pk).take(n - c)),
                );
                if let Some(fields) = field_units_partition(&rest) {
                    let cand = ReducedSplit { fields, t, g_t };
                    let better = match &best {
                        None => true,
                        Some(b) => split_key(&cand) < split_key(b),
                    };
                    if better {
                        best = Some(cand);
                    }
                }
            }
        }
        // odometer over sub-multisets
        let mut i = 0;
        loop {
            if i == kinds.len() {
                return best;
            }
            if choice[i] < kinds[i].1 {
                choice[i] += 1;
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

fn split_key(s: &ReducedSplit) -> (u64, usize, &[u64], &FiniteAbelianGroup) {
    (s.g_t, s.fields.len(), &s.fields, &s.t)
}

/// Least `g` for which [`reduced_split_search`] succeeds.
pub fn reduced_min_rank(g: &FiniteAbelianGroup) -> Option<u64> {
    reduced_split_search(g, u64::MAX).map(|s| s.g_t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::absgroup::groups_up_to;

    fn g(orders: &[u64]) -> FiniteAbelianGroup {
        FiniteAbelianGroup::from_cyclic(orders).unwrap()
    }

    fn recombine(qs: &[u64]) -> FiniteAbelianGroup {
        let orders: Vec<u64> = qs.iter().map(|q| q - 1).collect();
        g(&orders)
    }

    #[test]
    fn partition_examples() {
        assert_eq!(field_units_partition(&g(&[6])), Some(vec![7]));
        assert_eq!(field_units_partition(&g(&[5])), None);
        assert_eq!(field_units_partition(&g(&[])), Some(vec![]));
        // C2 × C4 = F3* × F5*
        let qs = field_units_partition(&g(&[2, 4])).unwrap();
        assert_eq!(recombine(&qs), g(&[2, 4]));
        // C2 × C2 × C2 = three copies of F3*
        assert_eq!(field_units_partition(&g(&[2, 2, 2])), Some(vec![3, 3, 3]));
    }

    #[test]
    fn partition_is_a_certificate() {
        for grp in groups_up_to(300) {
            if let Some(qs) = field_units_partition(&grp) {
                assert!(qs.iter().all(|&q| q >= 3 && numt::is_prime_power(q).is_some()));
                assert_eq!(recombine(&qs), grp, "{grp}");
            }
        }
    }

    #[test]
    fn partition_agrees_with_exhaustive_products() {
        // every product of at most three F_q^* with q ≤ 64 must be found
        let qs: Vec<u64> = (3..=64).filter(|&q| numt::is_prime_power(q).is_some()).collect();
        for (i, &a) in qs.iter().enumerate() {
            for &b in &qs[i..] {
                let grp = recombine(&[a, b]);
                assert!(field_units_partition(&grp).is_some(), "{grp}");
            }
        }
        assert!(field_units_partition(&recombine(&[7, 9, 11])).is_some());
    }

    #[test]
    fn split_examples() {
        let s = reduced_split_search(&g(&[2, 2, 3]), 0).unwrap();
        assert_eq!(s.g_t, 0);
        assert_eq!(s.t.product(&recombine(&s.fields)), g(&[2, 2, 3]));
        assert!(s.t.is_even());

        assert_eq!(reduced_split_search(&g(&[5]), 0), None);
        assert_eq!(reduced_split_search(&g(&[5]), 100), None);

        let s = reduced_split_search(&g(&[2]), 0).unwrap();
        assert!(s.fields.is_empty());
        assert_eq!(s.t, g(&[2]));
    }

    #[test]
    fn split_prefers_small_g() {
        // torsion-free alone needs g(C2 × C8 × C5) = 2, but C40 = F41^*
        let s = reduced_split_search(&g(&[2, 8, 5]), 10).unwrap();
        assert_eq!(s.g_t, 0);
        assert_eq!(s.t, g(&[2]));
        assert_eq!(s.fields, vec![41]);
        // C8 × C5 × C3: T must carry the 2-part; T = C8, C15 = F16^*
        assert_eq!(reduced_min_rank(&g(&[8, 5, 3])), Some(1));
        assert_eq!(reduced_min_rank(&g(&[3])), None);
    }
}
