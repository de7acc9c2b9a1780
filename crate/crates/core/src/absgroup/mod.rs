//! Finite and finitely generated abelian groups.
//!
//! A finite abelian group is stored in primary form: the multiset of
//! prime powers `p^k > 1` of its cyclic primary factors. Two groups are
//! isomorphic exactly when these multisets agree, so derived `Eq` is
//! isomorphism.

mod counts;
mod fields;
mod parse;
mod standard;

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use thiserror::Error;

use crate::numt::{self, NumtError};

pub use counts::group_from_order_counts;
pub use fields::{field_units_partition, reduced_min_rank, reduced_split_search, ReducedSplit};
pub use parse::parse_group;
pub use standard::{g_of_t, is_zero_gt_family, standard_decomposition, StandardDecomposition};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("cyclic factor C0 is not a finite group")]
    ZeroOrder,
    #[error("more than one free term")]
    MultipleFreeTerms,
    #[error("group order does not fit in 64 bits")]
    Overflow,
    #[error("group has odd order {0}")]
    OddOrder(u64),
    #[error("inconsistent order counts: {0}")]
    InconsistentCounts(String),
    #[error(transparent)]
    Numt(#[from] NumtError),
}

/// A finite abelian group as a sorted multiset of prime powers.
///
/// Factors are stored as `(p, k)` for `C_{p^k}`, sorted by prime and then
/// exponent.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FiniteAbelianGroup {
    parts: Vec<(u64, u32)>,
}

impl FiniteAbelianGroup {
    pub fn trivial() -> Self {
        Self::default()
    }

    /// Builds the group from `(prime, exponent)` pairs; pairs with exponent
    /// 0 are dropped.
    pub fn from_prime_powers(parts: impl IntoIterator<Item = (u64, u32)>) -> Self {
        let mut parts: Vec<(u64, u32)> = parts.into_iter().filter(|&(_, k)| k > 0).collect();
        debug_assert!(parts.iter().all(|&(p, _)| numt::is_prime(p)));
        parts.sort_unstable();
        FiniteAbelianGroup { parts }
    }

    /// `C_{n_1} × … × C_{n_r}`, each factor split into primary parts.
    pub fn from_cyclic(orders: &[u64]) -> Result<Self, GroupError> {
        let mut parts = Vec::new();
        let mut order: u64 = 1;
        for &n in orders {
            if n == 0 {
                return Err(GroupError::ZeroOrder);
            }
            order = order.checked_mul(n).ok_or(GroupError::Overflow)?;
            parts.extend_from_slice(numt::factorize(n)?.pairs());
        }
        Ok(Self::from_prime_powers(parts))
    }

    /// `C_n`.
    pub fn cyclic(n: u64) -> Result<Self, GroupError> {
        Self::from_cyclic(&[n])
    }

    /// `(p, k)` pairs, sorted.
    pub fn parts(&self) -> &[(u64, u32)] {
        &self.parts
    }

    /// The prime powers `p^k`, in canonical order.
    pub fn primary_parts(&self) -> Vec<u64> {
        self.parts.iter().map(|&(p, k)| p.pow(k)).collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.parts.is_empty()
    }

    /// Group order (saturating at `u64::MAX`).
    pub fn order(&self) -> u64 {
        self.parts
            .iter()
            .fold(1u64, |acc, &(p, k)| acc.saturating_mul(p.pow(k)))
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> u64 {
        self.parts.iter().fold(1u64, |acc, &(p, k)| acc.lcm(&p.pow(k)))
    }

    pub fn is_even(&self) -> bool {
        self.parts.iter().any(|&(p, _)| p == 2)
    }

    /// Cyclic iff every prime occurs at most once.
    pub fn is_cyclic(&self) -> bool {
        self.parts.windows(2).all(|w| w[0].0 != w[1].0)
    }

    pub fn primes(&self) -> Vec<u64> {
        let mut ps: Vec<u64> = self.parts.iter().map(|&(p, _)| p).collect();
        ps.dedup();
        ps
    }

    /// Exponents of the `p`-primary factors, ascending.
    pub fn exponents_of(&self, p: u64) -> Vec<u32> {
        self.parts
            .iter()
            .filter(|&&(q, _)| q == p)
            .map(|&(_, k)| k)
            .collect()
    }

    /// Number of cyclic factors in the `p`-Sylow subgroup.
    pub fn p_rank(&self, p: u64) -> usize {
        self.parts.iter().filter(|&&(q, _)| q == p).count()
    }

    /// Invariant factors `d_1 | d_2 | … | d_r`, ascending; empty for the
    /// trivial group.
    pub fn invariant_factors(&self) -> Vec<u64> {
        let width = self
            .primes()
            .iter()
            .map(|&p| self.p_rank(p))
            .max()
            .unwrap_or(0);
        let mut factors = vec![1u64; width];
        for p in self.primes() {
            let exps = self.exponents_of(p);
            // largest exponents go to the last invariant factors
            for (slot, &k) in factors.iter_mut().rev().zip(exps.iter().rev()) {
                *slot *= p.pow(k);
            }
        }
        factors
    }

    /// Direct product.
    pub fn product(&self, other: &Self) -> Self {
        Self::from_prime_powers(self.parts.iter().chain(other.parts.iter()).copied())
    }

    /// Multiset of `(p, k)` with multiplicities.
    pub(crate) fn multiset(&self) -> BTreeMap<(u64, u32), usize> {
        let mut m = BTreeMap::new();
        for &part in &self.parts {
            *m.entry(part).or_insert(0) += 1;
        }
        m
    }

    /// Number of elements `x` with `x^d = 1`.
    pub fn count_d_torsion(&self, d: u64) -> u64 {
        self.parts
            .iter()
            .map(|&(p, k)| p.pow(k).gcd(&d))
            .product()
    }
}

/// Invariant-factor form, e.g. `C2 x C12`; the trivial group is `C1`.
impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let inv = self.invariant_factors();
        if inv.is_empty() {
            return write!(f, "C1");
        }
        for (i, d) in inv.iter().enumerate() {
            if i > 0 {
                write!(f, " x ")?;
            }
            write!(f, "C{d}")?;
        }
        Ok(())
    }
}

/// `T × Z^g`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct FGAbelianGroup {
    pub torsion: FiniteAbelianGroup,
    pub free_rank: u64,
}

impl FGAbelianGroup {
    pub fn new(torsion: FiniteAbelianGroup, free_rank: u64) -> Self {
        FGAbelianGroup { torsion, free_rank }
    }
}

impl fmt::Display for FGAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.torsion.is_trivial(), self.free_rank) {
            (_, 0) => write!(f, "{}", self.torsion),
            (true, g) => write!(f, "Z^{g}"),
            (false, g) => write!(f, "{} x Z^{g}", self.torsion),
        }
    }
}

impl std::str::FromStr for FGAbelianGroup {
    type Err = GroupError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_group(s)
    }
}

impl serde::Serialize for FGAbelianGroup {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for FGAbelianGroup {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse_group(&s).map_err(serde::de::Error::custom)
    }
}

impl serde::Serialize for FiniteAbelianGroup {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for FiniteAbelianGroup {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        let g = parse_group(&s).map_err(serde::de::Error::custom)?;
        if g.free_rank != 0 {
            return Err(serde::de::Error::custom("expected a finite group"));
        }
        Ok(g.torsion)
    }
}

/// All finite abelian groups of order exactly `n`, in a fixed order
/// (lexicographic in the primary parts).
pub fn groups_of_order(n: u64) -> Vec<FiniteAbelianGroup> {
    let fact = numt::factorize(n).expect("positive order");
    let mut out = vec![FiniteAbelianGroup::trivial()];
    for &(p, e) in fact.pairs() {
        let mut next = Vec::new();
        for partition in partitions(e) {
            for g in &out {
                let extra = FiniteAbelianGroup::from_prime_powers(partition.iter().map(|&k| (p, k)));
                next.push(g.product(&extra));
            }
        }
        out = next;
    }
    out.sort();
    out
}

/// Integer partitions of `n`, each as a non-increasing list.
fn partitions(n: u32) -> Vec<Vec<u32>> {
    fn go(n: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for k in (1..=n.min(max)).rev() {
            prefix.push(k);
            go(n - k, k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// All finite abelian groups of order `<= max_order`, by order then
/// canonical form.
pub fn groups_up_to(max_order: u64) -> Vec<FiniteAbelianGroup> {
    (1..=max_order).flat_map(groups_of_order).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(orders: &[u64]) -> FiniteAbelianGroup {
        FiniteAbelianGroup::from_cyclic(orders).unwrap()
    }

    #[test]
    fn primary_splitting() {
        assert_eq!(g(&[4, 6]).primary_parts(), vec![2, 4, 3]);
        assert_eq!(g(&[6, 4]), g(&[2, 3, 4]));
        assert!(g(&[1]).is_trivial());
        assert_eq!(g(&[12, 18]).order(), 216);
        assert_eq!(g(&[12, 18]).exponent(), 36);
    }

    #[test]
    fn invariant_factor_display() {
        assert_eq!(g(&[3, 4]).to_string(), "C12");
        assert_eq!(g(&[6, 4]).to_string(), "C2 x C12");
        assert_eq!(g(&[2, 8, 5]).to_string(), "C2 x C40");
        assert_eq!(g(&[]).to_string(), "C1");
        assert_eq!(g(&[6, 6, 3]).invariant_factors(), vec![3, 6, 6]);
    }

    #[test]
    fn fg_display() {
        let t = g(&[2]);
        assert_eq!(FGAbelianGroup::new(t.clone(), 3).to_string(), "C2 x Z^3");
        assert_eq!(FGAbelianGroup::new(t, 0).to_string(), "C2");
        assert_eq!(FGAbelianGroup::new(g(&[]), 2).to_string(), "Z^2");
        assert_eq!(FGAbelianGroup::new(g(&[]), 0).to_string(), "C1");
    }

    #[test]
    fn cyclicity() {
        assert!(g(&[6]).is_cyclic());
        assert!(g(&[2, 3]).is_cyclic());
        assert!(!g(&[2, 2]).is_cyclic());
        assert!(g(&[]).is_cyclic());
    }

    #[test]
    fn enumerating_groups_by_order() {
        // number of abelian groups of order n for n = 1..16
        let counts: Vec<usize> = (1..=16).map(|n| groups_of_order(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 1, 1, 1, 3, 2, 1, 1, 2, 1, 1, 1, 5]);
        for n in 1..=64 {
            for grp in groups_of_order(n) {
                assert_eq!(grp.order(), n);
            }
        }
    }

    #[test]
    fn d_torsion_counts() {
        let grp = g(&[2, 4]);
        assert_eq!(grp.count_d_torsion(1), 1);
        assert_eq!(grp.count_d_torsion(2), 4);
        assert_eq!(grp.count_d_torsion(4), 8);
    }
}
