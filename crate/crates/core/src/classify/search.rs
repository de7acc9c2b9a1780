use std::collections::BTreeSet;

use crate::absgroup::{standard_decomposition, FiniteAbelianGroup, StandardDecomposition};
use crate::numt::star;

use super::admissible::{admissibility_sd, m0t_sd, normalize_modulus};
use super::ClassifyError;

/// Outcome of [`min_rank_search`].
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct MinRankResult {
    pub min_rank: u64,
    /// The preferred minimizer: fewest factors, then lexicographically
    /// smallest (moduli sorted ascending).
    pub minimizer: Vec<u64>,
    /// Every admissible multiset attaining the minimum, in the same order.
    pub minimizers: Vec<Vec<u64>>,
    /// Multisets visited.
    pub nodes: u64,
}

/// Drops the rank-0 factors `Z`, `Z[i]`, `Z[ζ_3]`; what is left decides
/// whether two minimizers differ in an essential way.
pub fn strip_padding(moduli: &[u64]) -> Vec<u64> {
    moduli.iter().copied().filter(|&m| star(m) > 0).collect()
}

struct Search<'a> {
    sd: &'a StandardDecomposition,
    candidates: Vec<(u64, u64)>,
    factor_bound: usize,
    budget: u64,
    nodes: u64,
    best: u64,
    found: BTreeSet<(usize, Vec<u64>)>,
}

impl Search<'_> {
    fn visit(&mut self, from: usize, current: &mut Vec<u64>, rank: u64) -> Result<(), ClassifyError> {
        for k in from..self.candidates.len() {
            let (n, r) = self.candidates[k];
            let rank = rank + r;
            if rank > self.best {
                // candidates are not sorted by rank, keep scanning
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(ClassifyError::SearchBudget { budget: self.budget });
            }
            current.push(n);
            if admissibility_sd(current, self.sd).is_admissible() {
                if rank < self.best {
                    self.best = rank;
                    self.found.clear();
                }
                self.found.insert((current.len(), current.clone()));
            }
            if current.len() < self.factor_bound {
                self.visit(k, current, rank)?;
            }
            current.pop();
        }
        Ok(())
    }
}

/// Least unit rank of a product of cyclotomic maximal orders admissible
/// for `T`, over all multisets of at most `factor_bound` factors
/// `Z[ζ_m]` with `m ≤ modulus_bound`.
///
/// Factors are taken up to even normalization, so the multisets range
/// over non-decreasing lists of even moduli divisible by `2^ε`. The
/// depth-first search prunes every branch whose rank already exceeds the
/// best one, starting from the rank of `M_{0,T}` when that lies within the
/// bounds; since ranks only grow along a branch this is exact. The number
/// of visited multisets is at most `C(c + f, f)` for `c` candidates and
/// `f = factor_bound`, and is capped by `budget`.
pub fn min_rank_search(
    t: &FiniteAbelianGroup,
    modulus_bound: u64,
    factor_bound: usize,
    budget: u64,
) -> Result<Option<MinRankResult>, ClassifyError> {
    let sd = standard_decomposition(t)?;
    let two_eps = sd.two_eps();
    let normalized: BTreeSet<u64> = (1..=modulus_bound).map(normalize_modulus).collect();
    let candidates: Vec<(u64, u64)> = normalized
        .into_iter()
        .filter(|n| n % two_eps == 0)
        .map(|n| (n, star(n)))
        .collect();

    let m0t = m0t_sd(&sd);
    let reachable = |n: &u64| *n <= modulus_bound || (n % 4 == 2 && n / 2 <= modulus_bound);
    let seed = (m0t.len() <= factor_bound && m0t.iter().all(reachable))
        .then(|| m0t.iter().map(|&n| star(n)).sum())
        .unwrap_or(u64::MAX);

    let mut search = Search { sd: &sd, candidates, factor_bound, budget, nodes: 0, best: seed, found: BTreeSet::new() };
    if factor_bound > 0 {
        search.visit(0, &mut Vec::new(), 0)?;
    }
    let minimizers: Vec<Vec<u64>> = search.found.into_iter().map(|(_, m)| m).collect();
    Ok(minimizers.first().cloned().map(|minimizer| MinRankResult {
        min_rank: search.best,
        minimizer,
        minimizers,
        nodes: search.nodes,
    }))
}
