use crate::absgroup::{standard_decomposition, FiniteAbelianGroup, GroupError, StandardDecomposition};

/// `Z[ζ_m] = Z[ζ_{2m}]` for odd `m`, so maximal-order moduli are kept even.
pub fn normalize_modulus(m: u64) -> u64 {
    if m % 2 == 1 {
        2 * m
    } else {
        m
    }
}

/// Even-normalized copy of a moduli list, order preserved.
pub fn normalize_moduli(moduli: &[u64]) -> Vec<u64> {
    moduli.iter().map(|&m| normalize_modulus(m)).collect()
}

/// The four conditions under which a product of cyclotomic rings can
/// contain an order whose torsion units are `T`.
///
/// Moduli are indexed in their even-normalized form, in the order given.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct AdmissibilityReport {
    pub moduli: Vec<u64>,
    /// (i) `t ≥ ρ + σ`.
    pub enough_factors: bool,
    /// (ii) `2^ε` divides every modulus.
    pub two_eps_divides_all: bool,
    /// (iii) each odd part `p^a` divides its own modulus, distinct moduli
    /// for parts of the same prime.
    pub odd_parts_placed: bool,
    /// (iv) each `2^{ε_ι}` divides its own modulus, all distinct.
    pub two_parts_placed: bool,
    /// Modulus index of each odd primary part, in standard order.
    pub odd_assignment: Option<Vec<usize>>,
    /// Modulus index of each larger 2-part `2^{ε_ι}`.
    pub two_assignment: Option<Vec<usize>>,
}

impl AdmissibilityReport {
    pub fn conditions(&self) -> [bool; 4] {
        [self.enough_factors, self.two_eps_divides_all, self.odd_parts_placed, self.two_parts_placed]
    }

    pub fn is_admissible(&self) -> bool {
        self.conditions().iter().all(|&c| c)
    }

    /// Roman numeral of the first failing condition.
    pub fn first_failure(&self) -> Option<&'static str> {
        let names = ["i", "ii", "iii", "iv"];
        self.conditions().iter().position(|&c| !c).map(|k| names[k])
    }
}

/// Kuhn's augmenting-path matching; `adj[l]` lists the right vertices of
/// left vertex `l`. Returns a right vertex per left vertex when every left
/// vertex can be matched.
fn perfect_left_matching(adj: &[Vec<usize>], right: usize) -> Option<Vec<usize>> {
    fn augment(l: usize, adj: &[Vec<usize>], seen: &mut [bool], owner: &mut [Option<usize>]) -> bool {
        for &r in &adj[l] {
            if seen[r] {
                continue;
            }
            seen[r] = true;
            if owner[r].map_or(true, |o| augment(o, adj, seen, owner)) {
                owner[r] = Some(l);
                return true;
            }
        }
        false
    }
    let mut owner: Vec<Option<usize>> = vec![None; right];
    for l in 0..adj.len() {
        let mut seen = vec![false; right];
        if !augment(l, adj, &mut seen, &mut owner) {
            return None;
        }
    }
    let mut out = vec![0; adj.len()];
    for (r, o) in owner.iter().enumerate() {
        if let Some(l) = o {
            out[*l] = r;
        }
    }
    Some(out)
}

/// Evaluates the admissibility conditions of `moduli` for `T`.
pub fn admissibility(moduli: &[u64], t: &FiniteAbelianGroup) -> Result<AdmissibilityReport, GroupError> {
    let sd = standard_decomposition(t)?;
    Ok(admissibility_sd(moduli, &sd))
}

pub(crate) fn admissibility_sd(moduli: &[u64], sd: &StandardDecomposition) -> AdmissibilityReport {
    let moduli = normalize_moduli(moduli);
    let two_eps = sd.two_eps();

    // the same-prime injectivity only binds parts of one prime, so each
    // prime gets its own matching
    let mut odd_assignment = Some(vec![0; sd.odd_parts.len()]);
    let mut start = 0;
    while start < sd.odd_parts.len() {
        let p = sd.odd_parts[start].0;
        let end = start + sd.odd_parts[start..].iter().take_while(|&&(q, _)| q == p).count();
        let adj: Vec<Vec<usize>> = sd.odd_parts[start..end]
            .iter()
            .map(|&(p, a)| (0..moduli.len()).filter(|&j| moduli[j] % p.pow(a) == 0).collect())
            .collect();
        match (perfect_left_matching(&adj, moduli.len()), odd_assignment.as_mut()) {
            (Some(m), Some(out)) => out[start..end].copy_from_slice(&m),
            _ => odd_assignment = None,
        }
        start = end;
    }

    let adj: Vec<Vec<usize>> = sd
        .eps_list
        .iter()
        .map(|&e| (0..moduli.len()).filter(|&j| moduli[j] % (1u64 << e) == 0).collect())
        .collect();
    let two_assignment = perfect_left_matching(&adj, moduli.len());

    AdmissibilityReport {
        enough_factors: moduli.len() >= sd.rho + sd.sigma,
        two_eps_divides_all: moduli.iter().all(|&n| n % two_eps == 0),
        odd_parts_placed: odd_assignment.is_some(),
        two_parts_placed: two_assignment.is_some(),
        odd_assignment,
        two_assignment,
        moduli,
    }
}

/// `M_{0,T}`: one factor `Z[ζ_{2^ε p^a}]` per odd primary part, one
/// `Z[ζ_{2^{ε_ι}}]` per larger 2-part and `d = max(σ - s, 0)` copies of
/// `Z[ζ_{2^ε}]`, in that order.
pub fn build_m0t(t: &FiniteAbelianGroup) -> Result<Vec<u64>, GroupError> {
    Ok(m0t_sd(&standard_decomposition(t)?))
}

pub(crate) fn m0t_sd(sd: &StandardDecomposition) -> Vec<u64> {
    let two_eps = sd.two_eps();
    sd.odd_parts
        .iter()
        .map(|&(p, a)| two_eps * p.pow(a))
        .chain(sd.eps_list.iter().map(|&e| 1u64 << e))
        .chain(std::iter::repeat(two_eps).take(sd.d))
        .collect()
}

/// `M_T`: `M_{0,T}`, with one more `Z[ζ_{2^ε}]` when `σ < s_0`. Its unit
/// rank is `g(T)`.
pub fn build_mt(t: &FiniteAbelianGroup) -> Result<Vec<u64>, GroupError> {
    Ok(mt_sd(&standard_decomposition(t)?))
}

pub(crate) fn mt_sd(sd: &StandardDecomposition) -> Vec<u64> {
    let mut m = m0t_sd(sd);
    if sd.sigma < sd.s0 {
        m.push(sd.two_eps());
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::absgroup::{g_of_t, groups_up_to};
    use crate::cycring::maximal_order_rank;
    use crate::numt::star;

    fn g(orders: &[u64]) -> FiniteAbelianGroup {
        FiniteAbelianGroup::from_cyclic(orders).unwrap()
    }

    fn sorted(mut v: Vec<u64>) -> Vec<u64> {
        v.sort_unstable();
        v
    }

    #[test]
    fn admissibility_examples() {
        let r = admissibility(&[8, 10], &g(&[8, 5])).unwrap();
        assert!(!r.is_admissible());
        assert!(!r.two_eps_divides_all);
        assert_eq!(r.first_failure(), Some("ii"));

        let r = admissibility(&[40], &g(&[8, 5])).unwrap();
        assert!(r.is_admissible());
        assert_eq!(r.odd_assignment, Some(vec![0]));

        let r = admissibility(&[6, 10], &g(&[2, 3, 5])).unwrap();
        assert!(r.is_admissible());
        assert_eq!(r.odd_assignment, Some(vec![0, 1]));
    }

    #[test]
    fn odd_moduli_are_normalized() {
        // Z[ζ_5] = Z[ζ_10]
        let r = admissibility(&[5], &g(&[10])).unwrap();
        assert_eq!(r.moduli, vec![10]);
        assert!(r.is_admissible());
    }

    #[test]
    fn same_prime_parts_need_distinct_factors() {
        let t = g(&[2, 3, 3]);
        assert!(!admissibility(&[6], &t).unwrap().odd_parts_placed);
        let r = admissibility(&[6, 6], &t).unwrap();
        assert!(r.is_admissible());
        let mut placed = r.odd_assignment.unwrap();
        placed.sort_unstable();
        assert_eq!(placed, vec![0, 1]);
        // different primes may share a factor
        assert!(admissibility(&[30], &g(&[2, 3, 5])).unwrap().odd_parts_placed);
        // the matching has to route 3 away from 18 to fit 9
        let r = admissibility(&[18, 6], &g(&[2, 3, 9])).unwrap();
        assert_eq!(r.odd_assignment, Some(vec![1, 0]));
    }

    #[test]
    fn two_parts_need_distinct_factors() {
        let t = g(&[2, 4, 4]);
        assert!(!admissibility(&[4, 2, 2], &t).unwrap().two_parts_placed);
        assert!(admissibility(&[4, 4, 2], &t).unwrap().is_admissible());
        // (i): t ≥ ρ + σ
        assert!(!admissibility(&[4, 4], &t).unwrap().enough_factors);
    }

    #[test]
    fn builder_examples() {
        assert_eq!(sorted(build_m0t(&g(&[2, 8, 5])).unwrap()), vec![8, 10]);
        assert_eq!(sorted(build_m0t(&g(&[2, 3, 5])).unwrap()), vec![6, 10]);
        assert_eq!(build_m0t(&g(&[2, 2])).unwrap(), vec![2, 2]);
        assert_eq!(build_mt(&g(&[2, 3, 5])).unwrap(), vec![6, 10, 2]);
        assert_eq!(sorted(build_mt(&g(&[2, 8, 5])).unwrap()), vec![8, 10]);
        assert_eq!(build_mt(&g(&[8, 5])).unwrap(), vec![40]);
        assert!(build_m0t(&g(&[3])).is_err());
    }

    #[test]
    fn rank_relation_up_to_64() {
        for t in groups_up_to(64).into_iter().filter(FiniteAbelianGroup::is_even) {
            let sd = standard_decomposition(&t).unwrap();
            let extra = if sd.sigma < sd.s0 { star(sd.two_eps()) } else { 0 };
            let m0t = build_m0t(&t).unwrap();
            assert_eq!(maximal_order_rank(&m0t) + extra, g_of_t(&t).unwrap(), "{t}");
            assert_eq!(maximal_order_rank(&build_mt(&t).unwrap()), g_of_t(&t).unwrap(), "{t}");
            assert!(admissibility(&m0t, &t).unwrap().is_admissible(), "{t}");
        }
    }
}
