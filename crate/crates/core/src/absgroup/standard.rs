use crate::numt::star;

use super::{FiniteAbelianGroup, GroupError};

/// `T ≅ ∏ C_{p_i^{a_i}} × ∏ C_{2^{ε_ι}} × C_{2^ε}^σ` with `ε` the least
/// 2-exponent and every `ε_ι > ε`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct StandardDecomposition {
    pub eps: u32,
    /// The larger 2-exponents, ascending.
    pub eps_list: Vec<u32>,
    pub sigma: usize,
    /// Odd primary parts `(p, a)`, sorted; primes may repeat.
    pub odd_parts: Vec<(u64, u32)>,
    pub s: usize,
    pub s0: usize,
    pub rho: usize,
    pub d: usize,
}

impl StandardDecomposition {
    /// Rebuilds the group the decomposition came from.
    pub fn reconstruct(&self) -> FiniteAbelianGroup {
        let parts = self
            .odd_parts
            .iter()
            .copied()
            .chain(self.eps_list.iter().map(|&e| (2, e)))
            .chain(std::iter::repeat((2, self.eps)).take(self.sigma));
        FiniteAbelianGroup::from_prime_powers(parts)
    }

    /// `2^ε`.
    pub fn two_eps(&self) -> u64 {
        1u64 << self.eps
    }

    /// The correction term `c(T)` of the rank formula.
    pub fn c_term(&self) -> u64 {
        let base = star(self.two_eps());
        if self.s < self.sigma {
            (self.sigma - self.s) as u64 * base
        } else if self.sigma < self.s0 {
            base
        } else {
            0
        }
    }

    /// `g(T)`.
    pub fn g(&self) -> u64 {
        let two_eps = self.two_eps();
        let odd: u64 = self
            .odd_parts
            .iter()
            .map(|&(p, a)| star(two_eps * p.pow(a)))
            .sum();
        let even: u64 = self.eps_list.iter().map(|&e| star(1u64 << e)).sum();
        odd + even + self.c_term()
    }
}

/// Standard decomposition of an even-order group.
pub fn standard_decomposition(t: &FiniteAbelianGroup) -> Result<StandardDecomposition, GroupError> {
    let twos = t.exponents_of(2);
    let Some(&eps) = twos.first() else {
        return Err(GroupError::OddOrder(t.order()));
    };
    let sigma = twos.iter().take_while(|&&e| e == eps).count();
    let eps_list = twos[sigma..].to_vec();
    let odd_parts: Vec<(u64, u32)> = t.parts().iter().copied().filter(|&(p, _)| p != 2).collect();
    let s = odd_parts.len();
    let s0 = t.primes().iter().filter(|&&p| p != 2).count();
    Ok(StandardDecomposition {
        eps,
        rho: eps_list.len(),
        eps_list,
        sigma,
        odd_parts,
        s,
        s0,
        d: sigma.saturating_sub(s),
    })
}

/// Least free rank `g(T)` for which `T × Z^g` is the unit group of a
/// torsion-free ring.
pub fn g_of_t(t: &FiniteAbelianGroup) -> Result<u64, GroupError> {
    Ok(standard_decomposition(t)?.g())
}

/// Membership in the family `C_2^a × C_4^b × C_3^c` with `a + b ≥ 1` and
/// `a ≥ 1` whenever `c ≥ 1` — checked structurally, without the formula.
pub fn is_zero_gt_family(t: &FiniteAbelianGroup) -> bool {
    let mut a = 0;
    let mut b = 0;
    let mut c = 0;
    for &(p, k) in t.parts() {
        match (p, k) {
            (2, 1) => a += 1,
            (2, 2) => b += 1,
            (3, 1) => c += 1,
            _ => return false,
        }
    }
    a + b >= 1 && (c == 0 || a >= 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::absgroup::groups_up_to;

    fn g(orders: &[u64]) -> FiniteAbelianGroup {
        FiniteAbelianGroup::from_cyclic(orders).unwrap()
    }

    #[test]
    fn decomposition_examples() {
        let sd = standard_decomposition(&g(&[2, 8, 5])).unwrap();
        assert_eq!((sd.eps, sd.sigma, sd.eps_list.clone()), (1, 1, vec![3]));
        assert_eq!(sd.odd_parts, vec![(5, 1)]);
        assert_eq!((sd.s, sd.s0, sd.rho, sd.d), (1, 1, 1, 0));

        let sd = standard_decomposition(&g(&[8, 5])).unwrap();
        assert_eq!((sd.eps, sd.sigma, sd.eps_list.len()), (3, 1, 0));
        assert_eq!((sd.s, sd.s0, sd.rho, sd.d), (1, 1, 0, 0));

        let sd = standard_decomposition(&g(&[2, 2])).unwrap();
        assert_eq!((sd.eps, sd.sigma), (1, 2));
        assert!(sd.odd_parts.is_empty());
        assert_eq!((sd.s, sd.s0, sd.rho, sd.d), (0, 0, 0, 2));

        // repeated odd primes count once in s0
        let sd = standard_decomposition(&g(&[2, 3, 9, 5])).unwrap();
        assert_eq!((sd.s, sd.s0), (3, 2));
    }

    #[test]
    fn odd_order_rejected() {
        assert_eq!(standard_decomposition(&g(&[3])), Err(GroupError::OddOrder(3)));
        assert_eq!(g_of_t(&g(&[])), Err(GroupError::OddOrder(1)));
    }

    #[test]
    fn g_values() {
        assert_eq!(g_of_t(&g(&[2, 8, 5])).unwrap(), 2);
        assert_eq!(g_of_t(&g(&[8, 5])).unwrap(), 7);
        assert_eq!(g_of_t(&g(&[2, 3, 5])).unwrap(), 1);
        assert_eq!(g_of_t(&g(&[2])).unwrap(), 0);
        assert_eq!(g_of_t(&g(&[8])).unwrap(), 1);
        // σ = 3 > s = 1 with ε = 2: two extra copies of Z[ζ_4], rank 0 each
        assert_eq!(g_of_t(&g(&[4, 4, 4, 3])).unwrap(), 1);
        // σ < s0 with ε = 3: correction star(8) = 1
        assert_eq!(g_of_t(&g(&[8, 3, 5])).unwrap(), 3 + 7 + 1);
    }

    #[test]
    fn family_examples() {
        assert!(is_zero_gt_family(&g(&[2, 3, 3])));
        assert!(!is_zero_gt_family(&g(&[4, 3])));
        assert!(is_zero_gt_family(&g(&[4])));
        assert!(!is_zero_gt_family(&g(&[3])));
    }

    #[test]
    fn family_matches_formula_up_to_200() {
        for t in groups_up_to(200).into_iter().filter(FiniteAbelianGroup::is_even) {
            assert_eq!(is_zero_gt_family(&t), g_of_t(&t).unwrap() == 0, "{t}");
        }
    }

    #[test]
    fn reconstruct_then_decompose() {
        for t in groups_up_to(300).into_iter().filter(FiniteAbelianGroup::is_even) {
            let sd = standard_decomposition(&t).unwrap();
            assert_eq!(sd.reconstruct(), t);
            assert!(sd.eps_list.iter().all(|&e| e > sd.eps));
            assert!(sd.sigma >= 1);
            assert_eq!(standard_decomposition(&sd.reconstruct()).unwrap(), sd);
        }
    }
}
