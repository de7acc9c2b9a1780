use std::fmt;

use super::NumtError;

/// Largest integer accepted by [`factorize`]. Trial division needs at most
/// `sqrt(FACTOR_BOUND) = 10^7` steps.
pub const FACTOR_BOUND: u64 = 100_000_000_000_000;

/// Prime factorization `n = ∏ p^e`, primes strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Factorization {
    pairs: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn pairs(&self) -> &[(u64, u32)] {
        &self.pairs
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.pairs.iter().map(|&(p, _)| p)
    }

    /// Number of distinct prime factors.
    pub fn omega(&self) -> usize {
        self.pairs.len()
    }

    pub fn value(&self) -> u64 {
        self.pairs.iter().map(|&(p, e)| p.pow(e)).product()
    }

    /// Exponent of `p` in the factorization (0 when absent).
    pub fn valuation(&self, p: u64) -> u32 {
        self.pairs
            .iter()
            .find(|&&(q, _)| q == p)
            .map_or(0, |&(_, e)| e)
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pairs.is_empty() {
            return write!(f, "1");
        }
        for (i, (p, e)) in self.pairs.iter().enumerate() {
            if i > 0 {
                write!(f, " * ")?;
            }
            if *e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Trial-division factorization of `1 <= n <= FACTOR_BOUND`.
pub fn factorize(n: u64) -> Result<Factorization, NumtError> {
    if n == 0 {
        return Err(NumtError::Zero);
    }
    if n > FACTOR_BOUND {
        return Err(NumtError::TooLarge(n));
    }
    let mut pairs = Vec::new();
    let mut rest = n;
    let mut p = 2u64;
    while p * p <= rest {
        if rest % p == 0 {
            let mut e = 0;
            while rest % p == 0 {
                rest /= p;
                e += 1;
            }
            pairs.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        pairs.push((rest, 1));
    }
    Ok(Factorization { pairs })
}

fn factor_or_panic(n: u64) -> Factorization {
    match factorize(n) {
        Ok(f) => f,
        Err(e) => panic!("cannot factor {n}: {e}"),
    }
}

/// Euler's totient.
///
/// # Panics
///
/// Panics if `n` is zero or exceeds [`FACTOR_BOUND`].
pub fn euler_phi(n: u64) -> u64 {
    factor_or_panic(n)
        .pairs()
        .iter()
        .map(|&(p, e)| p.pow(e - 1) * (p - 1))
        .product()
}

/// Möbius function.
pub fn mobius(n: u64) -> i8 {
    let f = factor_or_panic(n);
    if f.pairs().iter().any(|&(_, e)| e > 1) {
        0
    } else if f.omega() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Free rank of `Z[ζ_n]^*`: `φ(n)/2 - 1` for `n >= 3`, and 0 for `n ∈ {1, 2}`.
pub fn star(n: u64) -> u64 {
    if n <= 2 {
        assert!(n > 0, "star(0) is undefined");
        return 0;
    }
    euler_phi(n) / 2 - 1
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factor_or_panic(n).pairs() == [(n, 1)]
}

/// `Some((p, e))` when `n = p^e` with `e >= 1`.
pub fn is_prime_power(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    match factor_or_panic(n).pairs() {
        [(p, e)] => Some((*p, *e)),
        _ => None,
    }
}

/// `Some((p, e))` iff `m | n` and `n / m = p^e` with `e >= 1`.
///
/// Non-integer ratios count as "not a prime power".
pub fn prime_power_ratio(n: u64, m: u64) -> Result<Option<(u64, u32)>, NumtError> {
    if n == m {
        return Err(NumtError::EqualModuli(n));
    }
    if n == 0 || m == 0 {
        return Err(NumtError::Zero);
    }
    if n % m != 0 {
        return Ok(None);
    }
    Ok(is_prime_power(n / m))
}

/// Divisors of `n` in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut out = vec![1u64];
    for &(p, e) in factor_or_panic(n).pairs() {
        let len = out.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                out.push(out[i] * pk);
            }
        }
    }
    out.sort_unstable();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn factorize_examples() {
        assert_eq!(factorize(12).unwrap().pairs(), &[(2, 2), (3, 1)]);
        assert!(factorize(1).unwrap().pairs().is_empty());
        assert_eq!(factorize(40).unwrap().pairs(), &[(2, 3), (5, 1)]);
        assert_eq!(factorize(0), Err(NumtError::Zero));
        assert!(matches!(factorize(FACTOR_BOUND + 1), Err(NumtError::TooLarge(_))));
    }

    #[test]
    fn factorize_at_the_required_scale() {
        // 10^12 = 2^12 5^12, plus a large prime near the bound
        assert_eq!(factorize(1_000_000_000_000).unwrap().pairs(), &[(2, 12), (5, 12)]);
        let p = 999_999_999_989u64;
        assert_eq!(factorize(p).unwrap().pairs(), &[(p, 1)]);
    }

    #[test]
    fn phi_and_star() {
        assert_eq!(euler_phi(40), 16);
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(18), 6);
        assert_eq!(star(1), 0);
        assert_eq!(star(2), 0);
        assert_eq!(star(8), 1);
        assert_eq!(star(40), 7);
    }

    #[test]
    fn mobius_small() {
        let got: Vec<i8> = (1..=10).map(mobius).collect();
        assert_eq!(got, vec![1, -1, -1, 0, -1, 1, -1, 0, 0, 1]);
    }

    #[test]
    fn prime_power_ratio_examples() {
        assert_eq!(prime_power_ratio(9, 3).unwrap(), Some((3, 1)));
        assert_eq!(prime_power_ratio(4, 3).unwrap(), None);
        assert_eq!(prime_power_ratio(6, 4).unwrap(), None);
        assert_eq!(prime_power_ratio(5, 5), Err(NumtError::EqualModuli(5)));
        assert_eq!(prime_power_ratio(3, 6).unwrap(), None);
    }

    #[test]
    fn divisors_of_12() {
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(1), vec![1]);
    }

    proptest! {
        #[test]
        fn factorization_reconstructs(n in 1u64..2_000_000) {
            let f = factorize(n).unwrap();
            prop_assert_eq!(f.value(), n);
            for w in f.pairs().windows(2) {
                prop_assert!(w[0].0 < w[1].0);
            }
            for &(p, e) in f.pairs() {
                prop_assert!(e >= 1);
                prop_assert!((2..p).take_while(|d| d * d <= p).all(|d| p % d != 0));
            }
        }

        #[test]
        fn totient_matches_gcd_count(n in 1u64..400) {
            let count = (1..=n).filter(|&k| num_integer::gcd(k, n) == 1).count() as u64;
            prop_assert_eq!(euler_phi(n), count);
        }

        #[test]
        fn prime_power_ratio_predicate(n in 1u64..500, m in 1u64..500) {
            prop_assume!(n != m);
            let got = prime_power_ratio(n, m).unwrap().is_some();
            let expect = n % m == 0 && factorize(n / m).unwrap().omega() == 1;
            prop_assert_eq!(got, expect);
        }
    }
}
