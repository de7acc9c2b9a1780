use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::One;

use super::{divisors, is_prime, is_prime_power, IntPoly, NumtError};

fn cache() -> &'static RwLock<HashMap<u64, IntPoly>> {
    static CACHE: OnceLock<RwLock<HashMap<u64, IntPoly>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// The `n`-th cyclotomic polynomial `Φ_n`.
///
/// Computed as `(x^n - 1) / ∏_{d | n, d < n} Φ_d` by exact monic division,
/// memoized for the lifetime of the process.
///
/// # Panics
///
/// Panics if `n == 0`.
pub fn cyclotomic_poly(n: u64) -> IntPoly {
    assert!(n > 0, "cyclotomic_poly: n must be positive");
    if let Some(p) = cache().read().expect("cyclotomic cache poisoned").get(&n) {
        return p.clone();
    }
    let mut acc = IntPoly::x_pow_minus_one(n as usize);
    for d in divisors(n) {
        if d == n {
            continue;
        }
        let (q, r) = acc.div_rem_monic(&cyclotomic_poly(d));
        debug_assert!(r.is_zero());
        acc = q;
    }
    cache()
        .write()
        .expect("cyclotomic cache poisoned")
        .entry(n)
        .or_insert(acc)
        .clone()
}

/// `Φ_n(1)`: 0 for `n = 1`, `p` for `n = p^e`, and 1 otherwise.
pub fn phi_at_1(n: u64) -> u64 {
    assert!(n > 0, "phi_at_1: n must be positive");
    if n == 1 {
        return 0;
    }
    match is_prime_power(n) {
        Some((p, _)) => p,
        None => 1,
    }
}

/// Polynomial whose coefficients live in `Z[ζ_l]`, each stored in the power
/// basis `1, ζ_l, …, ζ_l^{φ(l)-1}` (i.e. reduced modulo `Φ_l`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoeffExtPoly {
    modulus: u64,
    coeffs: Vec<IntPoly>,
}

impl CoeffExtPoly {
    pub fn new(modulus: u64, coeffs: Vec<IntPoly>) -> Self {
        let phi = cyclotomic_poly(modulus);
        let mut coeffs: Vec<IntPoly> = coeffs.iter().map(|c| c.rem_monic(&phi)).collect();
        while coeffs.last().is_some_and(IntPoly::is_zero) {
            coeffs.pop();
        }
        CoeffExtPoly { modulus, coeffs }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn coeffs(&self) -> &[IntPoly] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Evaluates at `ζ_n^k` inside `Z[ζ_n]`; requires `modulus | n`.
    ///
    /// The result is reduced modulo `Φ_n`.
    pub fn eval_at_root(&self, n: u64, k: u64) -> IntPoly {
        assert!(n % self.modulus == 0, "Z[ζ_l] must embed in Z[ζ_n]");
        let phi_n = cyclotomic_poly(n);
        let step = (n / self.modulus) as usize;
        let x_pow = |e: u64| IntPoly::monomial(BigInt::one(), (e % n) as usize);
        let mut acc = IntPoly::zero();
        for (j, c) in self.coeffs.iter().enumerate() {
            // ζ_l ↦ ζ_n^{n/l}
            let mut embedded = IntPoly::zero();
            for (i, a) in c.coeffs().iter().enumerate() {
                embedded = &embedded + &x_pow((i * step) as u64).scale(a);
            }
            acc = &acc + &(&embedded * &x_pow(k * j as u64));
        }
        acc.rem_monic(&phi_n)
    }
}

/// Minimal polynomial of `ζ_{p^a}` over `Q(ζ_{p^b})`.
///
/// For `b = 0` this is `Φ_{p^a}` with integer coefficients (`l = 1`); for
/// `b > 0` it is `x^{p^{a-b}} - ζ_{p^b}` over `Z[ζ_{p^b}]`.
pub fn psi_poly(p: u64, a: u32, b: u32) -> Result<CoeffExtPoly, NumtError> {
    if !is_prime(p) {
        return Err(NumtError::NotPrime(p));
    }
    if a <= b {
        return Err(NumtError::PsiExponents { a, b });
    }
    if b == 0 {
        let phi = cyclotomic_poly(p.pow(a));
        let coeffs = phi
            .coeffs()
            .iter()
            .map(|c| IntPoly::constant(c.clone()))
            .collect();
        return Ok(CoeffExtPoly::new(1, coeffs));
    }
    let l = p.pow(b);
    let deg = p.pow(a - b) as usize;
    let mut coeffs = vec![IntPoly::zero(); deg + 1];
    coeffs[0] = IntPoly::from_i64(&[0, -1]);
    coeffs[deg] = IntPoly::one();
    Ok(CoeffExtPoly::new(l, coeffs))
}
