//! Exact arithmetic in `M = ∏ Z[ζ_{m_i}]` and in the quotient rings
//! `Z[x]/(Φ_{m_1}⋯Φ_{m_r})`.
//!
//! Elements of `M` are stored in the concatenated power bases
//! `ζ_{m_i}^k`, `k < φ(m_i)`. The CRT map `Z[x]/(∏Φ_{m_i}) → M` sends
//! `x^k` to the tuple of its residues; its image, and the additive span of
//! any subring generated by roots of unity, are [`ImageLattice`]s. Torsion
//! units are found by testing each of the `∏ lcm(2, m_i)` roots of unity
//! of `M` for lattice membership.

mod crt_oracle;
mod elem;
mod lattice;
mod torsion;

use num_bigint::BigInt;
use num_traits::Signed;
use thiserror::Error;

use crate::absgroup::GroupError;
use crate::numt::{self, NumtError};

pub use crt_oracle::CrtOracle;
pub use elem::{CycloElem, CycloProduct, RootsOfUnityGroup};
pub use lattice::ImageLattice;
pub use torsion::{subring_span, torsion_units_of_quotient, torsion_units_of_subring, TorsionUnits};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CycError {
    #[error("at least one modulus is required")]
    NoModuli,
    #[error("moduli must be positive")]
    ZeroModulus,
    #[error("at least two moduli are required")]
    TooFewModuli,
    #[error("modulus {0} is repeated; quotient rings need distinct moduli")]
    RepeatedModulus(u64),
    #[error("expected {expected} coordinates, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("expected {expected} components, got {got}")]
    ComponentCount { expected: usize, got: usize },
    #[error("Z[ζ_{modulus}] has no root of unity of order {order}")]
    NoSuchRoot { order: u64, modulus: u64 },
    #[error("generator {0} is not a root of unity")]
    NonTorsion(usize),
    #[error("need n > m (got n = {n}, m = {m})")]
    NotIncreasing { n: u64, m: u64 },
    #[error("enumeration of {} roots of unity exceeds the budget {budget}", .size.map_or("more than 2^64".to_string(), |s| s.to_string()))]
    Budget { size: Option<u64>, budget: u64 },
    #[error("the {found} roots of unity found do not form a group")]
    NotClosed { found: usize },
    #[error("invalid parameters: {0}")]
    Parameters(String),
    #[error(transparent)]
    Numt(#[from] NumtError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Whether `Z[x]/(Φ_{m_1}⋯Φ_{m_r}) → ∏ Z[ζ_{m_i}]` is onto: no ratio of
/// two moduli may be a prime power.
pub fn crt_is_surjective(moduli: &[u64]) -> Result<bool, CycError> {
    if moduli.len() < 2 {
        return Err(CycError::TooFewModuli);
    }
    CycloProduct::new(moduli)?.require_distinct()?;
    for (i, &a) in moduli.iter().enumerate() {
        for &b in &moduli[i + 1..] {
            let (hi, lo) = if a > b { (a, b) } else { (b, a) };
            if numt::prime_power_ratio(hi, lo)?.is_some() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Image of the CRT map: the span of the images of `1, x, …, x^{d-1}`.
pub fn psi_image(moduli: &[u64]) -> Result<ImageLattice, CycError> {
    let product = CycloProduct::new(moduli)?;
    product.require_distinct()?;
    let d = product.dim();
    ImageLattice::from_generators(d, (0..d).map(|k| product.coords(&product.x_power(k))))
}

/// Whether `u` lies in `lattice`.
pub fn membership(product: &CycloProduct, u: &CycloElem, lattice: &ImageLattice) -> Result<bool, CycError> {
    if u.components().len() != product.len() {
        return Err(CycError::ComponentCount { expected: product.len(), got: u.components().len() });
    }
    lattice.contains(&product.coords(u))
}

/// Free rank of the units of `∏ Z[ζ_{m_i}]`: `Σ (φ(m_i)/2 - 1)^*`.
pub fn maximal_order_rank(moduli: &[u64]) -> u64 {
    moduli.iter().map(|&m| numt::star(m)).sum()
}

/// `|N(Φ_n(ζ_m))| = |Res(Φ_m, Φ_n)|` for `n > m`.
pub fn norm_of_phi_eval(n: u64, m: u64) -> Result<BigInt, CycError> {
    if n <= m || m == 0 {
        return Err(CycError::NotIncreasing { n, m });
    }
    let r = numt::resultant(&numt::cyclotomic_poly(m), &numt::cyclotomic_poly(n))?;
    Ok(r.abs())
}

/// The ring `Z[ζ_l][x]/((x-1)Ψ_{p^a,p^b}(x))` inside its maximal order
/// `Z[ζ_l] × Z[ζ_{l_1 p^a}]` (`l = l_1 p^b`, `p ∤ l_1`, `l` even, `a > b`).
///
/// Its CRT image is `{(f(1), f(ζ_{p^a})) : f ∈ Z[ζ_l][x]}`, the subring
/// generated by `(ζ_l, ζ_l)` and `(1, ζ_{p^a})`; those two generators are
/// returned with the product.
pub fn psi_quotient_ring(p: u64, l: u64, a: u32, b: u32) -> Result<(CycloProduct, Vec<CycloElem>), CycError> {
    if !numt::is_prime(p) {
        return Err(NumtError::NotPrime(p).into());
    }
    if a <= b {
        return Err(NumtError::PsiExponents { a, b }.into());
    }
    if l == 0 || l % 2 != 0 {
        return Err(CycError::Parameters(format!("l = {l} must be positive and even")));
    }
    let pb = p.pow(b);
    if l % pb != 0 || (l / pb) % p == 0 {
        return Err(CycError::Parameters(format!("l = {l} must be l1·{p}^{b} with {p} ∤ l1")));
    }
    let l1 = l / pb;
    let product = CycloProduct::new(&[l, l1 * p.pow(a)])?;
    let gens = vec![product.diag_root(l, &[0, 1])?, product.diag_root(p.pow(a), &[1])?];
    Ok((product, gens))
}
