use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::numt::{IntPoly, RatPoly};

use super::{CycError, CycloProduct};

/// Membership in the image of `Z[x]/(F) → ∏ Z[ζ_{m_i}]`, `F = ∏ Φ_{m_i}`,
/// decided by solving the Chinese remainder problem over `Q`.
///
/// With rational idempotents `e_i ≡ 1 (mod Φ_i)`, `e_i ≡ 0 (mod Φ_j)`,
/// the unique preimage of `u` of degree `< deg F` is `Σ u_i e_i mod F`;
/// `u` lies in the image iff that polynomial has integer coefficients.
/// Denominators are cleared once: `E_i = D·e_i` with `D` the common
/// denominator, so the test is `D | Σ u_i E_i mod F` coefficientwise.
///
/// This deliberately shares nothing with the lattice code and serves as
/// its cross-check.
#[derive(Debug, Clone)]
pub struct CrtOracle {
    product: CycloProduct,
    f: IntPoly,
    scaled: Vec<IntPoly>,
    denom: BigInt,
}

impl CrtOracle {
    pub fn new(moduli: &[u64]) -> Result<Self, CycError> {
        let product = CycloProduct::new(moduli)?;
        product.require_distinct()?;
        let f = (0..product.len()).fold(IntPoly::one(), |acc, i| &acc * product.phi(i));
        let fq = RatPoly::from(&f);
        let mut idempotents = Vec::with_capacity(product.len());
        for i in 0..product.len() {
            let phi = RatPoly::from(product.phi(i));
            let cofactor = f.div_exact(product.phi(i)).expect("Φ_i divides F");
            let cq = RatPoly::from(&cofactor);
            let (g, s, _) = RatPoly::ext_gcd(&cq, &phi);
            debug_assert_eq!(g, RatPoly::one(), "distinct cyclotomics are coprime over Q");
            idempotents.push((&s * &cq).rem(&fq));
        }
        let denom = idempotents
            .iter()
            .fold(BigInt::from(1), |acc, e| acc.lcm(&e.denominator_lcm()));
        let dq = num_rational::BigRational::from_integer(denom.clone());
        let scaled = idempotents
            .iter()
            .map(|e| e.scale(&dq).to_int_poly().expect("denominators cleared"))
            .collect();
        Ok(CrtOracle { product, f, scaled, denom })
    }

    pub fn product(&self) -> &CycloProduct {
        &self.product
    }

    /// Common denominator of the idempotents; it kills the cokernel of
    /// the CRT map.
    pub fn denominator(&self) -> &BigInt {
        &self.denom
    }

    /// The numerator `Σ u_i E_i mod F` from coordinate slices.
    fn numerator(&self, comps: &[IntPoly]) -> IntPoly {
        let mut acc = IntPoly::zero();
        for (u, e) in comps.iter().zip(&self.scaled) {
            acc = &acc + &(u * e);
        }
        acc.rem_monic(&self.f)
    }

    /// Whether the element with the given concatenated coordinates lies
    /// in the image.
    pub fn contains_coords(&self, coords: &[i64]) -> Result<bool, CycError> {
        if coords.len() != self.product.dim() {
            return Err(CycError::Dimension { expected: self.product.dim(), got: coords.len() });
        }
        let comps: Vec<IntPoly> = (0..self.product.len())
            .map(|i| {
                let o = self.product.offset(i);
                IntPoly::from_i64(&coords[o..o + self.product.degree(i)])
            })
            .collect();
        let num = self.numerator(&comps);
        Ok(num.coeffs().iter().all(|c| (c % &self.denom).is_zero()))
    }

    /// The unique rational `a` with `deg a < deg F` and `a ≡ u_i (mod Φ_i)`.
    pub fn preimage(&self, comps: &[IntPoly]) -> RatPoly {
        let num = RatPoly::from(&self.numerator(comps));
        num.scale(&num_rational::BigRational::new(1.into(), self.denom.clone()))
    }
}
