use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use crate::numt::{cyclotomic_poly, euler_phi, IntPoly};

use super::CycError;

/// The ring `M = Z[ζ_{m_1}] × … × Z[ζ_{m_r}]`.
///
/// Moduli keep the order they were given in and may repeat; operations on
/// the quotient `Z[x]/(Φ_{m_1}⋯Φ_{m_r})` additionally require them to be
/// distinct (see [`CycloProduct::require_distinct`]).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycloProduct {
    moduli: Vec<u64>,
    phis: Vec<IntPoly>,
    offsets: Vec<usize>,
    dim: usize,
}

impl CycloProduct {
    pub fn new(moduli: &[u64]) -> Result<Self, CycError> {
        if moduli.is_empty() {
            return Err(CycError::NoModuli);
        }
        if moduli.contains(&0) {
            return Err(CycError::ZeroModulus);
        }
        let phis: Vec<IntPoly> = moduli.iter().map(|&m| cyclotomic_poly(m)).collect();
        let mut offsets = Vec::with_capacity(moduli.len());
        let mut dim = 0;
        for &m in moduli {
            offsets.push(dim);
            dim += euler_phi(m) as usize;
        }
        Ok(CycloProduct { moduli: moduli.to_vec(), phis, offsets, dim })
    }

    /// Fails on a repeated modulus.
    pub fn require_distinct(&self) -> Result<(), CycError> {
        let mut seen = self.moduli.clone();
        seen.sort_unstable();
        match seen.windows(2).find(|w| w[0] == w[1]) {
            Some(w) => Err(CycError::RepeatedModulus(w[0])),
            None => Ok(()),
        }
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn len(&self) -> usize {
        self.moduli.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moduli.is_empty()
    }

    /// Total degree `Σ φ(m_i)`, the rank of `M` as a `Z`-module.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `φ(m_i)`.
    pub fn degree(&self, i: usize) -> usize {
        self.phis[i].degree().expect("cyclotomic polynomials are nonzero")
    }

    /// First coordinate of component `i`.
    pub fn offset(&self, i: usize) -> usize {
        self.offsets[i]
    }

    pub fn phi(&self, i: usize) -> &IntPoly {
        &self.phis[i]
    }

    /// Order of the roots of unity of `Z[ζ_{m_i}]`: `lcm(2, m_i)`.
    pub fn unit_root_order(&self, i: usize) -> u64 {
        self.moduli[i].lcm(&2)
    }

    /// Builds an element, reducing component `i` modulo `Φ_{m_i}`.
    pub fn elem(&self, components: Vec<IntPoly>) -> Result<CycloElem, CycError> {
        if components.len() != self.len() {
            return Err(CycError::ComponentCount { expected: self.len(), got: components.len() });
        }
        let components = components
            .iter()
            .zip(&self.phis)
            .map(|(c, phi)| c.rem_monic(phi))
            .collect();
        Ok(CycloElem { components })
    }

    pub fn elem_i64(&self, components: &[Vec<i64>]) -> Result<CycloElem, CycError> {
        self.elem(components.iter().map(|c| IntPoly::from_i64(c)).collect())
    }

    pub fn one(&self) -> CycloElem {
        CycloElem { components: vec![IntPoly::one(); self.len()] }
    }

    /// `x^k` sent through every component: the image of `x^k` under the
    /// CRT map.
    pub fn x_power(&self, k: usize) -> CycloElem {
        let xk = IntPoly::monomial(BigInt::one(), k);
        CycloElem {
            components: self.phis.iter().map(|phi| xk.rem_monic(phi)).collect(),
        }
    }

    /// A primitive `k`-th root of unity of `Z[ζ_{m_i}]` (requires
    /// `k | lcm(2, m_i)`): `γ^{N/k}` with `γ = ζ_m` for even `m` and
    /// `γ = -ζ_m` for odd `m`. For even `m` this is `ζ_m^{m/k}`.
    pub fn root_in(&self, i: usize, k: u64) -> Result<IntPoly, CycError> {
        let m = self.moduli[i];
        let n = self.unit_root_order(i);
        if k == 0 || n % k != 0 {
            return Err(CycError::NoSuchRoot { order: k, modulus: m });
        }
        let e = n / k;
        let mut gamma = IntPoly::monomial(BigInt::one(), 1);
        if m % 2 == 1 {
            gamma = -gamma;
        }
        Ok(pow_mod(&gamma, e, &self.phis[i]))
    }

    /// Root of unity of order `k` in every slot listed, `1` elsewhere.
    pub fn diag_root(&self, k: u64, slots: &[usize]) -> Result<CycloElem, CycError> {
        let mut components = vec![IntPoly::one(); self.len()];
        for &i in slots {
            components[i] = self.root_in(i, k)?;
        }
        Ok(CycloElem { components })
    }

    pub fn mul(&self, a: &CycloElem, b: &CycloElem) -> CycloElem {
        CycloElem {
            components: a
                .components
                .iter()
                .zip(&b.components)
                .zip(&self.phis)
                .map(|((x, y), phi)| (x * y).rem_monic(phi))
                .collect(),
        }
    }

    pub fn pow(&self, a: &CycloElem, e: u64) -> CycloElem {
        CycloElem {
            components: a
                .components
                .iter()
                .zip(&self.phis)
                .map(|(x, phi)| pow_mod(x, e, phi))
                .collect(),
        }
    }

    /// Multiplicative order of `a`, if it is a root of unity.
    ///
    /// Each component of a root of unity lies in the cyclic group of order
    /// `lcm(2, m_i)`, so it suffices to test divisors of the lcm of those.
    pub fn order_of(&self, a: &CycloElem) -> Option<u64> {
        let bound = (0..self.len()).fold(1u64, |acc, i| acc.lcm(&self.unit_root_order(i)));
        if self.pow(a, bound) != self.one() {
            return None;
        }
        crate::numt::divisors(bound)
            .into_iter()
            .find(|&d| self.pow(a, d) == self.one())
    }

    /// Concatenated power-basis coordinates.
    pub fn coords(&self, a: &CycloElem) -> Vec<BigInt> {
        let mut out = Vec::with_capacity(self.dim);
        for (i, c) in a.components.iter().enumerate() {
            out.extend(c.padded(self.degree(i)));
        }
        out
    }
}

fn pow_mod(base: &IntPoly, mut e: u64, phi: &IntPoly) -> IntPoly {
    let mut acc = IntPoly::one().rem_monic(phi);
    let mut b = base.rem_monic(phi);
    while e > 0 {
        if e & 1 == 1 {
            acc = (&acc * &b).rem_monic(phi);
        }
        b = (&b * &b).rem_monic(phi);
        e >>= 1;
    }
    acc
}

/// An element of a [`CycloProduct`]: one reduced residue per component.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CycloElem {
    components: Vec<IntPoly>,
}

impl CycloElem {
    pub fn components(&self) -> &[IntPoly] {
        &self.components
    }

    /// Components as machine integers (lowest degree first), if they fit.
    pub fn to_i64(&self) -> Option<Vec<Vec<i64>>> {
        self.components.iter().map(IntPoly::to_i64_vec).collect()
    }
}

impl serde::Serialize for CycloElem {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::Error;
        let v = self
            .to_i64()
            .ok_or_else(|| S::Error::custom("coefficient exceeds i64"))?;
        v.serialize(s)
    }
}

impl<'de> serde::Deserialize<'de> for CycloElem {
    /// Components are taken verbatim; reduce through
    /// [`CycloProduct::elem`] when they may not be reduced.
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v: Vec<Vec<i64>> = Vec::deserialize(d)?;
        Ok(CycloElem { components: v.iter().map(|c| IntPoly::from_i64(c)).collect() })
    }
}

/// Roots of unity `U = ∏ ⟨γ_i⟩` of a product of cyclotomic rings, with
/// `γ_i = ζ_{m_i}` for even `m_i` and `-ζ_{m_i}` for odd `m_i`, so `γ_i`
/// has order `N_i = lcm(2, m_i)`. Elements are exponent vectors.
#[derive(Debug, Clone)]
pub struct RootsOfUnityGroup {
    orders: Vec<u64>,
    offsets: Vec<usize>,
    dim: usize,
    /// `tables[i][e]` = coordinates of `γ_i^e`.
    tables: Vec<Vec<Vec<i64>>>,
}

impl RootsOfUnityGroup {
    pub fn new(product: &CycloProduct) -> Self {
        let mut tables = Vec::with_capacity(product.len());
        for i in 0..product.len() {
            let n = product.unit_root_order(i);
            let gamma = product.root_in(i, n).expect("γ has order N");
            let deg = product.degree(i);
            let phi = product.phi(i);
            let mut table = Vec::with_capacity(n as usize);
            let mut cur = IntPoly::one().rem_monic(phi);
            for _ in 0..n {
                let row = cur
                    .padded(deg)
                    .iter()
                    .map(|c| c.to_i64().expect("roots of unity have small coordinates"))
                    .collect();
                table.push(row);
                cur = (&cur * &gamma).rem_monic(phi);
            }
            tables.push(table);
        }
        RootsOfUnityGroup {
            orders: (0..product.len()).map(|i| product.unit_root_order(i)).collect(),
            offsets: (0..product.len()).map(|i| product.offset(i)).collect(),
            dim: product.dim(),
            tables,
        }
    }

    /// `N_i` for each component.
    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    /// `|U| = ∏ N_i`, or `None` on overflow.
    pub fn size(&self) -> Option<u64> {
        self.orders.iter().try_fold(1u64, |acc, &n| acc.checked_mul(n))
    }

    /// Mixed-radix decoding of `0 ≤ idx < |U|`, first component fastest.
    pub fn exponents_at(&self, mut idx: u64) -> Vec<u64> {
        self.orders
            .iter()
            .map(|&n| {
                let e = idx % n;
                idx /= n;
                e
            })
            .collect()
    }

    /// Writes the coordinates of `∏ γ_i^{e_i}` into `out`.
    pub fn coords_into(&self, exps: &[u64], out: &mut [i64]) {
        debug_assert_eq!(out.len(), self.dim);
        for (i, &e) in exps.iter().enumerate() {
            let row = &self.tables[i][e as usize];
            out[self.offsets[i]..self.offsets[i] + row.len()].copy_from_slice(row);
        }
    }

    pub fn coords(&self, exps: &[u64]) -> Vec<i64> {
        let mut out = vec![0; self.dim];
        self.coords_into(exps, &mut out);
        out
    }

    /// Exponent vector of a root of unity, or `None` if `a` is not one.
    pub fn log(&self, product: &CycloProduct, a: &CycloElem) -> Option<Vec<u64>> {
        a.components()
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let target: Vec<i64> = c
                    .padded(product.degree(i))
                    .iter()
                    .map(|x| x.to_i64())
                    .collect::<Option<_>>()?;
                self.tables[i]
                    .iter()
                    .position(|row| *row == target)
                    .map(|e| e as u64)
            })
            .collect()
    }

    /// Order of the element with exponent vector `exps`.
    pub fn element_order(&self, exps: &[u64]) -> u64 {
        exps.iter()
            .zip(&self.orders)
            .fold(1u64, |acc, (&e, &n)| acc.lcm(&(n / e.gcd(&n))))
    }

    /// Exponent of `U`.
    pub fn exponent(&self) -> u64 {
        self.orders.iter().fold(1u64, |acc, &n| acc.lcm(&n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions() {
        let p = CycloProduct::new(&[3, 4, 1]).unwrap();
        assert_eq!(p.dim(), 5);
        assert_eq!((p.offset(0), p.offset(1), p.offset(2)), (0, 2, 4));
        assert!(p.require_distinct().is_ok());
        let q = CycloProduct::new(&[2, 2]).unwrap();
        assert_eq!(q.require_distinct(), Err(CycError::RepeatedModulus(2)));
        assert_eq!(CycloProduct::new(&[]), Err(CycError::NoModuli));
        assert_eq!(CycloProduct::new(&[0]), Err(CycError::ZeroModulus));
    }

    #[test]
    fn roots_and_orders() {
        let p = CycloProduct::new(&[6, 18, 5]).unwrap();
        // ζ_3 inside Z[ζ_6] is ζ_6^2
        assert_eq!(p.root_in(0, 3).unwrap(), IntPoly::from_i64(&[0, 0, 1]).rem_monic(p.phi(0)));
        let g = p.diag_root(6, &[0, 1]).unwrap();
        assert_eq!(p.order_of(&g), Some(6));
        let b = p.diag_root(9, &[1]).unwrap();
        assert_eq!(p.order_of(&b), Some(9));
        // Z[ζ_5] has 10th roots of unity
        assert_eq!(p.order_of(&p.diag_root(10, &[2]).unwrap()), Some(10));
        assert!(p.root_in(2, 4).is_err());
        // 2 is not a root of unity
        let two = p.elem_i64(&[vec![2], vec![1], vec![1]]).unwrap();
        assert_eq!(p.order_of(&two), None);
    }

    #[test]
    fn unit_group_tables() {
        let p = CycloProduct::new(&[3, 4]).unwrap();
        let u = RootsOfUnityGroup::new(&p);
        assert_eq!(u.orders(), &[6, 4]);
        assert_eq!(u.size(), Some(24));
        // every element is recovered by its logarithm
        for idx in 0..24 {
            let e = u.exponents_at(idx);
            let comps: Vec<Vec<i64>> = vec![u.coords(&e)[..2].to_vec(), u.coords(&e)[2..].to_vec()];
            let a = p.elem_i64(&comps).unwrap();
            assert_eq!(u.log(&p, &a), Some(e.clone()));
            assert_eq!(p.order_of(&a), Some(u.element_order(&e)));
        }
    }
}
