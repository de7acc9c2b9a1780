use std::collections::{BTreeMap, HashSet};

use num_integer::Integer;
use rayon::prelude::*;

use crate::absgroup::{group_from_order_counts, FiniteAbelianGroup};
use crate::numt::divisors;

use super::{CycError, CycloElem, CycloProduct, ImageLattice, RootsOfUnityGroup};

/// Torsion units found by enumeration: their isomorphism type and the
/// exponent vectors (with respect to [`RootsOfUnityGroup`]) of every one.
#[derive(Debug, Clone)]
pub struct TorsionUnits {
    pub group: FiniteAbelianGroup,
    pub elements: Vec<Vec<u64>>,
    /// `|U|`, the number of candidates examined.
    pub candidates: u64,
}

fn checked_size(u: &RootsOfUnityGroup, budget: u64) -> Result<u64, CycError> {
    match u.size() {
        Some(n) if n <= budget => Ok(n),
        size => Err(CycError::Budget { size, budget }),
    }
}

/// Every root of unity of `M` lying in `lattice`, as exponent indices.
fn enumerate_members(u: &RootsOfUnityGroup, lattice: &ImageLattice, size: u64) -> Vec<u64> {
    let dim = lattice.dim();
    (0..size)
        .into_par_iter()
        .map_init(
            || vec![0i64; dim],
            |buf, idx| {
                u.coords_into(&u.exponents_at(idx), buf);
                lattice
                    .contains_i64(buf)
                    .expect("coordinates have the lattice dimension")
                    .then_some(idx)
            },
        )
        .flatten()
        .collect()
}

/// Exponent-vector addition in `U`.
fn add(u: &RootsOfUnityGroup, a: &[u64], b: &[u64]) -> Vec<u64> {
    a.iter()
        .zip(b)
        .zip(u.orders())
        .map(|((&x, &y), &n)| (x + y) % n)
        .collect()
}

/// Subgroup of `U` generated by the given exponent vectors.
fn generated_subgroup(u: &RootsOfUnityGroup, gens: &[Vec<u64>], cap: usize) -> HashSet<Vec<u64>> {
    let zero = vec![0u64; u.orders().len()];
    let mut h: HashSet<Vec<u64>> = HashSet::from([zero]);
    for g in gens {
        if h.contains(g) {
            continue;
        }
        let mut frontier: Vec<Vec<u64>> = h.iter().cloned().collect();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for x in frontier {
                let y = add(u, &x, g);
                if h.insert(y.clone()) {
                    next.push(y);
                }
            }
            if h.len() > cap {
                return h;
            }
            frontier = next;
        }
    }
    h
}

/// Structure of a set of roots of unity that must form a subgroup.
///
/// Closure is verified by generating a subgroup from the set itself and
/// comparing sizes (the generated group always contains the set).
fn recover(u: &RootsOfUnityGroup, elements: &[Vec<u64>]) -> Result<FiniteAbelianGroup, CycError> {
    let h = generated_subgroup(u, elements, elements.len());
    if h.len() != elements.len() {
        return Err(CycError::NotClosed { found: elements.len() });
    }
    let orders: Vec<u64> = elements.iter().map(|e| u.element_order(e)).collect();
    let exponent = orders.iter().fold(1u64, |acc, &o| acc.lcm(&o));
    let counts: BTreeMap<u64, u64> = divisors(exponent)
        .into_iter()
        .map(|d| (d, orders.iter().filter(|&&o| d % o == 0).count() as u64))
        .collect();
    Ok(group_from_order_counts(&counts)?)
}

fn torsion_in_lattice(
    product: &CycloProduct,
    lattice: &ImageLattice,
    budget: u64,
) -> Result<TorsionUnits, CycError> {
    let u = RootsOfUnityGroup::new(product);
    let size = checked_size(&u, budget)?;
    let members = enumerate_members(&u, lattice, size);
    let elements: Vec<Vec<u64>> = members.iter().map(|&i| u.exponents_at(i)).collect();
    let group = recover(&u, &elements)?;
    Ok(TorsionUnits { group, elements, candidates: size })
}

/// Torsion units of `Z[x]/(Φ_{m_1}⋯Φ_{m_r})`, found by testing every root
/// of unity of `∏ Z[ζ_{m_i}]` for membership in the CRT image.
pub fn torsion_units_of_quotient(moduli: &[u64], budget: u64) -> Result<TorsionUnits, CycError> {
    let product = CycloProduct::new(moduli)?;
    let lattice = super::psi_image(moduli)?;
    let t = torsion_in_lattice(&product, &lattice, budget)?;
    // ±1 always come from the quotient
    let u = RootsOfUnityGroup::new(&product);
    let minus_one: Vec<u64> = u.orders().iter().map(|n| n / 2).collect();
    debug_assert!(t.elements.contains(&minus_one));
    Ok(t)
}

/// Exponent vectors of the generators, which must be roots of unity.
fn generator_logs(
    product: &CycloProduct,
    u: &RootsOfUnityGroup,
    generators: &[CycloElem],
) -> Result<Vec<Vec<u64>>, CycError> {
    generators
        .iter()
        .enumerate()
        .map(|(i, g)| {
            if g.components().len() != product.len() {
                return Err(CycError::ComponentCount { expected: product.len(), got: g.components().len() });
            }
            u.log(product, g).ok_or(CycError::NonTorsion(i))
        })
        .collect()
}

/// `Z`-span of all products `∏ g_i^{e_i}`, which is the subring generated
/// by the `g_i` (each satisfies `x^{n_i} = 1`).
///
/// The products form the subgroup of `U` generated by the `g_i`; it is
/// enumerated in exponent space.
pub fn subring_span(product: &CycloProduct, generators: &[CycloElem]) -> Result<ImageLattice, CycError> {
    let u = RootsOfUnityGroup::new(product);
    let logs = generator_logs(product, &u, generators)?;
    let monomials = generated_subgroup(&u, &logs, usize::MAX);
    let mut monomials: Vec<Vec<u64>> = monomials.into_iter().collect();
    monomials.sort_unstable();
    ImageLattice::from_i64_rows(product.dim(), &monomials.iter().map(|e| u.coords(e)).collect::<Vec<_>>())
}

/// Torsion units of the subring of `∏ Z[ζ_{m_i}]` generated by roots of
/// unity.
pub fn torsion_units_of_subring(
    product: &CycloProduct,
    generators: &[CycloElem],
    budget: u64,
) -> Result<TorsionUnits, CycError> {
    let u = RootsOfUnityGroup::new(product);
    checked_size(&u, budget)?;
    let lattice = subring_span(product, generators)?;
    let t = torsion_in_lattice(product, &lattice, budget)?;
    let found: HashSet<&Vec<u64>> = t.elements.iter().collect();
    for g in generator_logs(product, &u, generators)? {
        assert!(found.contains(&g), "a subring contains its own generators");
    }
    Ok(t)
}
