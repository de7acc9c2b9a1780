use crate::absgroup::{standard_decomposition, FiniteAbelianGroup, StandardDecomposition};
use crate::cycring::{maximal_order_rank, subring_span, torsion_units_of_subring, CycError, CycloElem, CycloProduct};
use crate::numt::is_prime_power;

use super::{admissible::mt_sd, ClassifyError, WitnessDescription, WitnessKind};

/// Largest product for which the connected component carrying the Laurent
/// variables is located by testing every slot idempotent.
const MAX_IDEMPOTENT_SLOTS: usize = 20;

/// One factor group of the witness: a set of slots of `M_T` and the roots
/// of unity generating its part of the ring.
#[derive(Debug)]
struct Block {
    slots: Vec<usize>,
    /// `(order, slots)` for each generator.
    gens: Vec<(u64, Vec<usize>)>,
}

fn full_slot(slot: usize, n: u64) -> Block {
    Block { slots: vec![slot], gens: vec![(n, vec![slot])] }
}

/// Blocks of one odd prime with exponents sorted ascending: the diagonal
/// `ζ_{2^ε p^{b_1}}` over the block and `ζ_{p^{b_j}}` in slot `j ≥ 2`.
fn prime_block(two_eps: u64, p: u64, members: &[(usize, u32)]) -> Block {
    let slots: Vec<usize> = members.iter().map(|&(s, _)| s).collect();
    let mut gens = vec![(two_eps * p.pow(members[0].1), slots.clone())];
    gens.extend(members[1..].iter().map(|&(s, b)| (p.pow(b), vec![s])));
    Block { slots, gens }
}

/// Generators of a subring of `M_T` with torsion units `T` and unit rank
/// `g(T)`.
///
/// When `σ ≥ s_0` the odd parts are grouped into `min(σ, s)` single-prime
/// blocks, each absorbing one `C_{2^ε}`; the remaining factors are kept
/// whole. When `σ < s_0` the first `σ - 1` odd factors are kept whole and
/// the others hang off the extra `Z[ζ_{2^ε}]` factor through the diagonal
/// `ζ_{2^ε}`.
fn blocks(sd: &StandardDecomposition, moduli: &[u64]) -> Vec<Block> {
    let two_eps = sd.two_eps();
    let s = sd.s;
    let mut out = Vec::new();
    if sd.sigma < sd.s0 {
        let kept = sd.sigma - 1;
        out.extend((0..kept).map(|i| full_slot(i, moduli[i])));
        let control = moduli.len() - 1;
        let mut slots: Vec<usize> = (kept..s).collect();
        slots.push(control);
        let mut gens = vec![(two_eps, slots.clone())];
        gens.extend((kept..s).map(|i| {
            let (p, a) = sd.odd_parts[i];
            (p.pow(a), vec![i])
        }));
        out.push(Block { slots, gens });
    } else {
        // one block per prime, then split until there are min(σ, s)
        let mut groups: Vec<(u64, Vec<(usize, u32)>)> = Vec::new();
        for (i, &(p, a)) in sd.odd_parts.iter().enumerate() {
            match groups.last_mut() {
                Some((q, members)) if *q == p => members.push((i, a)),
                _ => groups.push((p, vec![(i, a)])),
            }
        }
        while groups.len() < sd.sigma.min(s) {
            let widest = (0..groups.len())
                .max_by_key(|&k| (groups[k].1.len(), std::cmp::Reverse(k)))
                .expect("at least one block");
            let p = groups[widest].0;
            let peeled = groups[widest].1.pop().expect("blocks being split have two members");
            groups.push((p, vec![peeled]));
        }
        for (p, members) in &groups {
            out.push(prime_block(two_eps, *p, members));
        }
    }
    for slot in s..moduli.len() {
        if !out.iter().any(|b| b.slots.contains(&slot)) {
            out.push(full_slot(slot, moduli[slot]));
        }
    }
    out
}

fn generators(product: &CycloProduct, blocks: &[Block]) -> Result<Vec<CycloElem>, CycError> {
    blocks
        .iter()
        .flat_map(|b| &b.gens)
        .map(|(k, slots)| product.diag_root(*k, slots))
        .collect()
}

/// Generators realising a maximal order's torsion units: `ζ_{n_i}` in each
/// slot. They generate the subring `Z[(M^*)_{tors}]`, which has the same
/// torsion units as `M`.
fn slot_generators(product: &CycloProduct) -> Result<Vec<CycloElem>, CycError> {
    (0..product.len())
        .map(|i| product.diag_root(product.unit_root_order(i), &[i]))
        .collect()
}

/// The witness order for an even-order `T`, with unit group `T × Z^{g(T)}`.
///
/// For `s ≤ σ` this is `M_T` itself; otherwise a subring of `M_T`
/// generated by roots of unity. The result is verified by enumeration
/// when `|U(M_T)| ≤ budget`.
pub fn witness_order(t: &FiniteAbelianGroup, budget: u64) -> Result<WitnessDescription, ClassifyError> {
    let mut w = build_witness(t)?;
    finish_verification(&mut w, t, budget);
    Ok(w)
}

/// [`witness_order`] without the verification.
pub fn build_witness(t: &FiniteAbelianGroup) -> Result<WitnessDescription, ClassifyError> {
    let sd = standard_decomposition(t)?;
    let moduli = mt_sd(&sd);
    let product = CycloProduct::new(&moduli)?;
    let (kind, gens, notes) = if sd.s <= sd.sigma {
        (WitnessKind::MaximalOrder, Vec::new(), format!("the maximal order {}", product_name(&moduli)))
    } else {
        let gens = generators(&product, &blocks(&sd, &moduli))?;
        let notes = format!("subring of {} generated by {} roots of unity", product_name(&moduli), gens.len());
        (WitnessKind::GeneratedSubring, gens, notes)
    };
    Ok(WitnessDescription { kind, moduli, generators: gens, laurent_vars: 0, verified: false, notes })
}

/// `Z[ζ_6] × Z[ζ_10]`.
pub(crate) fn product_name(moduli: &[u64]) -> String {
    let parts: Vec<String> = moduli.iter().map(|m| format!("Z[ζ_{m}]")).collect();
    parts.join(" × ")
}

/// Runs [`verify_witness`] and records the outcome in the description.
pub(crate) fn finish_verification(w: &mut WitnessDescription, t: &FiniteAbelianGroup, budget: u64) {
    match verify_witness(w, budget) {
        Ok(check) => {
            w.verified = check.torsion == *t && check.full_rank;
            if !w.verified {
                w.notes.push_str(&format!("; verification FAILED: torsion {}", check.torsion));
            }
            if let Some(slots) = check.laurent_slots {
                w.notes.push_str(&format!("; Laurent variables adjoined on the component of slots {slots:?}"));
            }
        }
        Err(ClassifyError::Cyc(CycError::Budget { size, budget })) => {
            let size = size.map_or("more than 2^64".to_string(), |s| s.to_string());
            w.notes.push_str(&format!("; unverified: {size} roots of unity exceed the budget {budget}"));
        }
        Err(e) => w.notes.push_str(&format!("; unverified: {e}")),
    }
}

/// What enumeration found for a witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessCheck {
    /// Torsion units of the (base) order.
    pub torsion: FiniteAbelianGroup,
    /// Whether the order has full rank in its maximal order, so that its
    /// unit rank is that of the maximal order.
    pub full_rank: bool,
    pub unit_rank: u64,
    /// Slots of the connected component that receives the Laurent
    /// variables, for Laurent extensions.
    pub laurent_slots: Option<Vec<usize>>,
}

/// Recomputes the torsion units of a cyclotomic witness by enumeration.
///
/// Textual witnesses and pure field products (no moduli) are not
/// handled here.
pub fn verify_witness(w: &WitnessDescription, budget: u64) -> Result<WitnessCheck, ClassifyError> {
    if w.kind == WitnessKind::Textual || w.moduli.is_empty() {
        return Err(ClassifyError::NotCheckable(w.kind));
    }
    let product = CycloProduct::new(&w.moduli)?;
    let gens = if w.generators.is_empty() { slot_generators(&product)? } else { w.generators.clone() };
    let t = torsion_units_of_subring(&product, &gens, budget)?;
    let span = subring_span(&product, &gens)?;
    let laurent_slots = if w.laurent_vars > 0 { Some(component_of_first_slot(&product, &span, w.generators.is_empty())?) } else { None };
    Ok(WitnessCheck {
        torsion: t.group,
        full_rank: span.is_full_rank(),
        unit_rank: maximal_order_rank(&w.moduli),
        laurent_slots,
    })
}

/// Slots of the primitive idempotent of the order that is nonzero on slot
/// 0. Idempotents of `∏ Z[ζ_{m_i}]` are the 0/1 slot indicators, so the
/// component is the intersection of all indicator sets containing slot 0
/// that lie in the order.
fn component_of_first_slot(
    product: &CycloProduct,
    span: &crate::cycring::ImageLattice,
    whole: bool,
) -> Result<Vec<usize>, ClassifyError> {
    let r = product.len();
    if whole || r == 1 {
        return Ok(vec![0]);
    }
    if r > MAX_IDEMPOTENT_SLOTS {
        return Err(ClassifyError::TooManySlots(r));
    }
    let mut comp: u64 = (1u64 << r) - 1;
    for mask in (1u64..(1u64 << r)).filter(|m| m & 1 == 1) {
        if mask & comp != comp && mask & comp != 0 {
            let mut v = vec![0i64; product.dim()];
            for i in (0..r).filter(|i| mask >> i & 1 == 1) {
                v[product.offset(i)] = 1;
            }
            if span.contains_i64(&v)? {
                comp &= mask;
            }
        }
    }
    Ok((0..r).filter(|i| comp >> i & 1 == 1).collect())
}

/// Checks a field-units certificate: every `q` a prime power and
/// `∏ C_{q-1} ≅ t`.
pub fn verify_fields(fields: &[u64], t: &FiniteAbelianGroup) -> bool {
    let orders: Vec<u64> = fields.iter().map(|q| q - 1).collect();
    fields.iter().all(|&q| is_prime_power(q).is_some())
        && FiniteAbelianGroup::from_cyclic(&orders).map_or(false, |g| g == *t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::absgroup::{g_of_t, groups_up_to};
    use crate::DEFAULT_BUDGET;

    fn g(orders: &[u64]) -> FiniteAbelianGroup {
        FiniteAbelianGroup::from_cyclic(orders).unwrap()
    }

    #[test]
    fn single_prime_blocks_shape() {
        let w = witness_order(&g(&[2, 3, 9]), DEFAULT_BUDGET).unwrap();
        assert_eq!(w.kind, WitnessKind::GeneratedSubring);
        assert_eq!(w.moduli, vec![6, 18]);
        let p = CycloProduct::new(&[6, 18]).unwrap();
        assert_eq!(w.generators, vec![p.diag_root(6, &[0, 1]).unwrap(), p.diag_root(9, &[1]).unwrap()]);
        assert!(w.verified, "{}", w.notes);
    }

    #[test]
    fn control_factor_shape() {
        let w = witness_order(&g(&[2, 3, 5]), DEFAULT_BUDGET).unwrap();
        assert_eq!(w.moduli, vec![6, 10, 2]);
        let p = CycloProduct::new(&[6, 10, 2]).unwrap();
        let expect = vec![
            p.diag_root(2, &[0, 1, 2]).unwrap(),
            p.diag_root(3, &[0]).unwrap(),
            p.diag_root(5, &[1]).unwrap(),
        ];
        assert_eq!(w.generators, expect);
        assert!(w.verified, "{}", w.notes);
    }

    #[test]
    fn easy_case_is_the_maximal_order() {
        let w = witness_order(&g(&[2, 8, 5]), DEFAULT_BUDGET).unwrap();
        assert_eq!(w.kind, WitnessKind::MaximalOrder);
        assert_eq!(w.moduli, vec![10, 8]);
        assert!(w.generators.is_empty());
        assert!(w.verified);
    }

    #[test]
    fn blocks_split_down_to_sigma() {
        // σ = 2, s = 3, one prime: two blocks {3, 9} and {27}
        let t = g(&[2, 2, 3, 9, 27]);
        let w = witness_order(&t, DEFAULT_BUDGET).unwrap();
        assert_eq!(w.generators.len(), 3);
        assert!(w.verified, "{}", w.notes);
    }

    #[test]
    fn every_small_even_group_verifies() {
        for t in groups_up_to(96).into_iter().filter(FiniteAbelianGroup::is_even) {
            let w = witness_order(&t, DEFAULT_BUDGET).unwrap();
            assert!(w.verified, "{t}: {}", w.notes);
            assert_eq!(maximal_order_rank(&w.moduli), g_of_t(&t).unwrap(), "{t}");
        }
    }

    #[test]
    fn budget_leaves_witness_unverified() {
        let w = witness_order(&g(&[2, 3, 9]), 10).unwrap();
        assert!(!w.verified);
        assert!(w.notes.contains("exceed the budget"), "{}", w.notes);
    }

    #[test]
    fn laurent_component() {
        // Z[ζ_6] × Z[ζ_4] is disconnected: variables go on slot 0 only
        let mut w = witness_order(&g(&[2, 3, 4]), DEFAULT_BUDGET).unwrap();
        w.laurent_vars = 1;
        assert_eq!(verify_witness(&w, DEFAULT_BUDGET).unwrap().laurent_slots, Some(vec![0]));
        // the subring for C2 × C3 × C5 has no idempotents besides 0 and 1
        let mut w = witness_order(&g(&[2, 3, 5]), DEFAULT_BUDGET).unwrap();
        w.laurent_vars = 2;
        assert_eq!(verify_witness(&w, DEFAULT_BUDGET).unwrap().laurent_slots, Some(vec![0, 1, 2]));
    }

    #[test]
    fn field_certificates() {
        assert!(verify_fields(&[4], &g(&[3])));
        assert!(verify_fields(&[3, 3], &g(&[2, 2])));
        assert!(!verify_fields(&[6], &g(&[5])));
        assert!(verify_fields(&[], &FiniteAbelianGroup::trivial()));
    }
}
