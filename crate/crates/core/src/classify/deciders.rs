use crate::absgroup::{
    field_units_partition, g_of_t, reduced_min_rank, reduced_split_search, FGAbelianGroup, FiniteAbelianGroup,
};
use crate::numt::{euler_phi, is_prime, is_prime_power, star};
use crate::DEFAULT_BUDGET;

use super::witness::{build_witness, finish_verification, verify_fields};
use super::{Class, ReducedMode, Reason, Verdict, WitnessDescription, WitnessKind};

/// Runs the decider for `class`, verifying witnesses within `budget`
/// root-of-unity candidates.
pub fn decide(class: Class, g: &FGAbelianGroup, budget: u64) -> Verdict {
    match class {
        Class::Domain0 => domain_char0(g, budget),
        Class::DomainP => domain_charp(g),
        Class::DomainInt => domain_integral(g, budget),
        Class::TorsionFree => torsion_free(g, budget),
        Class::Reduced(mode) => reduced(g, mode, budget),
    }
}

/// `C_{2n} × Z^g` with `g ≥ (φ(2n)/2 - 1)^*`; the witness is `Z[ζ_{2n}]`
/// with Laurent variables for the excess rank.
pub fn decide_domain_char0(g: &FGAbelianGroup) -> Verdict {
    decide(Class::Domain0, g, DEFAULT_BUDGET)
}

/// `F_q^* × Z^g`: cyclic torsion of order `q - 1` for a prime power `q`.
pub fn decide_domain_charp(g: &FGAbelianGroup) -> Verdict {
    decide(Class::DomainP, g, DEFAULT_BUDGET)
}

/// `C_{2n} × Z^g` with `φ(2n) | 2(g + 1)`: an order in a number field.
pub fn decide_domain_integral_over_z(g: &FGAbelianGroup) -> Verdict {
    decide(Class::DomainInt, g, DEFAULT_BUDGET)
}

/// `T × Z^g` with `|T|` even and `g ≥ g(T)`.
pub fn decide_torsion_free(g: &FGAbelianGroup) -> Verdict {
    decide(Class::TorsionFree, g, DEFAULT_BUDGET)
}

pub fn decide_reduced(g: &FGAbelianGroup, mode: ReducedMode) -> Verdict {
    decide(Class::Reduced(mode), g, DEFAULT_BUDGET)
}

/// Shared gate of the characteristic-zero domain classes: the torsion
/// must be cyclic of even order. Returns `2n`.
fn even_cyclic(class: Class, g: &FGAbelianGroup) -> Result<u64, Verdict> {
    let t = &g.torsion;
    if !t.is_even() {
        return Err(Verdict::no(class, g, Reason::OddOrder, None));
    }
    if !t.is_cyclic() {
        return Err(Verdict::no(class, g, Reason::TorsionNotCyclic, None));
    }
    Ok(t.order())
}

fn laurent_ring(base: &str, k: u64) -> String {
    match k {
        0 => base.to_string(),
        1 => format!("{base}[x^±1]"),
        k => format!("{base}[x_1^±1, …, x_{k}^±1]"),
    }
}

/// `Z[ζ_n]` with `k` Laurent variables, verified.
fn cyclotomic_domain(n: u64, k: u64, budget: u64, t: &FiniteAbelianGroup) -> WitnessDescription {
    let mut w = WitnessDescription {
        kind: if k == 0 { WitnessKind::MaximalOrder } else { WitnessKind::LaurentExtension },
        moduli: vec![n],
        generators: Vec::new(),
        laurent_vars: k,
        verified: false,
        notes: laurent_ring(&format!("Z[ζ_{n}]"), k),
    };
    finish_verification(&mut w, t, budget);
    w
}

fn domain_char0(g: &FGAbelianGroup, budget: u64) -> Verdict {
    let class = Class::Domain0;
    let two_n = match even_cyclic(class, g) {
        Ok(n) => n,
        Err(v) => return v,
    };
    let min = star(two_n);
    if g.free_rank < min {
        return Verdict::no(class, g, Reason::RankTooSmall, Some(min));
    }
    let w = cyclotomic_domain(two_n, g.free_rank - min, budget, &g.torsion);
    Verdict::yes(class, g, min, w)
}

fn domain_charp(g: &FGAbelianGroup) -> Verdict {
    let class = Class::DomainP;
    let t = &g.torsion;
    if !t.is_cyclic() {
        return Verdict::no(class, g, Reason::TorsionNotCyclic, None);
    }
    let q = t.order() + 1;
    if is_prime_power(q).is_none() {
        return Verdict::no(class, g, Reason::NotFieldUnitsProduct, None);
    }
    let w = WitnessDescription {
        kind: WitnessKind::FieldProduct,
        moduli: Vec::new(),
        generators: Vec::new(),
        laurent_vars: g.free_rank,
        verified: verify_fields(&[q], t),
        notes: format!("fields [{q}]; {}", laurent_ring(&format!("F_{q}"), g.free_rank)),
    };
    Verdict::yes(class, g, 0, w)
}

/// Smallest prime `p ≡ 1 (mod m)` not dividing `n`.
fn prime_one_mod(m: u64, n: u64) -> u64 {
    (1..)
        .map(|k| k * m + 1)
        .find(|&p| is_prime(p) && n % p != 0)
        .expect("there are infinitely many primes in the progression")
}

fn domain_integral(g: &FGAbelianGroup, budget: u64) -> Verdict {
    let class = Class::DomainInt;
    let two_n = match even_cyclic(class, g) {
        Ok(n) => n,
        Err(v) => return v,
    };
    let phi = euler_phi(two_n);
    let min = star(two_n);
    if (2 * (g.free_rank + 1)) % phi != 0 {
        let reason = if g.free_rank < min { Reason::RankTooSmall } else { Reason::DivisibilityFailed };
        return Verdict::no(class, g, reason, Some(min));
    }
    // unit rank of K_d·Q(ζ_{2n}) is d·φ(2n)/2 - 1 (or d - 1 when 2n = 2)
    let d = if two_n == 2 { g.free_rank + 1 } else { 2 * (g.free_rank + 1) / phi };
    if d == 1 {
        return Verdict::yes(class, g, min, cyclotomic_domain(two_n, 0, budget, &g.torsion));
    }
    let p = prime_one_mod(2 * d, two_n);
    let notes = if two_n == 2 {
        format!(
            "ring of integers of the degree-{d} subfield of Q(ζ_{p} + ζ_{p}^-1), which is totally real with roots of unity ±1"
        )
    } else {
        format!(
            "ring of integers of L = K·Q(ζ_{two_n}), K the degree-{d} subfield of Q(ζ_{p} + ζ_{p}^-1) ({p} ≡ 1 mod {}); \
             [L:Q] = {}, L is totally complex with roots of unity of order {two_n}",
            2 * d,
            d * phi
        )
    };
    let w = WitnessDescription {
        kind: WitnessKind::Textual,
        moduli: Vec::new(),
        generators: Vec::new(),
        laurent_vars: 0,
        verified: false,
        notes,
    };
    Verdict::yes(class, g, min, w)
}

/// Witness for `T × Z^rank` in characteristic zero, `rank ≥ g(T)`.
fn torsion_free_witness(t: &FiniteAbelianGroup, rank: u64, gt: u64, budget: u64) -> WitnessDescription {
    let mut w = build_witness(t).expect("T has even order");
    let k = rank - gt;
    if k > 0 {
        w.kind = WitnessKind::LaurentExtension;
        w.laurent_vars = k;
        w.notes = format!("{} over {}", laurent_ring("A", k), w.notes);
    }
    finish_verification(&mut w, t, budget);
    w
}

fn torsion_free(g: &FGAbelianGroup, budget: u64) -> Verdict {
    let class = Class::TorsionFree;
    let Ok(gt) = g_of_t(&g.torsion) else {
        return Verdict::no(class, g, Reason::OddOrder, None);
    };
    if g.free_rank < gt {
        return Verdict::no(class, g, Reason::RankTooSmall, Some(gt));
    }
    Verdict::yes(class, g, gt, torsion_free_witness(&g.torsion, g.free_rank, gt, budget))
}

fn positive_char(g: &FGAbelianGroup, class: Class) -> Verdict {
    let t = &g.torsion;
    // F_2 has trivial units, so it serves when the torsion is trivial
    let Some(fields) = (if t.is_trivial() { Some(vec![2]) } else { field_units_partition(t) }) else {
        return Verdict::no(class, g, Reason::NotFieldUnitsProduct, None);
    };
    let shown: Vec<String> = fields.iter().map(|q| format!("F_{q}")).collect();
    let mut ring = laurent_ring(&shown[0], g.free_rank);
    for f in &shown[1..] {
        ring.push_str(&format!(" × {f}"));
    }
    let w = WitnessDescription {
        kind: WitnessKind::FieldProduct,
        moduli: Vec::new(),
        generators: Vec::new(),
        laurent_vars: g.free_rank,
        verified: verify_fields(&fields, t),
        notes: format!("fields {fields:?}; {ring}"),
    };
    Verdict::yes(class, g, 0, w)
}

fn char0_split(g: &FGAbelianGroup, class: Class, budget: u64) -> Verdict {
    let t = &g.torsion;
    let Some(split) = reduced_split_search(t, g.free_rank) else {
        return match reduced_min_rank(t) {
            Some(min) => Verdict::no(class, g, Reason::RankTooSmall, Some(min)),
            None => Verdict::no(class, g, Reason::NoSplitFound, None),
        };
    };
    let min = reduced_min_rank(t).expect("a split exists");
    let mut w = torsion_free_witness(&split.t, g.free_rank, split.g_t, budget);
    let orders: Vec<u64> = split.fields.iter().map(|q| q - 1).collect();
    let recombined = FiniteAbelianGroup::from_cyclic(&orders).map(|f| f.product(&split.t));
    w.verified &= recombined.as_ref() == Ok(t) && split.fields.iter().all(|&q| is_prime_power(q).is_some());
    if !split.fields.is_empty() {
        let fields: Vec<String> = split.fields.iter().map(|q| format!("F_{q}")).collect();
        w.notes = format!(
            "fields {:?}; {} × A, A with units {} × Z^{}: {}",
            split.fields,
            fields.join(" × "),
            split.t,
            g.free_rank,
            w.notes
        );
        w.kind = WitnessKind::FieldProduct;
    }
    Verdict::yes(class, g, min, w)
}

fn reduced(g: &FGAbelianGroup, mode: ReducedMode, budget: u64) -> Verdict {
    let class = Class::Reduced(mode);
    match mode {
        ReducedMode::PositiveChar => positive_char(g, class),
        ReducedMode::Char0 => char0_split(g, class, budget),
        ReducedMode::Any => {
            let v = positive_char(g, class);
            if v.realizable {
                return v;
            }
            char0_split(g, class, budget)
        }
    }
}
