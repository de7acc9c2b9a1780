//! Decision procedures for unit groups, with certificates.
//!
//! Each decider takes a finitely generated abelian group `T × Z^g` and
//! returns a [`Verdict`]: whether some ring of the given class has exactly
//! this unit group, the least free rank that works for `T`, a reason code
//! and, when realizable, a witness ring. Witnesses inside products of
//! cyclotomic rings are re-checked by enumerating their roots of unity.
//!
//! The torsion-free part rests on the standard decomposition of `T` (see
//! [`crate::absgroup::standard_decomposition`]): the maximal orders that
//! can host an order with torsion units `T` are the admissible ones
//! ([`admissibility`]), the smallest is `M_{0,T}` ([`build_m0t`]), and an
//! order of unit rank `g(T)` lives in `M_T` ([`build_mt`],
//! [`witness_order`]).

mod admissible;
mod deciders;
mod search;
mod witness;

use std::fmt;

use thiserror::Error;

use crate::absgroup::{FGAbelianGroup, GroupError};
use crate::cycring::{CycError, CycloElem};

pub use admissible::{admissibility, build_m0t, build_mt, normalize_modulus, normalize_moduli, AdmissibilityReport};
pub use deciders::{
    decide, decide_domain_char0, decide_domain_charp, decide_domain_integral_over_z, decide_reduced,
    decide_torsion_free,
};
pub use search::{min_rank_search, strip_padding, MinRankResult};
pub use witness::{build_witness, verify_fields, verify_witness, witness_order, WitnessCheck};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Cyc(#[from] CycError),
    #[error("search visited more than {budget} moduli multisets")]
    SearchBudget { budget: u64 },
    #[error("{0} witnesses cannot be checked by enumeration")]
    NotCheckable(WitnessKind),
    #[error("{0} factors are too many to locate idempotents")]
    TooManySlots(usize),
}

/// Which of the three reduced-ring questions is asked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReducedMode {
    /// `∏ F_{q_i}^* × T × Z^g` with `T` of even order and `g ≥ g(T)`.
    Char0,
    /// `∏ F_{q_i}^* × Z^g`.
    PositiveChar,
    /// Either of the above.
    Any,
}

/// The ring classes the deciders cover.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Class {
    /// Integral domains of characteristic zero.
    Domain0,
    /// Integral domains of positive characteristic.
    DomainP,
    /// Integral domains integral over `Z`.
    DomainInt,
    TorsionFree,
    Reduced(ReducedMode),
}

impl Class {
    pub const ALL: [Class; 7] = [
        Class::Domain0,
        Class::DomainP,
        Class::DomainInt,
        Class::TorsionFree,
        Class::Reduced(ReducedMode::Any),
        Class::Reduced(ReducedMode::Char0),
        Class::Reduced(ReducedMode::PositiveChar),
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Class::Domain0 => "domain0",
            Class::DomainP => "domainp",
            Class::DomainInt => "domain-int",
            Class::TorsionFree => "torsion-free",
            Class::Reduced(ReducedMode::Any) => "reduced",
            Class::Reduced(ReducedMode::Char0) => "reduced-char0",
            Class::Reduced(ReducedMode::PositiveChar) => "reduced-positive-char",
        }
    }
}

impl fmt::Display for Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Class {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Class::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| format!("unknown class {s:?}"))
    }
}

impl serde::Serialize for Class {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

impl<'de> serde::Deserialize<'de> for Class {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Why a verdict came out the way it did. The set is closed: new classes
/// get new codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Reason {
    Ok,
    OddOrder,
    TorsionNotCyclic,
    RankTooSmall,
    NotFieldUnitsProduct,
    DivisibilityFailed,
    NoSplitFound,
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Reason::Ok => "ok",
            Reason::OddOrder => "odd_order",
            Reason::TorsionNotCyclic => "torsion_not_cyclic",
            Reason::RankTooSmall => "rank_too_small",
            Reason::NotFieldUnitsProduct => "not_field_units_product",
            Reason::DivisibilityFailed => "divisibility_failed",
            Reason::NoSplitFound => "no_split_found",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessKind {
    /// A product of cyclotomic rings of integers.
    MaximalOrder,
    /// `Z[x]/(Φ_{m_1}⋯Φ_{m_r})`.
    QuotientRing,
    /// The subring of a product of cyclotomic rings generated by the given
    /// roots of unity.
    GeneratedSubring,
    /// A base order with Laurent variables adjoined on one connected
    /// component.
    LaurentExtension,
    /// Finite fields, possibly times a torsion-free order.
    FieldProduct,
    /// A construction described in words only.
    Textual,
}

impl fmt::Display for WitnessKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            WitnessKind::MaximalOrder => "maximal_order",
            WitnessKind::QuotientRing => "quotient_ring",
            WitnessKind::GeneratedSubring => "generated_subring",
            WitnessKind::LaurentExtension => "laurent_extension",
            WitnessKind::FieldProduct => "field_product",
            WitnessKind::Textual => "textual",
        };
        f.write_str(s)
    }
}

/// A ring with the claimed unit group.
///
/// `moduli` and `generators` describe an order inside `∏ Z[ζ_{m_i}]`: the
/// whole product when `generators` is empty, otherwise the subring they
/// generate. `laurent_vars` Laurent variables are adjoined on top; `notes`
/// says where, and names any finite fields in the product.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct WitnessDescription {
    pub kind: WitnessKind,
    pub moduli: Vec<u64>,
    pub generators: Vec<CycloElem>,
    pub laurent_vars: u64,
    pub verified: bool,
    pub notes: String,
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Verdict {
    pub class: Class,
    pub group: FGAbelianGroup,
    pub realizable: bool,
    /// Least free rank for the given torsion within the class, when there
    /// is one.
    pub min_rank: Option<u64>,
    pub reason: Reason,
    pub witness: Option<WitnessDescription>,
}

impl Verdict {
    pub(crate) fn no(class: Class, group: &FGAbelianGroup, reason: Reason, min_rank: Option<u64>) -> Self {
        Verdict { class, group: group.clone(), realizable: false, min_rank, reason, witness: None }
    }

    pub(crate) fn yes(class: Class, group: &FGAbelianGroup, min_rank: u64, witness: WitnessDescription) -> Self {
        Verdict {
            class,
            group: group.clone(),
            realizable: true,
            min_rank: Some(min_rank),
            reason: Reason::Ok,
            witness: Some(witness),
        }
    }
}
