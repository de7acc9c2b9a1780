//! Unit groups of finitely generated abelian type.
//!
//! Given a finitely generated abelian group `T × Z^g`, this crate decides
//! whether it is the unit group of an integral domain, of a torsion-free
//! ring or of a reduced ring, computes the least admissible free rank,
//! and produces witness rings. Witnesses living inside products of
//! cyclotomic rings `Z[ζ_{m_1}] × … × Z[ζ_{m_r}]` are checked by exact
//! exhaustive enumeration of their torsion units.
//!
//! Modules, bottom-up:
//!
//! * [`numt`]: factorization, totients, cyclotomic polynomials,
//!   polynomial arithmetic over `Z` and `Q`, resultants.
//! * [`absgroup`]: finite abelian groups in primary form, parsing,
//!   the standard decomposition and the constant `g(T)`.
//! * [`cycring`]: products of cyclotomic rings, the CRT embedding of
//!   `Z[x]/(Φ_{m_1}⋯Φ_{m_r})`, integer lattices in Hermite form and
//!   brute-force torsion units.
//! * [`classify`]: the deciders, admissibility, witness builders and the
//!   minimal-rank search.

pub mod absgroup;
pub mod classify;
pub mod cycring;
pub mod numt;

pub use absgroup::{FGAbelianGroup, FiniteAbelianGroup, StandardDecomposition};
pub use classify::{Class, ReducedMode, Reason, Verdict, WitnessDescription, WitnessKind};
pub use cycring::{CycloElem, CycloProduct, ImageLattice};
pub use numt::{IntPoly, RatPoly};

/// Default number of root-of-unity candidates an enumeration may visit.
pub const DEFAULT_BUDGET: u64 = 1_000_000;
