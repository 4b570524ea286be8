//! Nilpotent commutative ring structures on finite abelian p-groups and the
//! lattice correspondence they induce on Hopf Galois structures.
//!
//! A nilpotent ring `A = (G, +, ·)` defines the circle group
//! `g ∘ h = g + h + g·h`. Its image under `τ(g)(x) = g ∘ x` is a regular
//! subgroup of `Hol(G)`, and the λ(Γ)-invariant subgroups of α(G) (the
//! avatars of sub-Hopf algebras) coincide with the ideals of `A`.
//!
//! Modules, bottom up:
//!
//! * [`abelian`]: residue-vector arithmetic, subgroup enumeration, and
//!   isomorphism types of abelian p-groups given by operation tables.
//! * [`nilring`]: structure-constant rings, validation, circle group,
//!   ideals, canonical families, and exhaustive enumeration.
//! * [`holomorph`]: affine maps, the τ embedding, and regular subgroups.
//! * [`correspondence`]: λ/α permutations, conjugation identities, and the
//!   lattice and counting checks.
//! * [`cli`]: the report front end used by the `hopf-nilring` binary.

pub mod abelian;
pub mod cli;
pub mod correspondence;
mod error;
pub mod holomorph;
pub mod nilring;
mod util;

pub use abelian::{CayleyTable, Elem, GroupSpec, Subgroup};
pub use correspondence::{Context, LatticeReport};
pub use error::{Error, Result};
pub use holomorph::{AffineMap, RegularSubgroup};
pub use nilring::{Ideal, RingStructure};

use serde::Serialize;

/// Size limits for the exhaustive searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Caps {
    /// Largest group order that may be enumerated element by element.
    pub enumeration: u64,
    /// Largest number of structure-constant tensors `enumerate_structures` may visit.
    pub search: u64,
    /// Largest holomorph order `enumerate_regular_subgroups` may build.
    pub holomorph: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            enumeration: 10_000,
            search: 1 << 24,
            holomorph: 2_000,
        }
    }
}
