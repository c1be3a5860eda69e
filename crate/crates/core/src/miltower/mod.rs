//! Towers of chain complexes and the constructions around the exact sequence
//! `0 → lim¹ H_{k+1}(Xₙ) → Hₖ(lim Xₙ) → lim Hₖ(Xₙ) → 0`.
//!
//! Spaces are modelled by chain complexes of free abelian groups, homotopy
//! groups by homology, and fibrations by chain maps that are onto in every
//! positive degree. Under this dictionary:
//!
//! | topology                 | chain model                      |
//! |--------------------------|----------------------------------|
//! | composing two homotopies | adding chains                    |
//! | reversing a homotopy     | negating a chain                 |
//! | nullhomotopy of `α`      | chain `b` with `∂b = z`          |
//! | point of `lim Xₙ`        | compatible cycles [`LimCycleRecipe`] |
//!
//! Nothing here materializes a limit for periodic tails. Every construction
//! works on per-level data up to the window top `N` and returns witnesses
//! that can be rechecked exactly.

mod milnor;
mod tower;
mod witness;

use thiserror::Error;

use crate::chaincx::CxError;
use crate::gtower::GtError;
use crate::intlin::LinError;

pub use milnor::{milnor_window_check, window_limit, Check, MilnorReport};
pub use tower::{fibration_replace, ChainTower, TowerMap};
pub use witness::{
    bounding_family, lift_compatible_classes, phi, phi_change_witness, phi_equalize, phi_preimage, project,
    push_family, push_recipe, tower_equiv_lift, Lim1Witness, LimCycleRecipe, NullhomotopyFamily,
    OrbitEqualityWitness, TowerHomotopy,
};

/// Default window depth for generated towers.
pub const DEFAULT_WINDOW: usize = 6;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MtError {
    #[error("malformed tower: {0}")]
    Invalid(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("level out of range: {0}")]
    Level(String),
    #[error("no lift: {0}")]
    NoLift(String),
    #[error("classes not compatible: {0}")]
    NotCompatible(String),
    #[error("not in the kernel of the projection: {0}")]
    NotInKernel(String),
    #[error("invalid witness: {0}")]
    WitnessInvalid(String),
    #[error("not a levelwise quasi-isomorphism: {0}")]
    NotEquivalence(String),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error(transparent)]
    Chain(#[from] CxError),
    #[error(transparent)]
    Tower(#[from] GtError),
    #[error(transparent)]
    Lin(#[from] LinError),
}

#[cfg(test)]
mod tests;
