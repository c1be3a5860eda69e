//! Towers of groups `… → G₂ → G₁ → G₀` stored as a finite window plus a
//! tail policy, the product-group action on families, and lim / lim¹.

mod finite;
mod limits;
mod tower;

use thiserror::Error;

use crate::intlin::LinError;

pub use finite::{all_homomorphisms, CayleyGroup, CayleyHom};
pub use limits::{
    analyze_endomorphism, lim1_abelian, lim1_orbits_window, lim_of_finite_tower, lim_of_tower, mittag_leffler_check,
    window_difference_map, AbelianLimit, FiniteLimit, Lim1Abelian, Lim1Status, LimitMethod, MlCertificate, MlReport,
    OrbitPartition, DEFAULT_ORBIT_BOUND,
};
pub use tower::{abelian_family, tower_act, AbelianTower, FiniteGroupTower, GroupTower, TailPolicy, TowerElementFamily};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GtError {
    #[error("malformed tower: {0}")]
    Tower(String),
    #[error("invalid element: {0}")]
    Element(String),
    #[error("window product has {size} elements, above the bound {bound}")]
    TooLarge { size: usize, bound: usize },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Lin(#[from] LinError),
}
