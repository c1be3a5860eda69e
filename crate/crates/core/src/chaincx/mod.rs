//! Bounded chain complexes of finitely generated free abelian groups,
//! homology through the Smith form, chain maps, bounding-chain and lifting
//! solvers, and the mapping path factorization.

mod complex;
mod fibration;
mod homology;

use thiserror::Error;

use crate::intlin::LinError;

pub use complex::{ChainComplex, ChainMap};
pub use fibration::{path_fibration_replace, PathFactorization};
pub use homology::{
    homology, induced_map, is_quasi_iso, quasi_iso_report, solve_boundary, solve_lift, DegreeReport, Homology,
    HomologyClass, Nullhomotopy, QuasiIsoReport,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CxError {
    #[error("invalid complex or map: {0}")]
    Invalid(String),
    #[error("degree out of range: {0}")]
    Degree(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("not a cycle: {0}")]
    NotACycle(String),
    #[error(transparent)]
    Lin(#[from] LinError),
}
