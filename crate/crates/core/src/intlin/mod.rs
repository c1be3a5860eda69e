//! Exact integer linear algebra.
//!
//! Everything in the crate bottoms out here: Smith and Hermite normal forms,
//! the canonical integer solver, and finitely generated abelian groups with
//! their homomorphisms, kernels, images and cokernels.

mod abgroup;
mod matrix;
mod poly;
mod smith;
mod solve;

pub use abgroup::{classify_presentation, cokernel_classify, DirectSum, FgAbGroup, GroupHom, Quotient, Subgroup};
pub use matrix::{vec_ops, IntMatrix, IntVector};
pub use poly::{characteristic_polynomial, factor_monic, IntPoly};
pub use smith::{column_lattice_basis, hermite_normal_form, smith_normal_form, SmithForm};
pub use solve::{integer_kernel, solve_integer_system, solve_with};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinError {
    #[error("dimension error: {0}")]
    Dimension(String),
    #[error("invalid homomorphism: {0}")]
    Hom(String),
    #[error("invalid group: {0}")]
    Group(String),
    #[error("invalid element: {0}")]
    Element(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}
