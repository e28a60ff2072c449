//! Finite-dimensional graded Lie algebras and their basic structure.

mod algebra;
mod structure;

pub use algebra::{format_combination, LieAlgebra, Violation};
pub use structure::{
    centre, lcs_adapted_basis, AdaptedBasis, lower_central_series, nilpotent_quotient, quotient_with_priority, require_nilpotent,
    LieIdeal, LieMorphism, LowerCentralSeries, Subspace,
};
