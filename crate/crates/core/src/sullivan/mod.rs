//! Free commutative graded differential algebras: Sullivan algebras, their
//! cohomology, finite cdgas, minimal models and acyclic closures.

mod acyclic;
mod algebra;
mod cohomology;
mod finite;
mod model;
mod poly;

pub use acyclic::{acyclic_closure, filtration_weights, AcyclicClosure, Holonomy, LambdaExtension};
pub use algebra::{CdgaMorphism, CdgaReport, Filtration, SullivanAlgebra};
pub use cohomology::{
    block_cohomology, block_monomials, cohomology, differential_matrix, wedge_graded_cohomology,
    BlockCohomology, BlockSelector, Cohomology, DegreeCohomology, Truncation, WedgeCohomology,
};
pub use finite::{CdgaElement, FiniteCdga};
pub use model::{
    minimal_model, verify_quasi_isomorphism, wedge_of_spheres_cohomology, wedge_of_spheres_model,
    DegreeComparison, GeneratorOrigin, GeneratorRole, MinimalModel, QuasiIsoReport,
};
pub use poly::{
    format_monomial, format_poly, monomial_degree, monomial_product, monomial_weight,
    monomials_of_degree, mul, word_to_poly, Monomial, Poly,
};
