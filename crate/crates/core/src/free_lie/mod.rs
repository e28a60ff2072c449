//! Free graded Lie algebras, their nilpotent truncations, and free products.

mod lyndon;
mod nilpotent;

pub use lyndon::{
    commutator, is_lyndon, lyndon_words, standard_bracketing, tensor_mul, Bracketing,
    FreeLiePresentation, LyndonBasisElement, Tensor,
};
pub use nilpotent::{
    disjoint_union_basis, free_nilpotent, free_product_nilpotent, FreeNilpotent, FreeProduct,
};

#[cfg(test)]
mod tests;
