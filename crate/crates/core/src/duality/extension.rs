use crate::error::{Error, Result};
use crate::exactlin::SparseVec;
use crate::lie::{centre, LieAlgebra};
use crate::sullivan::{LambdaExtension, Poly, SullivanAlgebra};

use super::homotopy_lie_algebra;

/// Image of the connecting map `∂ = d_0^∨ : V^∨ → L_Z` against `centre(L_Z)`.
#[derive(Clone, Debug)]
pub struct CentralImageReport {
    /// `(∧Z, d̄_1)` has zero differential, so `L_Z` is abelian.
    pub fibre_abelian: bool,
    /// `L_Z`, when the fibre has no generators of degree 0.
    pub lie: Option<LieAlgebra>,
    /// `∂(v^∨)` in the basis of `L_Z` (of `Z^∨` when `lie` is `None`), per base generator.
    pub image: Vec<SparseVec>,
    pub centre_dim: usize,
    pub holds: bool,
}

/// For `∧V → ∧V ⊗ ∧Z → ∧Z` with `∧V` and `(∧Z, d̄)` minimal, checks that the
/// dual of the linear part `d_0 : Z → V` lands in the centre of the homotopy
/// Lie algebra of `(∧Z, d̄_1)`.
pub fn central_image_check(ext: &LambdaExtension) -> Result<CentralImageReport> {
    ext.base.require_minimal()?;
    let basis = ext.fibre_basis();
    let dbar = ext.quotient_differential();
    if let Some(i) = dbar.iter().position(|p| !p.wedge_component(1).is_zero()) {
        return Err(Error::NotMinimal(basis.name(i).to_string()));
    }
    let d0 = ext.linear_part();
    let functionals: Vec<SparseVec> = (0..ext.base.len()).map(|b| d0.row(b).clone()).collect();
    let d1: Vec<Poly> = dbar.iter().map(|p| p.wedge_component(2)).collect();
    if d1.iter().all(Poly::is_zero) {
        return Ok(CentralImageReport {
            fibre_abelian: true,
            lie: None,
            centre_dim: basis.len(),
            image: functionals,
            holds: true,
        });
    }
    if let Some(e) = basis.iter().find(|e| e.degree < 1) {
        return Err(Error::Invalid(format!(
            "fibre generator {} has degree {}",
            e.name, e.degree
        )));
    }
    let fibre = SullivanAlgebra::new(basis.clone(), d1)?;
    let levels = fibre.filtration().levels.len().max(1);
    let h = homotopy_lie_algebra(&fibre, levels)?;
    let z = centre(&h.lie);
    let image: Vec<SparseVec> = functionals
        .iter()
        .map(|xi| {
            let mut c = SparseVec::new();
            for (k, f) in h.dual_vectors.iter().enumerate() {
                c.add_at(k, &f.dot(xi));
            }
            c
        })
        .collect();
    let holds = image.iter().all(|c| z.contains(c));
    Ok(CentralImageReport {
        fibre_abelian: false,
        centre_dim: z.dim(),
        lie: Some(h.lie),
        image,
        holds,
    })
}
