use crate::error::{Error, Result};
use crate::exactlin::{SparseMatrix, SparseVec};
use crate::free_lie::{free_product_nilpotent, FreeProduct};
use crate::lie::{lower_central_series, require_nilpotent, LieAlgebra, LieMorphism};
use crate::sullivan::{minimal_model, CdgaMorphism, FiniteCdga, Poly, SullivanAlgebra, Truncation};

use super::{chevalley_eilenberg, homotopy_lie_algebra, lie_morphism_of, HomotopyLie};

/// `L` with each basis element weighted by its lower central series depth.
/// Weighted inputs are returned unchanged. Fails when the basis is not
/// compatible with the series (brackets would not add weights).
pub fn depth_weighted(l: &LieAlgebra) -> Result<LieAlgebra> {
    if l.is_weighted() {
        return Ok(l.clone());
    }
    let lcs = require_nilpotent(l)?;
    let weights: Vec<u32> = (0..l.dim())
        .map(|i| lcs.depth(&SparseVec::unit(i)) as u32)
        .collect();
    let basis = l.basis().with_weights(&weights)?;
    let weighted = LieAlgebra::new(
        basis,
        l.stored_brackets()
            .map(|(i, j, v)| (i, j, v.clone()))
            .collect(),
    )?;
    weighted.validate().map_err(|_| {
        Error::Invalid("basis is not adapted to the lower central series; give weights".into())
    })?;
    Ok(weighted)
}

/// Both constructions of `(L ⨿ L')/Γ^{K+1}` and the map between them.
#[derive(Clone, Debug)]
pub struct FreeProductComparison {
    /// Homotopy Lie algebra of the quadratic part of the minimal model of
    /// `C*(L) ×_ℚ C*(L')`.
    pub models: HomotopyLie,
    /// Quotient of the free nilpotent algebra.
    pub direct: FreeProduct,
    /// `direct → models`, sending each input basis element to its image
    /// under the dual of `∧T → C*(L)` (resp. `C*(L')`).
    pub comparison: Option<LieMorphism>,
    pub models_layers: Vec<usize>,
    pub direct_layers: Vec<usize>,
    pub isomorphic: bool,
    pub problem: Option<String>,
}

pub fn free_product_via_models(
    l: &LieAlgebra,
    r: &LieAlgebra,
    t: &Truncation,
) -> Result<FreeProductComparison> {
    let k = t.k;
    let lw = depth_weighted(l)?;
    let rw = depth_weighted(r)?;
    let ce_l = chevalley_eilenberg(&lw)?;
    let ce_r = chevalley_eilenberg(&rw)?;
    let max_degree = t.n as i32 + 2;
    let (al, monos_l) = FiniteCdga::truncate_sullivan(&ce_l, max_degree, Some(k as u32))?;
    let (ar, monos_r) = FiniteCdga::truncate_sullivan(&ce_r, max_degree, Some(k as u32))?;
    let (fp, left, right) = al.fiber_product(&ar)?;
    let mm = minimal_model(&fp, t)?;
    let models = homotopy_lie_algebra(&mm.model.quadratic_part()?, k)?;

    // σ followed by the projection onto one factor, read back in ∧W.
    let project = |positions: &[usize], monos: &[Vec<usize>], ce: &SullivanAlgebra| {
        let images = mm
            .sigma
            .iter()
            .map(|s| {
                let mut p = Poly::zero();
                for (j, &pos) in positions.iter().enumerate() {
                    let c = s.get(pos);
                    p.add_term(monos[j].clone(), c);
                }
                p
            })
            .collect();
        CdgaMorphism::new(mm.model.clone(), ce.clone(), images)
    };
    let to_left = lie_morphism_of(&project(&left, &monos_l, &ce_l)?, k)?;
    let to_right = lie_morphism_of(&project(&right, &monos_r, &ce_r)?, k)?;

    let direct = free_product_nilpotent(l, r, k, Some(t.n as i32 - 1))?;
    let mut images = vec![SparseVec::new(); direct.free.presentation.len()];
    for (side, map, gens) in [
        (l, &to_left, &direct.left_generators),
        (r, &to_right, &direct.right_generators),
    ] {
        for i in 0..side.dim() {
            if let Some(h) = map.source.basis().index_of(side.basis().name(i)) {
                images[gens[i]] = map.apply(&SparseVec::unit(h));
            }
        }
    }
    let cols: Vec<SparseVec> = direct
        .representatives
        .iter()
        .map(|b| b.evaluate(&models.lie, &images))
        .collect();
    let matrix = SparseMatrix::from_columns(models.lie.dim(), &cols);
    let models_layers = lower_central_series(&models.lie).layer_dims();
    let direct_layers = lower_central_series(&direct.lie).layer_dims();
    let (comparison, problem) =
        match LieMorphism::new(direct.lie.clone(), models.lie.without_weights(), matrix) {
            Ok(m) => {
                let problem = if !(m.is_injective() && m.is_surjective()) {
                    Some("comparison map is not bijective".to_string())
                } else if models_layers != direct_layers {
                    Some("lower central series layers differ".to_string())
                } else {
                    None
                };
                (Some(m), problem)
            }
            Err(e) => (None, Some(e.to_string())),
        };
    Ok(FreeProductComparison {
        models,
        direct,
        comparison,
        models_layers,
        direct_layers,
        isomorphic: problem.is_none(),
        problem,
    })
}
