//! Chevalley–Eilenberg cochains and homotopy Lie algebras: the two directions
//! of the correspondence between nilpotent Lie algebras and quadratic
//! Sullivan algebras, with the constructions checked across it.

mod eta;
mod extension;
mod free_product;
mod profree;

pub use eta::{eta_check, EtaBlock, EtaReport};
pub use extension::{central_image_check, CentralImageReport};
pub use free_product::{depth_weighted, free_product_via_models, FreeProductComparison};
pub use profree::{profree_check, ProfreeCertificate, ProfreeWitness};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactlin::rational::sign;
use crate::exactlin::{BasisElement, GradedBasis, Rational, Span, SparseMatrix, SparseVec};
use crate::lie::{require_nilpotent, LieAlgebra, LieMorphism};
use crate::sullivan::{CdgaMorphism, Poly, SullivanAlgebra};

/// `C*(L) = (∧(sL)^∨, d)`. Generator `k` is dual to basis element `k` of `L`,
/// has the same name and weight, and degree `|x_k| + 1`.
pub fn chevalley_eilenberg(l: &LieAlgebra) -> Result<SullivanAlgebra> {
    if let Err(v) = l.validate() {
        return Err(Error::Validation(v.to_string()));
    }
    require_nilpotent(l)?;
    let elements = l
        .basis()
        .iter()
        .map(|e| BasisElement {
            name: e.name.clone(),
            degree: e.degree + 1,
            weight: e.weight,
        })
        .collect();
    let basis = GradedBasis::new(elements)?;
    let mut diffs = vec![Poly::zero(); l.dim()];
    let two = Rational::from_integer(2.into());
    for (i, j, out) in l.stored_brackets() {
        let (di, dj) = (i64::from(l.degree(i)), i64::from(l.degree(j)));
        for (k, c) in out.iter() {
            if i == j {
                diffs[k].add_term(vec![i, i], c / &two);
            } else {
                diffs[k].add_term(vec![i, j], c * sign(di * dj + di));
            }
        }
    }
    SullivanAlgebra::new(basis, diffs)
}

/// `L/L^{(K+1)}` read off a quadratic algebra as the dual of `V_{K-1}`.
#[derive(Clone, Debug)]
pub struct HomotopyLie {
    pub lie: LieAlgebra,
    /// `f_k ∈ V` (generator coordinates) dual to basis element `k` of `lie`.
    pub dual_vectors: Vec<SparseVec>,
    /// Basis of `V` adapted to the filtration; starts with `dual_vectors`.
    pub adapted: Vec<SparseVec>,
    /// `dim V_n / V_{n-1}` for `n < K`.
    pub layer_dims: Vec<usize>,
    pub k: usize,
}

impl HomotopyLie {
    /// Coordinates of `v ∈ V` in the adapted basis.
    pub fn adapted_coordinates(&self, v: &SparseVec) -> SparseVec {
        Span::from_vectors(&self.adapted)
            .express(v)
            .expect("adapted basis spans V")
    }

    /// `⟨v, sx_k⟩` for each generator `v`, as a vector over `lie`.
    pub fn pairing_row(&self, generator: usize) -> SparseVec {
        let coords = self.adapted_coordinates(&SparseVec::unit(generator));
        coords.remap(|k| (k < self.lie.dim()).then_some(k))
    }
}

pub fn homotopy_lie_algebra(a: &SullivanAlgebra, k: usize) -> Result<HomotopyLie> {
    if k == 0 {
        return Err(Error::Invalid("K must be positive".into()));
    }
    a.require_quadratic()?;
    a.require_valid()?;
    let filtration = a.filtration();
    let mut span = Span::new();
    let mut layers: Vec<Vec<SparseVec>> = Vec::new();
    for level in &filtration.levels {
        let mut layer = Vec::new();
        for v in level {
            if span.insert(v) {
                layer.push(v.clone());
            }
        }
        layers.push(layer);
    }
    let kept = layers.len().min(k);
    let mut dual_vectors: Vec<SparseVec> = layers[..kept].iter().flatten().cloned().collect();
    dual_vectors.sort_by_key(|v| v.leading().map(|(i, _)| i));
    let mut adapted = dual_vectors.clone();
    let mut rest: Vec<SparseVec> = layers[kept..].iter().flatten().cloned().collect();
    rest.sort_by_key(|v| v.leading().map(|(i, _)| i));
    adapted.extend(rest);
    let m = dual_vectors.len();
    let gens = a.generators();

    let (new_basis, images) = a.change_of_variables(&adapted);
    let mut entries = Vec::new();
    let mut elements = Vec::new();
    for f in &dual_vectors {
        let lead = f.leading().map(|(i, _)| i).expect("nonzero");
        let name = match f.is_unit() {
            Some(i) => gens.name(i).to_string(),
            None => format!("({})", a.format(&linear_poly(f))),
        };
        elements.push(BasisElement {
            name,
            degree: gens.degree(lead) - 1,
            weight: gens.weight(lead),
        });
    }
    let lie_degree = |i: usize| i64::from(new_basis.degree(i) - 1);
    for (kk, f) in dual_vectors.iter().enumerate() {
        let mut df = Poly::zero();
        for (i, c) in f.iter() {
            df.axpy(c, a.d_generator(i));
        }
        let dy = a.substitute(&df, &new_basis, &images);
        for (mono, c) in dy.iter() {
            let (i, j) = (mono[0], mono[1]);
            if i >= m || j >= m {
                return Err(Error::Validation(
                    "filtration level is not closed under d".into(),
                ));
            }
            let value = if i == j {
                c * Rational::from_integer(2.into())
            } else {
                c * sign(lie_degree(i) * lie_degree(j) + lie_degree(i))
            };
            entries.push((i, j, SparseVec::from_pairs([(kk, value)])));
        }
    }
    let mut merged: std::collections::BTreeMap<(usize, usize), SparseVec> = Default::default();
    for (i, j, v) in entries {
        merged.entry((i, j)).or_default().axpy(&Rational::one(), &v);
    }
    let basis = GradedBasis::new(elements)?;
    let lie = LieAlgebra::new(
        basis,
        merged.into_iter().map(|((i, j), v)| (i, j, v)).collect(),
    )?;
    if let Err(v) = lie.validate() {
        return Err(Error::Validation(v.to_string()));
    }
    Ok(HomotopyLie {
        lie,
        dual_vectors,
        adapted,
        layer_dims: layers[..kept].iter().map(Vec::len).collect(),
        k,
    })
}

fn linear_poly(v: &SparseVec) -> Poly {
    let mut p = Poly::zero();
    for (i, c) in v.iter() {
        p.add_term(vec![i], c.clone());
    }
    p
}

/// A nilpotent Lie algebra together with its quadratic model and the
/// identification of `V` with `(sL)^∨`.
#[derive(Clone, Debug)]
pub struct DualityPair {
    pub lie: LieAlgebra,
    pub sullivan: SullivanAlgebra,
    /// `⟨v_a, sx_k⟩`: row `a` (generator), column `k` (basis of `lie`).
    pub pairing: SparseMatrix,
}

impl DualityPair {
    pub fn from_lie(l: &LieAlgebra) -> Result<Self> {
        let sullivan = chevalley_eilenberg(l)?;
        Ok(DualityPair {
            lie: l.clone(),
            pairing: SparseMatrix::identity(l.dim()),
            sullivan,
        })
    }

    /// Pairs `A` with its full homotopy Lie algebra.
    pub fn from_sullivan(a: &SullivanAlgebra) -> Result<Self> {
        let k = a.filtration().levels.len().max(1);
        let h = homotopy_lie_algebra(a, k)?;
        let rows = (0..a.len()).map(|g| h.pairing_row(g)).collect();
        Ok(DualityPair {
            lie: h.lie,
            sullivan: a.clone(),
            pairing: SparseMatrix::from_rows(rows, a.len()),
        })
    }

    /// `⟨v_a v_b, sx ⊗ sy⟩` with Koszul signs.
    fn pair_quadratic(&self, p: &Poly, x: usize, y: usize) -> Rational {
        let g = self.sullivan.generators();
        let sx = i64::from(self.lie.degree(x)) + 1;
        let one = |a: usize, b: usize| -> Rational {
            let pa = self.pairing.get(a, x);
            let pb = self.pairing.get(b, y);
            if pa.is_zero() || pb.is_zero() {
                return Rational::zero();
            }
            pa * pb * sign(i64::from(g.degree(b)) * sx)
        };
        let mut total = Rational::zero();
        for (m, c) in p.iter() {
            if m.len() != 2 {
                continue;
            }
            let (a, b) = (m[0], m[1]);
            let swap = sign(i64::from(g.degree(a)) * i64::from(g.degree(b)));
            total += c * (one(a, b) + swap * one(b, a));
        }
        total
    }

    /// First basis triple `(v, x, y)` where
    /// `⟨dv, sx, sy⟩ ≠ (-1)^{|y|+1} ⟨v, s[x,y]⟩`, if any.
    pub fn check_pairing(&self) -> Option<(String, String, String)> {
        let g = self.sullivan.generators();
        let n = self.lie.dim();
        for v in 0..self.sullivan.len() {
            let dv = self.sullivan.d_generator(v);
            let row = self.pairing.row(v);
            for x in 0..n {
                for y in 0..n {
                    let lhs = self.pair_quadratic(dv, x, y);
                    let bracket = self.lie.bracket_basis(x, y);
                    let rhs = row.dot(&bracket) * sign(i64::from(self.lie.degree(y)) + 1);
                    if lhs != rhs {
                        return Some((
                            g.name(v).to_string(),
                            self.lie.basis().name(x).to_string(),
                            self.lie.basis().name(y).to_string(),
                        ));
                    }
                }
            }
        }
        None
    }
}

/// `L_φ : L_W → L_V` for `φ : ∧V → ∧W`, the dual of the linear part of the
/// quadratic part of `φ`, on `L/L^{(K+1)}`.
pub fn lie_morphism_of(phi: &CdgaMorphism, k: usize) -> Result<LieMorphism> {
    let source = homotopy_lie_algebra(&phi.source.quadratic_part()?, k)?;
    let target = homotopy_lie_algebra(&phi.target.quadratic_part()?, k)?;
    let linear = phi.linear_part();
    let mut matrix = SparseMatrix::zeros(source.lie.dim(), target.lie.dim());
    for (row, f) in source.dual_vectors.iter().enumerate() {
        let image = linear.mul_vec(f);
        let coords = target.adapted_coordinates(&image);
        for (col, c) in coords.iter() {
            if col < target.lie.dim() {
                matrix.set(row, col, c.clone());
            }
        }
    }
    LieMorphism::new(target.lie, source.lie, matrix)
}

#[cfg(test)]
mod tests;
