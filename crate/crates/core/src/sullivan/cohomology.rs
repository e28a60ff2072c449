use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlin::{extend_basis, kernel_basis, Span, SparseMatrix, SparseVec};

use super::algebra::SullivanAlgebra;
use super::poly::{monomial_weight, monomials_of_degree, Monomial, Poly};

/// Window `(N, K)`: maximum cohomological degree and maximum wedge/bracket
/// length (or weight, for weighted algebras).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Truncation {
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(rename = "K")]
    pub k: usize,
}

impl Truncation {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        if n == 0 || k == 0 {
            return Err(Error::Invalid("truncation needs N >= 1 and K >= 1".into()));
        }
        Ok(Truncation { n, k })
    }
}

impl std::fmt::Display for Truncation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "N={},K={}", self.n, self.k)
    }
}

/// Which monomials make up a block of cochains.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BlockSelector {
    pub degree: i32,
    /// Exact weight (weighted algebras only).
    pub weight: Option<u32>,
    /// Exact wedge degree.
    pub wedge: Option<usize>,
}

/// Cohomology of one block `C → C'` of the cochain complex.
#[derive(Clone, Debug)]
pub struct BlockCohomology {
    pub cochains: Vec<Monomial>,
    pub cocycles: Vec<SparseVec>,
    pub boundaries: Vec<SparseVec>,
    /// Cocycles completing a basis of the boundaries to one of the cocycles.
    pub representatives: Vec<SparseVec>,
}

impl BlockCohomology {
    pub fn dim(&self) -> usize {
        self.representatives.len()
    }

    pub fn to_poly(&self, v: &SparseVec) -> Poly {
        let mut p = Poly::zero();
        for (i, c) in v.iter() {
            p.add_term(self.cochains[i].clone(), c.clone());
        }
        p
    }

    pub fn from_poly(&self, p: &Poly) -> Option<SparseVec> {
        let index: BTreeMap<&Monomial, usize> =
            self.cochains.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut v = SparseVec::new();
        for (m, c) in p.iter() {
            v.add_at(*index.get(m)?, c);
        }
        Some(v)
    }
}

pub fn block_monomials(a: &SullivanAlgebra, sel: BlockSelector) -> Vec<Monomial> {
    let gens = a.generators();
    monomials_of_degree(gens, sel.degree, sel.weight)
        .into_iter()
        .filter(|m| sel.weight.map_or(true, |w| monomial_weight(gens, m) == Some(w)))
        .filter(|m| sel.wedge.map_or(true, |k| m.len() == k))
        .collect()
}

/// Matrix of `d` from the block `from` to the block `to`. Terms of `d`
/// falling outside `to` are an error of the caller's selectors.
pub fn differential_matrix(a: &SullivanAlgebra, from: &[Monomial], to: &[Monomial]) -> SparseMatrix {
    let index: BTreeMap<&Monomial, usize> = to.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let cols: Vec<SparseVec> = from
        .iter()
        .map(|m| {
            let mut v = SparseVec::new();
            for (t, c) in a.d_monomial(m).iter() {
                let i = index
                    .get(t)
                    .unwrap_or_else(|| panic!("d leaves the target block"));
                v.add_at(*i, c);
            }
            v
        })
        .collect();
    SparseMatrix::from_columns(to.len(), &cols)
}

fn shift(sel: BlockSelector, by: i32) -> BlockSelector {
    BlockSelector {
        degree: sel.degree + by,
        weight: sel.weight,
        wedge: sel.wedge.and_then(|k| (k as i64 + by as i64).try_into().ok()),
    }
}

/// `H` of a block. With a wedge selector, `d` must raise wedge degree by
/// one (quadratic algebras).
pub fn block_cohomology(a: &SullivanAlgebra, sel: BlockSelector) -> BlockCohomology {
    let cochains = block_monomials(a, sel);
    let next = block_monomials(a, shift(sel, 1));
    let d = differential_matrix(a, &cochains, &next);
    let cocycles = kernel_basis(&d);
    let boundaries = match shift(sel, -1) {
        prev if prev.degree >= 0 && (sel.wedge.is_none() || prev.wedge.is_some()) => {
            let below = block_monomials(a, prev);
            let dm = differential_matrix(a, &below, &cochains);
            let span = Span::from_vectors(
                (0..dm.ncols()).map(|j| dm.column(j)).collect::<Vec<_>>().iter(),
            );
            span.basis()
        }
        _ => Vec::new(),
    };
    let representatives = extend_basis(&Span::from_vectors(&boundaries), &cocycles);
    BlockCohomology {
        cochains,
        cocycles,
        boundaries,
        representatives,
    }
}

/// Weights to iterate over: every weight up to `K` for weighted algebras.
fn weight_blocks(a: &SullivanAlgebra, t: &Truncation, degree: usize) -> Vec<Option<u32>> {
    if a.is_weighted() {
        let lo = if degree == 0 { 0 } else { 1 };
        (lo..=t.k as u32).map(Some).collect()
    } else {
        vec![None]
    }
}

/// Cohomology in one degree, with cocycle representatives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeCohomology {
    pub degree: usize,
    pub dim: usize,
    pub representatives: Vec<Poly>,
}

/// `H^k(∧V, d)` for `k ≤ N`. For weighted algebras only weights `≤ K` are
/// computed; since `d` preserves weight the answer is exact there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cohomology {
    pub truncation: Truncation,
    pub weight_bound: Option<usize>,
    pub degrees: Vec<DegreeCohomology>,
}

impl Cohomology {
    pub fn dims(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.dim).collect()
    }
}

pub fn cohomology(a: &SullivanAlgebra, t: &Truncation) -> Cohomology {
    let mut degrees = Vec::new();
    for deg in 0..=t.n {
        let mut reps = Vec::new();
        for w in weight_blocks(a, t, deg) {
            let sel = BlockSelector {
                degree: deg as i32,
                weight: w,
                wedge: None,
            };
            let block = block_cohomology(a, sel);
            reps.extend(block.representatives.iter().map(|v| block.to_poly(v)));
        }
        degrees.push(DegreeCohomology {
            degree: deg,
            dim: reps.len(),
            representatives: reps,
        });
    }
    Cohomology {
        truncation: *t,
        weight_bound: a.is_weighted().then_some(t.k),
        degrees,
    }
}

/// Dimensions of `H^{[k]}` per degree and wedge degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WedgeCohomology {
    pub truncation: Truncation,
    pub weight_bound: Option<usize>,
    /// `(degree, wedge) -> dim`, only nonzero entries with `1 ≤ wedge ≤ K`.
    pub dims: BTreeMap<(usize, usize), usize>,
    /// Representatives of `H^{[1]}`, i.e. closed generators, by degree.
    pub h1_basis: Vec<(usize, Poly)>,
    /// Representatives of the classes in wedge degree `≥ 2`, in order of
    /// (degree, wedge).
    pub higher: Vec<(usize, usize, Poly)>,
}

impl WedgeCohomology {
    pub fn dim(&self, degree: usize, wedge: usize) -> usize {
        self.dims.get(&(degree, wedge)).copied().unwrap_or(0)
    }
}

pub fn wedge_graded_cohomology(a: &SullivanAlgebra, t: &Truncation) -> Result<WedgeCohomology> {
    a.require_quadratic()?;
    let mut out = WedgeCohomology {
        truncation: *t,
        weight_bound: a.is_weighted().then_some(t.k),
        dims: BTreeMap::new(),
        h1_basis: Vec::new(),
        higher: Vec::new(),
    };
    for deg in 1..=t.n {
        for k in 1..=t.k.min(deg) {
            for w in weight_blocks(a, t, deg) {
                if matches!(w, Some(w) if (w as usize) < k) {
                    continue;
                }
                let sel = BlockSelector {
                    degree: deg as i32,
                    weight: w,
                    wedge: Some(k),
                };
                let block = block_cohomology(a, sel);
                if block.dim() == 0 {
                    continue;
                }
                *out.dims.entry((deg, k)).or_insert(0) += block.dim();
                for v in &block.representatives {
                    let p = block.to_poly(v);
                    if k == 1 {
                        out.h1_basis.push((deg, p));
                    } else {
                        out.higher.push((deg, k, p));
                    }
                }
            }
        }
    }
    Ok(out)
}
