use crate::error::{Error, Result};
use crate::exactlin::{
    echelon_basis, kernel_basis, quotient_complement, rank, GradedBasis, Span, SparseMatrix,
    SparseVec,
};

use super::algebra::LieAlgebra;

/// Subspace of a Lie algebra, stored as the reduced echelon basis of its span.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<SparseVec>,
}

impl Subspace {
    pub fn span(ambient: usize, vectors: &[SparseVec]) -> Self {
        Subspace {
            ambient,
            basis: echelon_basis(vectors, ambient),
        }
    }

    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: (0..ambient).map(SparseVec::unit).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[SparseVec] {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        Span::from_vectors(&self.basis).contains(v)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        let span = Span::from_vectors(&self.basis);
        other.basis.iter().all(|v| span.contains(v))
    }

    pub fn image(&self, m: &SparseMatrix) -> Subspace {
        let vs: Vec<SparseVec> = self.basis.iter().map(|v| m.mul_vec(v)).collect();
        Subspace::span(m.nrows(), &vs)
    }
}

/// Ideal of a Lie algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieIdeal {
    subspace: Subspace,
}

impl LieIdeal {
    /// Checks `[L, I] ⊆ I`, naming a witness pair on failure.
    pub fn new(lie: &LieAlgebra, subspace: Subspace) -> Result<Self> {
        let span = Span::from_vectors(subspace.basis());
        for i in 0..lie.dim() {
            for y in subspace.basis() {
                if !span.contains(&lie.bracket(&SparseVec::unit(i), y)) {
                    return Err(Error::NotAnIdeal(
                        lie.basis().name(i).to_string(),
                        lie.format_vector(y),
                    ));
                }
            }
        }
        Ok(LieIdeal { subspace })
    }

    /// Smallest ideal containing `generators`.
    pub fn generated_by(lie: &LieAlgebra, generators: &[SparseVec]) -> Self {
        let mut span = Span::new();
        let mut frontier: Vec<SparseVec> = Vec::new();
        for g in generators {
            if span.insert(g) {
                frontier.push(g.clone());
            }
        }
        while let Some(y) = frontier.pop() {
            for i in 0..lie.dim() {
                let b = lie.bracket(&SparseVec::unit(i), &y);
                if !b.is_zero() && span.insert(&b) {
                    frontier.push(b);
                }
            }
        }
        LieIdeal {
            subspace: Subspace::span(lie.dim(), &span.basis()),
        }
    }

    pub fn zero(lie: &LieAlgebra) -> Self {
        LieIdeal {
            subspace: Subspace::zero(lie.dim()),
        }
    }

    pub fn whole(lie: &LieAlgebra) -> Self {
        LieIdeal {
            subspace: Subspace::full(lie.dim()),
        }
    }

    pub fn subspace(&self) -> &Subspace {
        &self.subspace
    }

    pub fn dim(&self) -> usize {
        self.subspace.dim()
    }
}

/// `L = L^1 ⊇ L^2 ⊇ ...` with `L^{k+1} = [L, L^k]`. For a nilpotent algebra
/// the last term is zero; otherwise the series stops at the first repeat.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LowerCentralSeries {
    pub terms: Vec<LieIdeal>,
    pub nilpotent: bool,
}

impl LowerCentralSeries {
    /// Nilpotency class: number of nonzero terms.
    pub fn class(&self) -> usize {
        self.terms.iter().filter(|t| t.dim() > 0).count()
    }

    /// `dim L^k / L^{k+1}` for each nonzero term.
    pub fn layer_dims(&self) -> Vec<usize> {
        let mut dims = Vec::new();
        for (k, t) in self.terms.iter().enumerate() {
            if t.dim() == 0 {
                break;
            }
            let next = self.terms.get(k + 1).map_or(0, |n| n.dim());
            dims.push(t.dim() - next);
        }
        dims
    }

    /// Term `L^k` (1-based); zero beyond the series for nilpotent algebras.
    pub fn term(&self, k: usize) -> &LieIdeal {
        assert!(k >= 1);
        let last = self.terms.len() - 1;
        &self.terms[(k - 1).min(last)]
    }

    /// Largest `k` with `v ∈ L^k` (`usize::MAX` for zero).
    pub fn depth(&self, v: &SparseVec) -> usize {
        if v.is_zero() {
            return usize::MAX;
        }
        let mut depth = 0;
        for (k, t) in self.terms.iter().enumerate() {
            if t.subspace().contains(v) {
                depth = k + 1;
            } else {
                break;
            }
        }
        depth
    }
}

pub fn lower_central_series(lie: &LieAlgebra) -> LowerCentralSeries {
    let n = lie.dim();
    let mut terms = vec![LieIdeal::whole(lie)];
    loop {
        let last = terms.last().expect("nonempty");
        if last.dim() == 0 {
            return LowerCentralSeries {
                terms,
                nilpotent: true,
            };
        }
        let mut gens = Vec::new();
        for i in 0..n {
            for y in last.subspace().basis() {
                let b = lie.bracket(&SparseVec::unit(i), y);
                if !b.is_zero() {
                    gens.push(b);
                }
            }
        }
        let next = Subspace::span(n, &gens);
        if next.dim() == last.dim() {
            return LowerCentralSeries {
                terms,
                nilpotent: false,
            };
        }
        terms.push(LieIdeal { subspace: next });
    }
}

pub fn require_nilpotent(lie: &LieAlgebra) -> Result<LowerCentralSeries> {
    let lcs = lower_central_series(lie);
    if lcs.nilpotent {
        Ok(lcs)
    } else {
        Err(Error::NotNilpotent(lcs.terms.last().map_or(0, |t| t.dim())))
    }
}

/// Basis adapted to the lower central series: vectors of depth 1 complement
/// `L^2`, vectors of depth 2 complement `L^3` inside `L^2`, and so on.
/// Standard basis vectors are preferred, and the result is ordered by
/// leading coordinate, so an already adapted basis is returned unchanged.
pub fn lcs_adapted_basis(lie: &LieAlgebra, lcs: &LowerCentralSeries) -> Vec<(SparseVec, usize)> {
    let n = lie.dim();
    let mut out: Vec<(SparseVec, usize)> = Vec::new();
    for (k, term) in lcs.terms.iter().enumerate() {
        if term.dim() == 0 {
            break;
        }
        let next = lcs
            .terms
            .get(k + 1)
            .map(|t| t.subspace().basis().to_vec())
            .unwrap_or_default();
        let mut span = Span::from_vectors(&next);
        let mut candidates: Vec<SparseVec> = (0..n)
            .map(SparseVec::unit)
            .filter(|e| term.subspace().contains(e))
            .collect();
        candidates.extend(term.subspace().basis().iter().cloned());
        for c in candidates {
            if lie.degree_of(&c).is_some() && span.insert(&c) {
                out.push((c, k + 1));
            }
        }
    }
    out.sort_by_key(|(v, _)| v.leading().map(|(i, _)| i));
    out
}

/// Degree-preserving linear map between Lie algebras; `matrix` is
/// `target.dim() x source.dim()`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieMorphism {
    pub source: LieAlgebra,
    pub target: LieAlgebra,
    pub matrix: SparseMatrix,
}

impl LieMorphism {
    pub fn new(source: LieAlgebra, target: LieAlgebra, matrix: SparseMatrix) -> Result<Self> {
        if matrix.nrows() != target.dim() || matrix.ncols() != source.dim() {
            return Err(Error::Invalid("morphism matrix has the wrong shape".into()));
        }
        let m = LieMorphism {
            source,
            target,
            matrix,
        };
        m.check()?;
        Ok(m)
    }

    pub fn identity(lie: &LieAlgebra) -> Self {
        LieMorphism {
            source: lie.clone(),
            target: lie.clone(),
            matrix: SparseMatrix::identity(lie.dim()),
        }
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        self.matrix.mul_vec(v)
    }

    /// Degree preservation and `φ[x,y] = [φx, φy]` on basis pairs.
    pub fn check(&self) -> Result<()> {
        for (i, j, c) in self.matrix.entries() {
            let _ = c;
            if self.target.degree(i) != self.source.degree(j) {
                return Err(Error::Validation(format!(
                    "morphism does not preserve degree on {}",
                    self.source.basis().name(j)
                )));
            }
        }
        let n = self.source.dim();
        for i in 0..n {
            for j in i..n {
                let lhs = self.apply(&self.source.bracket_basis(i, j));
                let rhs = self.target.bracket(
                    &self.matrix.column(i),
                    &self.matrix.column(j),
                );
                if lhs != rhs {
                    return Err(Error::Validation(format!(
                        "morphism does not commute with [{},{}]",
                        self.source.basis().name(i),
                        self.source.basis().name(j)
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn is_surjective(&self) -> bool {
        rank(&self.matrix) == self.target.dim()
    }

    pub fn is_injective(&self) -> bool {
        rank(&self.matrix) == self.source.dim()
    }

    /// `other ∘ self`
    pub fn then(&self, other: &LieMorphism) -> LieMorphism {
        LieMorphism {
            source: self.source.clone(),
            target: other.target.clone(),
            matrix: other.matrix.mul(&self.matrix),
        }
    }
}

/// `L/I` on the standard complement of `I`, together with the projection.
pub fn nilpotent_quotient(lie: &LieAlgebra, ideal: &Subspace) -> Result<(LieAlgebra, LieMorphism)> {
    let order: Vec<usize> = (0..lie.dim()).collect();
    let (q, rho, _) = quotient_with_priority(lie, ideal, &order)?;
    Ok((q, rho))
}

/// Like [`nilpotent_quotient`], but the echelon form of `I` is taken with
/// columns ordered by `elimination_order`: basis vectors listed early are
/// eliminated first, so those listed late survive in the quotient basis.
/// Also returns the surviving basis indices of `L`.
pub fn quotient_with_priority(
    lie: &LieAlgebra,
    ideal: &Subspace,
    elimination_order: &[usize],
) -> Result<(LieAlgebra, LieMorphism, Vec<usize>)> {
    let ideal = LieIdeal::new(lie, ideal.clone())?;
    let n = lie.dim();
    let mut rank_of = vec![0; n];
    for (r, &i) in elimination_order.iter().enumerate() {
        rank_of[i] = r;
    }
    let permuted: Vec<SparseVec> = ideal
        .subspace()
        .basis()
        .iter()
        .map(|v| v.remap(|i| Some(rank_of[i])))
        .collect();
    let mut keep: Vec<usize> = quotient_complement(&permuted, n)
        .iter()
        .map(|e| elimination_order[e.leading().expect("unit").0])
        .collect();
    keep.sort_unstable();
    let mut position = vec![None; n];
    for (q, &i) in keep.iter().enumerate() {
        position[i] = Some(q);
    }
    let span = Span::from_vectors(&permuted);
    let project = |v: &SparseVec| -> SparseVec {
        let (rem, _) = span.reduce(&v.remap(|i| Some(rank_of[i])));
        rem.remap(|r| position[elimination_order[r]])
    };
    let elements = keep.iter().map(|&i| lie.basis().get(i).clone()).collect();
    let basis = GradedBasis::new(elements)?;
    let mut entries = Vec::new();
    for (a, &i) in keep.iter().enumerate() {
        for (b, &j) in keep.iter().enumerate().skip(a) {
            let br = project(&lie.bracket_basis(i, j));
            if !br.is_zero() {
                entries.push((a, b, br));
            }
        }
    }
    let quotient = LieAlgebra::new(basis, entries)?;
    if let Err(v) = quotient.validate() {
        return Err(Error::Validation(v.to_string()));
    }
    let columns: Vec<SparseVec> = (0..n).map(|i| project(&SparseVec::unit(i))).collect();
    let matrix = SparseMatrix::from_columns(keep.len(), &columns);
    let rho = LieMorphism {
        source: lie.clone(),
        target: quotient.clone(),
        matrix,
    };
    Ok((quotient, rho, keep))
}

/// `{x : [x, L] = 0}`, the kernel of the stacked adjoint maps.
pub fn centre(lie: &LieAlgebra) -> Subspace {
    let n = lie.dim();
    let mut rows = Vec::new();
    for j in 0..n {
        let ad_rows: Vec<SparseVec> = (0..n).map(|i| lie.bracket_basis(i, j)).collect();
        let block = SparseMatrix::from_columns(n, &ad_rows);
        rows.extend(block.rows().iter().filter(|r| !r.is_zero()).cloned());
    }
    let m = SparseMatrix::from_rows(rows, n);
    Subspace::span(n, &kernel_basis(&m))
}

/// `L` rewritten in an LCS-adapted basis. When the given basis is already
/// adapted, the algebra is returned unchanged.
#[derive(Clone, Debug)]
pub struct AdaptedBasis {
    pub lie: LieAlgebra,
    /// New basis vectors in old coordinates, in the canonical order of `lie`.
    pub vectors: Vec<SparseVec>,
    /// LCS depth of each new basis vector.
    pub depths: Vec<usize>,
}

impl AdaptedBasis {
    pub fn new(lie: &LieAlgebra) -> Result<Self> {
        let lcs = require_nilpotent(lie)?;
        let adapted = lcs_adapted_basis(lie, &lcs);
        if adapted.iter().enumerate().all(|(k, (v, _))| v.is_unit() == Some(k)) {
            return Ok(AdaptedBasis {
                lie: lie.clone(),
                vectors: adapted.iter().map(|(v, _)| v.clone()).collect(),
                depths: adapted.iter().map(|(_, d)| *d).collect(),
            });
        }
        let elements: Vec<crate::exactlin::BasisElement> = adapted
            .iter()
            .map(|(v, _)| {
                let degree = lie.degree_of(v).expect("homogeneous");
                match v.is_unit() {
                    Some(i) => crate::exactlin::BasisElement::new(lie.basis().name(i), degree),
                    None => crate::exactlin::BasisElement::new(
                        format!("({})", lie.format_vector(v)),
                        degree,
                    ),
                }
            })
            .collect();
        let (basis, perm) = GradedBasis::with_permutation(elements)?;
        let mut vectors = vec![SparseVec::new(); adapted.len()];
        let mut depths = vec![0; adapted.len()];
        for (orig, (v, d)) in adapted.into_iter().enumerate() {
            vectors[perm[orig]] = v;
            depths[perm[orig]] = d;
        }
        let new_lie = lie.change_basis(basis, &vectors)?;
        Ok(AdaptedBasis {
            lie: new_lie,
            vectors,
            depths,
        })
    }

    /// Old coordinates to adapted coordinates.
    pub fn to_adapted(&self, v: &SparseVec) -> SparseVec {
        Span::from_vectors(&self.vectors)
            .express(v)
            .expect("adapted basis spans")
    }

    /// Adapted coordinates to old coordinates.
    pub fn from_adapted(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (k, c) in v.iter() {
            out.axpy(c, &self.vectors[k]);
        }
        out
    }
}
