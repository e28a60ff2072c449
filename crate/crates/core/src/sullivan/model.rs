use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::exactlin::{
    extend_basis, kernel_basis, rank, solve, BasisElement, GradedBasis, Span, SparseMatrix,
    SparseVec,
};

use super::algebra::SullivanAlgebra;
use super::cohomology::{block_cohomology, BlockSelector, Truncation};
use super::finite::FiniteCdga;
use super::poly::Poly;

/// How a generator of a minimal model came about.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeneratorRole {
    /// Closed generator mapping onto a new cohomology class of `A`.
    Surjective,
    /// Generator killing a class in the kernel of `H(σ)`.
    Kill,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorOrigin {
    pub degree: i32,
    pub stage: usize,
    pub role: GeneratorRole,
}

/// `σ : (∧V, d) → A` with `∧V` minimal.
#[derive(Clone, Debug)]
pub struct MinimalModel {
    pub model: SullivanAlgebra,
    /// `σ(v)` for each generator, as an element of `Ā`.
    pub sigma: Vec<SparseVec>,
    pub origins: Vec<GeneratorOrigin>,
    pub truncation: Truncation,
}

impl MinimalModel {
    pub fn sigma_poly(&self, a: &FiniteCdga, p: &Poly) -> SparseVec {
        sigma_of(a, &self.sigma, p).rest
    }
}

fn sigma_of(a: &FiniteCdga, sigma: &[SparseVec], p: &Poly) -> super::finite::CdgaElement {
    use super::finite::CdgaElement;
    let mut out = CdgaElement::default();
    for (m, c) in p.iter() {
        let mut term = CdgaElement::one();
        for &x in m {
            term = a.mul(&term, &CdgaElement::of(sigma[x].clone()));
        }
        out.unit += &term.unit * c;
        out.rest.axpy(c, &term.rest);
    }
    out
}

struct Builder<'a> {
    a: &'a FiniteCdga,
    elements: Vec<BasisElement>,
    differential: Vec<Poly>,
    sigma: Vec<SparseVec>,
    origins: Vec<GeneratorOrigin>,
    names: BTreeSet<String>,
    counters: BTreeMap<(i32, usize), usize>,
    weighted: bool,
}

impl<'a> Builder<'a> {
    fn algebra(&self) -> SullivanAlgebra {
        let (basis, perm) =
            GradedBasis::with_permutation(self.elements.clone()).expect("unique names");
        debug_assert!(perm.iter().enumerate().all(|(i, &p)| i == p));
        SullivanAlgebra::new(basis, self.differential.clone()).expect("well-formed model")
    }

    fn fresh_name(&mut self, degree: i32, stage: usize, preferred: Option<String>) -> String {
        if let Some(p) = preferred {
            if !self.names.contains(&p) {
                self.names.insert(p.clone());
                return p;
            }
        }
        loop {
            let c = self.counters.entry((degree, stage)).or_insert(0);
            let name = format!("v{degree}_{stage}_{c}");
            *c += 1;
            if self.names.insert(name.clone()) {
                return name;
            }
        }
    }

    fn push(&mut self, degree: i32, stage: usize, weight: Option<u32>, role: GeneratorRole, d: Poly, sigma: SparseVec, preferred: Option<String>) {
        let name = self.fresh_name(degree, stage, preferred);
        self.elements.push(BasisElement {
            name,
            degree,
            weight: if self.weighted { weight } else { None },
        });
        self.differential.push(d);
        self.sigma.push(sigma);
        self.origins.push(GeneratorOrigin { degree, stage, role });
    }

    /// Adds closed generators for classes of `H^{k,w}(A)` outside the image.
    fn surject(&mut self, k: i32, w: Option<u32>, stage: usize) -> usize {
        let m = self.algebra();
        let block = block_cohomology(&m, BlockSelector { degree: k, weight: w, wedge: None });
        let (cocycles, boundaries) = self.a.cocycles_and_boundaries(k, w);
        let mut span = Span::from_vectors(&boundaries);
        for v in &block.representatives {
            span.insert(&sigma_of(self.a, &self.sigma, &block.to_poly(v)).rest);
        }
        let new = extend_basis(&span, &cocycles);
        for a in &new {
            let preferred = a
                .is_unit()
                .filter(|_| a.iter().all(|(_, c)| c == &crate::exactlin::int(1)))
                .map(|i| self.a.basis().name(i).to_string());
            self.push(k, stage, w, GeneratorRole::Surjective, Poly::zero(), a.clone(), preferred);
        }
        new.len()
    }

    /// Adds degree-`k` generators killing the kernel of
    /// `H^{k+1,w}(∧V) → H^{k+1,w}(A)`.
    fn kill(&mut self, k: i32, w: Option<u32>, stage: usize) -> usize {
        let m = self.algebra();
        let block = block_cohomology(&m, BlockSelector { degree: k + 1, weight: w, wedge: None });
        if block.representatives.is_empty() {
            return 0;
        }
        let (_, boundaries) = self.a.cocycles_and_boundaries(k + 1, w);
        let bspan = Span::from_vectors(&boundaries);
        let reps: Vec<Poly> = block.representatives.iter().map(|v| block.to_poly(v)).collect();
        let images: Vec<SparseVec> = reps
            .iter()
            .map(|z| sigma_of(self.a, &self.sigma, z).rest)
            .collect();
        let reduced: Vec<SparseVec> = images.iter().map(|x| bspan.reduce(x).0).collect();
        let matrix = SparseMatrix::from_columns(self.a.dim(), &reduced);
        let kernel = kernel_basis(&matrix);
        let cols = self.a.block(k, w);
        let dmat = SparseMatrix::from_columns(
            self.a.dim(),
            &cols.iter().map(|&i| self.a.differential_of(i).clone()).collect::<Vec<_>>(),
        );
        for c in &kernel {
            let mut z = Poly::zero();
            let mut target = SparseVec::new();
            for (i, x) in c.iter() {
                z.axpy(x, &reps[i]);
                target.axpy(x, &images[i]);
            }
            let alpha = solve(&dmat, &target)
                .expect("σ(z) is a boundary")
                .remap(|j| Some(cols[j]));
            self.push(k, stage, w, GeneratorRole::Kill, z, alpha, None);
        }
        kernel.len()
    }
}

/// Minimal Sullivan model of a cohomologically connected finite cdga, with
/// generators of degree `≤ N`.
///
/// Weighted `A`: generators of weight `≤ K` are built weight by weight, and
/// the model is exact in weights `≤ K`. Unweighted `A`: in each degree the
/// kill step is repeated until `H(σ)` is injective one degree up; more than
/// `K` repetitions is reported as an exhausted window.
pub fn minimal_model(a: &FiniteCdga, t: &Truncation) -> Result<MinimalModel> {
    let h0 = a.h0_dim();
    if h0 != 1 {
        return Err(Error::NotConnected(h0));
    }
    let weighted = a.is_weighted();
    let mut b = Builder {
        a,
        elements: Vec::new(),
        differential: Vec::new(),
        sigma: Vec::new(),
        origins: Vec::new(),
        names: BTreeSet::new(),
        counters: BTreeMap::new(),
        weighted,
    };
    for k in 1..=t.n as i32 {
        if weighted {
            for w in 1..=t.k as u32 {
                b.surject(k, Some(w), w as usize);
                b.kill(k, Some(w), w as usize);
            }
        } else {
            b.surject(k, None, 0);
            let mut stage = 1;
            while b.kill(k, None, stage) > 0 {
                if stage > t.k {
                    return Err(Error::WindowExhausted(format!(
                        "degree {k} still needs generators after {} kill stages; give A weights",
                        t.k
                    )));
                }
                stage += 1;
            }
        }
    }
    let model = b.algebra();
    Ok(MinimalModel {
        model,
        sigma: b.sigma,
        origins: b.origins,
        truncation: *t,
    })
}

/// `ℚ ⊕ S` with one class of weight 1 per sphere, `S·S = 0`, `d = 0`.
pub fn wedge_of_spheres_cohomology(degrees: &[u32]) -> Result<FiniteCdga> {
    let elements = degrees
        .iter()
        .enumerate()
        .map(|(i, &d)| {
            if d == 0 {
                Err(Error::Invalid("sphere dimensions must be at least 1".into()))
            } else {
                Ok(BasisElement::weighted(format!("s{}", i + 1), d as i32, 1))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    FiniteCdga::new(GradedBasis::new(elements)?, Vec::new(), Vec::new())
}

pub fn wedge_of_spheres_model(degrees: &[u32], t: &Truncation) -> Result<MinimalModel> {
    minimal_model(&wedge_of_spheres_cohomology(degrees)?, t)
}

/// `H(σ)` in one degree: dimensions and injectivity/surjectivity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeComparison {
    pub degree: usize,
    pub model_dim: usize,
    pub target_dim: usize,
    pub injective: bool,
    pub surjective: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiIsoReport {
    pub degrees: Vec<DegreeComparison>,
    /// Isomorphism in degrees `≤ N-1` and injective in degree `N`.
    pub holds: bool,
}

/// Matches cocycle representatives of `H(∧V)` against `H(A)` through `σ`.
pub fn verify_quasi_isomorphism(mm: &MinimalModel, a: &FiniteCdga) -> QuasiIsoReport {
    let t = mm.truncation;
    let weights: Vec<Option<u32>> = if mm.model.is_weighted() || a.is_weighted() {
        (1..=t.k as u32).map(Some).collect()
    } else {
        vec![None]
    };
    let mut degrees = Vec::new();
    let mut holds = true;
    for k in 1..=t.n {
        let mut cmp = DegreeComparison {
            degree: k,
            model_dim: 0,
            target_dim: 0,
            injective: true,
            surjective: true,
        };
        for &w in &weights {
            let block = block_cohomology(
                &mm.model,
                BlockSelector { degree: k as i32, weight: w, wedge: None },
            );
            let (cocycles, boundaries) = a.cocycles_and_boundaries(k as i32, w);
            let bspan = Span::from_vectors(&boundaries);
            let h_a = extend_basis(&bspan, &cocycles).len();
            let images: Vec<SparseVec> = block
                .representatives
                .iter()
                .map(|v| bspan.reduce(&mm.sigma_poly(a, &block.to_poly(v))).0)
                .collect();
            let r = rank(&SparseMatrix::from_columns(a.dim(), &images));
            cmp.model_dim += block.dim();
            cmp.target_dim += h_a;
            cmp.injective &= r == block.dim();
            cmp.surjective &= r == h_a;
        }
        if k < t.n {
            holds &= cmp.injective && cmp.surjective;
        } else {
            holds &= cmp.injective;
        }
        degrees.push(cmp);
    }
    QuasiIsoReport { degrees, holds }
}
