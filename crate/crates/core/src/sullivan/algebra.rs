use std::fmt;

use crate::error::{Error, Result};
use crate::exactlin::rational::sign;
use crate::exactlin::{
    kernel_basis, quotient_complement, GradedBasis, Rational, Span, SparseMatrix, SparseVec,
};

use super::poly::{format_poly, monomial_degree, monomial_weight, mul, Monomial, Poly};

/// Free graded-commutative algebra `∧V` with a degree +1 derivation `d`.
///
/// Generators have degree >= 1 (degree 0 is allowed only for the fibres of
/// acyclic closures, see [`super::acyclic`]); `d` is given on generators.
#[derive(Clone, PartialEq, Eq)]
pub struct SullivanAlgebra {
    generators: GradedBasis,
    differential: Vec<Poly>,
}

/// Outcome of [`SullivanAlgebra::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CdgaReport {
    pub ok: bool,
    pub quadratic: bool,
    pub minimal: bool,
    /// `dim V_0, dim V_1, ...` until the filtration stabilizes.
    pub filtration_dims: Vec<usize>,
    /// First offending generator and the reason, when `ok` is false.
    pub problem: Option<(String, String)>,
}

/// Sullivan filtration `V_0 ⊆ V_1 ⊆ ...` as subspaces of `V` (generator
/// coordinates), `V_0 = V ∩ ker d`, `V_{n+1} = V ∩ d^{-1}(∧V_n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Filtration {
    pub levels: Vec<Vec<SparseVec>>,
    pub exhausted: bool,
}

impl Filtration {
    pub fn dims(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.len()).collect()
    }
}

impl SullivanAlgebra {
    /// `differential[i]` is `d` of generator `i` (canonical order). Checks
    /// that `d` raises degree by one and preserves weight when weighted.
    pub fn new(generators: GradedBasis, differential: Vec<Poly>) -> Result<Self> {
        Self::build(generators, differential, 1)
    }

    pub(crate) fn build(generators: GradedBasis, differential: Vec<Poly>, min_degree: i32) -> Result<Self> {
        if differential.len() != generators.len() {
            return Err(Error::Invalid("one differential per generator is required".into()));
        }
        for (i, e) in generators.iter().enumerate() {
            if e.degree < min_degree {
                return Err(Error::Invalid(format!(
                    "generator {} has degree {} < {}",
                    e.name, e.degree, min_degree
                )));
            }
            for (m, _) in differential[i].iter() {
                if monomial_degree(&generators, m) != e.degree + 1 {
                    return Err(Error::Invalid(format!(
                        "d({}) has a term of degree {} (expected {})",
                        e.name,
                        monomial_degree(&generators, m),
                        e.degree + 1
                    )));
                }
                if generators.is_weighted() && monomial_weight(&generators, m) != e.weight {
                    return Err(Error::Invalid(format!(
                        "d({}) does not preserve weight",
                        e.name
                    )));
                }
            }
        }
        Ok(SullivanAlgebra {
            generators,
            differential,
        })
    }

    pub fn trivial() -> Self {
        SullivanAlgebra {
            generators: GradedBasis::empty(),
            differential: Vec::new(),
        }
    }

    pub fn generators(&self) -> &GradedBasis {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_weighted(&self) -> bool {
        self.generators.is_weighted()
    }

    pub fn differential(&self) -> &[Poly] {
        &self.differential
    }

    pub fn d_generator(&self, i: usize) -> &Poly {
        &self.differential[i]
    }

    pub fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        mul(&self.generators, a, b)
    }

    /// `d` on a monomial via the Leibniz rule
    /// `d(ab) = (da)b + (-1)^{|a|} a(db)`.
    pub fn d_monomial(&self, m: &[usize]) -> Poly {
        let mut out = Poly::zero();
        let mut prefix_degree = 0i64;
        for t in 0..m.len() {
            let dx = &self.differential[m[t]];
            if !dx.is_zero() {
                let left = Poly::monomial(m[..t].to_vec(), sign(prefix_degree));
                let right = Poly::monomial(m[t + 1..].to_vec(), Rational::from_integer(1.into()));
                let term = self.mul(&self.mul(&left, dx), &right);
                out.axpy(&Rational::from_integer(1.into()), &term);
            }
            prefix_degree += self.generators.degree(m[t]) as i64;
        }
        out
    }

    pub fn d(&self, p: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in p.iter() {
            out.axpy(c, &self.d_monomial(m));
        }
        out
    }

    pub fn format(&self, p: &Poly) -> String {
        format_poly(&self.generators, p)
    }

    pub fn is_quadratic(&self) -> bool {
        self.differential
            .iter()
            .all(|p| p.iter().all(|(m, _)| m.len() == 2))
    }

    pub fn is_minimal(&self) -> bool {
        self.differential
            .iter()
            .all(|p| p.iter().all(|(m, _)| m.len() >= 2))
    }

    pub fn require_quadratic(&self) -> Result<()> {
        for (i, p) in self.differential.iter().enumerate() {
            if p.iter().any(|(m, _)| m.len() != 2) {
                return Err(Error::NotQuadratic(self.generators.name(i).to_string()));
            }
        }
        Ok(())
    }

    pub fn require_minimal(&self) -> Result<()> {
        for (i, p) in self.differential.iter().enumerate() {
            if p.iter().any(|(m, _)| m.len() < 2) {
                return Err(Error::NotMinimal(self.generators.name(i).to_string()));
            }
        }
        Ok(())
    }

    /// `d_1`: the wedge-degree-2 part of `d`.
    pub fn quadratic_part(&self) -> Result<SullivanAlgebra> {
        self.require_minimal()?;
        Ok(SullivanAlgebra {
            generators: self.generators.clone(),
            differential: self.differential.iter().map(|p| p.wedge_component(2)).collect(),
        })
    }

    /// Substitutes `images[i]` (polynomials over `target`) for generator `i`.
    pub fn substitute(&self, p: &Poly, target: &GradedBasis, images: &[Poly]) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in p.iter() {
            let mut term = Poly::one();
            for &x in m {
                term = mul(target, &term, &images[x]);
            }
            out.axpy(c, &term);
        }
        out
    }

    pub fn filtration(&self) -> Filtration {
        let n = self.len();
        let mut levels: Vec<Vec<SparseVec>> = Vec::new();
        let mut current: Vec<SparseVec> = Vec::new();
        loop {
            let next = self.preimage_level(if levels.is_empty() { None } else { Some(&current) });
            let grew = next.len() > current.len() || levels.is_empty();
            if !grew {
                return Filtration {
                    exhausted: current.len() == n,
                    levels,
                };
            }
            levels.push(next.clone());
            current = next;
            if current.len() == n {
                return Filtration {
                    levels,
                    exhausted: true,
                };
            }
        }
    }

    /// `V ∩ d^{-1}(∧W)` for a subspace `W` (or `V ∩ ker d` for `None`).
    fn preimage_level(&self, sub: Option<&Vec<SparseVec>>) -> Vec<SparseVec> {
        let n = self.len();
        // New variables: basis of W followed by a standard complement.
        let (images, w_dim) = match sub {
            None => (None, 0),
            Some(w) => {
                let mut new_vars: Vec<SparseVec> = w.clone();
                new_vars.extend(quotient_complement(w, n));
                (Some(self.change_of_variables(&new_vars)), w.len())
            }
        };
        let mut result = Vec::new();
        let mut degrees: Vec<i32> = self.generators.iter().map(|e| e.degree).collect();
        degrees.dedup();
        for deg in degrees {
            let cols: Vec<usize> = (0..n).filter(|&i| self.generators.degree(i) == deg).collect();
            // Rows: monomials (in new variables) that are not in ∧W.
            let mut row_index: std::collections::BTreeMap<Monomial, usize> = Default::default();
            let mut columns = Vec::new();
            for &i in &cols {
                let dv = match &images {
                    None => self.differential[i].clone(),
                    Some((target, imgs)) => self.substitute(&self.differential[i], target, imgs),
                };
                let mut col = SparseVec::new();
                for (m, c) in dv.iter() {
                    if m.iter().all(|&y| y < w_dim) && images.is_some() {
                        continue;
                    }
                    let len = row_index.len();
                    let r = *row_index.entry(m.clone()).or_insert(len);
                    col.add_at(r, c);
                }
                columns.push(col);
            }
            let m = SparseMatrix::from_columns(row_index.len(), &columns);
            for k in kernel_basis(&m) {
                result.push(k.remap(|j| Some(cols[j])));
            }
        }
        crate::exactlin::echelon_basis(&result, n)
    }

    /// Given new variables `y_j = Σ new_vars[j]_i x_i` spanning `V`, returns a
    /// basis labelled by the new variables together with the images of the
    /// old generators `x_i` as linear forms in the `y_j`.
    pub fn change_of_variables(&self, new_vars: &[SparseVec]) -> (GradedBasis, Vec<Poly>) {
        let n = self.len();
        let mut span = Span::new();
        for v in new_vars {
            span.insert(v);
        }
        let elements = new_vars
            .iter()
            .enumerate()
            .map(|(j, v)| {
                let i = v.leading().map(|(i, _)| i).unwrap_or(0);
                crate::exactlin::BasisElement {
                    name: format!("y{j}"),
                    degree: self.generators.degree(i),
                    weight: None,
                }
            })
            .collect();
        // Label by position only: monomial order follows the new-variable
        // order, so the basis is built without re-sorting.
        let basis = GradedBasis::unsorted(elements);
        let images = (0..n)
            .map(|i| {
                let coords = span.express(&SparseVec::unit(i)).expect("new variables span V");
                let mut p = Poly::zero();
                for (j, c) in coords.iter() {
                    p.add_term(vec![j], c.clone());
                }
                p
            })
            .collect();
        (basis, images)
    }

    /// Checks `d² = 0` on generators, the Sullivan condition, and recomputes
    /// the quadratic/minimal flags.
    pub fn validate(&self) -> CdgaReport {
        let filtration = self.filtration();
        let mut report = CdgaReport {
            ok: true,
            quadratic: self.is_quadratic(),
            minimal: self.is_minimal(),
            filtration_dims: filtration.dims(),
            problem: None,
        };
        for i in 0..self.len() {
            let dd = self.d(&self.differential[i]);
            if !dd.is_zero() {
                report.ok = false;
                report.problem = Some((
                    self.generators.name(i).to_string(),
                    format!("d²({}) = {}", self.generators.name(i), self.format(&dd)),
                ));
                return report;
            }
        }
        if !filtration.exhausted {
            report.ok = false;
            let covered = filtration.levels.last().cloned().unwrap_or_default();
            let span = Span::from_vectors(&covered);
            let bad = (0..self.len())
                .find(|&i| !span.contains(&SparseVec::unit(i)))
                .unwrap_or(0);
            report.problem = Some((
                self.generators.name(bad).to_string(),
                "generator lies in no filtration level V_n".into(),
            ));
        }
        report
    }

    pub fn require_valid(&self) -> Result<CdgaReport> {
        let r = self.validate();
        match &r.problem {
            None => Ok(r),
            Some((g, why)) => Err(Error::Validation(format!("{g}: {why}"))),
        }
    }

    /// Sub-algebra on the generators listed (must be closed under `d`).
    pub fn restrict(&self, keep: &[usize]) -> Result<SullivanAlgebra> {
        let mut position = vec![None; self.len()];
        for (k, &i) in keep.iter().enumerate() {
            position[i] = Some(k);
        }
        let elements = keep.iter().map(|&i| self.generators.get(i).clone()).collect();
        let generators = GradedBasis::new(elements)?;
        let mut differential = Vec::new();
        for &i in keep {
            let p = &self.differential[i];
            if p.iter().any(|(m, _)| m.iter().any(|&x| position[x].is_none())) {
                return Err(Error::Invalid(format!(
                    "d({}) leaves the chosen generators",
                    self.generators.name(i)
                )));
            }
            differential.push(p.remap_monotone(|x| position[x].expect("kept")));
        }
        SullivanAlgebra::new(generators, differential)
    }

    /// Same differential, generator weights dropped.
    pub fn without_weights(&self) -> SullivanAlgebra {
        SullivanAlgebra {
            generators: self.generators.without_weights(),
            differential: self.differential.clone(),
        }
    }

    pub fn with_weights(&self, weights: &[u32]) -> Result<SullivanAlgebra> {
        SullivanAlgebra::new(self.generators.with_weights(weights)?, self.differential.clone())
    }
}

impl fmt::Debug for SullivanAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SullivanAlgebra({} generators)", self.len())?;
        for (i, e) in self.generators.iter().enumerate() {
            writeln!(
                f,
                "  d({}) = {}   [deg {}]",
                e.name,
                self.format(&self.differential[i]),
                e.degree
            )?;
        }
        Ok(())
    }
}

/// Algebra map `∧V → ∧W` given on generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CdgaMorphism {
    pub source: SullivanAlgebra,
    pub target: SullivanAlgebra,
    pub images: Vec<Poly>,
}

impl CdgaMorphism {
    /// Checks degrees and `dφ = φd` on generators.
    pub fn new(source: SullivanAlgebra, target: SullivanAlgebra, images: Vec<Poly>) -> Result<Self> {
        if images.len() != source.len() {
            return Err(Error::Invalid("one image per generator is required".into()));
        }
        let m = CdgaMorphism {
            source,
            target,
            images,
        };
        for i in 0..m.source.len() {
            let deg = m.source.generators().degree(i);
            if m.images[i]
                .iter()
                .any(|(mono, _)| monomial_degree(m.target.generators(), mono) != deg)
            {
                return Err(Error::Invalid(format!(
                    "image of {} has the wrong degree",
                    m.source.generators().name(i)
                )));
            }
            let lhs = m.target.d(&m.images[i]);
            let rhs = m.apply(m.source.d_generator(i));
            if lhs != rhs {
                return Err(Error::Validation(format!(
                    "morphism does not commute with d on {}",
                    m.source.generators().name(i)
                )));
            }
        }
        Ok(m)
    }

    pub fn identity(a: &SullivanAlgebra) -> Self {
        CdgaMorphism {
            source: a.clone(),
            target: a.clone(),
            images: (0..a.len()).map(Poly::generator).collect(),
        }
    }

    pub fn apply(&self, p: &Poly) -> Poly {
        self.source.substitute(p, self.target.generators(), &self.images)
    }

    /// Linear part `φ_0 : V → W` as a `dim W × dim V` matrix.
    pub fn linear_part(&self) -> SparseMatrix {
        let cols: Vec<SparseVec> = self
            .images
            .iter()
            .map(|p| {
                p.iter()
                    .filter(|(m, _)| m.len() == 1)
                    .map(|(m, c)| (m[0], c.clone()))
                    .collect()
            })
            .collect();
        SparseMatrix::from_columns(self.target.len(), &cols)
    }

    /// `other ∘ self`
    pub fn then(&self, other: &CdgaMorphism) -> CdgaMorphism {
        CdgaMorphism {
            source: self.source.clone(),
            target: other.target.clone(),
            images: self.images.iter().map(|p| other.apply(p)).collect(),
        }
    }
}
