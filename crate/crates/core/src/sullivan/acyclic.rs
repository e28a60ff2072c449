use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::exactlin::rational::sign;
use crate::exactlin::{solve, BasisElement, GradedBasis, Rational, SparseMatrix, SparseVec};

use super::algebra::SullivanAlgebra;
use super::cohomology::{block_cohomology, BlockSelector};
use super::poly::{monomial_weight, monomials_of_degree, Monomial, Poly};

/// `A → A ⊗ ∧Z → ∧Z`: a free extension of a base algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaExtension {
    pub base: SullivanAlgebra,
    /// `∧(V ⊕ Z)` with the total differential.
    pub total: SullivanAlgebra,
    /// Position of each base generator in `total`.
    pub base_index: Vec<usize>,
    /// Position of each fibre generator in `total`.
    pub fibre_index: Vec<usize>,
}

impl LambdaExtension {
    /// `fibre` lists the fibre generators with their differentials written as
    /// polynomials over `base` generators followed by fibre generators (the
    /// order of `base.generators()` then `fibre`).
    pub fn new(base: SullivanAlgebra, fibre: Vec<BasisElement>, differential: Vec<Poly>) -> Result<Self> {
        Self::build(base, fibre, differential, 1)
    }

    pub(crate) fn build(
        base: SullivanAlgebra,
        fibre: Vec<BasisElement>,
        differential: Vec<Poly>,
        min_degree: i32,
    ) -> Result<Self> {
        if fibre.len() != differential.len() {
            return Err(Error::Invalid("one differential per fibre generator is required".into()));
        }
        let nb = base.len();
        let mut elements: Vec<BasisElement> = base.generators().elements().to_vec();
        elements.extend(fibre);
        let (generators, perm) = GradedBasis::with_permutation(elements)?;
        let mut diffs = vec![Poly::zero(); generators.len()];
        let relabel = |p: &Poly| -> Poly {
            let mut out = Poly::zero();
            for (m, c) in p.iter() {
                let word: Vec<usize> = m.iter().map(|&i| perm[i]).collect();
                out.axpy(c, &super::poly::word_to_poly(&generators, &word));
            }
            out
        };
        for i in 0..nb {
            diffs[perm[i]] = relabel(base.d_generator(i));
        }
        for (k, p) in differential.iter().enumerate() {
            diffs[perm[nb + k]] = relabel(p);
        }
        let total = SullivanAlgebra::build(generators, diffs, min_degree)?;
        for i in 0..total.len() {
            let dd = total.d(total.d_generator(i));
            if !dd.is_zero() {
                return Err(Error::Validation(format!(
                    "d² ≠ 0 on {}",
                    total.generators().name(i)
                )));
            }
        }
        Ok(LambdaExtension {
            base,
            base_index: (0..nb).map(|i| perm[i]).collect(),
            fibre_index: (0..differential.len()).map(|k| perm[nb + k]).collect(),
            total,
        })
    }

    fn is_base(&self) -> Vec<bool> {
        let mut flags = vec![false; self.total.len()];
        for &i in &self.base_index {
            flags[i] = true;
        }
        flags
    }

    /// Fibre generator positions in `total`, increasing.
    pub fn fibre_sorted(&self) -> Vec<usize> {
        let mut v = self.fibre_index.clone();
        v.sort_unstable();
        v
    }

    /// Fibre generators in the order of `total`.
    pub fn fibre_basis(&self) -> GradedBasis {
        GradedBasis::unsorted(
            self.fibre_sorted()
                .iter()
                .map(|&i| self.total.generators().get(i).clone())
                .collect(),
        )
    }

    /// `d̄` on `∧Z`: terms containing a base generator are dropped.
    pub fn quotient_differential(&self) -> Vec<Poly> {
        let base = self.is_base();
        let sorted = self.fibre_sorted();
        let mut position = vec![None; self.total.len()];
        for (k, &i) in sorted.iter().enumerate() {
            position[i] = Some(k);
        }
        sorted
            .iter()
            .map(|&i| {
                self.total
                    .d_generator(i)
                    .filter(|m| m.iter().all(|&x| !base[x]))
                    .remap_monotone(|x| position[x].expect("fibre"))
            })
            .collect()
    }

    /// `(∧Z, d̄)` as an algebra (degrees as in the fibre).
    pub fn fibre_algebra(&self) -> Result<SullivanAlgebra> {
        SullivanAlgebra::build(self.fibre_basis(), self.quotient_differential(), 0)
    }

    /// `d_0 : Z → V`, the part of `dz` that is a single base generator, as a
    /// `dim V × dim Z` matrix (fibre columns in the order of `total`).
    pub fn linear_part(&self) -> SparseMatrix {
        let mut base_pos = vec![None; self.total.len()];
        for (k, &i) in self.base_index.iter().enumerate() {
            base_pos[i] = Some(k);
        }
        let cols: Vec<SparseVec> = self
            .fibre_sorted()
            .iter()
            .map(|&i| {
                self.total
                    .d_generator(i)
                    .iter()
                    .filter(|(m, _)| m.len() == 1 && base_pos[m[0]].is_some())
                    .map(|(m, c)| (base_pos[m[0]].unwrap(), c.clone()))
                    .collect()
            })
            .collect();
        SparseMatrix::from_columns(self.base.len(), &cols)
    }
}

/// `(∧V ⊗ ∧U, d)` with `U ≅ V` shifted down by one, `du = pu + (V ⊗ ∧U)`.
#[derive(Clone, Debug)]
pub struct AcyclicClosure {
    pub extension: LambdaExtension,
    /// Maximal degree of the verified window.
    pub max_degree: usize,
    /// Maximal total weight of the verified window.
    pub max_weight: u32,
    /// Index in the input algebra of each base generator kept in the window.
    pub kept: Vec<usize>,
    /// `du_i = Σ_j v_j Φ_ij`, indexed by base generator `i`; `Φ_ij` over the
    /// total algebra, involving fibre generators only.
    pub components: Vec<BTreeMap<usize, Poly>>,
}

/// Weights for an unweighted algebra from its filtration: a generator in
/// `V_n \ V_{n-1}` gets weight `n + 1`. Requires every level to be spanned by
/// generators.
pub fn filtration_weights(a: &SullivanAlgebra) -> Result<SullivanAlgebra> {
    if a.is_weighted() {
        return Ok(a.clone());
    }
    let f = a.filtration();
    if !f.exhausted {
        return Err(Error::Validation("Sullivan filtration does not exhaust V".into()));
    }
    let mut weights = vec![0u32; a.len()];
    for (n, level) in f.levels.iter().enumerate() {
        let units: BTreeSet<usize> = level.iter().filter_map(|v| v.is_unit()).collect();
        if units.len() != level.len() {
            return Err(Error::Invalid(
                "filtration levels are not spanned by generators; give weights".into(),
            ));
        }
        for i in units {
            if weights[i] == 0 {
                weights[i] = n as u32 + 1;
            }
        }
    }
    a.with_weights(&weights).map_err(|_| {
        Error::Invalid("d does not preserve the filtration weights; give weights".into())
    })
}

/// Builds the acyclic closure of a quadratic algebra and verifies `H = ℚ`
/// in degrees `≤ max_degree` and weights `≤ max_weight`.
pub fn acyclic_closure(a: &SullivanAlgebra, max_degree: usize, max_weight: u32) -> Result<AcyclicClosure> {
    a.require_quadratic()?;
    a.require_valid()?;
    let a = filtration_weights(a)?;
    let gens = a.generators();
    let kept: Vec<usize> = (0..a.len())
        .filter(|&i| gens.weight(i).unwrap() <= max_weight)
        .collect();
    let a = a.restrict(&kept)?;
    let gens = a.generators().clone();
    let n = a.len();
    let mut taken: BTreeSet<String> = gens.iter().map(|e| e.name.clone()).collect();
    let fibre: Vec<BasisElement> = gens
        .iter()
        .map(|e| {
            let mut name = format!("u_{}", e.name);
            while !taken.insert(name.clone()) {
                name.push('\'');
            }
            BasisElement {
                name,
                degree: e.degree - 1,
                weight: e.weight,
            }
        })
        .collect();
    // Start from du = pu and correct generator by generator in weight order.
    let initial: Vec<Poly> = (0..n).map(Poly::generator).collect();
    let mut ext = LambdaExtension::build_unchecked(a.clone(), fibre.clone(), initial, 0)?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| (gens.weight(i), i));
    let is_base = ext.is_base();
    for &i in &order {
        let u = ext.fibre_index[i];
        let v = ext.base_index[i];
        let total = &ext.total;
        let tg = total.generators();
        let deg = gens.degree(i);
        let weight = gens.weight(i).unwrap();
        let candidates: Vec<Monomial> = monomials_of_degree(tg, deg, Some(weight))
            .into_iter()
            .filter(|m| monomial_weight(tg, m) == Some(weight))
            .filter(|m| m.iter().filter(|&&x| is_base[x]).count() == 1)
            .filter(|m| m.len() > 1)
            .collect();
        let target = total.d_generator(v).scaled(&-Rational::from_integer(1.into()));
        let mut rows: BTreeMap<Monomial, usize> = BTreeMap::new();
        let index = |m: &Monomial, rows: &mut BTreeMap<Monomial, usize>| {
            let len = rows.len();
            *rows.entry(m.clone()).or_insert(len)
        };
        let mut columns = Vec::new();
        for m in &candidates {
            let dm = total.d_monomial(m);
            let mut col = SparseVec::new();
            for (t, c) in dm.iter() {
                col.add_at(index(t, &mut rows), c);
            }
            columns.push(col);
        }
        let mut rhs = SparseVec::new();
        for (t, c) in target.iter() {
            rhs.add_at(index(t, &mut rows), c);
        }
        let matrix = SparseMatrix::from_columns(rows.len(), &columns);
        let x = solve(&matrix, &rhs).ok_or_else(|| {
            Error::WindowExhausted(format!(
                "no correction term for {} in V ⊗ ∧U",
                tg.name(u)
            ))
        })?;
        let mut du = Poly::generator(v);
        for (k, c) in x.iter() {
            du.add_term(candidates[k].clone(), c.clone());
        }
        let mut diffs = ext.total.differential().to_vec();
        diffs[u] = du;
        ext.total = SullivanAlgebra::build(ext.total.generators().clone(), diffs, 0)?;
    }
    for i in 0..ext.total.len() {
        if !ext.total.d(ext.total.d_generator(i)).is_zero() {
            return Err(Error::Validation("acyclic closure has d² ≠ 0".into()));
        }
    }
    let components = (0..n).map(|i| split_linear(&ext, ext.fibre_index[i])).collect();
    let ac = AcyclicClosure {
        extension: ext,
        max_degree,
        max_weight,
        kept,
        components,
    };
    if let Some((deg, w, dim)) = ac.first_nontrivial_cohomology() {
        return Err(Error::Validation(format!(
            "acyclic closure has H of dimension {dim} in degree {deg}, weight {w}"
        )));
    }
    Ok(ac)
}

impl LambdaExtension {
    fn build_unchecked(
        base: SullivanAlgebra,
        fibre: Vec<BasisElement>,
        differential: Vec<Poly>,
        min_degree: i32,
    ) -> Result<Self> {
        let nb = base.len();
        let mut elements: Vec<BasisElement> = fibre.clone();
        elements.extend(base.generators().elements().iter().cloned());
        // Fibre first so that, within a degree, u's precede v's.
        let (generators, perm) = GradedBasis::with_permutation(elements)?;
        let nf = fibre.len();
        let base_index: Vec<usize> = (0..nb).map(|i| perm[nf + i]).collect();
        let fibre_index: Vec<usize> = (0..nf).map(|k| perm[k]).collect();
        let mut diffs = vec![Poly::zero(); generators.len()];
        let relabel = |p: &Poly, map: &dyn Fn(usize) -> usize| -> Poly {
            let mut out = Poly::zero();
            for (m, c) in p.iter() {
                let word: Vec<usize> = m.iter().map(|&i| map(i)).collect();
                out.axpy(c, &super::poly::word_to_poly(&generators, &word));
            }
            out
        };
        for i in 0..nb {
            diffs[base_index[i]] = relabel(base.d_generator(i), &|x| base_index[x]);
        }
        for (k, p) in differential.iter().enumerate() {
            // `differential` is over base generators here (du = pu).
            diffs[fibre_index[k]] = relabel(p, &|x| base_index[x]);
        }
        let total = SullivanAlgebra::build(generators, diffs, min_degree)?;
        Ok(LambdaExtension {
            base,
            total,
            base_index,
            fibre_index,
        })
    }
}

/// `du = Σ_j v_j Φ_j` with the base factor moved to the front.
fn split_linear(ext: &LambdaExtension, u: usize) -> BTreeMap<usize, Poly> {
    let tg = ext.total.generators();
    let mut base_pos = vec![None; ext.total.len()];
    for (j, &i) in ext.base_index.iter().enumerate() {
        base_pos[i] = Some(j);
    }
    let mut out: BTreeMap<usize, Poly> = BTreeMap::new();
    for (m, c) in ext.total.d_generator(u).iter() {
        let (p, j) = m
            .iter()
            .enumerate()
            .find_map(|(p, &x)| base_pos[x].map(|j| (p, j)))
            .expect("one base factor");
        let before: i64 = m[..p].iter().map(|&x| tg.degree(x) as i64).sum();
        let s = sign(tg.degree(m[p]) as i64 * before);
        let mut rest = m.clone();
        rest.remove(p);
        out.entry(j).or_default().add_term(rest, c * s);
    }
    out
}

impl AcyclicClosure {
    pub fn total(&self) -> &SullivanAlgebra {
        &self.extension.total
    }

    pub fn base(&self) -> &SullivanAlgebra {
        &self.extension.base
    }

    /// First `(degree, weight, dim)` in the window with `H ≠ 0` other than `H^{0,0} = ℚ`.
    pub fn first_nontrivial_cohomology(&self) -> Option<(usize, u32, usize)> {
        for deg in 0..=self.max_degree {
            for w in 0..=self.max_weight {
                let block = block_cohomology(
                    self.total(),
                    BlockSelector {
                        degree: deg as i32,
                        weight: Some(w),
                        wedge: None,
                    },
                );
                let expected = usize::from(deg == 0 && w == 0);
                if block.dim() != expected {
                    return Some((deg, w, block.dim()));
                }
            }
        }
        None
    }

    /// Holonomy `θ(x)` on the fibre generators, where `x` is given by its
    /// pairings `⟨v_j, sx⟩ = x_j` with the base generators:
    /// `θ(x)u = -Σ_j ⟨v_j, sx⟩ Φ_j`.
    pub fn holonomy(&self, x: &SparseVec) -> Holonomy {
        let degree = x
            .support()
            .map(|j| self.base().generators().degree(j) - 1)
            .next()
            .unwrap_or(0);
        let values = self
            .components
            .iter()
            .map(|comp| {
                let mut out = Poly::zero();
                for (j, phi) in comp {
                    let c = x.get(*j);
                    out.axpy(&-c, phi);
                }
                out
            })
            .collect();
        Holonomy { degree, values }
    }

    /// `θ(x)u_i + ⟨pu_i, sx⟩` lies in `∧U` on generators of smaller weight.
    pub fn check_holonomy_containment(&self, x: &SparseVec) -> bool {
        let th = self.holonomy(x);
        let tg = self.total().generators();
        (0..self.components.len()).all(|i| {
            let mut p = th.values[i].clone();
            p.add_term(Vec::new(), x.get(i));
            let w = tg.weight(self.extension.fibre_index[i]).unwrap();
            let ok = p
                .iter()
                .all(|(m, _)| m.iter().all(|&y| tg.weight(y).unwrap() < w));
            ok
        })
    }

    /// `θ(x)` applied to a polynomial in the fibre generators.
    pub fn apply_holonomy(&self, th: &Holonomy, p: &Poly) -> Poly {
        let tg = self.total().generators();
        let mut fibre_pos = vec![None; self.total().len()];
        for (k, &i) in self.extension.fibre_index.iter().enumerate() {
            fibre_pos[i] = Some(k);
        }
        let one = Rational::from_integer(1.into());
        let mut out = Poly::zero();
        for (m, c) in p.iter() {
            let mut prefix = 0i64;
            for t in 0..m.len() {
                let k = fibre_pos[m[t]].expect("fibre polynomial");
                let value = &th.values[k];
                if !value.is_zero() {
                    let left = Poly::monomial(m[..t].to_vec(), sign(th.degree as i64 * prefix));
                    let right = Poly::monomial(m[t + 1..].to_vec(), one.clone());
                    let term = self.total().mul(&self.total().mul(&left, value), &right);
                    out.axpy(c, &term);
                }
                prefix += tg.degree(m[t]) as i64;
            }
        }
        out
    }

    /// Augmentation `ε_U`: the constant term.
    pub fn augmentation(p: &Poly) -> Rational {
        p.coefficient(&[])
    }

    /// Monomials in the fibre generators of the given total weight, all
    /// degrees up to the window.
    pub fn fibre_monomials(&self, weight: u32) -> Vec<Monomial> {
        let tg = self.total().generators();
        let fibre: BTreeSet<usize> = self.extension.fibre_index.iter().copied().collect();
        let mut out = Vec::new();
        for deg in 0..=self.max_degree as i32 {
            out.extend(
                monomials_of_degree(tg, deg, Some(weight))
                    .into_iter()
                    .filter(|m| m.iter().all(|x| fibre.contains(x)))
                    .filter(|m| monomial_weight(tg, m) == Some(weight)),
            );
        }
        out
    }
}

/// Derivation `θ(x)` of `∧U`, given on fibre generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Holonomy {
    /// Degree of `x`; `θ(x)` has degree `-|x|`.
    pub degree: i32,
    /// `θ(x)u_i` for each fibre generator, in base-generator order.
    pub values: Vec<Poly>,
}
