use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactlin::rational::sign;
use crate::exactlin::{
    extend_basis, kernel_basis, BasisElement, GradedBasis, Rational, Span, SparseMatrix, SparseVec,
};

use super::algebra::SullivanAlgebra;
use super::poly::{monomial_weight, monomials_of_degree, Poly};

/// Augmented cdga `A = ℚ·1 ⊕ Ā`, finite-dimensional in each degree.
///
/// The unit is implicit; `basis` spans `Ā`, which is closed under the
/// product. Products are stored for `i ≤ j`; `e_j e_i = (-1)^{|i||j|} e_i e_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteCdga {
    basis: GradedBasis,
    products: BTreeMap<(usize, usize), SparseVec>,
    differential: Vec<SparseVec>,
}

/// Element `c·1 + x` of a [`FiniteCdga`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CdgaElement {
    pub unit: Rational,
    pub rest: SparseVec,
}

impl CdgaElement {
    pub fn one() -> Self {
        CdgaElement {
            unit: Rational::from_integer(1.into()),
            rest: SparseVec::new(),
        }
    }

    pub fn of(rest: SparseVec) -> Self {
        CdgaElement {
            unit: Rational::zero(),
            rest,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.unit.is_zero() && self.rest.is_zero()
    }
}

impl FiniteCdga {
    /// `products` and `differential` entries use canonical basis indices.
    pub fn new(
        basis: GradedBasis,
        products: Vec<(usize, usize, SparseVec)>,
        differential: Vec<(usize, SparseVec)>,
    ) -> Result<Self> {
        let n = basis.len();
        if let Some(e) = basis.iter().find(|e| e.degree < 0) {
            return Err(Error::Invalid(format!("negative degree on {}", e.name)));
        }
        let mut table = BTreeMap::new();
        for (i, j, out) in products {
            if i >= n || j >= n || out.max_index().map_or(false, |k| k >= n) {
                return Err(Error::Invalid("product index out of range".into()));
            }
            let (a, b, v) = if i <= j {
                (i, j, out)
            } else {
                let s = sign(basis.degree(i) as i64 * basis.degree(j) as i64);
                (j, i, out.scaled(&s))
            };
            if table.insert((a, b), v).is_some() {
                return Err(Error::Invalid(format!(
                    "product of {} and {} given twice",
                    basis.name(a),
                    basis.name(b)
                )));
            }
        }
        let mut d = vec![SparseVec::new(); n];
        for (i, out) in differential {
            if i >= n || out.max_index().map_or(false, |k| k >= n) {
                return Err(Error::Invalid("differential index out of range".into()));
            }
            d[i] = out;
        }
        let a = FiniteCdga {
            basis,
            products: table,
            differential: d,
        };
        a.check()?;
        Ok(a)
    }

    pub fn ground() -> Self {
        FiniteCdga {
            basis: GradedBasis::empty(),
            products: BTreeMap::new(),
            differential: Vec::new(),
        }
    }

    pub fn basis(&self) -> &GradedBasis {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_weighted(&self) -> bool {
        self.basis.is_weighted()
    }

    pub fn max_degree(&self) -> i32 {
        self.basis.iter().map(|e| e.degree).max().unwrap_or(0)
    }

    pub fn products(&self) -> impl Iterator<Item = (usize, usize, &SparseVec)> + '_ {
        self.products.iter().map(|(&(i, j), v)| (i, j, v))
    }

    pub fn differential_of(&self, i: usize) -> &SparseVec {
        &self.differential[i]
    }

    pub fn product_basis(&self, i: usize, j: usize) -> SparseVec {
        if i <= j {
            self.products.get(&(i, j)).cloned().unwrap_or_default()
        } else {
            let s = sign(self.basis.degree(i) as i64 * self.basis.degree(j) as i64);
            self.products
                .get(&(j, i))
                .map(|v| v.scaled(&s))
                .unwrap_or_default()
        }
    }

    /// Product on `Ā`.
    pub fn mul_bar(&self, a: &SparseVec, b: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, x) in a.iter() {
            for (j, y) in b.iter() {
                out.axpy(&(x * y), &self.product_basis(i, j));
            }
        }
        out
    }

    pub fn mul(&self, a: &CdgaElement, b: &CdgaElement) -> CdgaElement {
        let mut rest = self.mul_bar(&a.rest, &b.rest);
        rest.axpy(&a.unit, &b.rest);
        rest.axpy(&b.unit, &a.rest);
        CdgaElement {
            unit: &a.unit * &b.unit,
            rest,
        }
    }

    pub fn d(&self, a: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, c) in a.iter() {
            out.axpy(c, &self.differential[i]);
        }
        out
    }

    fn degree_of(&self, v: &SparseVec) -> Option<i32> {
        let mut it = v.support().map(|i| self.basis.degree(i));
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    /// Degrees, weights, graded commutativity, associativity, `d² = 0` and
    /// the Leibniz rule on basis elements.
    fn check(&self) -> Result<()> {
        let n = self.dim();
        let name = |i: usize| self.basis.name(i).to_string();
        let weighted = self.is_weighted();
        for (&(i, j), v) in &self.products {
            for k in v.support() {
                if self.basis.degree(k) != self.basis.degree(i) + self.basis.degree(j) {
                    return Err(Error::Validation(format!(
                        "{}·{} has a component of the wrong degree",
                        name(i),
                        name(j)
                    )));
                }
                if weighted
                    && self.basis.weight(k).unwrap() != self.basis.weight(i).unwrap() + self.basis.weight(j).unwrap()
                {
                    return Err(Error::Validation(format!(
                        "{}·{} has a component of the wrong weight",
                        name(i),
                        name(j)
                    )));
                }
            }
            if i == j && self.basis.degree(i) % 2 != 0 && !v.is_zero() {
                return Err(Error::Validation(format!(
                    "square of odd element {} must vanish",
                    name(i)
                )));
            }
        }
        for i in 0..n {
            for k in self.differential[i].support() {
                if self.basis.degree(k) != self.basis.degree(i) + 1 {
                    return Err(Error::Validation(format!("d({}) has the wrong degree", name(i))));
                }
                if weighted && self.basis.weight(k) != self.basis.weight(i) {
                    return Err(Error::Validation(format!("d({}) changes weight", name(i))));
                }
            }
            if !self.d(&self.differential[i]).is_zero() {
                return Err(Error::Validation(format!("d² ≠ 0 on {}", name(i))));
            }
        }
        for i in 0..n {
            for j in 0..n {
                let ab = self.product_basis(i, j);
                // d(ab) = (da)b + (-1)^{|a|} a(db)
                let lhs = self.d(&ab);
                let mut rhs = self.mul_bar(&self.differential[i], &SparseVec::unit(j));
                rhs.axpy(
                    &sign(self.basis.degree(i) as i64),
                    &self.mul_bar(&SparseVec::unit(i), &self.differential[j]),
                );
                if lhs != rhs {
                    return Err(Error::Validation(format!(
                        "Leibniz rule fails on {}·{}",
                        name(i),
                        name(j)
                    )));
                }
                for k in 0..n {
                    let left = self.mul_bar(&ab, &SparseVec::unit(k));
                    let right = self.mul_bar(&SparseVec::unit(i), &self.product_basis(j, k));
                    if left != right {
                        return Err(Error::Validation(format!(
                            "product is not associative on ({},{},{})",
                            name(i),
                            name(j),
                            name(k)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Basis indices of degree `k` (and exact weight `w` when given).
    pub fn block(&self, degree: i32, weight: Option<u32>) -> Vec<usize> {
        (0..self.dim())
            .filter(|&i| self.basis.degree(i) == degree)
            .filter(|&i| weight.map_or(true, |w| self.basis.weight(i) == Some(w)))
            .collect()
    }

    /// Cocycles and boundaries of `Ā` in one degree (and weight), as vectors
    /// over the full basis.
    pub fn cocycles_and_boundaries(&self, degree: i32, weight: Option<u32>) -> (Vec<SparseVec>, Vec<SparseVec>) {
        let cols = self.block(degree, weight);
        let images: Vec<SparseVec> = cols.iter().map(|&i| self.differential[i].clone()).collect();
        let m = SparseMatrix::from_columns(self.dim(), &images);
        let cocycles = kernel_basis(&m)
            .into_iter()
            .map(|k| k.remap(|j| Some(cols[j])))
            .collect();
        let below = self.block(degree - 1, weight);
        let boundaries: Vec<SparseVec> = below.iter().map(|&i| self.differential[i].clone()).collect();
        let boundaries = Span::from_vectors(&boundaries).basis();
        (cocycles, boundaries)
    }

    /// Representatives of `H^k(A)` for `k ≥ 1` (degree 0 includes the unit
    /// and is handled by [`h0_dim`](Self::h0_dim)).
    pub fn cohomology_representatives(&self, degree: i32, weight: Option<u32>) -> Vec<SparseVec> {
        let (z, b) = self.cocycles_and_boundaries(degree, weight);
        extend_basis(&Span::from_vectors(&b), &z)
    }

    /// `dim H^0(A) = 1 + dim ker(d on Ā^0)`.
    pub fn h0_dim(&self) -> usize {
        let (z, _) = self.cocycles_and_boundaries(0, None);
        1 + z.len()
    }

    /// `A ×_ℚ B`: units identified, `Ā ⊕ B̄` with vanishing cross products.
    /// Clashing names of `B` get primes appended; weights survive only if
    /// both sides are weighted (or zero).
    pub fn fiber_product(&self, other: &FiniteCdga) -> Result<(FiniteCdga, Vec<usize>, Vec<usize>)> {
        let weighted = |c: &FiniteCdga| c.dim() == 0 || c.is_weighted();
        let keep_weights = weighted(self) && weighted(other) && self.dim() + other.dim() > 0;
        let mut taken: std::collections::BTreeSet<String> =
            self.basis.iter().map(|e| e.name.clone()).collect();
        let mut elements: Vec<BasisElement> = Vec::new();
        for e in self.basis.iter() {
            elements.push(BasisElement {
                name: e.name.clone(),
                degree: e.degree,
                weight: if keep_weights { e.weight } else { None },
            });
        }
        for e in other.basis.iter() {
            let mut name = e.name.clone();
            while taken.contains(&name) {
                name.push('\'');
            }
            taken.insert(name.clone());
            elements.push(BasisElement {
                name,
                degree: e.degree,
                weight: if keep_weights { e.weight } else { None },
            });
        }
        let (basis, perm) = GradedBasis::with_permutation(elements)?;
        let left: Vec<usize> = (0..self.dim()).map(|i| perm[i]).collect();
        let right: Vec<usize> = (0..other.dim()).map(|i| perm[self.dim() + i]).collect();
        let move_left = |v: &SparseVec| v.remap(|k| Some(left[k]));
        let move_right = |v: &SparseVec| v.remap(|k| Some(right[k]));
        let mut products = Vec::new();
        for (&(i, j), v) in &self.products {
            products.push((left[i], left[j], move_left(v)));
        }
        for (&(i, j), v) in &other.products {
            products.push((right[i], right[j], move_right(v)));
        }
        let mut differential = Vec::new();
        for i in 0..self.dim() {
            differential.push((left[i], move_left(&self.differential[i])));
        }
        for i in 0..other.dim() {
            differential.push((right[i], move_right(&other.differential[i])));
        }
        let fp = FiniteCdga::new(basis, products, differential)?;
        Ok((fp, left, right))
    }

    /// `∧V / (degree > max_degree, weight > max_weight)` as a finite cdga.
    /// Returns the algebra and the monomial of each basis element.
    pub fn truncate_sullivan(
        a: &SullivanAlgebra,
        max_degree: i32,
        max_weight: Option<u32>,
    ) -> Result<(FiniteCdga, Vec<Vec<usize>>)> {
        let gens = a.generators();
        let weight_cap = if a.is_weighted() { max_weight } else { None };
        let mut monos: Vec<Vec<usize>> = Vec::new();
        for deg in 1..=max_degree {
            monos.extend(monomials_of_degree(gens, deg, weight_cap));
        }
        let elements: Vec<BasisElement> = monos
            .iter()
            .map(|m| BasisElement {
                name: super::poly::format_monomial(gens, m),
                degree: super::poly::monomial_degree(gens, m),
                weight: if a.is_weighted() {
                    monomial_weight(gens, m)
                } else {
                    None
                },
            })
            .collect();
        // `monos` is already sorted by degree, so the permutation is trivial.
        let basis = GradedBasis::new(elements)?;
        let index: BTreeMap<&Vec<usize>, usize> =
            monos.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let to_vec = |p: &Poly| -> SparseVec {
            let mut v = SparseVec::new();
            for (m, c) in p.iter() {
                if let Some(&i) = index.get(m) {
                    v.add_at(i, c);
                }
            }
            v
        };
        let mut products = Vec::new();
        for i in 0..monos.len() {
            for j in i..monos.len() {
                let p = a.mul(
                    &Poly::monomial(monos[i].clone(), Rational::from_integer(1.into())),
                    &Poly::monomial(monos[j].clone(), Rational::from_integer(1.into())),
                );
                let v = to_vec(&p);
                if !v.is_zero() {
                    products.push((i, j, v));
                }
            }
        }
        let differential = monos
            .iter()
            .enumerate()
            .map(|(i, m)| (i, to_vec(&a.d_monomial(m))))
            .collect();
        Ok((FiniteCdga::new(basis, products, differential)?, monos))
    }

    pub fn homogeneous_degree(&self, v: &SparseVec) -> Option<i32> {
        self.degree_of(v)
    }
}
