use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactlin::rational::sign;
use crate::exactlin::{format_rational, GradedBasis, Rational, Span, SparseMatrix, SparseVec};

/// Finite-dimensional graded Lie algebra over the rationals, degrees >= 0.
///
/// Structure constants are stored for `i < j`, plus `i == j` when the basis
/// element has odd degree. The remaining brackets follow from graded
/// antisymmetry `[x,y] = -(-1)^{|x||y|}[y,x]`.
#[derive(Clone, PartialEq, Eq)]
pub struct LieAlgebra {
    basis: GradedBasis,
    brackets: BTreeMap<(usize, usize), SparseVec>,
}

/// First failing axiom found by [`LieAlgebra::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Degree {
        pair: (String, String),
        target: String,
    },
    Weight {
        pair: (String, String),
        target: String,
    },
    Jacobi {
        triple: (String, String, String),
        sum: String,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Degree { pair, target } => write!(
                f,
                "[{},{}] has a component on {} of the wrong degree",
                pair.0, pair.1, target
            ),
            Violation::Weight { pair, target } => write!(
                f,
                "[{},{}] has a component on {} of the wrong weight",
                pair.0, pair.1, target
            ),
            Violation::Jacobi { triple, sum } => write!(
                f,
                "Jacobi identity fails on ({},{},{}): cyclic sum = {}",
                triple.0, triple.1, triple.2, sum
            ),
        }
    }
}

impl LieAlgebra {
    /// Builds an algebra from structure constants `[e_i, e_j] = out`, indices
    /// in canonical basis order. Entries with `i > j` are folded in by
    /// antisymmetry.
    pub fn new(basis: GradedBasis, entries: Vec<(usize, usize, SparseVec)>) -> Result<Self> {
        let n = basis.len();
        if let Some(e) = basis.iter().find(|e| e.degree < 0) {
            return Err(Error::Invalid(format!("negative degree on {}", e.name)));
        }
        let mut brackets: BTreeMap<(usize, usize), SparseVec> = BTreeMap::new();
        for (i, j, out) in entries {
            if i >= n || j >= n || out.max_index().is_some_and(|k| k >= n) {
                return Err(Error::Invalid(format!("bracket index out of range ({i},{j})")));
            }
            let (key, value) = if i <= j {
                ((i, j), out)
            } else {
                let s = -sign(i64::from(basis.degree(i)) * i64::from(basis.degree(j)));
                ((j, i), out.scaled(&s))
            };
            if key.0 == key.1 && basis.degree(key.0) % 2 == 0 && !value.is_zero() {
                return Err(Error::Invalid(format!(
                    "[{0},{0}] must vanish for an even element",
                    basis.name(key.0)
                )));
            }
            if brackets.contains_key(&key) {
                return Err(Error::Invalid(format!(
                    "bracket [{},{}] given twice",
                    basis.name(key.0),
                    basis.name(key.1)
                )));
            }
            if !value.is_zero() {
                brackets.insert(key, value);
            }
        }
        Ok(LieAlgebra { basis, brackets })
    }

    pub fn abelian(basis: GradedBasis) -> Self {
        LieAlgebra {
            basis,
            brackets: BTreeMap::new(),
        }
    }

    pub fn zero() -> Self {
        Self::abelian(GradedBasis::empty())
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &GradedBasis {
        &self.basis
    }

    pub fn degree(&self, i: usize) -> i32 {
        self.basis.degree(i)
    }

    pub fn is_weighted(&self) -> bool {
        self.basis.is_weighted()
    }

    /// Stored structure constants, `i <= j`.
    pub fn stored_brackets(&self) -> impl Iterator<Item = (usize, usize, &SparseVec)> + '_ {
        self.brackets.iter().map(|(&(i, j), v)| (i, j, v))
    }

    pub fn is_abelian(&self) -> bool {
        self.brackets.is_empty()
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> SparseVec {
        if i <= j {
            self.brackets.get(&(i, j)).cloned().unwrap_or_default()
        } else {
            let s = -sign(i64::from(self.degree(i)) * i64::from(self.degree(j)));
            self.brackets
                .get(&(j, i))
                .map(|v| v.scaled(&s))
                .unwrap_or_default()
        }
    }

    pub fn bracket(&self, a: &SparseVec, b: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, ci) in a.iter() {
            for (j, cj) in b.iter() {
                let br = self.bracket_basis(i, j);
                if !br.is_zero() {
                    out.axpy(&(ci * cj), &br);
                }
            }
        }
        out
    }

    /// Degree of a homogeneous vector, `None` for zero or mixed vectors.
    pub fn degree_of(&self, v: &SparseVec) -> Option<i32> {
        let mut degs = v.support().map(|i| self.degree(i));
        let d = degs.next()?;
        degs.all(|e| e == d).then_some(d)
    }

    /// Checks degree additivity, weight additivity (when weights are present)
    /// and the graded Jacobi identity on all basis triples `i <= j <= k`.
    pub fn validate(&self) -> std::result::Result<(), Violation> {
        let name = |i: usize| self.basis.name(i).to_string();
        for (&(i, j), out) in &self.brackets {
            for k in out.support() {
                if self.degree(k) != self.degree(i) + self.degree(j) {
                    return Err(Violation::Degree {
                        pair: (name(i), name(j)),
                        target: name(k),
                    });
                }
                if let (Some(wi), Some(wj), Some(wk)) = (
                    self.basis.weight(i),
                    self.basis.weight(j),
                    self.basis.weight(k),
                ) {
                    if wk != wi + wj {
                        return Err(Violation::Weight {
                            pair: (name(i), name(j)),
                            target: name(k),
                        });
                    }
                }
            }
        }
        let n = self.dim();
        for i in 0..n {
            for j in i..n {
                for k in j..n {
                    let sum = self.jacobi_sum(i, j, k);
                    if !sum.is_zero() {
                        return Err(Violation::Jacobi {
                            triple: (name(i), name(j), name(k)),
                            sum: self.format_vector(&sum),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// `(-1)^{|x||z|}[x,[y,z]] + (-1)^{|y||x|}[y,[z,x]] + (-1)^{|z||y|}[z,[x,y]]`
    pub fn jacobi_sum(&self, i: usize, j: usize, k: usize) -> SparseVec {
        let d = |a: usize| i64::from(self.degree(a));
        let term = |a: usize, b: usize, c: usize| {
            let inner = self.bracket_basis(b, c);
            self.bracket(&SparseVec::unit(a), &inner)
                .scaled(&sign(d(a) * d(c)))
        };
        let mut sum = term(i, j, k);
        sum.axpy(&Rational::one(), &term(j, k, i));
        sum.axpy(&Rational::one(), &term(k, i, j));
        sum
    }

    /// Matrix of `ad_x = [x, -]` for a basis element.
    pub fn ad_matrix(&self, i: usize) -> SparseMatrix {
        let cols: Vec<SparseVec> = (0..self.dim()).map(|j| self.bracket_basis(i, j)).collect();
        SparseMatrix::from_columns(self.dim(), &cols)
    }

    /// Re-expresses the algebra in a new basis given by `vectors` (old
    /// coordinates), which must be homogeneous and span the whole space.
    pub fn change_basis(&self, new_basis: GradedBasis, vectors: &[SparseVec]) -> Result<LieAlgebra> {
        if vectors.len() != self.dim() || new_basis.len() != self.dim() {
            return Err(Error::Invalid("change of basis has the wrong size".into()));
        }
        let span = Span::from_vectors(vectors);
        if span.dim() != self.dim() {
            return Err(Error::Invalid("change of basis is singular".into()));
        }
        let mut entries = Vec::new();
        for i in 0..vectors.len() {
            for j in i..vectors.len() {
                let br = self.bracket(&vectors[i], &vectors[j]);
                if br.is_zero() {
                    continue;
                }
                let coords = span.express(&br).expect("full rank");
                entries.push((i, j, coords));
            }
        }
        LieAlgebra::new(new_basis, entries)
    }

    /// Same structure constants with weight labels dropped.
    pub fn without_weights(&self) -> LieAlgebra {
        LieAlgebra {
            basis: self.basis.without_weights(),
            brackets: self.brackets.clone(),
        }
    }

    pub fn format_vector(&self, v: &SparseVec) -> String {
        format_combination(v, |i| self.basis.name(i).to_string())
    }
}

/// Formats `sum c_i name(i)` as e.g. `x + y + 1/2 [x,y]`.
pub fn format_combination<F: Fn(usize) -> String>(v: &SparseVec, name: F) -> String {
    if v.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (n, (i, c)) in v.iter().enumerate() {
        let negative = c < &Rational::zero();
        let mag = if negative { -c.clone() } else { c.clone() };
        if n == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        if !mag.is_one() {
            out.push_str(&format_rational(&mag));
            out.push(' ');
        }
        out.push_str(&name(i));
    }
    out
}

impl fmt::Debug for LieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "LieAlgebra(dim {})", self.dim())?;
        for (&(i, j), v) in &self.brackets {
            writeln!(
                f,
                "  [{},{}] = {}",
                self.basis.name(i),
                self.basis.name(j),
                self.format_vector(v)
            )?;
        }
        Ok(())
    }
}
