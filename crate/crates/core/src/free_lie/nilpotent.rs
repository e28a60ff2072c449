use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exactlin::{BasisElement, GradedBasis, Span, SparseMatrix, SparseVec};
use crate::lie::{
    quotient_with_priority, require_nilpotent, LieAlgebra, LieIdeal, LieMorphism,
};

use super::lyndon::{commutator, Bracketing, FreeLiePresentation, LyndonBasisElement, Tensor};

/// `𝕃_S / 𝕃_S^{>n}`, cut off above a degree, with its Lyndon–Shirshov basis.
#[derive(Clone, Debug)]
pub struct FreeNilpotent {
    pub presentation: FreeLiePresentation,
    pub class: usize,
    pub degree_cap: Option<i32>,
    /// Basis elements in the canonical order of `lie`.
    pub elements: Vec<LyndonBasisElement>,
    pub lie: LieAlgebra,
}

impl FreeNilpotent {
    /// Index of the basis element for generator `g`, if it survives the degree cap.
    pub fn generator_index(&self, g: usize) -> Option<usize> {
        self.elements.iter().position(|e| e.word == [g])
    }
}

struct WordIndex(BTreeMap<Vec<usize>, usize>);

impl WordIndex {
    fn vector(&mut self, t: &Tensor) -> SparseVec {
        let mut v = SparseVec::new();
        for (w, c) in t {
            let len = self.0.len();
            let idx = *self.0.entry(w.clone()).or_insert(len);
            v.add_at(idx, c);
        }
        v
    }
}

pub fn free_nilpotent(
    g: &FreeLiePresentation,
    class: usize,
    degree_cap: Option<i32>,
) -> Result<FreeNilpotent> {
    if class == 0 {
        return Err(Error::Invalid("class must be at least 1".into()));
    }
    let gens = g.generators();
    let within = |d: i32| degree_cap.map_or(true, |cap| d <= cap);
    let mut input: Vec<LyndonBasisElement> = Vec::new();
    for k in 1..=class {
        input.extend(g.lyndon_basis(k).into_iter().filter(|e| within(e.degree)));
    }
    // Generator names may themselves look like brackets; primes keep the
    // rendered names distinct.
    let mut taken = std::collections::BTreeSet::new();
    let labels: Vec<BasisElement> = input
        .iter()
        .map(|e| {
            let mut name = e.bracketing.render(gens);
            while !taken.insert(name.clone()) {
                name.push('\'');
            }
            BasisElement::weighted(name, e.degree, e.weight() as u32)
        })
        .collect();
    let (basis, perm) = GradedBasis::with_permutation(labels)?;
    let mut elements = input.clone();
    for (orig, e) in input.into_iter().enumerate() {
        elements[perm[orig]] = e;
    }

    let expansions: Vec<Tensor> = elements.iter().map(|e| e.bracketing.expand(gens)).collect();
    let mut words: BTreeMap<usize, WordIndex> = BTreeMap::new();
    let mut spans: BTreeMap<usize, (Span, Vec<usize>)> = BTreeMap::new();
    for (i, e) in elements.iter().enumerate() {
        let v = words
            .entry(e.weight())
            .or_insert_with(|| WordIndex(BTreeMap::new()))
            .vector(&expansions[i]);
        let (span, owners) = spans
            .entry(e.weight())
            .or_insert_with(|| (Span::new(), Vec::new()));
        assert!(span.insert(&v), "Lyndon basis is dependent");
        owners.push(i);
    }

    let mut entries = Vec::new();
    let n = elements.len();
    for i in 0..n {
        for j in i..n {
            let (a, b) = (&elements[i], &elements[j]);
            if i == j && a.degree % 2 == 0 {
                continue;
            }
            let weight = a.weight() + b.weight();
            if weight > class || !within(a.degree + b.degree) {
                continue;
            }
            let t = commutator(
                &expansions[i],
                &expansions[j],
                a.degree as i64 * b.degree as i64,
            );
            if t.is_empty() {
                continue;
            }
            let v = words.get_mut(&weight).expect("weight present").vector(&t);
            let (span, owners) = &spans[&weight];
            let coords = span
                .express(&v)
                .expect("bracket of Lie elements lies in the Lyndon span");
            let out: SparseVec = coords.iter().map(|(p, c)| (owners[p], c.clone())).collect();
            entries.push((i, j, out));
        }
    }
    let lie = LieAlgebra::new(basis, entries)?;
    Ok(FreeNilpotent {
        presentation: g.clone(),
        class,
        degree_cap,
        elements,
        lie,
    })
}

/// Coproduct of two nilpotent algebras cut at a class and a degree.
#[derive(Clone, Debug)]
pub struct FreeProduct {
    pub lie: LieAlgebra,
    pub left: LieMorphism,
    pub right: LieMorphism,
    /// Free algebra on the disjoint union of the two bases.
    pub free: FreeNilpotent,
    /// For each basis element of `lie`, the free-algebra element it is the image of.
    pub representatives: Vec<Bracketing>,
    /// Generator of the free algebra for each basis element of the left / right input.
    pub left_generators: Vec<usize>,
    pub right_generators: Vec<usize>,
}

/// Names for `basis(L) ⊔ basis(L')`: names of `L'` that clash get primes
/// appended until unique.
pub fn disjoint_union_basis(l: &GradedBasis, r: &GradedBasis) -> (Vec<BasisElement>, Vec<String>) {
    let mut taken: std::collections::BTreeSet<String> =
        l.iter().map(|e| e.name.clone()).collect();
    let mut elements: Vec<BasisElement> = l
        .iter()
        .map(|e| BasisElement::new(e.name.clone(), e.degree))
        .collect();
    let mut renamed = Vec::new();
    for e in r.iter() {
        let mut name = e.name.clone();
        while taken.contains(&name) {
            name.push('\'');
        }
        taken.insert(name.clone());
        elements.push(BasisElement::new(name.clone(), e.degree));
        renamed.push(name);
    }
    (elements, renamed)
}

pub fn free_product_nilpotent(
    l: &LieAlgebra,
    r: &LieAlgebra,
    class: usize,
    degree_cap: Option<i32>,
) -> Result<FreeProduct> {
    require_nilpotent(l)?;
    require_nilpotent(r)?;
    for side in [l, r] {
        if let Err(v) = side.validate() {
            return Err(Error::Validation(v.to_string()));
        }
    }
    let (elements, _) = disjoint_union_basis(l.basis(), r.basis());
    let (gens, perm) = GradedBasis::with_permutation(elements)?;
    let left_generators: Vec<usize> = (0..l.dim()).map(|i| perm[i]).collect();
    let right_generators: Vec<usize> = (0..r.dim()).map(|i| perm[l.dim() + i]).collect();
    let free = free_nilpotent(&FreeLiePresentation::new(gens)?, class, degree_cap)?;
    let f = &free.lie;

    let embed = |side: &LieAlgebra, map: &[usize]| -> Vec<SparseVec> {
        (0..side.dim())
            .map(|i| match free.generator_index(map[i]) {
                Some(fi) => SparseVec::unit(fi),
                None => SparseVec::new(),
            })
            .collect()
    };
    let left_images = embed(l, &left_generators);
    let right_images = embed(r, &right_generators);

    let mut relations = Vec::new();
    for (side, images) in [(l, &left_images), (r, &right_images)] {
        for i in 0..side.dim() {
            for j in i..side.dim() {
                if i == j && side.degree(i) % 2 == 0 {
                    continue;
                }
                let value = side.bracket_basis(i, j);
                let mut rel = f.bracket(&images[i], &images[j]);
                for (k, c) in value.iter() {
                    rel.axpy(&-c, &images[k]);
                }
                if !rel.is_zero() {
                    relations.push(rel);
                }
            }
        }
    }
    let ideal = LieIdeal::generated_by(f, &relations);

    // Eliminate long brackets first so the input bases survive.
    let mut order: Vec<usize> = (0..f.dim()).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(free.elements[i].weight()));
    // Relations such as [x,y] = z are not weight-homogeneous.
    let (lie, rho, keep) = quotient_with_priority(&f.without_weights(), ideal.subspace(), &order)?;
    let rho_matrix = rho.matrix;

    let inclusion = |side: &LieAlgebra, images: &[SparseVec]| -> Result<LieMorphism> {
        let cols: Vec<SparseVec> = images.iter().map(|v| rho_matrix.mul_vec(v)).collect();
        LieMorphism::new(
            side.clone(),
            lie.clone(),
            SparseMatrix::from_columns(lie.dim(), &cols),
        )
    };
    let left = inclusion(l, &left_images)?;
    let right = inclusion(r, &right_images)?;
    let representatives = keep
        .iter()
        .map(|&i| free.elements[i].bracketing.clone())
        .collect();
    Ok(FreeProduct {
        lie,
        left,
        right,
        free,
        representatives,
        left_generators,
        right_generators,
    })
}
