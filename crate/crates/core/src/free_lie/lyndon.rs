use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::exactlin::rational::sign;
use crate::exactlin::{GradedBasis, Rational, SparseVec};
use crate::lie::LieAlgebra;

/// Bracket monomial in the generators of a free Lie algebra.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Bracketing {
    Gen(usize),
    Bracket(Box<Bracketing>, Box<Bracketing>),
}

impl Bracketing {
    pub fn bracket(a: Bracketing, b: Bracketing) -> Bracketing {
        Bracketing::Bracket(Box::new(a), Box::new(b))
    }

    /// Underlying word of generator indices, read left to right.
    pub fn word(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.push_word(&mut out);
        out
    }

    fn push_word(&self, out: &mut Vec<usize>) {
        match self {
            Bracketing::Gen(i) => out.push(*i),
            Bracketing::Bracket(a, b) => {
                a.push_word(out);
                b.push_word(out);
            }
        }
    }

    pub fn weight(&self) -> usize {
        match self {
            Bracketing::Gen(_) => 1,
            Bracketing::Bracket(a, b) => a.weight() + b.weight(),
        }
    }

    pub fn degree(&self, generators: &GradedBasis) -> i32 {
        match self {
            Bracketing::Gen(i) => generators.degree(*i),
            Bracketing::Bracket(a, b) => a.degree(generators) + b.degree(generators),
        }
    }

    /// Nested bracket string such as `[x,[x,y]]`.
    pub fn render(&self, generators: &GradedBasis) -> String {
        match self {
            Bracketing::Gen(i) => generators.name(*i).to_string(),
            Bracketing::Bracket(a, b) => {
                format!("[{},{}]", a.render(generators), b.render(generators))
            }
        }
    }

    /// Value in `lie` when generator `i` is sent to `images[i]`.
    pub fn evaluate(&self, lie: &LieAlgebra, images: &[SparseVec]) -> SparseVec {
        match self {
            Bracketing::Gen(i) => images[*i].clone(),
            Bracketing::Bracket(a, b) => {
                lie.bracket(&a.evaluate(lie, images), &b.evaluate(lie, images))
            }
        }
    }

    /// Image in the tensor algebra, brackets expanded as graded commutators.
    pub fn expand(&self, generators: &GradedBasis) -> Tensor {
        match self {
            Bracketing::Gen(i) => {
                let mut t = Tensor::new();
                t.insert(vec![*i], Rational::from_integer(1.into()));
                t
            }
            Bracketing::Bracket(a, b) => {
                let da = a.degree(generators) as i64;
                let db = b.degree(generators) as i64;
                commutator(&a.expand(generators), &b.expand(generators), da * db)
            }
        }
    }
}

impl fmt::Display for Bracketing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bracketing::Gen(i) => write!(f, "g{i}"),
            Bracketing::Bracket(a, b) => write!(f, "[{a},{b}]"),
        }
    }
}

/// Noncommutative polynomial: word -> coefficient, no zero entries.
pub type Tensor = BTreeMap<Vec<usize>, Rational>;

pub fn tensor_mul(a: &Tensor, b: &Tensor) -> Tensor {
    let mut out = Tensor::new();
    for (u, x) in a {
        for (v, y) in b {
            let mut w = u.clone();
            w.extend_from_slice(v);
            add_term(&mut out, w, x * y);
        }
    }
    out
}

fn add_term(t: &mut Tensor, w: Vec<usize>, c: Rational) {
    use std::collections::btree_map::Entry;
    match t.entry(w) {
        Entry::Vacant(e) => {
            if !c.is_zero() {
                e.insert(c);
            }
        }
        Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

/// `ab - (-1)^{koszul} ba`.
pub fn commutator(a: &Tensor, b: &Tensor, koszul: i64) -> Tensor {
    let mut out = tensor_mul(a, b);
    let s = -sign(koszul);
    for (w, c) in tensor_mul(b, a) {
        add_term(&mut out, w, &s * c);
    }
    out
}

/// Element of the Lyndon–Shirshov basis of a free graded Lie algebra:
/// the standard bracketing of a Lyndon word, or `[w,w]` for an odd Lyndon
/// word `w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LyndonBasisElement {
    pub word: Vec<usize>,
    pub bracketing: Bracketing,
    pub degree: i32,
}

impl LyndonBasisElement {
    pub fn weight(&self) -> usize {
        self.word.len()
    }
}

/// Free graded Lie algebra on a finite set of generators of weight 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeLiePresentation {
    generators: GradedBasis,
}

impl FreeLiePresentation {
    pub fn new(generators: GradedBasis) -> crate::Result<Self> {
        if let Some(e) = generators.iter().find(|e| e.degree < 0) {
            return Err(crate::Error::Invalid(format!(
                "generator {} has negative degree",
                e.name
            )));
        }
        Ok(FreeLiePresentation {
            generators: generators.without_weights(),
        })
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

    fn word_degree(&self, w: &[usize]) -> i32 {
        w.iter().map(|&i| self.generators.degree(i)).sum()
    }

    /// Basis of the weight-`k` component, ordered by word.
    pub fn lyndon_basis(&self, k: usize) -> Vec<LyndonBasisElement> {
        assert!(k >= 1, "weight must be positive");
        let mut out: Vec<LyndonBasisElement> = lyndon_words(self.len(), k)
            .into_iter()
            .filter(|w| w.len() == k)
            .map(|w| LyndonBasisElement {
                degree: self.word_degree(&w),
                bracketing: standard_bracketing(&w),
                word: w,
            })
            .collect();
        if k % 2 == 0 {
            for w in lyndon_words(self.len(), k / 2) {
                if w.len() != k / 2 || self.word_degree(&w) % 2 == 0 {
                    continue;
                }
                let b = standard_bracketing(&w);
                let mut word = w.clone();
                word.extend_from_slice(&w);
                out.push(LyndonBasisElement {
                    degree: 2 * self.word_degree(&w),
                    bracketing: Bracketing::bracket(b.clone(), b),
                    word,
                });
            }
        }
        out.sort_by(|a, b| a.word.cmp(&b.word));
        out
    }
}

/// Lyndon words of length `1..=n` over `{0..m}` in lexicographic order (Duval).
pub fn lyndon_words(m: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if m == 0 || n == 0 {
        return out;
    }
    let mut w: Vec<usize> = vec![0];
    loop {
        out.push(w.clone());
        let base = w.clone();
        while w.len() < n {
            let next = base[w.len() % base.len()];
            w.push(next);
        }
        while let Some(&last) = w.last() {
            if last == m - 1 {
                w.pop();
            } else {
                break;
            }
        }
        match w.last_mut() {
            Some(last) => *last += 1,
            None => return out,
        }
    }
}

pub fn is_lyndon(w: &[usize]) -> bool {
    !w.is_empty() && (1..w.len()).all(|i| w < &w[i..] && {
        let mut rot = w[i..].to_vec();
        rot.extend_from_slice(&w[..i]);
        w < rot.as_slice()
    })
}

/// Standard factorization `w = uv` with `v` the longest proper Lyndon suffix.
pub fn standard_bracketing(w: &[usize]) -> Bracketing {
    if w.len() == 1 {
        return Bracketing::Gen(w[0]);
    }
    let split = (1..w.len())
        .find(|&i| is_lyndon(&w[i..]))
        .expect("a single letter is Lyndon");
    Bracketing::bracket(standard_bracketing(&w[..split]), standard_bracketing(&w[split..]))
}
