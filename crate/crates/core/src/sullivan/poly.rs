use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::exactlin::{format_rational, GradedBasis, Rational};

/// Sorted multiset of generator indices; odd generators occur at most once.
pub type Monomial = Vec<usize>;

/// Element of a free graded-commutative algebra: monomial -> coefficient.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly {
    terms: BTreeMap<Monomial, Rational>,
}

impl std::fmt::Debug for Poly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:?}", self.terms)
    }
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::monomial(Vec::new(), Rational::one())
    }

    /// `c · m` with `m` already in normal form.
    pub fn monomial(m: Monomial, c: Rational) -> Self {
        let mut p = Poly::zero();
        p.add_term(m, c);
        p
    }

    pub fn generator(i: usize) -> Self {
        Poly::monomial(vec![i], Rational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Rational> {
        &self.terms
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Monomial, &Rational)> + '_ {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &[usize]) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn axpy(&mut self, c: &Rational, other: &Poly) {
        for (m, x) in &other.terms {
            self.add_term(m.clone(), c * x);
        }
    }

    pub fn scaled(&self, c: &Rational) -> Poly {
        let mut p = Poly::zero();
        p.axpy(c, self);
        p
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut p = self.clone();
        p.axpy(&Rational::one(), other);
        p
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut p = self.clone();
        p.axpy(&-Rational::one(), other);
        p
    }

    /// Terms whose monomial has exactly `k` factors.
    pub fn wedge_component(&self, k: usize) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.len() == k)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Keeps the terms accepted by `keep`.
    pub fn filter<F: Fn(&Monomial) -> bool>(&self, keep: F) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Relabels generators; `f` must be order-preserving on the support.
    pub fn remap_monotone<F: Fn(usize) -> usize>(&self, f: F) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.iter().map(|&i| f(i)).collect(), c.clone()))
                .collect(),
        }
    }

    /// Smallest and largest wedge degree of the terms.
    pub fn wedge_range(&self) -> Option<(usize, usize)> {
        let lens = self.terms.keys().map(|m| m.len());
        let min = lens.clone().min()?;
        Some((min, lens.max()?))
    }
}

/// Product `a · b` of normal-form monomials with its Koszul sign, or `None`
/// if an odd generator repeats.
pub fn monomial_product(gens: &GradedBasis, a: &[usize], b: &[usize]) -> Option<(Monomial, bool)> {
    let odd = |i: usize| gens.degree(i) % 2 != 0;
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut negative = false;
    let mut i = 0;
    // number of odd factors of `a` not yet emitted
    let mut odd_left: usize = a.iter().filter(|&&x| odd(x)).count();
    for &y in b {
        while i < a.len() && a[i] <= y {
            if a[i] == y && odd(y) {
                return None;
            }
            if odd(a[i]) {
                odd_left -= 1;
            }
            out.push(a[i]);
            i += 1;
        }
        if odd(y) && odd_left % 2 == 1 {
            negative = !negative;
        }
        out.push(y);
    }
    out.extend_from_slice(&a[i..]);
    Some((out, negative))
}

pub fn mul(gens: &GradedBasis, a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::zero();
    for (ma, ca) in &a.terms {
        for (mb, cb) in &b.terms {
            if let Some((m, negative)) = monomial_product(gens, ma, mb) {
                let c = ca * cb;
                out.add_term(m, if negative { -c } else { c });
            }
        }
    }
    out
}

pub fn monomial_degree(gens: &GradedBasis, m: &[usize]) -> i32 {
    m.iter().map(|&i| gens.degree(i)).sum()
}

/// Sum of generator weights; `None` for unweighted generators.
pub fn monomial_weight(gens: &GradedBasis, m: &[usize]) -> Option<u32> {
    m.iter().map(|&i| gens.weight(i)).sum()
}

/// Normal form of an arbitrary product of generators in the given order.
pub fn word_to_poly(gens: &GradedBasis, word: &[usize]) -> Poly {
    let mut p = Poly::one();
    for &x in word {
        p = mul(gens, &p, &Poly::generator(x));
    }
    p
}

/// `v∧w`-style rendering, `1` for the empty monomial.
pub fn format_monomial(gens: &GradedBasis, m: &[usize]) -> String {
    if m.is_empty() {
        return "1".into();
    }
    let mut parts: Vec<String> = Vec::new();
    let mut k = 0;
    while k < m.len() {
        let mut run = 1;
        while k + run < m.len() && m[k + run] == m[k] {
            run += 1;
        }
        let name = gens.name(m[k]);
        if run > 1 {
            parts.push(format!("{name}^{run}"));
        } else {
            parts.push(name.to_string());
        }
        k += run;
    }
    parts.join("∧")
}

pub fn format_poly(gens: &GradedBasis, p: &Poly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (n, (m, c)) in p.terms.iter().enumerate() {
        let negative = c < &Rational::zero();
        let mag = if negative { -c.clone() } else { c.clone() };
        if n > 0 {
            out.push_str(if negative { " - " } else { " + " });
        } else if negative {
            out.push('-');
        }
        if m.is_empty() {
            out.push_str(&format_rational(&mag));
            continue;
        }
        if !mag.is_one() {
            out.push_str(&format_rational(&mag));
            out.push(' ');
        }
        out.push_str(&format_monomial(gens, m));
    }
    out
}

/// All normal-form monomials of the given degree, optionally with weight at
/// most `max_weight`, in lexicographic order. Degree-0 generators are used
/// only when a weight bound is given and they carry a positive weight.
pub fn monomials_of_degree(gens: &GradedBasis, degree: i32, max_weight: Option<u32>) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn go(
        gens: &GradedBasis,
        start: usize,
        remaining: i32,
        weight_left: Option<u32>,
        current: &mut Vec<usize>,
        out: &mut Vec<Monomial>,
    ) {
        if remaining == 0 {
            out.push(current.clone());
        }
        for i in start..gens.len() {
            let d = gens.degree(i);
            if d < 0 || d > remaining {
                continue;
            }
            let left = match (weight_left, gens.weight(i)) {
                (Some(l), Some(w)) if w > l => continue,
                (Some(_), Some(0)) => continue,
                (Some(l), Some(w)) => Some(l - w),
                (other, _) => {
                    if d == 0 {
                        continue;
                    }
                    other
                }
            };
            current.push(i);
            let next = if d % 2 != 0 { i + 1 } else { i };
            go(gens, next, remaining - d, left, current, out);
            current.pop();
        }
    }
    if degree < 0 {
        return out;
    }
    go(gens, 0, degree, max_weight, &mut current, &mut out);
    out
}
