//! Corpus of nilpotent Lie algebras and an independent tensor-algebra oracle.
#![allow(dead_code)]

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use quadlie_core::exactlin::{BasisElement, GradedBasis, SparseVec};
use quadlie_core::free_lie::{free_nilpotent, Bracketing, FreeLiePresentation, FreeNilpotent};
use quadlie_core::lie::LieAlgebra;

pub type Q = BigRational;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn basis(layout: &[(&str, i32)]) -> GradedBasis {
    GradedBasis::new(layout.iter().map(|(n, d)| BasisElement::new(*n, *d)).collect()).unwrap()
}

pub fn abelian(n: usize) -> LieAlgebra {
    let names = ["a", "b", "c"];
    LieAlgebra::abelian(basis(&names[..n].iter().map(|s| (*s, 0)).collect::<Vec<_>>()))
}

pub fn heisenberg() -> LieAlgebra {
    LieAlgebra::new(
        basis(&[("x", 0), ("y", 0), ("z", 0)]),
        vec![(0, 1, SparseVec::unit(2))],
    )
    .unwrap()
}

pub fn free_two(class: usize) -> FreeNilpotent {
    let p = FreeLiePresentation::new(basis(&[("x", 0), ("y", 0)])).unwrap();
    free_nilpotent(&p, class, None).unwrap()
}

/// `x` even, `a` odd: `[a,a] = b`, `[x,a] = c`, `[x,c] = e`.
pub fn graded() -> LieAlgebra {
    LieAlgebra::new(
        basis(&[("x", 0), ("a", 1), ("c", 1), ("e", 1), ("b", 2)]),
        vec![
            (1, 1, SparseVec::unit(4)),
            (0, 1, SparseVec::unit(2)),
            (0, 2, SparseVec::unit(3)),
        ],
    )
    .unwrap()
}

/// Weights 1, 2, 3, 4 on `x, y, [x,y], [x,[x,y]]`.
pub fn weighted() -> LieAlgebra {
    let b = GradedBasis::new(vec![
        BasisElement::weighted("x", 0, 1),
        BasisElement::weighted("y", 0, 2),
        BasisElement::weighted("u", 0, 3),
        BasisElement::weighted("t", 0, 4),
    ])
    .unwrap();
    LieAlgebra::new(b, vec![(0, 1, SparseVec::unit(2)), (0, 2, SparseVec::unit(3))]).unwrap()
}

pub fn corpus() -> Vec<(&'static str, LieAlgebra)> {
    vec![
        ("abelian 1", abelian(1)),
        ("abelian 2", abelian(2)),
        ("abelian 3", abelian(3)),
        ("heisenberg", heisenberg()),
        ("free class 2", free_two(2).lie),
        ("free class 3", free_two(3).lie),
        ("graded", graded()),
        ("weighted", weighted()),
    ]
}

/// Noncommutative polynomials: word → coefficient.
pub type Tensor = BTreeMap<Vec<usize>, Q>;

pub fn add(a: &mut Tensor, w: Vec<usize>, c: Q) {
    let e = a.entry(w).or_insert_with(Q::zero);
    *e += c;
}

pub fn clean(mut a: Tensor) -> Tensor {
    a.retain(|_, c| !c.is_zero());
    a
}

pub fn mul(a: &Tensor, b: &Tensor, max_len: usize) -> Tensor {
    let mut out = Tensor::new();
    for (u, x) in a {
        for (v, y) in b {
            if u.len() + v.len() > max_len {
                continue;
            }
            let mut w = u.clone();
            w.extend(v);
            add(&mut out, w, x * y);
        }
    }
    clean(out)
}

pub fn lin(a: &Tensor, ca: &Q, b: &Tensor, cb: &Q) -> Tensor {
    let mut out = Tensor::new();
    for (w, c) in a {
        add(&mut out, w.clone(), c * ca);
    }
    for (w, c) in b {
        add(&mut out, w.clone(), c * cb);
    }
    clean(out)
}

/// `ab - (-1)^{|a||b|} ba` for homogeneous `a`, `b`.
pub fn graded_commutator(a: &Tensor, da: i32, b: &Tensor, db: i32, max_len: usize) -> Tensor {
    let s = if (da * db) % 2 == 0 { -Q::one() } else { Q::one() };
    lin(&mul(a, b, max_len), &Q::one(), &mul(b, a, max_len), &s)
}

pub fn letter(i: usize) -> Tensor {
    Tensor::from([(vec![i], Q::one())])
}

pub fn expand(b: &Bracketing, degrees: &[i32], max_len: usize) -> (Tensor, i32) {
    match b {
        Bracketing::Gen(i) => (letter(*i), degrees[*i]),
        Bracketing::Bracket(l, r) => {
            let (a, da) = expand(l, degrees, max_len);
            let (c, dc) = expand(r, degrees, max_len);
            (graded_commutator(&a, da, &c, dc, max_len), da + dc)
        }
    }
}

/// Every bracketing of every word of length `k`.
pub fn all_bracketings(letters: usize, k: usize) -> Vec<Bracketing> {
    fn trees(word: &[usize]) -> Vec<Bracketing> {
        if word.len() == 1 {
            return vec![Bracketing::Gen(word[0])];
        }
        let mut out = Vec::new();
        for split in 1..word.len() {
            for l in trees(&word[..split]) {
                for r in trees(&word[split..]) {
                    out.push(Bracketing::bracket(l.clone(), r));
                }
            }
        }
        out
    }
    let mut words: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..k {
        words = words
            .into_iter()
            .flat_map(|w| {
                (0..letters).map(move |i| {
                    let mut v = w.clone();
                    v.push(i);
                    v
                })
            })
            .collect();
    }
    words.iter().flat_map(|w| trees(w)).collect()
}

/// Rank by fraction-exact Gaussian elimination on dense rows.
pub fn rank(rows: &[Tensor]) -> usize {
    let mut cols: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    for r in rows {
        for w in r.keys() {
            let n = cols.len();
            cols.entry(w.clone()).or_insert(n);
        }
    }
    let mut m: Vec<Vec<Q>> = rows
        .iter()
        .map(|r| {
            let mut v = vec![Q::zero(); cols.len()];
            for (w, c) in r {
                v[cols[w]] = c.clone();
            }
            v
        })
        .collect();
    let mut rank = 0;
    for col in 0..cols.len() {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank][col].clone();
        for i in 0..m.len() {
            if i != rank && !m[i][col].is_zero() {
                let f = &m[i][col] / &pivot;
                for j in col..cols.len() {
                    let d = &m[rank][j] * &f;
                    m[i][j] -= d;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn factorial(n: usize) -> Q {
    (1..=n).fold(Q::one(), |acc, k| acc * Q::from_integer(BigInt::from(k)))
}

/// `exp(a)` truncated at word length `max_len`, `a` without constant term.
pub fn exp(a: &Tensor, max_len: usize) -> Tensor {
    let mut out = Tensor::from([(vec![], Q::one())]);
    let mut power = out.clone();
    for k in 1..=max_len {
        power = mul(&power, a, max_len);
        out = lin(&out, &Q::one(), &power, &(Q::one() / factorial(k)));
    }
    out
}

/// `log(g)` for `g` with constant term 1.
pub fn log(g: &Tensor, max_len: usize) -> Tensor {
    let mut z = g.clone();
    z.remove(&vec![]);
    let mut out = Tensor::new();
    let mut power = Tensor::from([(vec![], Q::one())]);
    for k in 1..=max_len {
        power = mul(&power, &z, max_len);
        let c = if k % 2 == 1 { q(1, k as i64) } else { q(-1, k as i64) };
        out = lin(&out, &Q::one(), &power, &c);
    }
    out
}

/// Tensor image of an element of a free nilpotent algebra.
pub fn to_tensor(f: &FreeNilpotent, v: &SparseVec) -> Tensor {
    let gens = f.presentation.generators();
    let degrees: Vec<i32> = (0..gens.len()).map(|i| gens.degree(i)).collect();
    let mut out = Tensor::new();
    for (k, c) in v.iter() {
        let (t, _) = expand(&f.elements[k].bracketing, &degrees, f.class);
        out = lin(&out, &Q::one(), &t, c);
    }
    out
}
