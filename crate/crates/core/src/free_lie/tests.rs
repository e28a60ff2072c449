use super::*;
use crate::exactlin::{BasisElement, GradedBasis, SparseVec};
use crate::lie::{lower_central_series, LieAlgebra};

fn gens(layout: &[(&str, i32)]) -> FreeLiePresentation {
    FreeLiePresentation::new(
        GradedBasis::new(layout.iter().map(|(n, d)| BasisElement::new(*n, *d)).collect()).unwrap(),
    )
    .unwrap()
}

#[test]
fn lyndon_word_counts() {
    // Necklace counts for two letters: 2, 1, 2, 3, 6.
    let words = lyndon_words(2, 5);
    let counts: Vec<usize> = (1..=5).map(|k| words.iter().filter(|w| w.len() == k).count()).collect();
    assert_eq!(counts, vec![2, 1, 2, 3, 6]);
    assert!(words.iter().all(|w| is_lyndon(w)));
}

#[test]
fn basis_sizes() {
    let g = gens(&[("x", 0), ("y", 0)]);
    assert_eq!(g.lyndon_basis(2).len(), 1);
    assert_eq!(g.lyndon_basis(3).len(), 2);
    assert_eq!(gens(&[("x", 0)]).lyndon_basis(2).len(), 0);
    let odd = gens(&[("x", 1), ("y", 1)]);
    let names: Vec<String> = odd
        .lyndon_basis(2)
        .iter()
        .map(|e| e.bracketing.render(odd.generators()))
        .collect();
    assert_eq!(names, vec!["[x,x]", "[x,y]", "[y,y]"]);
}

#[test]
fn free_class_two_is_heisenberg() {
    let f = free_nilpotent(&gens(&[("x", 0), ("y", 0)]), 2, None).unwrap();
    assert_eq!(f.lie.dim(), 3);
    assert!(f.lie.validate().is_ok());
    assert_eq!(f.lie.bracket_basis(0, 1), SparseVec::unit(2));
    assert_eq!(f.lie.basis().name(2), "[x,y]");
}

#[test]
fn free_class_three_layers() {
    let f = free_nilpotent(&gens(&[("x", 0), ("y", 0)]), 3, None).unwrap();
    assert_eq!(f.lie.dim(), 5);
    assert!(f.lie.validate().is_ok());
    assert_eq!(lower_central_series(&f.lie).layer_dims(), vec![2, 1, 2]);
}

#[test]
fn one_generator_is_abelian() {
    let f = free_nilpotent(&gens(&[("x", 0)]), 4, None).unwrap();
    assert_eq!(f.lie.dim(), 1);
    assert!(f.lie.is_abelian());
}

#[test]
fn odd_generator_square() {
    let f = free_nilpotent(&gens(&[("x", 1)]), 4, None).unwrap();
    assert_eq!(f.lie.dim(), 2);
    assert!(f.lie.validate().is_ok());
}

#[test]
fn free_product_of_lines() {
    let line = |n: &str| {
        LieAlgebra::abelian(GradedBasis::new(vec![BasisElement::new(n, 0)]).unwrap())
    };
    let p = free_product_nilpotent(&line("a"), &line("b"), 2, None).unwrap();
    assert_eq!(p.lie.dim(), 3);
    let p1 = free_product_nilpotent(&line("a"), &line("a"), 1, None).unwrap();
    assert_eq!(p1.lie.dim(), 2);
    assert!(p1.lie.is_abelian());
    assert_eq!(p1.lie.basis().name(1), "a'");
}

#[test]
fn free_product_with_zero() {
    let h = free_nilpotent(&gens(&[("x", 0), ("y", 0)]), 2, None).unwrap().lie;
    let p = free_product_nilpotent(&h, &LieAlgebra::zero(), 3, None).unwrap();
    assert_eq!(p.lie, h.without_weights());
    assert_eq!(p.left.matrix, crate::exactlin::SparseMatrix::identity(3));
}
