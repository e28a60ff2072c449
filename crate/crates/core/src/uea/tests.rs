use super::*;
use crate::exactlin::{rat, BasisElement, GradedBasis};
use crate::free_lie::{free_nilpotent, FreeLiePresentation};

fn heisenberg() -> LieAlgebra {
    LieAlgebra::new(
        GradedBasis::new(vec![
            BasisElement::new("x", 0),
            BasisElement::new("y", 0),
            BasisElement::new("z", 0),
        ])
        .unwrap(),
        vec![(0, 1, SparseVec::unit(2))],
    )
    .unwrap()
}

fn line() -> LieAlgebra {
    LieAlgebra::abelian(GradedBasis::new(vec![BasisElement::new("x", 0)]).unwrap())
}

#[test]
fn straightening_heisenberg() {
    let u = TruncatedUEA::new(&heisenberg(), 3).unwrap();
    let x = u.monomial(vec![0], int(1));
    let y = u.monomial(vec![1], int(1));
    let diff = u.mul(&x, &y).unwrap().sub(&u.mul(&y, &x).unwrap()).unwrap();
    assert_eq!(diff, u.monomial(vec![2], int(1)));
    let one = u.one();
    assert_eq!(u.mul(&one, &x).unwrap(), x);
}

#[test]
fn exp_of_line() {
    let u = TruncatedUEA::new(&line(), 4).unwrap();
    let g = u.exp(&u.monomial(vec![0], int(1))).unwrap();
    let e = g.element();
    assert_eq!(e.coefficient(&[]), int(1));
    assert_eq!(e.coefficient(&[0]), int(1));
    assert_eq!(e.coefficient(&[0, 0]), rat(1, 2));
    assert_eq!(e.coefficient(&[0, 0, 0]), rat(1, 6));
    assert!(u.group_like(e).is_ok());
    assert_eq!(u.exp(&u.zero()).unwrap().element(), &u.one());
}

#[test]
fn group_like_heisenberg() {
    let u = TruncatedUEA::new(&heisenberg(), 3).unwrap();
    let x = u.monomial(vec![0], int(1));
    let g = u.exp(&x).unwrap();
    assert!(u.group_like(g.element()).is_ok());
    assert_eq!(u.log(g.element()).unwrap(), x);
    let not = u.one().add(&x).unwrap().add(&u.monomial(vec![0, 0], int(1))).unwrap();
    assert!(matches!(u.group_like(&not), Err(Error::NotGroupLike(_))));
}

#[test]
fn bch_examples() {
    let h = heisenberg();
    let z = bch(&h, &SparseVec::unit(0), &SparseVec::unit(1)).unwrap();
    assert_eq!(z, SparseVec::from_pairs([(0, int(1)), (1, int(1)), (2, rat(1, 2))]));
    let ab = LieAlgebra::abelian(
        GradedBasis::new(vec![BasisElement::new("a", 0), BasisElement::new("b", 0)]).unwrap(),
    );
    assert_eq!(
        bch(&ab, &SparseVec::unit(0), &SparseVec::unit(1)).unwrap(),
        SparseVec::from_pairs([(0, int(1)), (1, int(1))])
    );
}

#[test]
fn bch_class_three() {
    let g = FreeLiePresentation::new(
        GradedBasis::new(vec![BasisElement::new("x", 0), BasisElement::new("y", 0)]).unwrap(),
    )
    .unwrap();
    let f = free_nilpotent(&g, 3, None).unwrap();
    let z = bch(&f.lie, &SparseVec::unit(0), &SparseVec::unit(1)).unwrap();
    let named = |n: &str| f.lie.basis().index_of(n).unwrap();
    assert_eq!(z.get(named("[x,y]")), rat(1, 2));
    assert_eq!(z.get(named("[x,[x,y]]")), rat(1, 12));
    // 1/12 [y,[y,x]] = 1/12 [[x,y],y]
    assert_eq!(z.get(named("[[x,y],y]")), rat(1, 12));
}

#[test]
fn graded_dimension_count() {
    let h = heisenberg();
    let u = TruncatedUEA::new(&h, 2).unwrap();
    assert_eq!(u.dim(), 3);
}

#[test]
fn odd_generators_square_to_bracket() {
    let l = LieAlgebra::new(
        GradedBasis::new(vec![BasisElement::new("a", 1), BasisElement::new("b", 2)]).unwrap(),
        vec![(0, 0, SparseVec::unit(1))],
    )
    .unwrap();
    let u = TruncatedUEA::new(&l, 3).unwrap();
    let a = u.monomial(vec![0], int(1));
    assert_eq!(u.mul(&a, &a).unwrap(), u.monomial(vec![1], rat(1, 2)));
}
