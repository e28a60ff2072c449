use super::*;
use crate::exactlin::{int, BasisElement, GradedBasis, SparseVec};
use crate::lie::lower_central_series;
use crate::sullivan::{wedge_of_spheres_model, LambdaExtension, Truncation};

fn basis(layout: &[(&str, i32)]) -> GradedBasis {
    GradedBasis::new(layout.iter().map(|(n, d)| BasisElement::new(*n, *d)).collect()).unwrap()
}

fn heisenberg() -> LieAlgebra {
    LieAlgebra::new(
        basis(&[("x", 0), ("y", 0), ("z", 0)]),
        vec![(0, 1, SparseVec::unit(2))],
    )
    .unwrap()
}

/// `x` in degree 0, `a` in degree 1, `[a,a] = b`, `[x,a] = c`, `[x,c] = e`.
fn graded() -> LieAlgebra {
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

#[test]
fn heisenberg_sign() {
    let ce = chevalley_eilenberg(&heisenberg()).unwrap();
    assert_eq!(ce.format(ce.d_generator(2)), "x∧y");
    assert!(ce.validate().ok);
}

#[test]
fn zero_algebra_gives_ground_field() {
    let ce = chevalley_eilenberg(&LieAlgebra::zero()).unwrap();
    assert!(ce.is_empty());
}

#[test]
fn non_nilpotent_rejected() {
    let l = LieAlgebra::new(
        basis(&[("x", 0), ("y", 0)]),
        vec![(0, 1, SparseVec::unit(1))],
    )
    .unwrap();
    assert!(matches!(chevalley_eilenberg(&l), Err(Error::NotNilpotent(1))));
}

#[test]
fn round_trips() {
    for l in [heisenberg(), graded()] {
        let ce = chevalley_eilenberg(&l).unwrap();
        let class = lower_central_series(&l).class();
        let h = homotopy_lie_algebra(&ce, class).unwrap();
        assert_eq!(h.lie, l);
        assert_eq!(h.layer_dims, lower_central_series(&l).layer_dims());
        let pair = DualityPair::from_lie(&l).unwrap();
        assert_eq!(pair.check_pairing(), None);
    }
}

#[test]
fn graded_jacobi_matches_d_squared() {
    // [a,a] = b with [a,b] ≠ 0 breaks Jacobi for odd a; CE must see d² ≠ 0.
    let l = LieAlgebra::new(
        basis(&[("a", 1), ("b", 2), ("c", 3)]),
        vec![(0, 0, SparseVec::unit(1)), (0, 1, SparseVec::unit(2))],
    )
    .unwrap();
    assert!(l.validate().is_err());
    assert!(chevalley_eilenberg(&l).is_err());
}

#[test]
fn truncated_homotopy_lie_algebra() {
    let l = graded();
    let ce = chevalley_eilenberg(&l).unwrap();
    let h = homotopy_lie_algebra(&ce, 1).unwrap();
    assert!(h.lie.is_abelian());
    assert_eq!(h.lie.dim(), 2);
}

#[test]
fn sullivan_round_trip_from_non_unit_filtration() {
    // dr = ds = pq: the closed part contains r - s, which is not a generator.
    let pq = Poly::monomial(vec![0, 1], int(1));
    let a = SullivanAlgebra::new(
        basis(&[("p", 1), ("q", 1), ("r", 1), ("s", 1)]),
        vec![Poly::zero(), Poly::zero(), pq.clone(), pq],
    )
    .unwrap();
    let pair = DualityPair::from_sullivan(&a).unwrap();
    assert_eq!(pair.check_pairing(), None);
    assert_eq!(lower_central_series(&pair.lie).layer_dims(), vec![3, 1]);
    let back = chevalley_eilenberg(&pair.lie).unwrap();
    assert_eq!(back.filtration().dims(), a.filtration().dims());
}

#[test]
fn morphism_duals() {
    let a = chevalley_eilenberg(&LieAlgebra::abelian(basis(&[("v", 0), ("w", 0)]))).unwrap();
    let id = CdgaMorphism::identity(&a);
    let l = lie_morphism_of(&id, 1).unwrap();
    assert_eq!(l.matrix, SparseMatrix::identity(2));
    let swap = CdgaMorphism::new(a.clone(), a.clone(), vec![Poly::generator(1), Poly::generator(0)])
        .unwrap();
    let l = lie_morphism_of(&swap, 1).unwrap();
    assert_eq!(l.apply(&SparseVec::unit(0)), SparseVec::unit(1));
    let one = chevalley_eilenberg(&LieAlgebra::abelian(basis(&[("v", 0)]))).unwrap();
    let inc = CdgaMorphism::new(one, a.clone(), vec![Poly::generator(0)]).unwrap();
    let p = lie_morphism_of(&inc, 1).unwrap();
    assert!(p.is_surjective());
    assert_eq!(p.apply(&SparseVec::unit(1)), SparseVec::new());
    // functoriality: L_{swap∘swap} = L_swap ∘ L_swap
    let twice = swap.then(&swap);
    let lhs = lie_morphism_of(&twice, 1).unwrap();
    let rhs = lie_morphism_of(&swap, 1).unwrap().then(&lie_morphism_of(&swap, 1).unwrap());
    assert_eq!(lhs.matrix, rhs.matrix);
}

#[test]
fn profree_examples() {
    let t = Truncation::new(4, 3).unwrap();
    let torus = chevalley_eilenberg(&LieAlgebra::abelian(basis(&[("v", 0), ("w", 0)]))).unwrap();
    let c = profree_check(&torus, &t).unwrap();
    assert!(!c.verdict);
    assert_eq!(c.witness.unwrap().rendered, "[v∧w]");
    let circles = wedge_of_spheres_model(&[1, 1], &t).unwrap();
    assert!(profree_check(&circles.model.quadratic_part().unwrap(), &t).unwrap().verdict);
    let h = homotopy_lie_algebra(&circles.model.quadratic_part().unwrap(), 3).unwrap();
    assert_eq!(lower_central_series(&h.lie).layer_dims(), vec![2, 1, 2]);
}

#[test]
fn free_product_of_lines() {
    let line = LieAlgebra::abelian(basis(&[("x", 0)]));
    let t = Truncation::new(3, 2).unwrap();
    let c = free_product_via_models(&line, &line, &t).unwrap();
    assert!(c.isomorphic, "{:?}", c.problem);
    assert_eq!(c.direct_layers, vec![2, 1]);
}

#[test]
fn free_product_with_zero() {
    let t = Truncation::new(3, 2).unwrap();
    let c = free_product_via_models(&heisenberg(), &LieAlgebra::zero(), &t).unwrap();
    assert!(c.isomorphic, "{:?}", c.problem);
    assert_eq!(c.models.lie.dim(), 3);
}

#[test]
fn eta_of_a_line() {
    let line = LieAlgebra::abelian(basis(&[("x", 0)]));
    let r = eta_check(&line, 4).unwrap();
    assert!(r.holds);
    for b in &r.blocks {
        let k = b.weight as i64;
        let fact: i64 = (1..=k).product();
        let v = b.matrix.get(0, 0);
        assert_eq!(v.clone() * v, int(fact * fact));
    }
    let r = eta_check(&heisenberg(), 2).unwrap();
    assert!(r.holds);
    assert_eq!(r.blocks.iter().map(|b| b.rows.len()).sum::<usize>(), 3);
    let r = eta_check(&LieAlgebra::zero(), 1).unwrap();
    assert!(r.holds);
}

#[test]
fn central_image_hand_example() {
    let base = SullivanAlgebra::new(basis(&[("a", 2)]), vec![Poly::zero()]).unwrap();
    // dz = a + x y: base order a, then fibre x, y, z
    let mut dz = Poly::generator(0);
    dz.add_term(vec![1, 2], int(1));
    let ext = LambdaExtension::new(
        base,
        vec![
            BasisElement::new("x", 1),
            BasisElement::new("y", 1),
            BasisElement::new("z", 1),
        ],
        vec![Poly::zero(), Poly::zero(), dz],
    )
    .unwrap();
    let r = central_image_check(&ext).unwrap();
    assert!(!r.fibre_abelian);
    assert!(r.holds);
    assert_eq!(r.lie.unwrap().dim(), 3);
    assert!(!r.image[0].is_zero());
}
