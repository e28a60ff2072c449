mod common;

use common::*;
use proptest::prelude::*;

use quadlie_core::duality::{chevalley_eilenberg, homotopy_lie_algebra};
use quadlie_core::exactlin::{int, GradedBasis, SparseVec};
use quadlie_core::lie::{lower_central_series, LieAlgebra};
use quadlie_core::sullivan::{cohomology, SullivanAlgebra, Truncation};
use quadlie_core::uea::{bch, TruncatedUEA};

fn coeff() -> impl Strategy<Value = Q> {
    (-4i64..=4, 1i64..=3).prop_map(|(n, d)| q(n, d))
}

fn element(dim: usize) -> impl Strategy<Value = SparseVec> {
    proptest::collection::vec(coeff(), dim).prop_map(|cs| cs.into_iter().enumerate().collect())
}

/// Upper triangular with nonzero diagonal, as columns.
fn triangular(dim: usize) -> impl Strategy<Value = Vec<SparseVec>> {
    (
        proptest::collection::vec(prop_oneof![Just(1i64), Just(-2), Just(3)], dim),
        proptest::collection::vec(coeff(), dim * dim),
    )
        .prop_map(move |(diag, off)| {
            (0..dim)
                .map(|i| {
                    let mut v = SparseVec::unit(i).scaled(&int(diag[i]));
                    for j in i + 1..dim {
                        v.add_at(j, &off[i * dim + j]);
                    }
                    v
                })
                .collect()
        })
}

fn degree_zero_algebras() -> Vec<LieAlgebra> {
    vec![heisenberg(), free_two(3).lie.without_weights(), weighted().without_weights()]
}

fn rebased(l: &LieAlgebra, vectors: &[SparseVec]) -> LieAlgebra {
    let names: Vec<(String, i32)> = (0..l.dim()).map(|i| (format!("e{i}"), 0)).collect();
    let layout: Vec<(&str, i32)> = names.iter().map(|(n, d)| (n.as_str(), *d)).collect();
    l.change_basis(basis(&layout), vectors).unwrap()
}

fn sullivan_rebased(a: &SullivanAlgebra, vectors: &[SparseVec]) -> SullivanAlgebra {
    let (new_basis, images) = a.change_of_variables(vectors);
    let differential = vectors
        .iter()
        .map(|v| {
            let mut p = quadlie_core::sullivan::Poly::zero();
            for (i, c) in v.iter() {
                p.axpy(c, a.d_generator(i));
            }
            a.substitute(&p, &new_basis, &images)
        })
        .collect();
    let names = GradedBasis::new(
        (0..new_basis.len())
            .map(|i| quadlie_core::exactlin::BasisElement::new(format!("w{i}"), new_basis.degree(i)))
            .collect(),
    )
    .unwrap();
    SullivanAlgebra::new(names, differential).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn bch_is_associative(a in element(5), b in element(5), c in element(5)) {
        let l = free_two(3).lie;
        let lhs = bch(&l, &bch(&l, &a, &b).unwrap(), &c).unwrap();
        let rhs = bch(&l, &a, &bch(&l, &b, &c).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn bch_inverse_and_neutral(a in element(5)) {
        let l = free_two(3).lie;
        prop_assert!(bch(&l, &a, &a.scaled(&-int(1))).unwrap().is_zero());
        prop_assert_eq!(bch(&l, &a, &SparseVec::new()).unwrap(), a.clone());
        prop_assert_eq!(bch(&l, &SparseVec::new(), &a).unwrap(), a);
    }

    #[test]
    fn bch_of_commuting_is_sum(s in coeff(), t in coeff(), a in element(5)) {
        let l = free_two(3).lie;
        let z = bch(&l, &a.scaled(&s), &a.scaled(&t)).unwrap();
        prop_assert_eq!(z, a.scaled(&(s + t)));
    }

    #[test]
    fn exp_log_round_trip(a in element(3)) {
        let l = heisenberg();
        let u = TruncatedUEA::new(&l, 4).unwrap();
        let g = u.exp(&u.from_lie(&a)).unwrap();
        prop_assert!(u.group_like(g.element()).is_ok());
        prop_assert_eq!(u.to_lie(&u.log(g.element()).unwrap()), Some(a));
    }

    #[test]
    fn ce_round_trip_after_change_of_basis(pick in 0usize..3, seed in triangular(5)) {
        let l = &degree_zero_algebras()[pick];
        let vectors: Vec<SparseVec> = seed.into_iter().take(l.dim()).map(|v| {
            v.iter().filter(|(i, _)| *i < l.dim()).map(|(i, c)| (i, c.clone())).collect()
        }).collect();
        let m = rebased(l, &vectors);
        let ce = chevalley_eilenberg(&m).unwrap();
        let class = lower_central_series(&m).class();
        prop_assert_eq!(homotopy_lie_algebra(&ce, class).unwrap().lie, m.clone());
        prop_assert_eq!(
            lower_central_series(&m).layer_dims(),
            lower_central_series(l).layer_dims()
        );
    }

    #[test]
    fn cohomology_invariant_under_change_of_variables(pick in 0usize..3, seed in triangular(5)) {
        let l = &degree_zero_algebras()[pick];
        let a = chevalley_eilenberg(l).unwrap();
        let vectors: Vec<SparseVec> = seed.into_iter().take(l.dim()).map(|v| {
            v.iter().filter(|(i, _)| *i < l.dim()).map(|(i, c)| (i, c.clone())).collect()
        }).collect();
        let b = sullivan_rebased(&a, &vectors);
        prop_assert!(b.validate().ok);
        let t = Truncation::new(l.dim(), 1).unwrap();
        prop_assert_eq!(cohomology(&a, &t).dims(), cohomology(&b, &t).dims());
        prop_assert_eq!(b.filtration().dims(), a.filtration().dims());
    }
}

#[test]
fn euler_characteristic_vanishes() {
    // C*(L) for L ≠ 0 in degree 0 is an exterior algebra, so χ(H) = χ(C) = 0.
    for l in degree_zero_algebras().into_iter().chain([abelian(1), abelian(3)]) {
        let a = chevalley_eilenberg(&l).unwrap();
        let dims = cohomology(&a, &Truncation::new(l.dim(), 1).unwrap()).dims();
        let chi: i64 = dims.iter().enumerate().map(|(k, &d)| if k % 2 == 0 { d as i64 } else { -(d as i64) }).sum();
        assert_eq!(chi, 0, "{dims:?}");
        assert_eq!(dims[0], 1);
        assert_eq!(dims[1], lower_central_series(&l).layer_dims()[0]);
    }
}
