mod common;

use common::*;

use quadlie_core::exactlin::{int, SparseVec};
use quadlie_core::free_lie::FreeLiePresentation;
use quadlie_core::lie::lower_central_series;
use quadlie_core::uea::{bch, TruncatedUEA};

fn lyndon_matches_rank(degrees: &[i32], max_weight: usize) {
    let names = ["p", "q", "r"];
    let layout: Vec<(&str, i32)> = degrees.iter().enumerate().map(|(i, d)| (names[i], *d)).collect();
    let gens = basis(&layout);
    let sorted: Vec<i32> = (0..gens.len()).map(|i| gens.degree(i)).collect();
    let p = FreeLiePresentation::new(gens).unwrap();
    for k in 1..=max_weight {
        let rows: Vec<Tensor> = all_bracketings(sorted.len(), k)
            .iter()
            .map(|b| expand(b, &sorted, k).0)
            .collect();
        assert_eq!(p.lyndon_basis(k).len(), rank(&rows), "degrees {degrees:?}, weight {k}");
    }
}

#[test]
fn lyndon_counts_even() {
    for d in [&[0][..], &[0, 0], &[0, 0, 0], &[2, 4]] {
        lyndon_matches_rank(d, 4);
    }
}

#[test]
fn lyndon_counts_odd() {
    for d in [&[1][..], &[1, 1], &[0, 1], &[1, 1, 1], &[1, 2]] {
        lyndon_matches_rank(d, 4);
    }
}

#[test]
fn lyndon_expansions_are_independent() {
    let gens = basis(&[("p", 0), ("q", 0)]);
    let p = FreeLiePresentation::new(gens).unwrap();
    for k in 1..=5 {
        let rows: Vec<Tensor> = p
            .lyndon_basis(k)
            .iter()
            .map(|e| expand(&e.bracketing, &[0, 0], k).0)
            .collect();
        assert_eq!(rank(&rows), rows.len());
    }
}

#[test]
fn free_layers() {
    assert_eq!(lower_central_series(&free_two(5).lie).layer_dims(), vec![2, 1, 2, 3, 6]);
}

#[test]
fn bch_against_tensor_log_exp() {
    for class in 2..=4 {
        let f = free_two(class);
        let x = SparseVec::unit(0);
        let mut y = SparseVec::unit(1);
        y.axpy(&q(2, 3), &SparseVec::unit(0));
        y.axpy(&int(-5), &SparseVec::unit(2));
        let (tx, ty) = (to_tensor(&f, &x), to_tensor(&f, &y));
        let expected = log(&mul(&exp(&tx, class), &exp(&ty, class), class), class);
        let z = bch(&f.lie, &x, &y).unwrap();
        assert_eq!(to_tensor(&f, &z), expected, "class {class}");
    }
}

#[test]
fn uea_exp_against_tensor_exp() {
    let f = free_two(3);
    let u = TruncatedUEA::new(&f.lie, 4).unwrap();
    let g = u.exp(&u.from_lie(&SparseVec::unit(0))).unwrap();
    let h = u.exp(&u.from_lie(&SparseVec::unit(1))).unwrap();
    let z = u.to_lie(&u.log(&u.mul(g.element(), h.element()).unwrap()).unwrap()).unwrap();
    let expected = log(&mul(&exp(&letter(0), 3), &exp(&letter(1), 3), 3), 3);
    assert_eq!(to_tensor(&f, &z), expected);
}
