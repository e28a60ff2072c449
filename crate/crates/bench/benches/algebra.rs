use criterion::{black_box, criterion_group, criterion_main, Criterion};

use quadlie_core::duality::{chevalley_eilenberg, eta_check, free_product_via_models, homotopy_lie_algebra};
use quadlie_core::exactlin::{BasisElement, GradedBasis, SparseVec};
use quadlie_core::free_lie::{free_nilpotent, FreeLiePresentation};
use quadlie_core::lie::LieAlgebra;
use quadlie_core::sullivan::{minimal_model, wedge_of_spheres_cohomology, Truncation};
use quadlie_core::uea::bch;

fn two_generators() -> FreeLiePresentation {
    let b = GradedBasis::new(vec![BasisElement::new("x", 0), BasisElement::new("y", 0)]).unwrap();
    FreeLiePresentation::new(b).unwrap()
}

fn heisenberg() -> LieAlgebra {
    let b = GradedBasis::new(vec![
        BasisElement::new("x", 0),
        BasisElement::new("y", 0),
        BasisElement::new("z", 0),
    ])
    .unwrap();
    LieAlgebra::new(b, vec![(0, 1, SparseVec::unit(2))]).unwrap()
}

fn benches(c: &mut Criterion) {
    let p = two_generators();
    c.bench_function("free_nilpotent class 5", |b| {
        b.iter(|| free_nilpotent(black_box(&p), 5, None).unwrap())
    });

    let f4 = free_nilpotent(&p, 4, None).unwrap();
    c.bench_function("duality round trip free class 4", |b| {
        b.iter(|| {
            let ce = chevalley_eilenberg(black_box(&f4.lie)).unwrap();
            homotopy_lie_algebra(&ce, 4).unwrap()
        })
    });
    c.bench_function("bch free class 4", |b| {
        b.iter(|| bch(&f4.lie, black_box(&SparseVec::unit(0)), &SparseVec::unit(1)).unwrap())
    });

    let s = wedge_of_spheres_cohomology(&[2, 2]).unwrap();
    let t = Truncation::new(4, 3).unwrap();
    c.bench_function("minimal model S2 v S2", |b| {
        b.iter(|| minimal_model(black_box(&s), &t).unwrap())
    });

    let h = heisenberg();
    let t3 = Truncation::new(3, 3).unwrap();
    c.bench_function("free product heisenberg * heisenberg", |b| {
        b.iter(|| free_product_via_models(black_box(&h), &h, &t3).unwrap())
    });
    c.bench_function("eta heisenberg bound 3", |b| {
        b.iter(|| eta_check(black_box(&h), 3).unwrap())
    });
}

criterion_group! {
    name = algebra;
    config = Criterion::default().sample_size(10);
    targets = benches
}
criterion_main!(algebra);
