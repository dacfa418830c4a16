//! Hot paths at desk scale: the conjugate product, the degree-93 instance
//! end to end, its irreducibility test alone, and the Mobius product.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use galois_core::{
    is_irreducible, make_field, mobius_product, norm_product, theorem3_construct, FieldCtx, Poly,
};

fn norm_product_k5(c: &mut Criterion) {
    let tower = make_field(2, &[5]).unwrap();
    let f = Poly::from_ints(&tower, 0, &[1, 1, 1]).embedded(&tower, 1).unwrap();
    let alpha = tower.generator(1).unwrap();
    let g = f.affine_compose(&alpha, &tower.zero(1)).unwrap();
    c.bench_function("norm_product degree 2 over F_32, k = 5", |b| {
        b.iter(|| norm_product(black_box(&g), 5).unwrap())
    });
}

fn degree93_construction(c: &mut Criterion) {
    let ctx = FieldCtx::prime(2).unwrap();
    let f = Poly::from_ints(&ctx, 0, &[1, 1, 0, 1]);
    let lbar = Poly::from_ints(&ctx, 0, &[1, 1, 1, 0, 1, 1]);
    c.bench_function("theorem3 degree-93 instance", |b| {
        b.iter(|| theorem3_construct(black_box(&f), black_box(&lbar)).unwrap())
    });
}

fn degree93_irreducibility(c: &mut Criterion) {
    let ctx = FieldCtx::prime(2).unwrap();
    let f = Poly::from_ints(&ctx, 0, &[1, 1, 0, 1]);
    let lbar = Poly::from_ints(&ctx, 0, &[1, 1, 1, 0, 1, 1]);
    let output = theorem3_construct(&f, &lbar).unwrap().output;
    c.bench_function("is_irreducible on the degree-93 output", |b| {
        b.iter(|| is_irreducible(black_box(&output)).unwrap())
    });
}

fn mobius_product_3_4(c: &mut Criterion) {
    let ctx = FieldCtx::prime(3).unwrap();
    c.bench_function("mobius_product q = 3, n = 4", |b| {
        b.iter(|| mobius_product(black_box(&ctx), 4).unwrap())
    });
}

criterion_group!(
    benches,
    norm_product_k5,
    degree93_construction,
    degree93_irreducibility,
    mobius_product_3_4
);
criterion_main!(benches);
