//! Benchmarks for the hot paths: graph construction, integer-exact walk
//! verification, spectral estimation, and the candidate scans.

use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use fqlab_core::beck::{distinct_objects, DeterminedConfig};
use fqlab_core::bigraph::{
    third_eigenvalue_estimate, verify_walk_identity, VerifyMode, WalkIdentitySpec,
};
use fqlab_core::incidence::{build_point_variety_graph, cube_identity_coefficients};
use fqlab_core::pldist::{build_pl_graph, verify_pl_identity};
use fqlab_core::varieties::{index_point, VarietyFamily};
use fqlab_core::{FieldCtx, SeededRng};

fn field_ops(c: &mut Criterion) {
    let f9 = FieldCtx::new(3, 2).unwrap();
    let elems: Vec<_> = f9.elements().collect();
    c.bench_function("f9_mul_table_sweep", |b| {
        b.iter(|| {
            let mut acc = f9.one();
            for &x in &elems[1..] {
                acc = f9.mul(acc, black_box(x));
            }
            acc
        })
    });
    let big = FieldCtx::new(3, 8).unwrap(); // q = 6561: above the table threshold
    c.bench_function("f6561_pow_untabled", |b| {
        let x = big.elem(1234).unwrap();
        b.iter(|| big.pow(black_box(x), big.q() - 2))
    });
}

fn incidence_graphs(c: &mut Criterion) {
    let f5 = FieldCtx::new(5, 1).unwrap();
    let family = VarietyFamily::flats(&f5, 2, 1).unwrap();
    c.bench_function("build_graph_q5_d2_k1", |b| {
        b.iter(|| build_point_variety_graph(&f5, &family, u64::MAX).unwrap())
    });

    let graph = build_point_variety_graph(&f5, &family, u64::MAX).unwrap();
    let (alpha, beta) = cube_identity_coefficients(&f5, &family);
    let spec = WalkIdentitySpec {
        alpha,
        beta,
        gamma: 0,
        aux: None,
    };
    c.bench_function("walk_identity_q5_d2_k1_full", |b| {
        b.iter(|| verify_walk_identity(&graph, &spec, VerifyMode::Full).unwrap())
    });
    c.bench_function("lambda3_estimate_q5_d2_k1", |b| {
        b.iter(|| third_eigenvalue_estimate(&graph, 1e-6).unwrap())
    });
}

fn pl_graphs(c: &mut Criterion) {
    let f7 = FieldCtx::new(7, 1).unwrap();
    c.bench_function("build_pl_graph_q7", |b| {
        b.iter(|| build_pl_graph(&f7, u64::MAX).unwrap())
    });
    let f5 = FieldCtx::new(5, 1).unwrap();
    c.bench_function("pl_identity_q5_full", |b| {
        b.iter(|| verify_pl_identity(&f5, u64::MAX).unwrap())
    });
}

fn beck_scans(c: &mut Criterion) {
    let f7 = FieldCtx::new(7, 1).unwrap();
    let mut rng = SeededRng::new(1);
    let points: Vec<_> = rng
        .sample_distinct(49, 35)
        .into_iter()
        .map(|i| index_point(&f7, i, 2))
        .collect();
    c.bench_function("distinct_circles_q7_5q_points", |b| {
        b.iter(|| distinct_objects(&f7, 2, &points, DeterminedConfig::circles(), u64::MAX).unwrap())
    });
}

criterion_group!(benches, field_ops, incidence_graphs, pl_graphs, beck_scans);
criterion_main!(benches);
