use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use wprod_bench::{general, hermitian, product_pair, SIZES};
use wprod_core::matcore::{eig_general, eig_hermitian};
use wprod_core::numrange::compute_range;
use wprod_core::productset::{product_membership, DEFAULT_GRID, DEFAULT_TOL};
use wprod_core::repro::{roots_of_unity, truncation_certificate};
use wprod_core::C64;

fn jacobi(c: &mut Criterion) {
    let mut g = c.benchmark_group("jacobi");
    for n in SIZES {
        let h = hermitian(n);
        g.bench_with_input(BenchmarkId::from_parameter(n), &h, |b, h| b.iter(|| eig_hermitian(black_box(h))));
    }
    g.finish();
}

fn schur(c: &mut Criterion) {
    let mut g = c.benchmark_group("schur");
    for n in SIZES {
        let a = general(n);
        g.bench_with_input(BenchmarkId::from_parameter(n), &a, |b, a| b.iter(|| eig_general(black_box(a))));
    }
    g.finish();
}

fn range(c: &mut Criterion) {
    let mut g = c.benchmark_group("compute_range");
    g.sample_size(10);
    for n in [4, 16, 64] {
        let a = general(n);
        for m in [180, 720] {
            g.bench_with_input(BenchmarkId::new(format!("n{n}"), m), &m, |b, &m| {
                b.iter(|| compute_range(black_box(&a), m))
            });
        }
    }
    g.finish();
}

fn membership(c: &mut Criterion) {
    let mut g = c.benchmark_group("product_membership");
    g.sample_size(10);
    for n in [2, 4, 6] {
        let (a, b) = product_pair(n);
        let lambda = eig_general(&(&a * &b)).unwrap().eigenvalues[0];
        g.bench_function(BenchmarkId::new("eigenvalue", n), |bch| {
            bch.iter(|| product_membership(&a, &b, black_box(lambda), DEFAULT_TOL, DEFAULT_GRID))
        });
        let far = lambda * 3.0 + C64::new(1.0, 1.0);
        g.bench_function(BenchmarkId::new("far", n), |bch| {
            bch.iter(|| product_membership(&a, &b, black_box(far), DEFAULT_TOL, DEFAULT_GRID))
        });
    }
    g.finish();
}

fn witness(c: &mut Criterion) {
    let mut g = c.benchmark_group("truncation_witness");
    g.sample_size(10);
    for n in [8, 32] {
        let pts = roots_of_unity(n);
        g.bench_with_input(BenchmarkId::from_parameter(n), &pts, |b, pts| b.iter(|| truncation_certificate(black_box(pts))));
    }
    g.finish();
}

criterion_group!(benches, jacobi, schur, range, membership, witness);
criterion_main!(benches);
