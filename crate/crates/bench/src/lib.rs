//! Seeded fixtures shared by the benchmarks.

use wprod_core::random::{random_complex_matrix, random_hermitian, random_psd_multiple, seeded};
use wprod_core::CMatrix;

pub const SIZES: [usize; 4] = [4, 16, 64, 128];

pub fn hermitian(n: usize) -> CMatrix {
    random_hermitian(&mut seeded(n as u64), n)
}

pub fn general(n: usize) -> CMatrix {
    random_complex_matrix(&mut seeded(1000 + n as u64), n)
}

/// A PSD-multiple factor and a general factor of the same size.
pub fn product_pair(n: usize) -> (CMatrix, CMatrix) {
    let mut rng = seeded(2000 + n as u64);
    let a = random_psd_multiple(&mut rng, n, 0.0, 2.0);
    let b = random_complex_matrix(&mut rng, n);
    (a, b)
}
