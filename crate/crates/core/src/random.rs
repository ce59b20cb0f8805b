//! Seeded random matrices and vectors for experiments and tests.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::matcore::{hermitian_part, inner, normalize, CMatrix, C64};

pub type Rng64 = ChaCha8Rng;

pub fn seeded(seed: u64) -> Rng64 {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Independent generator for trial `stream` of a seeded experiment.
pub fn trial_rng(seed: u64, stream: u64) -> Rng64 {
    let mut rng = seeded(seed);
    rng.set_stream(stream);
    rng
}

/// Standard complex Gaussian: real and imaginary parts N(0, 1/2).
pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    C64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// Uniform on the complex unit sphere.
pub fn random_unit_vector<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<C64> {
    loop {
        let v: Vec<C64> = (0..n).map(|_| complex_gaussian(rng)).collect();
        if let Ok(u) = normalize(&v) {
            return u;
        }
    }
}

pub fn random_complex_matrix<R: Rng + ?Sized>(rng: &mut R, n: usize) -> CMatrix {
    let data = (0..n * n).map(|_| complex_gaussian(rng)).collect();
    CMatrix::from_row_major(n, data).expect("finite gaussian entries")
}

pub fn random_hermitian<R: Rng + ?Sized>(rng: &mut R, n: usize) -> CMatrix {
    hermitian_part(&random_complex_matrix(rng, n), 0.0)
}

/// Householder reflector `I - 2 v v*` for a random unit `v`.
pub fn random_householder<R: Rng + ?Sized>(rng: &mut R, n: usize) -> CMatrix {
    let v = random_unit_vector(rng, n);
    let mut h = CMatrix::identity(n);
    for i in 0..n {
        for j in 0..n {
            h[(i, j)] -= v[i] * v[j].conj() * 2.0;
        }
    }
    h
}

/// Haar-like unitary from Gram–Schmidt on a Gaussian matrix.
pub fn random_unitary<R: Rng + ?Sized>(rng: &mut R, n: usize) -> CMatrix {
    let mut cols: Vec<Vec<C64>> = Vec::with_capacity(n);
    while cols.len() < n {
        let mut v: Vec<C64> = (0..n).map(|_| complex_gaussian(rng)).collect();
        for _ in 0..2 {
            for c in &cols {
                let p = inner(&v, c);
                for (vi, ci) in v.iter_mut().zip(c) {
                    *vi -= p * ci;
                }
            }
        }
        if let Ok(u) = normalize(&v) {
            cols.push(u);
        }
    }
    CMatrix::from_columns(&cols)
}

/// `U diag(values) U*` for a random unitary `U`.
pub fn random_normal_with_spectrum<R: Rng + ?Sized>(rng: &mut R, values: &[C64]) -> CMatrix {
    let u = random_unitary(rng, values.len());
    &(&u * &CMatrix::from_diag(values)) * &u.adjoint()
}

/// `γ P` with `P` positive semi-definite (eigenvalues uniform in
/// `[lo, hi]`) and `γ` a random nonzero complex scalar.
pub fn random_psd_multiple<R: Rng + ?Sized>(rng: &mut R, n: usize, lo: f64, hi: f64) -> CMatrix {
    let vals: Vec<C64> = (0..n)
        .map(|_| C64::new(rng.random_range(lo..=hi), 0.0))
        .collect();
    let p = random_normal_with_spectrum(rng, &vals);
    let gamma = C64::from_polar(rng.random_range(0.5..2.0), rng.random_range(0.0..std::f64::consts::TAU));
    p.scale(gamma)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcore::unitarity_defect;

    #[test]
    fn unitaries_are_unitary() {
        let mut rng = seeded(1);
        for n in 1..8 {
            assert!(unitarity_defect(&random_unitary(&mut rng, n)) < 1e-13);
            assert!(unitarity_defect(&random_householder(&mut rng, n)) < 1e-13);
        }
    }

    #[test]
    fn seeding_is_deterministic() {
        let a = random_complex_matrix(&mut seeded(42), 4);
        let b = random_complex_matrix(&mut seeded(42), 4);
        assert_eq!(a, b);
    }
}
