//! General complex eigenvalues: Householder reduction to Hessenberg form,
//! then single-shift QR with Wilkinson shifts to a complex Schur form.

use serde::{Deserialize, Serialize};

use super::{vec_norm, CMatrix, C64};
use crate::error::{Error, Result};

/// Backward-error ceiling every reported eigenvalue must meet.
pub const EIG_RESIDUAL_TOL: f64 = 1e-8;
const ITER_PER_DIM: usize = 100;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpectrumSet {
    /// Sorted lexicographically by (re, im).
    pub eigenvalues: Vec<C64>,
    /// `||A v - λ v|| / ||A||_F` for the computed unit eigenvector `v`; an
    /// upper bound on `σ_min(A - λI)/||A||_F`.
    pub residuals: Vec<f64>,
    pub tolerance: f64,
}

impl SpectrumSet {
    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn spectral_radius(&self) -> f64 {
        self.eigenvalues.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

pub fn eig_general(a: &CMatrix) -> Result<SpectrumSet> {
    let pairs = eig_pairs(a, false)?;
    Ok(SpectrumSet {
        eigenvalues: pairs.iter().map(|p| p.0).collect(),
        residuals: pairs.iter().map(|p| p.1).collect(),
        tolerance: EIG_RESIDUAL_TOL,
    })
}

/// Eigenvalues with unit eigenvectors, in the order of [`eig_general`].
/// Defective eigenvalues get the back-substituted approximate vector.
pub fn eig_general_vectors(a: &CMatrix) -> Result<Vec<(C64, Vec<C64>)>> {
    Ok(eig_pairs(a, true)?.into_iter().map(|(l, _, v)| (l, v)).collect())
}

fn eig_pairs(a: &CMatrix, keep_vectors: bool) -> Result<Vec<(C64, f64, Vec<C64>)>> {
    let n = a.dim();
    let (t, q) = schur(a)?;
    let anorm = a.frobenius_norm();
    let tnorm = t.frobenius_norm();
    let smin = (f64::EPSILON * tnorm).max(f64::MIN_POSITIVE);

    let mut pairs: Vec<(C64, f64, Vec<C64>)> = Vec::with_capacity(n);
    for k in 0..n {
        let lambda = t[(k, k)];
        if anorm == 0.0 && !keep_vectors {
            pairs.push((lambda, 0.0, Vec::new()));
            continue;
        }
        let y = triangular_eigvec(&t, k, smin);
        let v = q.mul_vec(&y);
        let nv = vec_norm(&v);
        let v: Vec<C64> = v.iter().map(|z| z / nv).collect();
        let residual = if anorm == 0.0 {
            0.0
        } else {
            let av = a.mul_vec(&v);
            let r: Vec<C64> = av.iter().zip(&v).map(|(x, y)| x - y * lambda).collect();
            vec_norm(&r) / anorm
        };
        pairs.push((lambda, residual, if keep_vectors { v } else { Vec::new() }));
    }
    pairs.sort_by(|x, y| {
        x.0.re
            .total_cmp(&y.0.re)
            .then(x.0.im.total_cmp(&y.0.im))
    });
    let worst = pairs.iter().map(|p| p.1).fold(0.0, f64::max);
    if worst > EIG_RESIDUAL_TOL {
        return Err(Error::ConvergenceFailure {
            routine: "schur (residual check)",
            iterations: ITER_PER_DIM * n,
        });
    }
    Ok(pairs)
}

/// Eigenvector of upper-triangular `t` for `t[k][k]`, by back substitution.
/// Near-zero pivots are bumped to `smin` as LAPACK's trevc does.
fn triangular_eigvec(t: &CMatrix, k: usize, smin: f64) -> Vec<C64> {
    let n = t.dim();
    let mut y = vec![C64::new(0.0, 0.0); n];
    y[k] = C64::new(1.0, 0.0);
    let lambda = t[(k, k)];
    for i in (0..k).rev() {
        let mut s = C64::new(0.0, 0.0);
        for j in (i + 1)..=k {
            s += t[(i, j)] * y[j];
        }
        let mut d = t[(i, i)] - lambda;
        if d.norm() < smin {
            d = C64::new(smin, 0.0);
        }
        y[i] = -s / d;
        // Rescale on growth so the defective case stays finite.
        let big = y.iter().map(|z| z.norm()).fold(0.0, f64::max);
        if big > 1e100 {
            for z in y.iter_mut() {
                *z /= big;
            }
        }
    }
    y
}

/// Complex Schur decomposition `A = Q T Q*`.
pub(crate) fn schur(a: &CMatrix) -> Result<(CMatrix, CMatrix)> {
    let n = a.dim();
    let (mut h, mut q) = hessenberg(a);
    if n == 1 {
        return Ok((h, q));
    }
    let max_iter = ITER_PER_DIM * n;
    let mut iter = 0usize;
    let mut since_deflation = 0usize;
    let mut hi = n - 1;

    loop {
        if hi == 0 {
            break;
        }
        // Find the start of the unreduced block ending at hi.
        let mut lo = hi;
        while lo > 0 {
            let sub = h[(lo, lo - 1)].norm();
            let diag = h[(lo, lo)].norm() + h[(lo - 1, lo - 1)].norm();
            let scale = if diag == 0.0 { h.max_abs() } else { diag };
            if sub <= f64::EPSILON * scale {
                h[(lo, lo - 1)] = C64::new(0.0, 0.0);
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            hi -= 1;
            since_deflation = 0;
            continue;
        }
        if iter >= max_iter {
            return Err(Error::ConvergenceFailure {
                routine: "schur",
                iterations: max_iter,
            });
        }
        iter += 1;
        since_deflation += 1;

        let shift = if since_deflation % 11 == 10 {
            // Exceptional shift to break cycles.
            h[(hi, hi)] + C64::new(0.75 * h[(hi, hi - 1)].norm(), 0.0)
        } else {
            wilkinson_shift(
                h[(hi - 1, hi - 1)],
                h[(hi - 1, hi)],
                h[(hi, hi - 1)],
                h[(hi, hi)],
            )
        };
        qr_sweep(&mut h, &mut q, lo, hi, shift);
    }
    // Clean the strictly lower part.
    for i in 0..n {
        for j in 0..i {
            h[(i, j)] = C64::new(0.0, 0.0);
        }
    }
    Ok((h, q))
}

fn wilkinson_shift(a: C64, b: C64, c: C64, d: C64) -> C64 {
    let half = (a - d) * 0.5;
    let disc = (half * half + b * c).sqrt();
    let mu1 = (a + d) * 0.5 + disc;
    let mu2 = (a + d) * 0.5 - disc;
    if (mu1 - d).norm() <= (mu2 - d).norm() {
        mu1
    } else {
        mu2
    }
}

/// Givens `G = [[c, s], [-s̄, c]]` with `G [x; y] = [r; 0]`.
fn givens(x: C64, y: C64) -> (f64, C64) {
    let ax = x.norm();
    let ay = y.norm();
    if ay == 0.0 {
        return (1.0, C64::new(0.0, 0.0));
    }
    if ax == 0.0 {
        return (0.0, C64::new(1.0, 0.0));
    }
    let rho = ax.hypot(ay);
    let c = ax / rho;
    let s = (x / ax) * y.conj() / rho;
    (c, s)
}

fn apply_left(h: &mut CMatrix, i: usize, j: usize, c: f64, s: C64, from: usize) {
    let n = h.dim();
    for k in from..n {
        let a = h[(i, k)];
        let b = h[(j, k)];
        h[(i, k)] = a * c + s * b;
        h[(j, k)] = -s.conj() * a + b * c;
    }
}

fn apply_right(m: &mut CMatrix, i: usize, j: usize, c: f64, s: C64, to: usize) {
    for k in 0..to {
        let a = m[(k, i)];
        let b = m[(k, j)];
        m[(k, i)] = a * c + b * s.conj();
        m[(k, j)] = -a * s + b * c;
    }
}

/// One implicit single-shift QR sweep on the active block `lo..=hi`.
/// Rotations are applied to full rows and columns so `h` converges to the
/// Schur factor of the whole matrix.
fn qr_sweep(h: &mut CMatrix, q: &mut CMatrix, lo: usize, hi: usize, shift: C64) {
    let n = h.dim();
    let mut x = h[(lo, lo)] - shift;
    let mut y = h[(lo + 1, lo)];
    for k in lo..hi {
        let (c, s) = givens(x, y);
        let from = if k > lo { k - 1 } else { lo };
        apply_left(h, k, k + 1, c, s, from);
        let to = (k + 3).min(hi + 1).max(k + 2);
        apply_right(h, k, k + 1, c, s, to);
        apply_right(q, k, k + 1, c, s, n);
        // Rows above the active block also see the column rotation.
        if k > lo {
            h[(k + 1, k - 1)] = C64::new(0.0, 0.0);
        }
        if k + 1 < hi {
            x = h[(k + 1, k)];
            y = h[(k + 2, k)];
        }
    }
}

/// Householder reduction `A = Q H Q*` with `H` upper Hessenberg.
fn hessenberg(a: &CMatrix) -> (CMatrix, CMatrix) {
    let n = a.dim();
    let mut h = a.clone();
    let mut q = CMatrix::identity(n);
    if n < 3 {
        return (h, q);
    }
    for k in 0..n - 2 {
        let x: Vec<C64> = ((k + 1)..n).map(|i| h[(i, k)]).collect();
        let xnorm = vec_norm(&x);
        let tail: f64 = x[1..].iter().map(|z| z.norm_sqr()).sum::<f64>();
        if tail == 0.0 || xnorm == 0.0 {
            continue;
        }
        let phase = if x[0].norm() == 0.0 {
            C64::new(1.0, 0.0)
        } else {
            x[0] / x[0].norm()
        };
        let alpha = -phase * xnorm;
        let mut v = x.clone();
        v[0] -= alpha;
        let vn = vec_norm(&v);
        if vn == 0.0 {
            continue;
        }
        for z in v.iter_mut() {
            *z /= vn;
        }
        // H <- P H with P = I - 2 v v* on rows k+1..n.
        for j in 0..n {
            let mut dot = C64::new(0.0, 0.0);
            for (t, vi) in v.iter().enumerate() {
                dot += vi.conj() * h[(k + 1 + t, j)];
            }
            for (t, vi) in v.iter().enumerate() {
                h[(k + 1 + t, j)] -= vi * dot * 2.0;
            }
        }
        // H <- H P and Q <- Q P on columns k+1..n.
        for m in [&mut h, &mut q] {
            for i in 0..n {
                let mut dot = C64::new(0.0, 0.0);
                for (t, vi) in v.iter().enumerate() {
                    dot += m[(i, k + 1 + t)] * vi;
                }
                for (t, vi) in v.iter().enumerate() {
                    m[(i, k + 1 + t)] -= dot * vi.conj() * 2.0;
                }
            }
        }
        for i in (k + 2)..n {
            h[(i, k)] = C64::new(0.0, 0.0);
        }
    }
    (h, q)
}
