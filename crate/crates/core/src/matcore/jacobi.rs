//! Cyclic Jacobi for complex Hermitian matrices.

use serde::{Deserialize, Serialize};

use super::{CMatrix, C64};
use crate::error::{Error, Result};

pub const JACOBI_MAX_SWEEPS: usize = 100;
const OFF_TOL: f64 = 1e-13;
const HERMITIAN_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EigenPair {
    pub value: f64,
    pub vector: Vec<C64>,
}

/// Eigenpairs of a Hermitian matrix, ascending by value.
pub fn eig_hermitian(h: &CMatrix) -> Result<Vec<EigenPair>> {
    let (vals, q) = jacobi_decompose(h)?;
    Ok(vals
        .into_iter()
        .enumerate()
        .map(|(j, value)| EigenPair {
            value,
            vector: q.column(j),
        })
        .collect())
}

/// Returns ascending eigenvalues and the unitary whose columns are the
/// matching eigenvectors.
pub(crate) fn jacobi_decompose(h: &CMatrix) -> Result<(Vec<f64>, CMatrix)> {
    let (diag, q) = jacobi_unsorted(h)?;
    let n = diag.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| diag[i].total_cmp(&diag[j]).then(i.cmp(&j)));
    let vals: Vec<f64> = order.iter().map(|&i| diag[i]).collect();
    let mut qs = CMatrix::zeros(n);
    for i in 0..n {
        for (new_j, &old_j) in order.iter().enumerate() {
            qs[(i, new_j)] = q[(i, old_j)];
        }
    }
    Ok((vals, qs))
}

/// Largest eigenvalue with a unit eigenvector; on ties, the one
/// [`jacobi_decompose`] would list last.
pub(crate) fn jacobi_top(h: &CMatrix) -> Result<(f64, Vec<C64>)> {
    let (diag, q) = jacobi_unsorted(h)?;
    let mut k = 0;
    for (i, &v) in diag.iter().enumerate() {
        if v >= diag[k] {
            k = i;
        }
    }
    Ok((diag[k], q.column(k)))
}

fn jacobi_unsorted(h: &CMatrix) -> Result<(Vec<f64>, CMatrix)> {
    let defect = h.hermitian_defect();
    if defect > HERMITIAN_TOL {
        return Err(Error::NonHermitianInput(defect));
    }
    let n = h.dim();
    let mut a = h.clone();
    for i in 0..n {
        a[(i, i)] = C64::new(a[(i, i)].re, 0.0);
    }
    let mut q = CMatrix::identity(n);
    let fro = h.frobenius_norm();
    let target = OFF_TOL * fro;
    // Entries below this are left alone; they cannot move the off-norm.
    let skip = 1e-3 * target / (n.max(1) as f64);

    let mut converged = false;
    for _sweep in 0..JACOBI_MAX_SWEEPS {
        if off_norm(&a) <= target {
            converged = true;
            break;
        }
        for p in 0..n {
            for r in (p + 1)..n {
                let apr = a[(p, r)];
                let g = apr.norm();
                if g <= skip {
                    continue;
                }
                rotate(&mut a, &mut q, p, r, apr, g);
            }
        }
    }
    if !converged && off_norm(&a) > target {
        return Err(Error::ConvergenceFailure {
            routine: "jacobi",
            iterations: JACOBI_MAX_SWEEPS,
        });
    }
    Ok(((0..n).map(|i| a[(i, i)].re).collect(), q))
}

fn off_norm(a: &CMatrix) -> f64 {
    let n = a.dim();
    let mut s = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            s += a[(i, j)].norm_sqr();
        }
    }
    (2.0 * s).sqrt()
}

/// Annihilates `a[p][r]` with the unitary `V = diag(1, ū) R`, where
/// `u = a_pr/|a_pr|` and `R` is the real symmetric Jacobi rotation.
fn rotate(a: &mut CMatrix, q: &mut CMatrix, p: usize, r: usize, apr: C64, g: f64) {
    let n = a.dim();
    let u = apr / g;
    let app = a[(p, p)].re;
    let arr = a[(r, r)].re;
    let tau = (arr - app) / (2.0 * g);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let su_bar = u.conj() * s;
    let cu_bar = u.conj() * c;
    let su = u * s;
    let cu = u * c;

    // Columns: A V.
    for k in 0..n {
        let akp = a[(k, p)];
        let akr = a[(k, r)];
        a[(k, p)] = akp * c - akr * su_bar;
        a[(k, r)] = akp * s + akr * cu_bar;
    }
    // Rows: V* (A V).
    for k in 0..n {
        let apk = a[(p, k)];
        let ark = a[(r, k)];
        a[(p, k)] = apk * c - ark * su;
        a[(r, k)] = apk * s + ark * cu;
    }
    a[(p, r)] = C64::new(0.0, 0.0);
    a[(r, p)] = C64::new(0.0, 0.0);
    a[(p, p)] = C64::new(app - t * g, 0.0);
    a[(r, r)] = C64::new(arr + t * g, 0.0);

    for k in 0..n {
        let qkp = q[(k, p)];
        let qkr = q[(k, r)];
        q[(k, p)] = qkp * c - qkr * su_bar;
        q[(k, r)] = qkp * s + qkr * cu_bar;
    }
}
