//! Dense complex matrices and the eigen-solvers everything else is built on.
//!
//! Storage is row-major `Vec<Complex64>`. Dimensions are small (a few hundred
//! at most), so nothing here tries to be cache-blocked.

mod jacobi;
mod json;
mod schur;
mod spectrum;

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub use jacobi::{eig_hermitian, EigenPair, JACOBI_MAX_SWEEPS};
pub use json::MatrixJson;
pub use schur::{eig_general, eig_general_vectors, SpectrumSet, EIG_RESIDUAL_TOL};
pub use spectrum::{match_multisets, nonzero_part};

pub(crate) use jacobi::{jacobi_decompose, jacobi_top};

pub type C64 = Complex64;

/// Dense square complex matrix.
#[derive(Clone, PartialEq)]
pub struct CMatrix {
    n: usize,
    data: Vec<C64>,
}

impl CMatrix {
    pub fn zeros(n: usize) -> Self {
        CMatrix {
            n,
            data: vec![C64::new(0.0, 0.0); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = C64::new(1.0, 0.0);
        }
        m
    }

    /// Builds a matrix from row-major entries, rejecting non-square lengths
    /// and non-finite values.
    pub fn from_row_major(n: usize, data: Vec<C64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("matrix dimension must be positive"));
        }
        if data.len() != n * n {
            return Err(Error::invalid(format!(
                "expected {} entries for n = {n}, got {}",
                n * n,
                data.len()
            )));
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::invalid("matrix entries must be finite"));
        }
        Ok(CMatrix { n, data })
    }

    /// Builds a matrix from nested rows. Panics on ragged or non-square input;
    /// meant for literals in code and tests.
    pub fn from_rows(rows: &[Vec<C64>]) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            assert_eq!(row.len(), n, "from_rows: matrix must be square");
            data.extend_from_slice(row);
        }
        Self::from_row_major(n, data).expect("from_rows: invalid matrix")
    }

    pub fn from_real_rows(rows: &[Vec<f64>]) -> Self {
        let rows: Vec<Vec<C64>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| C64::new(x, 0.0)).collect())
            .collect();
        Self::from_rows(&rows)
    }

    pub fn from_diag(diag: &[C64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    pub fn from_real_diag(diag: &[f64]) -> Self {
        let d: Vec<C64> = diag.iter().map(|&x| C64::new(x, 0.0)).collect();
        Self::from_diag(&d)
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<C64>]) -> Self {
        let n = cols.len();
        let mut m = Self::zeros(n);
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), n);
            for (i, &z) in col.iter().enumerate() {
                m[(i, j)] = z;
            }
        }
        m
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[C64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn column(&self, j: usize) -> Vec<C64> {
        (0..self.n).map(|i| self[(i, j)]).collect()
    }

    pub fn diagonal(&self) -> Vec<C64> {
        (0..self.n).map(|i| self[(i, i)]).collect()
    }

    pub fn adjoint(&self) -> Self {
        let n = self.n;
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m[(j, i)] = self[(i, j)].conj();
            }
        }
        m
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m[(j, i)] = self[(i, j)];
            }
        }
        m
    }

    pub fn scale(&self, c: C64) -> Self {
        CMatrix {
            n: self.n,
            data: self.data.iter().map(|&z| z * c).collect(),
        }
    }

    pub fn trace(&self) -> C64 {
        (0..self.n).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn mul_vec(&self, x: &[C64]) -> Vec<C64> {
        assert_eq!(x.len(), self.n);
        (0..self.n)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .map(|(&a, &b)| a * b)
                    .sum::<C64>()
            })
            .collect()
    }

    /// Entrywise comparison with an explicit absolute tolerance.
    pub fn approx_eq(&self, other: &CMatrix, tol: f64) -> bool {
        self.n == other.n
            && self
                .data
                .iter()
                .zip(&other.data)
                .all(|(a, b)| (a - b).norm() <= tol)
    }

    /// `||A*A - AA*||_F / ||A||_F^2`; zero for the zero matrix.
    pub fn normality_residual(&self) -> f64 {
        let f = self.frobenius_norm();
        if f == 0.0 {
            return 0.0;
        }
        let ah = self.adjoint();
        let comm = &(&ah * self) - &(self * &ah);
        comm.frobenius_norm() / (f * f)
    }

    /// `||H - H*||_F / ||H||_F`.
    pub fn hermitian_defect(&self) -> f64 {
        let f = self.frobenius_norm();
        if f == 0.0 {
            return 0.0;
        }
        let n = self.n;
        let mut s = 0.0;
        for i in 0..n {
            for j in i..n {
                let d = (self[(i, j)] - self[(j, i)].conj()).norm_sqr();
                s += if i == j { d } else { 2.0 * d };
            }
        }
        s.sqrt() / f
    }

    /// Inverse by Gauss-Jordan elimination with partial pivoting.
    pub fn inverse(&self) -> Result<CMatrix> {
        let n = self.n;
        let mut a = self.clone();
        let mut inv = CMatrix::identity(n);
        let tiny = 1e-14 * self.max_abs();
        for col in 0..n {
            let piv = (col..n)
                .max_by(|&i, &j| a[(i, col)].norm().total_cmp(&a[(j, col)].norm()))
                .expect("nonempty range");
            if !(a[(piv, col)].norm() > tiny) {
                return Err(Error::invalid("matrix is singular to working precision"));
            }
            if piv != col {
                for k in 0..n {
                    a.data.swap(piv * n + k, col * n + k);
                    inv.data.swap(piv * n + k, col * n + k);
                }
            }
            let p = a[(col, col)].inv();
            for k in 0..n {
                a[(col, k)] *= p;
                inv[(col, k)] *= p;
            }
            for i in 0..n {
                if i == col {
                    continue;
                }
                let f = a[(i, col)];
                if f == C64::new(0.0, 0.0) {
                    continue;
                }
                for k in 0..n {
                    let (ack, ick) = (a[(col, k)], inv[(col, k)]);
                    a[(i, k)] -= f * ack;
                    inv[(i, k)] -= f * ick;
                }
            }
        }
        Ok(inv)
    }

    /// Principal submatrix on the given index set.
    pub fn principal_submatrix(&self, idx: &[usize]) -> CMatrix {
        let k = idx.len();
        let mut m = CMatrix::zeros(k);
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                m[(a, b)] = self[(i, j)];
            }
        }
        m
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = C64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.n + j]
    }
}

impl Mul for &CMatrix {
    type Output = CMatrix;
    fn mul(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.n, rhs.n, "matrix product dimension mismatch");
        let n = self.n;
        let mut out = CMatrix::zeros(n);
        for i in 0..n {
            let row = self.row(i);
            let dst = &mut out.data[i * n..(i + 1) * n];
            for (k, &a) in row.iter().enumerate() {
                if a == C64::new(0.0, 0.0) {
                    continue;
                }
                for (d, &b) in dst.iter_mut().zip(rhs.row(k)) {
                    *d += a * b;
                }
            }
        }
        out
    }
}

impl Add for &CMatrix {
    type Output = CMatrix;
    fn add(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.n, rhs.n);
        CMatrix {
            n: self.n,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &CMatrix {
    type Output = CMatrix;
    fn sub(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.n, rhs.n);
        CMatrix {
            n: self.n,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl fmt::Debug for CMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CMatrix({}x{}) [", self.n, self.n)?;
        for i in 0..self.n {
            write!(f, "  ")?;
            for z in self.row(i) {
                write!(f, "{:>10.4}{:+.4}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// `(e^{-iθ}A + e^{iθ}A*)/2`. Hermitian exactly: each mirrored pair is built
/// from the same two products.
pub fn hermitian_part(a: &CMatrix, theta: f64) -> CMatrix {
    let n = a.dim();
    let rot = C64::from_polar(1.0, -theta);
    let mut h = CMatrix::zeros(n);
    for i in 0..n {
        for j in i..n {
            let x = rot * a[(i, j)];
            let y = rot * a[(j, i)];
            let hij = (x + y.conj()) * 0.5;
            if i == j {
                h[(i, i)] = C64::new(hij.re, 0.0);
            } else {
                h[(i, j)] = hij;
                h[(j, i)] = hij.conj();
            }
        }
    }
    h
}

/// Block-diagonal `A ⊕ B`.
pub fn direct_sum(a: &CMatrix, b: &CMatrix) -> CMatrix {
    let (na, nb) = (a.dim(), b.dim());
    let mut m = CMatrix::zeros(na + nb);
    for i in 0..na {
        for j in 0..na {
            m[(i, j)] = a[(i, j)];
        }
    }
    for i in 0..nb {
        for j in 0..nb {
            m[(na + i, na + j)] = b[(i, j)];
        }
    }
    m
}

pub fn vec_norm(x: &[C64]) -> f64 {
    x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// `<x, y> = Σ x_i conj(y_i)`, linear in the first slot.
pub fn inner(x: &[C64], y: &[C64]) -> C64 {
    x.iter().zip(y).map(|(a, b)| a * b.conj()).sum()
}

pub fn normalize(x: &[C64]) -> Result<Vec<C64>> {
    let nrm = vec_norm(x);
    if !(nrm > 1e-300) || !nrm.is_finite() {
        return Err(Error::ZeroVector);
    }
    Ok(x.iter().map(|z| z / nrm).collect())
}

/// The rank-one operator `z ↦ <z, y> x`, i.e. the matrix `x y*`.
pub fn rank_one(x: &[C64], y: &[C64]) -> Result<CMatrix> {
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch(x.len(), y.len()));
    }
    let (nx, ny) = (vec_norm(x), vec_norm(y));
    if nx < 1e-300 || ny < 1e-300 {
        return Err(Error::ZeroVector);
    }
    if (nx - 1.0).abs() > 1e-12 || (ny - 1.0).abs() > 1e-12 {
        return Err(Error::invalid(format!(
            "rank_one expects unit vectors (norms {nx:.3e}, {ny:.3e})"
        )));
    }
    let n = x.len();
    let mut b = CMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            b[(i, j)] = x[i] * y[j].conj();
        }
    }
    Ok(b)
}

/// `||U*U - I||_F`.
pub fn unitarity_defect(u: &CMatrix) -> f64 {
    (&(&u.adjoint() * u) - &CMatrix::identity(u.dim())).frobenius_norm()
}

/// `U A U*` after checking that `U` is unitary to 1e-10.
pub fn unitary_conjugate(a: &CMatrix, u: &CMatrix) -> Result<CMatrix> {
    if a.dim() != u.dim() {
        return Err(Error::DimensionMismatch(a.dim(), u.dim()));
    }
    let defect = unitarity_defect(u);
    if defect > 1e-10 {
        return Err(Error::NonUnitary(defect));
    }
    Ok(&(u * a) * &u.adjoint())
}

/// Largest singular value, via the top eigenvalue of `A*A`.
pub fn operator_norm(a: &CMatrix) -> Result<f64> {
    let ata = &a.adjoint() * a;
    let ata = hermitian_part(&ata, 0.0);
    let (vals, _) = jacobi_decompose(&ata)?;
    Ok(vals.last().copied().unwrap_or(0.0).max(0.0).sqrt())
}
