//! Structural tests on a single matrix: multiple of a positive semi-definite
//! matrix, radialoid, splitting off the peak eigenspace, and the corner and
//! polygon conditions used by the witness constructions.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matcore::{eig_general, hermitian_part, jacobi_decompose, operator_norm, CMatrix, C64};
use crate::numrange::{
    compute_range, radii, radii_from_range, wrap_angle, RadiiReport, RangeApprox, SupportLineCount, DEFAULT_ANGLES, DEFAULT_EPS_CORNER,
    DEFAULT_EPS_LIN_REL,
};

pub const NORMALITY_TOL: f64 = 1e-9;
pub const RAY_TOL: f64 = 1e-8;
pub const RADIALOID_TOL: f64 = 1e-8;
pub const GAP_TOL: f64 = 1e-6;
/// Relative threshold on the eigenvalues of `(A-μ)*(A-μ) + (A-μ)(A-μ)*`
/// below which a vector counts as reducing.
const NULL_REL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Hypothesis {
    Holds,
    Fails,
    Borderline,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub is_psd_multiple: bool,
    pub phase: Option<f64>,
    pub normality_residual: f64,
    pub radii: RadiiReport,
    pub w_attaining_mu: Option<C64>,
    pub corner_hypothesis: Hypothesis,
    pub polygon_case: bool,
    pub isolated_peak_case: bool,
}

/// `U A U* = μ I_k ⊕ A₁`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Decomposition {
    pub mu: C64,
    pub u: CMatrix,
    pub k: usize,
    /// `None` when the peak eigenspace is the whole space.
    pub a1: Option<CMatrix>,
    pub offblock_residual: f64,
    pub w: f64,
}

impl Decomposition {
    /// `U*(μI ⊕ A₁)U`.
    pub fn reassemble(&self) -> CMatrix {
        let n = self.u.dim();
        let mut d = CMatrix::zeros(n);
        for i in 0..self.k {
            d[(i, i)] = self.mu;
        }
        if let Some(a1) = &self.a1 {
            for i in 0..a1.dim() {
                for j in 0..a1.dim() {
                    d[(self.k + i, self.k + j)] = a1[(i, j)];
                }
            }
        }
        &(&self.u.adjoint() * &d) * &self.u
    }
}

/// Distance from `z` to the ray `e^{iφ}[0, ∞)`, where `dir = e^{iφ}`.
fn ray_distance(z: C64, dir: C64) -> f64 {
    let w = z * dir.conj();
    if w.re >= 0.0 {
        w.im.abs()
    } else {
        w.norm()
    }
}

pub fn is_psd_multiple(a: &CMatrix, tol: f64) -> Result<(bool, Option<f64>)> {
    psd_multiple_with(a, tol, tol)
}

pub fn psd_multiple_with(a: &CMatrix, normal_tol: f64, ray_tol: f64) -> Result<(bool, Option<f64>)> {
    if a.max_abs() == 0.0 {
        return Ok((true, Some(0.0)));
    }
    if a.normality_residual() > normal_tol {
        return Ok((false, None));
    }
    let eig = eig_general(a)?;
    let norm = operator_norm(a)?;
    let dominant = eig
        .eigenvalues
        .iter()
        .copied()
        .max_by(|x, y| x.norm().total_cmp(&y.norm()))
        .expect("nonempty spectrum");
    let dir = dominant / dominant.norm();
    let worst = eig.eigenvalues.iter().map(|&z| ray_distance(z, dir)).fold(0.0, f64::max);
    if worst > ray_tol * norm {
        return Ok((false, None));
    }
    Ok((true, Some(phase_of(dominant))))
}

/// Argument in `[0, 2π)`, with values within 1e-12 of 2π folded to 0.
fn phase_of(z: C64) -> f64 {
    let t = wrap_angle(z.arg());
    if TAU - t < 1e-12 {
        0.0
    } else {
        t
    }
}

/// Radii with the radialoid flag taken relative to the norm.
pub fn radialoid_check(a: &CMatrix, tol: f64) -> Result<RadiiReport> {
    Ok(relative_radialoid(radii(a, DEFAULT_ANGLES, tol)?, tol))
}

/// [`radialoid_check`] on an already computed range.
pub fn radialoid_from_range(a: &CMatrix, range: &RangeApprox, tol: f64) -> Result<RadiiReport> {
    Ok(relative_radialoid(radii_from_range(a, range, tol)?, tol))
}

fn relative_radialoid(mut rep: RadiiReport, tol: f64) -> RadiiReport {
    rep.radialoid = (rep.r - rep.norm).abs() <= tol * rep.norm.max(f64::MIN_POSITIVE);
    rep
}

/// Eigenvalues of modulus within `tol·norm` of `norm`, ordered by argument.
fn peak_eigenvalues(eigs: &[C64], norm: f64, tol: f64) -> Vec<C64> {
    let mut peaks: Vec<C64> = eigs.iter().copied().filter(|z| z.norm() >= norm * (1.0 - tol)).collect();
    peaks.sort_by(|x, y| phase_of(*x).total_cmp(&phase_of(*y)));
    peaks
}

pub fn decompose_at_peak(a: &CMatrix, tol: f64) -> Result<Decomposition> {
    let rep = radialoid_check(a, tol)?;
    if !rep.radialoid {
        return Err(Error::NotRadialoid { r: rep.r, norm: rep.norm });
    }
    let eig = eig_general(a)?;
    decompose_with(a, &rep, &eig.eigenvalues, tol)
}

/// [`decompose_at_peak`] given the radii and spectrum of `a`.
pub fn decompose_with(a: &CMatrix, rep: &RadiiReport, eigenvalues: &[C64], tol: f64) -> Result<Decomposition> {
    if !rep.radialoid {
        return Err(Error::NotRadialoid { r: rep.r, norm: rep.norm });
    }
    let mu = *peak_eigenvalues(eigenvalues, rep.norm, tol).first().ok_or(Error::PeakNotAttained)?;
    decompose_at(a, mu, rep.norm)
}

impl Decomposition {
    /// The decomposition of `A/c`.
    pub fn scaled(&self, c: C64) -> Decomposition {
        let inv = c.inv();
        Decomposition {
            mu: self.mu * inv,
            u: self.u.clone(),
            k: self.k,
            a1: self.a1.as_ref().map(|m| m.scale(inv)),
            offblock_residual: self.offblock_residual / c.norm(),
            w: self.w / c.norm(),
        }
    }
}

/// Splits off the common null space of `A - μ` and `(A - μ)*`.
pub fn decompose_at(a: &CMatrix, mu: C64, w: f64) -> Result<Decomposition> {
    let n = a.dim();
    let shifted = a - &CMatrix::identity(n).scale(mu);
    let sh = shifted.adjoint();
    let g = hermitian_part(&(&(&sh * &shifted) + &(&shifted * &sh)), 0.0);
    let (vals, q) = jacobi_decompose(&g)?;
    let scale = w.max(a.max_abs()).max(f64::MIN_POSITIVE);
    let k = vals.iter().take_while(|&&v| v <= NULL_REL * scale * scale).count();
    if k == 0 {
        return Err(Error::PeakNotAttained);
    }
    // Columns of q are ascending, so the null space comes first.
    let u = q.adjoint();
    let t = &(&u * a) * &q;
    let mut off = 0.0;
    for i in 0..n {
        for j in 0..n {
            let in_peak = i < k && j < k;
            let in_rest = i >= k && j >= k;
            if in_peak {
                off += (t[(i, j)] - if i == j { mu } else { C64::new(0.0, 0.0) }).norm_sqr();
            } else if !in_rest {
                off += t[(i, j)].norm_sqr();
            }
        }
    }
    let a1 = (k < n).then(|| t.principal_submatrix(&(k..n).collect::<Vec<_>>()));
    Ok(Decomposition {
        mu,
        u,
        k,
        a1,
        offblock_residual: off.sqrt(),
        w,
    })
}

/// Largest `|μ - ν|` over the sampled boundary of `W(A₁)` and the angle at
/// which it occurs.
pub fn lemma_disk_extreme(a1: &CMatrix, mu: C64, m: usize) -> Result<(f64, f64, C64)> {
    Ok(lemma_disk_extreme_in(&compute_range(a1, m)?, mu))
}

pub fn lemma_disk_extreme_in(r: &RangeApprox, mu: C64) -> (f64, f64, C64) {
    let mut best = (f64::NEG_INFINITY, 0.0, mu);
    for (&t, &p) in r.angles.iter().zip(&r.boundary_points) {
        let d = (mu - p).norm();
        if d > best.0 {
            best = (d, t, p);
        }
    }
    for s in &r.refinements {
        let d = (mu - s.point).norm();
        if d > best.0 {
            best = (d, s.angle, s.point);
        }
    }
    best
}

/// Whether `W(A₁)` lies in the closed disk of radius `w` about `μ`.
pub fn check_lemma_disk(a1: &CMatrix, mu: C64, w: f64, m: usize) -> Result<(bool, f64)> {
    let (d, _, _) = lemma_disk_extreme(a1, mu, m)?;
    let excess = d - w;
    Ok((excess <= 1e-9 * w.max(1.0), excess))
}

pub fn theorem_hypotheses(a: &CMatrix) -> Result<ClassificationReport> {
    let (psd, phase) = psd_multiple_with(a, NORMALITY_TOL, RAY_TOL)?;
    let normality_residual = a.normality_residual();
    let rad = radialoid_check(a, RADIALOID_TOL)?;
    let eig = eig_general(a)?;
    let peaks = if rad.norm > 0.0 {
        peak_eigenvalues(&eig.eigenvalues, rad.w.max(rad.r), RADIALOID_TOL)
    } else {
        Vec::new()
    };
    let w_attaining_mu = peaks.first().copied();

    let corner_hypothesis = if !rad.radialoid || peaks.is_empty() {
        Hypothesis::Fails
    } else {
        let range = compute_range(a, DEFAULT_ANGLES)?;
        let eps_lin = DEFAULT_EPS_LIN_REL * range.operator_norm.max(f64::MIN_POSITIVE);
        let infos: Vec<_> = peaks
            .iter()
            .map(|&mu| range.corner_at(mu, DEFAULT_EPS_CORNER, eps_lin))
            .collect();
        if infos.iter().any(|i| i.count == SupportLineCount::TwoOrMore) {
            Hypothesis::Holds
        } else if infos.iter().any(|i| i.normal_cone_width >= 0.5 * DEFAULT_EPS_CORNER) {
            Hypothesis::Borderline
        } else {
            Hypothesis::Fails
        }
    };

    let normal = normality_residual <= NORMALITY_TOL;
    let gap = GAP_TOL * rad.norm;
    let ev = &eig.eigenvalues;
    let isolated_peak_case = normal
        && rad.norm > 0.0
        && ev.iter().enumerate().any(|(i, &z)| {
            z.norm() >= rad.r * (1.0 - RADIALOID_TOL)
                && ev.iter().enumerate().all(|(j, &y)| i == j || (z - y).norm() >= gap)
        });

    Ok(ClassificationReport {
        is_psd_multiple: psd,
        phase,
        normality_residual,
        radii: rad,
        w_attaining_mu,
        corner_hypothesis,
        polygon_case: normal,
        isolated_peak_case,
    })
}
