//! Rank-one witnesses `B` with an eigenvalue of `AB` outside the closure of
//! `W(A)W(B)`.
//!
//! Two constructions work on the normalized matrix `A/μ`, where `μ` is an
//! eigenvalue with `|μ| = ‖A‖` whose eigenvectors reduce `A`:
//!
//! * lemma disk: some `ν ∈ W(A₁)` has `|1 - ν| > 1`; then `λ = 1 - ν` for a
//!   `B` with `w(B) = 1`.
//! * corner: `W(A)` has a corner at 1 and the support line through it meets
//!   `W(A)` again at `1 + r₁e^{iα₁}`.
//!
//! A seeded random rank-one search backs both up. Every certificate is
//! re-checked against the original matrix by [`crate::productset`].

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_4, PI};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classify::{
    decompose_with, is_psd_multiple, lemma_disk_extreme_in, radialoid_from_range, Decomposition, RADIALOID_TOL,
};
use crate::error::{Error, Result};
use crate::matcore::{eig_general, eig_hermitian, hermitian_part, inner, jacobi_top, rank_one, CMatrix, C64};
use crate::numrange::{compute_range, rank_one_range, support_value, RadiiReport, RangeApprox, DEFAULT_ANGLES};
use crate::productset::{ProductContext, ProductVerdict, DEFAULT_GRID, DEFAULT_TOL};
use crate::random::{random_unit_vector, trial_rng};

pub const DEFAULT_TRIALS: usize = 500;
const NORMALIZED_TOL: f64 = 1e-7;
/// `φ(θ) = h(θ) - cos θ` counts as zero below this.
const CONE_EPS: f64 = 1e-13;
const PSD_TOL: f64 = 1e-8;
const MIN_CONE_WIDTH: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Construction {
    LemmaDisk,
    CornerSupportLine,
    RandomSearch,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct WitnessParameters {
    /// Peak eigenvalue used for normalization; the normalized matrix is `A/μ`.
    pub mu: Option<C64>,
    pub nu: Option<C64>,
    pub alpha1: Option<f64>,
    pub r1: Option<f64>,
    pub theta: Option<f64>,
    /// `λ` for the normalized matrix, before undoing the adjoint flip.
    pub lambda_normalized: Option<C64>,
    /// The construction ran on `A*`; `B` and `λ` were conjugated back.
    pub adjoint_flip: bool,
    pub seed: Option<u64>,
    /// Index of the successful trial; `None` for the singular-pair hint.
    pub trial: Option<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WitnessCertificate {
    pub b: CMatrix,
    pub lambda: C64,
    pub verdict: ProductVerdict,
    pub construction: Construction,
    pub parameters: WitnessParameters,
}

impl WitnessCertificate {
    pub fn margin(&self) -> f64 {
        self.verdict.certificate_margin.unwrap_or(0.0)
    }
}

/// Checks rank one, `λ = tr(AB)` and the `Out` verdict.
pub fn verify_certificate(a: &CMatrix, cert: &WitnessCertificate) -> Result<()> {
    let b = &cert.b;
    // The defect ||B - B v v*||_F = sqrt(σ₂² + ...) for the top right
    // singular vector v; unlike the eigenvalues of B*B it resolves σ₂ far
    // below sqrt(ε)·σ₁.
    let bb = hermitian_part(&(&b.adjoint() * b), 0.0);
    let (_, v) = jacobi_top(&bb)?;
    let bv = b.mul_vec(&v);
    let mut defect = 0.0;
    for i in 0..b.dim() {
        for j in 0..b.dim() {
            defect += (b[(i, j)] - bv[i] * v[j].conj()).norm_sqr();
        }
    }
    let rel = defect.sqrt() / b.frobenius_norm().max(f64::MIN_POSITIVE);
    if rel > 1e-10 {
        return Err(Error::invalid(format!("B is not rank one (relative defect {rel:.3e})")));
    }
    let tr = (a * b).trace();
    let scale = a.frobenius_norm() * b.frobenius_norm();
    if (tr - cert.lambda).norm() > 1e-10 * scale.max(1.0) {
        return Err(Error::invalid(format!("tr(AB) = {tr} differs from λ = {}", cert.lambda)));
    }
    if !cert.verdict.is_out() || !(cert.margin() > 0.0) {
        return Err(Error::invalid("certificate verdict is not Out"));
    }
    Ok(())
}

/// Certifies `λ` for `B = W C W*`. Since `C` is rank one it has 0 in its
/// range, so `W(B) = W(C)` whatever the dimension.
fn certify_block(range_a: &RangeApprox, c: [[C64; 2]; 2], lambda: C64) -> Result<Option<ProductVerdict>> {
    let block = CMatrix::from_rows(&[vec![c[0][0], c[0][1]], vec![c[1][0], c[1][1]]]);
    let ctx = ProductContext::from_ranges(range_a.clone(), compute_range(&block, DEFAULT_ANGLES)?);
    certify_in(&ctx, lambda)
}

fn certify_in(ctx: &ProductContext, lambda: C64) -> Result<Option<ProductVerdict>> {
    let v = ctx.membership(lambda, DEFAULT_TOL, DEFAULT_GRID)?;
    Ok(v.is_out().then_some(v))
}

/// `A/μ` with its decomposition at the peak 1, plus the ranges of the
/// original `A` and of the normalized complement `A₁`.
struct Normalized {
    a: CMatrix,
    mu: C64,
    dec: Decomposition,
    range_a: RangeApprox,
    range_a1: Option<RangeApprox>,
}

fn normalize_at_peak(a: &CMatrix, range_a: RangeApprox, rep: &RadiiReport) -> Result<Normalized> {
    let eig = eig_general(a)?;
    let dec = decompose_with(a, rep, &eig.eigenvalues, RADIALOID_TOL)?;
    let mu = dec.mu;
    let dec = dec.scaled(mu);
    let range_a1 = dec.a1.as_ref().map(|m| compute_range(m, DEFAULT_ANGLES)).transpose()?;
    Ok(Normalized {
        a: a.scale(mu.inv()),
        mu,
        dec,
        range_a,
        range_a1,
    })
}

fn require_normalized(a: &CMatrix) -> Result<Normalized> {
    let range_a = compute_range(a, DEFAULT_ANGLES)?;
    let rep = radialoid_from_range(a, &range_a, RADIALOID_TOL)?;
    if (rep.norm - 1.0).abs() > NORMALIZED_TOL || (rep.w - 1.0).abs() > NORMALIZED_TOL {
        return Err(Error::NotNormalized { norm: rep.norm, w: rep.w });
    }
    normalize_at_peak(a, range_a, &rep)
}

/// Orthonormal columns spanning the peak eigenvector and the compressed
/// vector `x₁` of `A₁`.
fn frame(dec: &Decomposition, x1: &[C64]) -> CMatrix {
    let n = dec.u.dim();
    let v = dec.u.adjoint();
    let e = v.column(0);
    let mut f = vec![C64::new(0.0, 0.0); n];
    for (j, &c) in x1.iter().enumerate() {
        let col = v.column(dec.k + j);
        for i in 0..n {
            f[i] += col[i] * c;
        }
    }
    let mut w = CMatrix::zeros(n);
    for i in 0..n {
        w[(i, 0)] = e[i];
        w[(i, 1)] = f[i];
    }
    w
}

/// `tr(AB)` without forming the product.
fn trace_product(a: &CMatrix, b: &CMatrix) -> C64 {
    let n = a.dim();
    let mut t = C64::new(0.0, 0.0);
    for i in 0..n {
        for j in 0..n {
            t += a[(i, j)] * b[(j, i)];
        }
    }
    t
}

/// `W C W*` for the first two columns of `w` and a 2×2 block `c`.
fn embed(w: &CMatrix, c: [[C64; 2]; 2]) -> CMatrix {
    let n = w.dim();
    let mut b = CMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            let mut s = C64::new(0.0, 0.0);
            for p in 0..2 {
                for q in 0..2 {
                    s += w[(i, p)] * c[p][q] * w[(j, q)].conj();
                }
            }
            b[(i, j)] = s;
        }
    }
    b
}

/// Lemma-disk witness for a matrix with `‖A‖ = w(A) = 1`.
pub fn witness_lemma_disk(a: &CMatrix) -> Result<Option<WitnessCertificate>> {
    let norm = require_normalized(a)?;
    lemma_disk_normalized(&norm)
}

fn lemma_disk_normalized(norm: &Normalized) -> Result<Option<WitnessCertificate>> {
    let (Some(a1), Some(range_a1)) = (&norm.dec.a1, &norm.range_a1) else {
        return Ok(None);
    };
    let one = C64::new(1.0, 0.0);
    let (dist, angle, _) = lemma_disk_extreme_in(range_a1, one);
    if dist <= 1.0 + 1e-9 {
        return Ok(None);
    }
    // Polish the direction: the farthest point is the support point in the
    // direction of ν - 1.
    let mut sv = support_value(a1, angle)?;
    let polished = support_value(a1, (sv.point - one).arg())?;
    if (polished.point - one).norm() > (sv.point - one).norm() {
        sv = polished;
    }
    let nu = sv.point;
    let w = frame(&norm.dec, &sv.x);
    let c = [[one, one], [-one, -one]];
    let b = embed(&w, c);
    let lambda_n = trace_product(&norm.a, &b);
    let lambda = norm.mu * lambda_n;
    let Some(verdict) = certify_block(&norm.range_a, c, lambda)? else {
        return Ok(None);
    };
    Ok(Some(WitnessCertificate {
        b,
        lambda,
        verdict,
        construction: Construction::LemmaDisk,
        parameters: WitnessParameters {
            mu: Some(norm.mu),
            nu: Some(nu),
            lambda_normalized: Some(lambda_n),
            ..Default::default()
        },
    }))
}

/// Edge of the normal cone of `W(A)` at 1, searching from 0 toward `toward`.
fn cone_edge(a: &CMatrix, toward: f64) -> Result<f64> {
    let phi = |t: f64| support_value(a, t).map(|s| s.h - t.cos());
    let (mut lo, mut hi) = (0.0, toward);
    if phi(hi)? <= CONE_EPS {
        return Ok(hi);
    }
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if phi(mid)? <= CONE_EPS {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

/// Closed-form eigenvalue of the corner construction.
pub fn corner_lambda(alpha1: f64, r1: f64, theta: f64) -> C64 {
    let (sa, ca) = alpha1.sin_cos();
    let (st, ct) = theta.sin_cos();
    C64::new(2.0 * sa * ct + r1 * st, 2.0 * ca * ct + r1 * ct)
}

/// `sinα₁cosθ + r₁sinθ - sqrt((sinα₁cosθ)² + sin²θ)`; positive when the
/// strict inequality behind the construction holds.
pub fn corner_slack(alpha1: f64, r1: f64, theta: f64) -> f64 {
    let s = alpha1.sin() * theta.cos();
    s + r1 * theta.sin() - (s * s + theta.sin().powi(2)).sqrt()
}

/// The `θ` used by the construction: half the admissible bound on `tan θ`,
/// capped at π/4.
pub fn corner_theta(alpha1: f64, r1: f64) -> f64 {
    (r1 * alpha1.sin()).atan().min(FRAC_PI_4)
}

/// Corner witness for a normalized matrix whose range has a corner at the
/// peak.
pub fn witness_corner(a: &CMatrix) -> Result<Option<WitnessCertificate>> {
    if is_psd_multiple(a, PSD_TOL)?.0 {
        return Err(Error::HypothesisNotMet("matrix is a multiple of a PSD matrix".into()));
    }
    let norm = require_normalized(a)?;
    corner_normalized(&norm)
}

fn corner_normalized(norm: &Normalized) -> Result<Option<WitnessCertificate>> {
    let (Some(a1), Some(range_a1)) = (&norm.dec.a1, &norm.range_a1) else {
        return Err(Error::HypothesisNotMet("no complement to the peak eigenspace".into()));
    };
    let one = C64::new(1.0, 0.0);
    let (dist, _, _) = lemma_disk_extreme_in(range_a1, one);
    if dist > 1.0 + 1e-9 {
        return Err(Error::HypothesisNotMet("range of the complement leaves the unit disk about 1".into()));
    }
    let an = &norm.a;
    let up = cone_edge(an, PI)?;
    let down = cone_edge(an, -PI)?;
    // Any cone of positive width suffices here; the classification threshold
    // would reject fine polygons such as 360-gons.
    if up - down < MIN_CONE_WIDTH {
        return Err(Error::HypothesisNotMet(format!(
            "no corner at the peak (normal cone width {:.3e})",
            up - down
        )));
    }
    let sv_up = support_value(a1, up)?;
    let sv_down = support_value(a1, down)?;
    let sv = if sv_up.point.im.abs() >= sv_down.point.im.abs() { sv_up } else { sv_down };
    let flip = sv.point.im < 0.0;
    // On A* the contact point is conjugated and the vector is unchanged.
    let v = if flip { sv.point.conj() } else { sv.point };
    let r1 = (v - one).norm();
    let alpha1 = (v - one).arg();
    if !(alpha1 > FRAC_PI_2 && alpha1 < PI) || r1 * alpha1.sin() <= 1e-12 {
        return Err(Error::HypothesisNotMet(format!(
            "degenerate tangency (r1 = {r1:.3e}, alpha1 = {alpha1:.6})"
        )));
    }
    let theta = corner_theta(alpha1, r1);

    let (st, ct) = theta.sin_cos();
    let phase = C64::from_polar(2.0, FRAC_PI_2 - alpha1);
    let zero = C64::new(0.0, 0.0);
    let b0 = [[phase * ct, zero], [phase * st, zero]];
    let s = FRAC_1_SQRT_2;
    let u0 = [[C64::new(0.0, s), C64::new(0.0, -s)], [C64::new(s, 0.0), C64::new(s, 0.0)]];
    let c = conj_by(u0, b0);
    let w = frame(&norm.dec, &sv.x);
    let b_flip = embed(&w, c);
    let a_frame = if flip { an.adjoint() } else { an.clone() };
    let lambda_n = trace_product(&a_frame, &b_flip);
    let (b, c, lambda_r) = if flip {
        (b_flip.adjoint(), [[c[0][0].conj(), c[1][0].conj()], [c[0][1].conj(), c[1][1].conj()]], lambda_n.conj())
    } else {
        (b_flip, c, lambda_n)
    };
    let lambda = norm.mu * lambda_r;
    let Some(verdict) = certify_block(&norm.range_a, c, lambda)? else {
        return Ok(None);
    };
    Ok(Some(WitnessCertificate {
        b,
        lambda,
        verdict,
        construction: Construction::CornerSupportLine,
        parameters: WitnessParameters {
            mu: Some(norm.mu),
            nu: Some(v),
            alpha1: Some(alpha1),
            r1: Some(r1),
            theta: Some(theta),
            lambda_normalized: Some(lambda_n),
            adjoint_flip: flip,
            ..Default::default()
        },
    }))
}

/// `U₀* B₀ U₀` for 2×2 blocks.
fn conj_by(u: [[C64; 2]; 2], b: [[C64; 2]; 2]) -> [[C64; 2]; 2] {
    let mut out = [[C64::new(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            for p in 0..2 {
                for q in 0..2 {
                    out[i][j] += u[p][i].conj() * b[p][q] * u[q][j];
                }
            }
        }
    }
    out
}

/// Random rank-one `B = x y*` with `λ = <Ax, y>`; the top singular pair of
/// `A` is tried first. Trial `t` draws from stream `t` of the seeded
/// generator, so results do not depend on scheduling.
pub fn random_rank_one_search(a: &CMatrix, trials: usize, seed: u64) -> Result<Option<WitnessCertificate>> {
    random_search_in(a, &compute_range(a, DEFAULT_ANGLES)?, trials, seed)
}

fn random_search_in(a: &CMatrix, range_a: &RangeApprox, trials: usize, seed: u64) -> Result<Option<WitnessCertificate>> {
    if trials == 0 {
        return Err(Error::invalid("trials must be at least 1"));
    }
    let n = a.dim();
    let attempt = |x: &[C64], y: &[C64]| -> Result<Option<(CMatrix, C64, ProductVerdict)>> {
        let lambda = inner(&a.mul_vec(x), y);
        let ctx = ProductContext::from_ranges(range_a.clone(), rank_one_range(x, y, DEFAULT_ANGLES)?);
        match certify_in(&ctx, lambda)? {
            Some(v) => Ok(Some((rank_one(x, y)?, lambda, v))),
            None => Ok(None),
        }
    };
    let make = |(b, lambda, verdict): (CMatrix, C64, ProductVerdict), trial: Option<usize>| WitnessCertificate {
        b,
        lambda,
        verdict,
        construction: Construction::RandomSearch,
        parameters: WitnessParameters {
            seed: Some(seed),
            trial,
            ..Default::default()
        },
    };

    if let Some((x, y)) = top_singular_pair(a)? {
        if let Some(hit) = attempt(&x, &y)? {
            return Ok(Some(make(hit, None)));
        }
    }

    const CHUNK: usize = 32;
    let mut start = 0;
    while start < trials {
        let end = (start + CHUNK).min(trials);
        let results: Vec<Result<Option<_>>> = (start..end)
            .into_par_iter()
            .map(|t| {
                let mut rng = trial_rng(seed, t as u64);
                let x = random_unit_vector(&mut rng, n);
                let y = random_unit_vector(&mut rng, n);
                attempt(&x, &y)
            })
            .collect();
        for (t, r) in (start..end).zip(results) {
            if let Some(hit) = r? {
                return Ok(Some(make(hit, Some(t))));
            }
        }
        start = end;
    }
    Ok(None)
}

/// Right and left singular vectors for the largest singular value.
fn top_singular_pair(a: &CMatrix) -> Result<Option<(Vec<C64>, Vec<C64>)>> {
    let ata = hermitian_part(&(&a.adjoint() * a), 0.0);
    let pairs = eig_hermitian(&ata)?;
    let top = pairs.last().expect("nonempty");
    if top.value <= 0.0 {
        return Ok(None);
    }
    let x = top.vector.clone();
    let ax = a.mul_vec(&x);
    match crate::matcore::normalize(&ax) {
        Ok(y) => Ok(Some((x, y))),
        Err(_) => Ok(None),
    }
}

/// Tries the lemma-disk, corner and random constructions in turn. `None`
/// for multiples of PSD matrices; `Inconclusive` when every strategy fails.
pub fn falsify(a: &CMatrix) -> Result<Option<WitnessCertificate>> {
    falsify_with(a, DEFAULT_TRIALS, 0)
}

pub fn falsify_with(a: &CMatrix, trials: usize, seed: u64) -> Result<Option<WitnessCertificate>> {
    if is_psd_multiple(a, PSD_TOL)?.0 {
        return Ok(None);
    }
    let range_a = compute_range(a, DEFAULT_ANGLES)?;
    let rep = radialoid_from_range(a, &range_a, RADIALOID_TOL)?;
    if rep.radialoid {
        match normalize_at_peak(a, range_a.clone(), &rep) {
            Ok(norm) => {
                if let Some(c) = lemma_disk_normalized(&norm)? {
                    return Ok(Some(c));
                }
                match corner_normalized(&norm) {
                    Ok(Some(c)) => return Ok(Some(c)),
                    Ok(None) | Err(Error::HypothesisNotMet(_)) => {}
                    Err(e) => return Err(e),
                }
            }
            Err(Error::PeakNotAttained) => {}
            Err(e) => return Err(e),
        }
    }
    random_search_in(a, &range_a, trials, seed)?.map(Some).ok_or(Error::Inconclusive)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::TAU;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn lemma_disk_third_root() {
        let a = CMatrix::from_diag(&[c(1.0, 0.0), C64::from_polar(1.0, TAU / 3.0)]);
        let cert = witness_lemma_disk(&a).unwrap().unwrap();
        assert_eq!(cert.construction, Construction::LemmaDisk);
        assert!((cert.lambda.norm() - 3f64.sqrt()).abs() < 1e-9);
        verify_certificate(&a, &cert).unwrap();
        assert!(cert.margin() > 0.7);
    }

    #[test]
    fn lemma_disk_none_cases() {
        let a = CMatrix::from_diag(&[c(1.0, 0.0), c(0.5, 0.4)]);
        assert!(witness_lemma_disk(&a).unwrap().is_none());
        assert!(witness_lemma_disk(&CMatrix::identity(2)).unwrap().is_none());
        let big = CMatrix::from_real_diag(&[2.0, -1.0]);
        assert!(matches!(witness_lemma_disk(&big), Err(Error::NotNormalized { .. })));
    }

    #[test]
    fn corner_example_matches_closed_form() {
        let a = CMatrix::from_diag(&[c(1.0, 0.0), c(0.5, 0.4)]);
        let cert = witness_corner(&a).unwrap().unwrap();
        let p = &cert.parameters;
        let (alpha1, r1, theta) = (p.alpha1.unwrap(), p.r1.unwrap(), p.theta.unwrap());
        assert!((alpha1 - (PI - 0.8f64.atan())).abs() < 1e-9);
        assert!((r1 - 0.41f64.sqrt()).abs() < 1e-9);
        assert!((theta - 0.4f64.atan()).abs() < 1e-9);
        assert!((cert.lambda - corner_lambda(alpha1, r1, theta)).norm() < 1e-9);
        assert!(corner_slack(alpha1, r1, theta) > 0.0);
        assert!(!p.adjoint_flip);
        verify_certificate(&a, &cert).unwrap();
    }

    #[test]
    fn corner_flips_for_lower_contact() {
        let a = CMatrix::from_diag(&[c(1.0, 0.0), c(0.5, -0.4)]);
        let cert = witness_corner(&a).unwrap().unwrap();
        assert!(cert.parameters.adjoint_flip);
        verify_certificate(&a, &cert).unwrap();
        assert!((cert.lambda - corner_lambda(PI - 0.8f64.atan(), 0.41f64.sqrt(), 0.4f64.atan()).conj()).norm() < 1e-9);
    }

    #[test]
    fn corner_rejects_psd() {
        let a = CMatrix::from_real_diag(&[1.0, 0.9]);
        assert!(matches!(witness_corner(&a), Err(Error::HypothesisNotMet(_))));
    }

    #[test]
    fn corner_margin_shrinks_with_n() {
        let margin = |n: usize| {
            let d: Vec<C64> = (0..n).map(|j| (c(1.0, 0.0) + C64::from_polar(1.0, TAU * j as f64 / n as f64)) * 0.5).collect();
            let a = CMatrix::from_diag(&d);
            let cert = witness_corner(&a).unwrap().unwrap();
            verify_certificate(&a, &cert).unwrap();
            cert.margin()
        };
        let (m8, m32) = (margin(8), margin(32));
        assert!(m32 > 0.0 && m32 < m8, "{m8} {m32}");
    }

    #[test]
    fn random_search_examples() {
        let nil = CMatrix::from_real_rows(&[vec![0.0, 2.0], vec![0.0, 0.0]]);
        let cert = random_rank_one_search(&nil, 200, 0).unwrap().unwrap();
        verify_certificate(&nil, &cert).unwrap();
        let herm = CMatrix::from_real_diag(&[1.0, -1.0]);
        let cert = random_rank_one_search(&herm, 200, 0).unwrap().unwrap();
        verify_certificate(&herm, &cert).unwrap();
        let psd = CMatrix::from_real_diag(&[1.0, 2.0]);
        assert!(random_rank_one_search(&psd, 100, 0).unwrap().is_none());
    }

    #[test]
    fn falsify_dispatch() {
        let corner = CMatrix::from_diag(&[c(1.0, 0.0), c(0.5, 0.4)]);
        assert_eq!(falsify(&corner).unwrap().unwrap().construction, Construction::CornerSupportLine);
        let disk = CMatrix::from_diag(&[c(1.0, 0.0), C64::from_polar(1.0, TAU / 3.0)]);
        assert_eq!(falsify(&disk).unwrap().unwrap().construction, Construction::LemmaDisk);
        assert!(falsify(&CMatrix::from_real_diag(&[3.0, 0.6, 0.0])).unwrap().is_none());
    }

    #[test]
    fn falsify_original_scale() {
        let base = CMatrix::from_diag(&[c(1.0, 0.0), c(0.5, 0.4)]);
        let gamma = c(-1.5, 2.0);
        let a = base.scale(gamma);
        let cert = falsify(&a).unwrap().unwrap();
        verify_certificate(&a, &cert).unwrap();
        let ref_cert = falsify(&base).unwrap().unwrap();
        assert!((cert.lambda - ref_cert.lambda * gamma).norm() < 1e-9);
    }
}
