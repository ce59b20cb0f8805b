//! Discretized numerical ranges.
//!
//! `W(A)` is described by its support function `h(θ) = λ_max((e^{-iθ}A +
//! e^{iθ}A*)/2)`. Sampling `h` on a uniform angle grid gives an outer polygon
//! (intersection of the support half-planes) and an inner polygon (hull of the
//! maximizing points `<Ax, x>`), with `inner ⊆ W(A) ⊆ outer`.

use std::f64::consts::{PI, TAU};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{directed_hausdorff, point_segment, support_line_intersection, ConvexPolygon};
use crate::matcore::{
    eig_general, hermitian_part, inner, jacobi_top, normalize, operator_norm, vec_norm, CMatrix, C64,
};

pub const DEFAULT_ANGLES: usize = 720;
pub const DEFAULT_EPS_CORNER: f64 = 0.02;
/// Relative slack for "μ lies on the support line at θ".
pub const DEFAULT_EPS_LIN_REL: f64 = 1e-7;
const MAX_REFINE_DEPTH: usize = 6;

/// One evaluation of the support function.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SupportSample {
    pub angle: f64,
    pub value: f64,
    pub point: C64,
}

#[derive(Debug, Clone)]
pub struct SupportValue {
    pub h: f64,
    /// Unit maximizer of `Re(e^{-iθ}<Av, v>)`.
    pub x: Vec<C64>,
    /// `<Ax, x>`, a boundary point of `W(A)`.
    pub point: C64,
}

pub fn support_value(a: &CMatrix, theta: f64) -> Result<SupportValue> {
    let h = hermitian_part(a, theta);
    let (value, x) = jacobi_top(&h)?;
    let point = inner(&a.mul_vec(&x), &x);
    Ok(SupportValue { h: value, x, point })
}

fn sample(a: &CMatrix, angle: f64) -> Result<SupportSample> {
    let s = support_value(a, angle)?;
    Ok(SupportSample {
        angle,
        value: s.h,
        point: s.point,
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RangeApprox {
    pub m: usize,
    pub angles: Vec<f64>,
    pub support_values: Vec<f64>,
    pub boundary_points: Vec<C64>,
    /// Support lines added between grid angles where the outer polygon would
    /// otherwise overshoot a flat edge; sorted by angle.
    pub refinements: Vec<SupportSample>,
    pub inner_polygon: ConvexPolygon,
    pub outer_polygon: ConvexPolygon,
    /// Hausdorff distance between the two polygons.
    pub hausdorff_gap: f64,
    /// Largest sampled support value, i.e. the grid estimate of `w(A)`.
    pub scale: f64,
    pub operator_norm: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Membership {
    In,
    Out,
    Borderline,
}

pub fn compute_range(a: &CMatrix, m: usize) -> Result<RangeApprox> {
    if m < 8 {
        return Err(Error::invalid(format!("need at least 8 angles, got {m}")));
    }
    let angles: Vec<f64> = (0..m).map(|k| TAU * k as f64 / m as f64).collect();
    let samples: Vec<SupportSample> = angles
        .par_iter()
        .map(|&t| sample(a, t))
        .collect::<Result<_>>()?;
    let norm = operator_norm(a)?;
    let scale = samples.iter().map(|s| s.value.abs()).fold(0.0, f64::max);
    let len_scale = norm.max(scale).max(f64::MIN_POSITIVE);
    let gap_tol = 5.0 * len_scale / (m * m) as f64;

    let refinements: Vec<SupportSample> = (0..m)
        .into_par_iter()
        .map(|k| {
            let lo = &samples[k];
            let hi = &samples[(k + 1) % m];
            let hi_angle = if k + 1 == m { TAU } else { hi.angle };
            let mut out = Vec::new();
            refine(a, lo, hi, hi_angle, gap_tol, len_scale, 0, &mut out)?;
            Ok(out)
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .map(|mut s| {
            s.angle = s.angle.rem_euclid(TAU);
            s
        })
        .collect();

    let merge_tol = 1e-14 * len_scale;
    let mut lines: Vec<(f64, f64)> = samples
        .iter()
        .chain(&refinements)
        .map(|s| (s.angle, s.value))
        .collect();
    lines.sort_by(|x, y| x.0.total_cmp(&y.0));
    lines.dedup_by(|x, y| (x.0 - y.0).abs() < 1e-9);
    let mut corners = Vec::with_capacity(lines.len());
    for i in 0..lines.len() {
        let (t1, h1) = lines[i];
        let (t2, h2) = lines[(i + 1) % lines.len()];
        if let Some(z) = support_line_intersection(t1, h1, t2, h2) {
            corners.push(z);
        }
    }
    let outer_polygon = ConvexPolygon::hull(&corners, merge_tol);
    let points: Vec<C64> = samples.iter().chain(&refinements).map(|s| s.point).collect();
    let inner_polygon = ConvexPolygon::hull(&points, merge_tol);
    let hausdorff_gap = directed_hausdorff(&outer_polygon, &inner_polygon);

    Ok(RangeApprox {
        m,
        support_values: samples.iter().map(|s| s.value).collect(),
        boundary_points: samples.iter().map(|s| s.point).collect(),
        angles,
        refinements,
        inner_polygon,
        outer_polygon,
        hausdorff_gap,
        scale,
        operator_norm: norm,
    })
}

/// `W(xy*)` from the compression of `xy*` to a plane containing `x` and `y`.
/// The range is the same and the cost no longer depends on the dimension.
pub fn rank_one_range(x: &[C64], y: &[C64], m: usize) -> Result<RangeApprox> {
    compute_range(&rank_one_compression(x, y)?, m)
}

/// `Q* (xy*) Q` for an orthonormal pair `Q` with `x, y ∈ span Q`.
pub fn rank_one_compression(x: &[C64], y: &[C64]) -> Result<CMatrix> {
    let n = x.len();
    if y.len() != n {
        return Err(Error::DimensionMismatch(n, y.len()));
    }
    if n == 1 {
        return CMatrix::from_row_major(1, vec![x[0] * y[0].conj()]);
    }
    let q1 = normalize(x)?;
    let p = inner(y, &q1);
    let mut q2: Vec<C64> = y.iter().zip(&q1).map(|(a, b)| a - p * b).collect();
    if vec_norm(&q2) <= 1e-12 * vec_norm(y) {
        let k = (0..n).min_by(|&i, &j| q1[i].norm().total_cmp(&q1[j].norm())).expect("n > 1");
        let c = q1[k].conj();
        q2 = q1.iter().map(|b| -c * b).collect();
        q2[k] += 1.0;
    }
    let q2 = normalize(&q2)?;
    let q = [q1, q2];
    let mut data = Vec::with_capacity(4);
    for qi in &q {
        for qj in &q {
            data.push(inner(x, qi) * inner(qj, y));
        }
    }
    CMatrix::from_row_major(2, data)
}

/// Inserts the support line normal to the chord between two consecutive
/// boundary points whenever the two bracketing lines overshoot the chord.
#[allow(clippy::too_many_arguments)]
fn refine(
    a: &CMatrix,
    lo: &SupportSample,
    hi: &SupportSample,
    hi_angle: f64,
    gap_tol: f64,
    len_scale: f64,
    depth: usize,
    out: &mut Vec<SupportSample>,
) -> Result<()> {
    let chord = hi.point - lo.point;
    if depth >= MAX_REFINE_DEPTH || chord.norm() <= 1e-12 * len_scale {
        return Ok(());
    }
    let Some(q) = support_line_intersection(lo.angle, lo.value, hi_angle, hi.value) else {
        return Ok(());
    };
    if point_segment(q, lo.point, hi.point).0 <= gap_tol {
        return Ok(());
    }
    // Outward normal of a CCW chord is -i·chord.
    let mut phi = (chord * C64::new(0.0, -1.0)).arg();
    while phi < lo.angle {
        phi += TAU;
    }
    if phi >= hi_angle {
        return Ok(());
    }
    let mid = sample(a, phi)?;
    let chord_offset = (C64::from_polar(1.0, -phi) * lo.point).re;
    let flat = mid.value - chord_offset <= 1e-12 * len_scale;
    out.push(mid.clone());
    if !flat {
        refine(a, lo, &mid, phi, gap_tol, len_scale, depth + 1, out)?;
        refine(a, &mid, hi, hi_angle, gap_tol, len_scale, depth + 1, out)?;
    }
    Ok(())
}

impl RangeApprox {
    /// Every support half-plane `(θ, h(θ))`, grid and refinement.
    pub fn support_lines(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.angles
            .iter()
            .copied()
            .zip(self.support_values.iter().copied())
            .chain(self.refinements.iter().map(|s| (s.angle, s.value)))
    }

    /// Largest violation `max_θ Re(e^{-iθ}p) - h(θ)` over the stored lines.
    pub fn max_violation(&self, p: C64) -> f64 {
        self.support_lines()
            .map(|(t, h)| (C64::from_polar(1.0, -t) * p).re - h)
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn contains_point(&self, p: C64, tol: f64) -> Membership {
        contains_point(self, p, tol)
    }

    /// Normal-cone test at `mu`; see [`corner_support_lines`].
    pub fn corner_at(&self, mu: C64, eps_corner: f64, eps_lin: f64) -> CornerInfo {
        let m = self.m;
        // A flat range has no interior; every point of it is on the boundary.
        if !self.inner_polygon.is_flat() && self.contains_point(mu, eps_lin) == Membership::In {
            return CornerInfo {
                count: SupportLineCount::Zero,
                normal_cone_width: 0.0,
                cone: None,
            };
        }
        let on_line: Vec<bool> = self
            .angles
            .iter()
            .zip(&self.support_values)
            .map(|(&t, &h)| (C64::from_polar(1.0, -t) * mu).re >= h - eps_lin)
            .collect();
        let hits = on_line.iter().filter(|&&b| b).count();
        if hits == m {
            return CornerInfo {
                count: SupportLineCount::TwoOrMore,
                normal_cone_width: TAU,
                cone: Some((0.0, TAU)),
            };
        }
        // Longest circular run of consecutive hits.
        let mut best: Option<(usize, usize)> = None;
        for start in 0..m {
            if !on_line[start] || on_line[(start + m - 1) % m] {
                continue;
            }
            let mut len = 0;
            while len < m && on_line[(start + len) % m] {
                len += 1;
            }
            if best.is_none_or(|(_, l)| len > l) {
                best = Some((start, len));
            }
        }
        let step = TAU / m as f64;
        let (width, cone) = match best {
            Some((start, len)) => {
                let lo = self.angles[start];
                (len as f64 * step, Some((lo, lo + (len - 1) as f64 * step)))
            }
            None => (0.0, None),
        };
        let count = if width >= eps_corner {
            SupportLineCount::TwoOrMore
        } else {
            SupportLineCount::One
        };
        CornerInfo {
            count,
            normal_cone_width: width,
            cone,
        }
    }
}

/// `In` when `p` lies in the inner polygon at depth at least `tol` (or, for
/// flat ranges, within `tol` of it); `Out` when some support half-plane is
/// violated by more than `tol`; `Borderline` otherwise.
pub fn contains_point(r: &RangeApprox, p: C64, tol: f64) -> Membership {
    if r.max_violation(p) > tol {
        return Membership::Out;
    }
    let inner = &r.inner_polygon;
    let is_in = if inner.is_flat() {
        inner.distance(p) <= tol
    } else {
        inner.signed_distance(p) <= -tol
    };
    if is_in {
        Membership::In
    } else {
        Membership::Borderline
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SupportLineCount {
    Zero,
    One,
    TwoOrMore,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CornerInfo {
    pub count: SupportLineCount,
    /// Angular measure of the sampled normal cone.
    pub normal_cone_width: f64,
    /// First and last grid angle of the cone, `lo <= hi` (hi may exceed 2π).
    pub cone: Option<(f64, f64)>,
}

/// Counts support lines of `W(A)` through `mu` by measuring its normal cone.
pub fn corner_support_lines(a: &CMatrix, mu: C64, m: usize, eps_corner: f64) -> Result<CornerInfo> {
    let r = compute_range(a, m)?;
    let eps_lin = DEFAULT_EPS_LIN_REL * r.operator_norm.max(f64::MIN_POSITIVE);
    Ok(r.corner_at(mu, eps_corner, eps_lin))
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct RadiiReport {
    /// Numerical radius.
    pub w: f64,
    /// Spectral radius.
    pub r: f64,
    pub norm: f64,
    pub radialoid: bool,
    pub tol: f64,
}

/// Numerical radius, spectral radius and norm. `w` is the grid maximum of
/// the support function polished by golden-section search on the bracketing
/// interval.
pub fn radii(a: &CMatrix, m: usize, tol: f64) -> Result<RadiiReport> {
    if m < 64 {
        return Err(Error::invalid(format!("radii needs at least 64 angles, got {m}")));
    }
    let angles: Vec<f64> = (0..m).map(|k| TAU * k as f64 / m as f64).collect();
    let h: Vec<f64> = angles
        .par_iter()
        .map(|&t| support_value(a, t).map(|s| s.h))
        .collect::<Result<_>>()?;
    radii_from_grid(a, &angles, &h, operator_norm(a)?, tol)
}

/// [`radii`] reusing the grid and norm of an already computed range.
pub fn radii_from_range(a: &CMatrix, range: &RangeApprox, tol: f64) -> Result<RadiiReport> {
    radii_from_grid(a, &range.angles, &range.support_values, range.operator_norm, tol)
}

fn radii_from_grid(a: &CMatrix, angles: &[f64], h: &[f64], norm: f64, tol: f64) -> Result<RadiiReport> {
    let w = numerical_radius_from_grid(a, angles, h)?;
    let r = eig_general(a)?.spectral_radius();
    Ok(RadiiReport {
        w,
        r,
        norm,
        radialoid: (r - norm).abs() <= tol,
        tol,
    })
}

pub(crate) fn numerical_radius_from_grid(a: &CMatrix, angles: &[f64], h: &[f64]) -> Result<f64> {
    let m = angles.len();
    let (k, &hk) = h
        .iter()
        .enumerate()
        .max_by(|x, y| x.1.total_cmp(y.1).then(y.0.cmp(&x.0)))
        .expect("non-empty grid");
    let step = TAU / m as f64;
    let (mut lo, mut hi) = (angles[k] - step, angles[k] + step);
    let f = |t: f64| support_value(a, t).map(|s| s.h);
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - g * (hi - lo);
    let mut x2 = lo + g * (hi - lo);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    let mut best = hk.max(f1).max(f2);
    for _ in 0..60 {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = f(x2)?;
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = f(x1)?;
        }
        best = best.max(f1).max(f2);
        if hi - lo < 1e-12 {
            break;
        }
    }
    Ok(best.max(0.0))
}

/// Angle in `[0, 2π)`.
pub fn wrap_angle(t: f64) -> f64 {
    let r = t.rem_euclid(TAU);
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// Signed angular difference `a - b` folded into `(-π, π]`.
pub fn angle_diff(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(TAU);
    if d > PI {
        d - TAU
    } else {
        d
    }
}
