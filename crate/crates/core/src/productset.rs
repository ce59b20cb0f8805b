//! Membership of a point in the product set `W(A)W(B) = ∪_{z∈W(A)} z·W(B)`.
//!
//! The set is generally not convex, so membership is decided by searching
//! over `z ∈ W(A)` for the distance `g(z) = dist(λ, z·W(B))`. Because
//! `|g(z) - g(z')| ≤ |z - z'|·max|W(B)|`, a quadtree over `W(A)` with a
//! Lipschitz lower bound per cell certifies exclusion.
//!
//! * `In` is only reported with an explicit pair `(z, b)` drawn from the inner
//!   polygons, which lie inside the true ranges.
//! * `Out` is only reported when every cell of the outer polygon of `W(A)`
//!   has a lower bound above the tolerance, measured against the outer polygon
//!   of `W(B)`. The certificate margin is that lower bound.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{distance_to_convex, ConvexPolygon};
use crate::matcore::{eig_general, CMatrix, C64};
use crate::numrange::{compute_range, Membership, RangeApprox, DEFAULT_ANGLES};
use crate::random::seeded;

pub const DEFAULT_GRID: usize = 128;
pub const DEFAULT_TOL: f64 = 1e-6;
/// Out-certification stops once the lower bound is within this fraction of
/// the best distance found.
const REL_MARGIN_GAP: f64 = 0.02;
const ROOT_SPLIT: usize = 8;
const IN_SEARCH_BUDGET: usize = 40_000;
const OUT_SEARCH_BUDGET: usize = 400_000;
const POLISH_ITERS: usize = 200;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProductVerdict {
    pub verdict: Membership,
    /// For `In` the achieved `|zb - λ|`; otherwise the smallest sampled
    /// distance from `λ` to the outer product set.
    pub distance_estimate: f64,
    /// `(z, b)` with `z ∈ W(A)`, `b ∈ W(B)`.
    pub witness_pair: Option<(C64, C64)>,
    /// Certified lower bound on `dist(λ, W(A)W(B))` (`Out` only).
    pub certificate_margin: Option<f64>,
}

impl ProductVerdict {
    pub fn is_out(&self) -> bool {
        self.verdict == Membership::Out
    }
}

/// Precomputed ranges of a pair of matrices.
#[derive(Debug, Clone)]
pub struct ProductContext {
    pub range_a: RangeApprox,
    pub range_b: RangeApprox,
}

impl ProductContext {
    pub fn new(a: &CMatrix, b: &CMatrix, angles: usize) -> Result<Self> {
        Ok(ProductContext {
            range_a: compute_range(a, angles)?,
            range_b: compute_range(b, angles)?,
        })
    }

    pub fn from_ranges(range_a: RangeApprox, range_b: RangeApprox) -> Self {
        ProductContext { range_a, range_b }
    }

    /// Same ranges with the roles of `A` and `B` exchanged.
    pub fn swapped(&self) -> Self {
        ProductContext {
            range_a: self.range_b.clone(),
            range_b: self.range_a.clone(),
        }
    }

    /// Classifies `λ` against the closure of `W(A)W(B)`; `tol` is scaled by
    /// `1 + |λ|`.
    pub fn membership(&self, lambda: C64, tol: f64, grid: usize) -> Result<ProductVerdict> {
        if !(tol > 0.0) {
            return Err(Error::invalid("tolerance must be positive"));
        }
        if grid < 32 {
            return Err(Error::invalid(format!("grid must be at least 32, got {grid}")));
        }
        let tol = tol * (1.0 + lambda.norm());

        if lambda.norm() <= tol {
            if let Some(v) = self.zero_shortcut(lambda, tol) {
                return Ok(v);
            }
        }

        let search = self.search_in(lambda, tol, grid);
        if let Some((z, b, d)) = search.hit {
            return Ok(ProductVerdict {
                verdict: Membership::In,
                distance_estimate: d,
                witness_pair: Some((z, b)),
                certificate_margin: None,
            });
        }
        let out = self.certify_out(lambda, tol);
        Ok(match out.margin {
            Some(margin) => ProductVerdict {
                verdict: Membership::Out,
                distance_estimate: out.upper,
                witness_pair: None,
                certificate_margin: Some(margin),
            },
            None => ProductVerdict {
                verdict: Membership::Borderline,
                distance_estimate: out.upper.min(search.best),
                witness_pair: None,
                certificate_margin: None,
            },
        })
    }

    /// `0 ∈ W(A)W(B)` iff `0 ∈ W(A)` or `0 ∈ W(B)`.
    fn zero_shortcut(&self, lambda: C64, tol: f64) -> Option<ProductVerdict> {
        let (ra, rb) = (&self.range_a, &self.range_b);
        let zero = C64::new(0.0, 0.0);
        let in_a = ra.contains_point(zero, tol);
        let in_b = rb.contains_point(zero, tol);
        let witness = if in_a == Membership::In {
            Some((zero, rb.inner_polygon.vertices()[0]))
        } else if in_b == Membership::In {
            Some((ra.inner_polygon.vertices()[0], zero))
        } else {
            None
        };
        if let Some(pair) = witness {
            return Some(ProductVerdict {
                verdict: Membership::In,
                distance_estimate: lambda.norm(),
                witness_pair: Some(pair),
                certificate_margin: None,
            });
        }
        if in_a == Membership::Out && in_b == Membership::Out {
            let lower = ra.outer_polygon.distance(zero) * rb.outer_polygon.distance(zero) - lambda.norm();
            if lower > tol {
                return Some(ProductVerdict {
                    verdict: Membership::Out,
                    distance_estimate: lower + lambda.norm(),
                    witness_pair: None,
                    certificate_margin: Some(lower),
                });
            }
        }
        None
    }

    fn search_in(&self, lambda: C64, tol: f64, grid: usize) -> InSearch {
        let pa = &self.range_a.inner_polygon;
        let pb = &self.range_b.inner_polygon;
        let lip = pb.max_modulus();
        let min_side = (pa.diameter() / (grid as f64 * 8.0)).max(1e-300);
        let mut heap = BinaryHeap::new();
        let mut best = Candidate::worst();
        let mut top: Vec<Candidate> = Vec::new();
        let mut evals = 0usize;

        for cell in root_cells(pa) {
            if let Some(item) = eval_cell(pa, pb, lip, lambda, cell, &mut evals, false) {
                heap.push(item);
            }
        }
        while let Some(item) = heap.pop() {
            let cand = item.candidate;
            if cand.g < best.g {
                best = cand;
            }
            remember(&mut top, cand);
            if cand.g <= tol {
                return InSearch::hit(cand);
            }
            if item.lower > tol || item.cell.half <= min_side * 0.5 || evals >= IN_SEARCH_BUDGET {
                continue;
            }
            for child in item.cell.children() {
                if let Some(next) = eval_cell(pa, pb, lip, lambda, child, &mut evals, false) {
                    heap.push(next);
                }
            }
        }
        for start in top {
            let polished = polish(pa, pb, lambda, start, tol);
            if polished.g < best.g {
                best = polished;
            }
            if polished.g <= tol {
                return InSearch::hit(polished);
            }
        }
        InSearch {
            hit: None,
            best: best.g,
        }
    }

    fn certify_out(&self, lambda: C64, tol: f64) -> OutSearch {
        let pa = &self.range_a.outer_polygon;
        let pb = &self.range_b.outer_polygon;
        let lip = pb.max_modulus();
        let scale = (pa.max_modulus() * lip).max(lambda.norm()).max(f64::MIN_POSITIVE);
        let min_half = (pa.diameter() * 2f64.powi(-30)).max(1e-15 * scale / lip.max(1e-300));
        let mut heap = BinaryHeap::new();
        let mut evals = 0usize;
        let mut upper = f64::INFINITY;
        let mut final_lower = f64::INFINITY;

        for cell in root_cells(pa) {
            if let Some(item) = eval_cell(pa, pb, lip, lambda, cell, &mut evals, true) {
                heap.push(item);
            }
        }
        while let Some(item) = heap.pop() {
            upper = upper.min(item.candidate.g);
            if upper <= tol {
                return OutSearch { margin: None, upper };
            }
            let lower = item.lower;
            if lower > tol && lower >= (1.0 - REL_MARGIN_GAP) * upper {
                return OutSearch {
                    margin: Some(lower.min(final_lower)),
                    upper,
                };
            }
            if evals >= OUT_SEARCH_BUDGET {
                let margin = (lower > tol).then_some(lower.min(final_lower));
                return OutSearch { margin, upper };
            }
            if item.cell.half <= min_half {
                if lower <= tol {
                    return OutSearch { margin: None, upper };
                }
                final_lower = final_lower.min(lower);
                continue;
            }
            for child in item.cell.children() {
                if let Some(next) = eval_cell(pa, pb, lip, lambda, child, &mut evals, true) {
                    upper = upper.min(next.candidate.g);
                    heap.push(next);
                }
            }
        }
        let margin = (final_lower.is_finite() && final_lower > tol).then_some(final_lower);
        OutSearch { margin, upper }
    }
}

struct InSearch {
    hit: Option<(C64, C64, f64)>,
    best: f64,
}

impl InSearch {
    fn hit(c: Candidate) -> Self {
        InSearch {
            hit: Some((c.z, c.b, c.g)),
            best: c.g,
        }
    }
}

struct OutSearch {
    margin: Option<f64>,
    upper: f64,
}

#[derive(Debug, Clone, Copy)]
struct Candidate {
    z: C64,
    b: C64,
    g: f64,
}

impl Candidate {
    fn worst() -> Self {
        Candidate {
            z: C64::new(0.0, 0.0),
            b: C64::new(0.0, 0.0),
            g: f64::INFINITY,
        }
    }
}

fn remember(top: &mut Vec<Candidate>, c: Candidate) {
    const KEEP: usize = 6;
    if top.iter().any(|t| (t.z - c.z).norm() < 1e-12) {
        return;
    }
    top.push(c);
    top.sort_by(|x, y| x.g.total_cmp(&y.g));
    top.truncate(KEEP);
}

#[derive(Debug, Clone, Copy)]
struct Cell {
    center: C64,
    half: f64,
}

impl Cell {
    fn radius(&self) -> f64 {
        self.half * std::f64::consts::SQRT_2
    }

    fn children(&self) -> [Cell; 4] {
        let q = self.half * 0.5;
        [(-1.0, -1.0), (1.0, -1.0), (-1.0, 1.0), (1.0, 1.0)].map(|(dx, dy)| Cell {
            center: self.center + C64::new(dx * q, dy * q),
            half: q,
        })
    }
}

fn root_cells(p: &ConvexPolygon) -> Vec<Cell> {
    let (lo, hi) = p.bbox();
    let side = (hi.re - lo.re).max(hi.im - lo.im);
    let mid = (lo + hi) * 0.5;
    if side <= 0.0 {
        return vec![Cell {
            center: mid,
            half: 0.0,
        }];
    }
    let cell = side / ROOT_SPLIT as f64;
    let origin = mid - C64::new(side * 0.5, side * 0.5);
    let mut cells = Vec::with_capacity(ROOT_SPLIT * ROOT_SPLIT);
    for i in 0..ROOT_SPLIT {
        for j in 0..ROOT_SPLIT {
            cells.push(Cell {
                center: origin + C64::new((i as f64 + 0.5) * cell, (j as f64 + 0.5) * cell),
                half: cell * 0.5,
            });
        }
    }
    cells
}

struct HeapItem {
    lower: f64,
    cell: Cell,
    candidate: Candidate,
    /// Order by lower bound (Out search) or by sampled value (In search).
    key: f64,
}

impl PartialEq for HeapItem {
    fn eq(&self, other: &Self) -> bool {
        self.key == other.key
    }
}
impl Eq for HeapItem {}
impl PartialOrd for HeapItem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for HeapItem {
    // Min-heap on key.
    fn cmp(&self, other: &Self) -> Ordering {
        other.key.total_cmp(&self.key)
    }
}

/// `dist(λ, z·P)` and the point `b ∈ P` realizing it.
fn scaled_distance(pb: &ConvexPolygon, z: C64, lambda: C64) -> (f64, C64) {
    let scaled = pb.map(|v| z * v);
    let (d, loc) = distance_to_convex(&scaled, lambda);
    (d, pb.point_at(loc))
}

/// Evaluates `g` at the point of `pa` nearest the cell center. Cells that
/// miss `pa` entirely are dropped.
fn eval_cell(
    pa: &ConvexPolygon,
    pb: &ConvexPolygon,
    lip: f64,
    lambda: C64,
    cell: Cell,
    evals: &mut usize,
    order_by_lower: bool,
) -> Option<HeapItem> {
    let (da, loc) = distance_to_convex(pa.vertices(), cell.center);
    let r = cell.radius();
    if da > r * (1.0 + 1e-12) + 1e-300 {
        return None;
    }
    let z = if da == 0.0 { cell.center } else { pa.point_at(loc) };
    *evals += 1;
    let (g, b) = scaled_distance(pb, z, lambda);
    // Every point of cell ∩ pa lies within r + da of z.
    let lower = g - (r + da) * lip;
    Some(HeapItem {
        lower,
        cell,
        candidate: Candidate { z, b, g },
        key: if order_by_lower { lower } else { g },
    })
}

/// Alternating minimization of `|zb - λ|` over `z ∈ pa`, `b ∈ pb`.
fn polish(pa: &ConvexPolygon, pb: &ConvexPolygon, lambda: C64, start: Candidate, tol: f64) -> Candidate {
    let mut cur = start;
    for _ in 0..POLISH_ITERS {
        let (g1, b) = scaled_distance(pb, cur.z, lambda);
        let step1 = Candidate { z: cur.z, b, g: g1 };
        if g1 <= tol {
            return step1;
        }
        let (g2, z) = scaled_distance(pa, b, lambda);
        let step2 = Candidate { z, b, g: g2 };
        if g2 <= tol {
            return step2;
        }
        let improved = cur.g - g2;
        cur = step2;
        if improved <= 1e-16 * (1.0 + lambda.norm()) {
            break;
        }
    }
    cur
}

pub fn product_membership(a: &CMatrix, b: &CMatrix, lambda: C64, tol: f64, grid: usize) -> Result<ProductVerdict> {
    ProductContext::new(a, b, DEFAULT_ANGLES)?.membership(lambda, tol, grid)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Containment {
    Contained,
    Violated,
    Inconclusive,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EigenVerdict {
    pub lambda: C64,
    pub verdict: ProductVerdict,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ContainmentReport {
    pub eigen_verdicts: Vec<EigenVerdict>,
    pub overall: Containment,
    pub max_violation_distance: f64,
}

/// Tests every eigenvalue of `AB` against `W(A)W(B)`.
pub fn containment_check(a: &CMatrix, b: &CMatrix, tol: f64) -> Result<ContainmentReport> {
    containment_check_with(a, b, tol, DEFAULT_ANGLES, DEFAULT_GRID)
}

pub fn containment_check_with(a: &CMatrix, b: &CMatrix, tol: f64, angles: usize, grid: usize) -> Result<ContainmentReport> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch(a.dim(), b.dim()));
    }
    let ctx = ProductContext::new(a, b, angles)?;
    let spectrum = eig_general(&(a * b))?;
    containment_in_context(&ctx, &spectrum.eigenvalues, tol, grid)
}

pub fn containment_in_context(ctx: &ProductContext, eigenvalues: &[C64], tol: f64, grid: usize) -> Result<ContainmentReport> {
    let eigen_verdicts = eigenvalues
        .iter()
        .map(|&lambda| {
            Ok(EigenVerdict {
                lambda,
                verdict: ctx.membership(lambda, tol, grid)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let any_out = eigen_verdicts.iter().any(|e| e.verdict.verdict == Membership::Out);
    let all_in = eigen_verdicts.iter().all(|e| e.verdict.verdict == Membership::In);
    let overall = if any_out {
        Containment::Violated
    } else if all_in {
        Containment::Contained
    } else {
        Containment::Inconclusive
    };
    let max_violation_distance = eigen_verdicts
        .iter()
        .filter(|e| e.verdict.is_out())
        .map(|e| e.verdict.distance_estimate)
        .fold(0.0, f64::max);
    Ok(ContainmentReport {
        eigen_verdicts,
        overall,
        max_violation_distance,
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConvexityProbe {
    pub convex: bool,
    /// Largest certified margin among `Out` midpoints (0 when none).
    pub worst_midpoint_gap: f64,
    pub out_midpoints: usize,
    pub borderline_midpoints: usize,
}

/// Tests midpoints of pairs of product points. Reports non-convexity only
/// for a midpoint certified `Out`.
pub fn product_convexity_probe(a: &CMatrix, b: &CMatrix, samples: usize) -> Result<ConvexityProbe> {
    if samples < 100 {
        return Err(Error::invalid(format!("need at least 100 samples, got {samples}")));
    }
    let ctx = ProductContext::new(a, b, DEFAULT_ANGLES)?;
    convexity_probe_in_context(&ctx, samples, 0)
}

pub fn convexity_probe_in_context(ctx: &ProductContext, samples: usize, seed: u64) -> Result<ConvexityProbe> {
    const PER_FACTOR: usize = 12;
    let za = spread_vertices(&ctx.range_a.inner_polygon, PER_FACTOR);
    let zb = spread_vertices(&ctx.range_b.inner_polygon, PER_FACTOR);
    let products: Vec<C64> = za.iter().flat_map(|&z| zb.iter().map(move |&b| z * b)).collect();
    let mut rng = seeded(seed);
    let mut probe = ConvexityProbe {
        convex: true,
        worst_midpoint_gap: 0.0,
        out_midpoints: 0,
        borderline_midpoints: 0,
    };
    if products.len() < 2 {
        return Ok(probe);
    }
    for _ in 0..samples {
        let i = rng.random_range(0..products.len());
        let mut j = rng.random_range(0..products.len() - 1);
        if j >= i {
            j += 1;
        }
        let mid = (products[i] + products[j]) * 0.5;
        let v = ctx.membership(mid, DEFAULT_TOL, DEFAULT_GRID)?;
        match v.verdict {
            Membership::Out => {
                probe.convex = false;
                probe.out_midpoints += 1;
                probe.worst_midpoint_gap = probe.worst_midpoint_gap.max(v.certificate_margin.unwrap_or(0.0));
            }
            Membership::Borderline => probe.borderline_midpoints += 1,
            Membership::In => {}
        }
    }
    Ok(probe)
}

/// At most `k` vertices spread evenly around the polygon.
fn spread_vertices(p: &ConvexPolygon, k: usize) -> Vec<C64> {
    let v = p.vertices();
    if v.len() <= k {
        return v.to_vec();
    }
    (0..k).map(|i| v[i * v.len() / k]).collect()
}

/// Points `z·b` over boundary and interior samples of both inner polygons.
pub fn sample_product_set(a: &CMatrix, b: &CMatrix, density: usize) -> Result<Vec<C64>> {
    if density < 16 {
        return Err(Error::invalid(format!("density must be at least 16, got {density}")));
    }
    let ctx = ProductContext::new(a, b, DEFAULT_ANGLES)?;
    Ok(sample_product_in_context(&ctx, density))
}

pub fn sample_product_in_context(ctx: &ProductContext, density: usize) -> Vec<C64> {
    let za = polygon_samples(&ctx.range_a.inner_polygon, density);
    let zb = polygon_samples(&ctx.range_b.inner_polygon, density);
    let mut out: Vec<C64> = za.iter().flat_map(|&z| zb.iter().map(move |&b| z * b)).collect();
    out.sort_by(|x, y| x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im)));
    out.dedup();
    out
}

/// `density` points evenly spaced along the perimeter, plus the same ring
/// shrunk toward the centroid at a few levels, plus the centroid.
pub fn polygon_samples(p: &ConvexPolygon, density: usize) -> Vec<C64> {
    let v = p.vertices();
    if v.len() <= 1 {
        return v.to_vec();
    }
    let perimeter: f64 = p.edges().map(|(a, b)| (b - a).norm()).sum();
    let mut ring = Vec::with_capacity(density);
    if v.len() == 2 {
        for k in 0..density {
            let t = k as f64 / (density - 1) as f64;
            ring.push(v[0] + (v[1] - v[0]) * t);
        }
        return ring;
    }
    let step = perimeter / density as f64;
    let mut edge = 0;
    let mut edge_start = 0.0;
    for k in 0..density {
        let s = k as f64 * step;
        let (mut a, mut b) = (v[edge], v[(edge + 1) % v.len()]);
        while s > edge_start + (b - a).norm() && edge + 1 < v.len() {
            edge_start += (b - a).norm();
            edge += 1;
            a = v[edge];
            b = v[(edge + 1) % v.len()];
        }
        let len = (b - a).norm();
        let t = if len > 0.0 { ((s - edge_start) / len).clamp(0.0, 1.0) } else { 0.0 };
        ring.push(a + (b - a) * t);
    }
    let c = p.centroid();
    let mut out = ring.clone();
    for level in [0.75, 0.5, 0.25] {
        out.extend(ring.iter().map(|&z| c + (z - c) * level));
    }
    out.push(c);
    out
}
