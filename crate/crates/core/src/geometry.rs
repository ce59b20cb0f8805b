//! Planar convex geometry on complex numbers.
//!
//! Polygons are stored counter-clockwise without repeated or collinear
//! vertices. One vertex is a point and two vertices a segment; every routine
//! handles those degenerate shapes directly.

use serde::{Deserialize, Serialize};

use crate::matcore::C64;

#[inline]
fn cross(o: C64, a: C64, b: C64) -> f64 {
    (a.re - o.re) * (b.im - o.im) - (a.im - o.im) * (b.re - o.re)
}

/// Where the nearest point of a polygon sits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Nearest {
    /// The query point is inside; barycentric weights on the fan triangle
    /// `(v0, v_i, v_{i+1})`.
    Inside { tri: usize, weights: [f64; 3] },
    /// On edge `(v_i, v_{i+1})` at parameter `t ∈ [0, 1]`.
    Edge { edge: usize, t: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvexPolygon {
    vertices: Vec<C64>,
}

impl ConvexPolygon {
    /// Convex hull (Andrew's monotone chain). Points closer than `merge_tol`
    /// are merged; collinear boundary points are dropped.
    pub fn hull(points: &[C64], merge_tol: f64) -> Self {
        let mut pts: Vec<C64> = points
            .iter()
            .copied()
            .filter(|z| z.re.is_finite() && z.im.is_finite())
            .collect();
        pts.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        pts.dedup_by(|a, b| (*a - *b).norm() <= merge_tol);
        if pts.len() <= 2 {
            return ConvexPolygon { vertices: pts };
        }
        let mut lower: Vec<C64> = Vec::new();
        for &p in &pts {
            while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0.0 {
                lower.pop();
            }
            lower.push(p);
        }
        let mut upper: Vec<C64> = Vec::new();
        for &p in pts.iter().rev() {
            while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0.0 {
                upper.pop();
            }
            upper.push(p);
        }
        lower.pop();
        upper.pop();
        lower.extend(upper);
        let mut v = lower;
        // Drop near-duplicates that survived at the seam.
        v.dedup_by(|a, b| (*a - *b).norm() <= merge_tol);
        if v.len() > 1 && (v[0] - v[v.len() - 1]).norm() <= merge_tol {
            v.pop();
        }
        ConvexPolygon { vertices: v }
    }

    pub fn from_point(p: C64) -> Self {
        ConvexPolygon { vertices: vec![p] }
    }

    pub fn vertices(&self) -> &[C64] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn edges(&self) -> impl Iterator<Item = (C64, C64)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    pub fn area(&self) -> f64 {
        if self.vertices.len() < 3 {
            return 0.0;
        }
        0.5 * self.edges().map(|(a, b)| a.re * b.im - a.im * b.re).sum::<f64>()
    }

    pub fn centroid(&self) -> C64 {
        let n = self.vertices.len().max(1) as f64;
        self.vertices.iter().sum::<C64>() / n
    }

    pub fn diameter(&self) -> f64 {
        let mut d = 0.0_f64;
        for (i, a) in self.vertices.iter().enumerate() {
            for b in &self.vertices[i + 1..] {
                d = d.max((a - b).norm());
            }
        }
        d
    }

    pub fn max_modulus(&self) -> f64 {
        self.vertices.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Axis-aligned bounding box `(min, max)`.
    pub fn bbox(&self) -> (C64, C64) {
        let mut lo = C64::new(f64::INFINITY, f64::INFINITY);
        let mut hi = C64::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        for z in &self.vertices {
            lo.re = lo.re.min(z.re);
            lo.im = lo.im.min(z.im);
            hi.re = hi.re.max(z.re);
            hi.im = hi.im.max(z.im);
        }
        (lo, hi)
    }

    /// Convexity by the cross-product sign test.
    pub fn is_convex(&self) -> bool {
        let n = self.vertices.len();
        if n < 3 {
            return true;
        }
        let slack = -1e-12 * self.diameter().powi(2);
        (0..n).all(|i| {
            cross(
                self.vertices[i],
                self.vertices[(i + 1) % n],
                self.vertices[(i + 2) % n],
            ) >= slack
        })
    }

    /// Zero-area polygons: points, segments, and slivers left by rounding.
    pub fn is_flat(&self) -> bool {
        self.vertices.len() < 3 || self.area() <= 1e-12 * self.diameter().powi(2)
    }

    pub fn map(&self, f: impl Fn(C64) -> C64) -> Vec<C64> {
        self.vertices.iter().map(|&z| f(z)).collect()
    }

    /// Distance from `p` to the polygon (zero inside).
    pub fn distance(&self, p: C64) -> f64 {
        distance_to_convex(&self.vertices, p).0
    }

    /// Signed distance: negative inside (depth), positive outside.
    pub fn signed_distance(&self, p: C64) -> f64 {
        let d = self.distance(p);
        if d > 0.0 || self.vertices.len() < 3 {
            return d;
        }
        -self
            .edges()
            .map(|(a, b)| point_segment(p, a, b).0)
            .fold(f64::INFINITY, f64::min)
    }

    /// Point of the polygon at barycentric / edge location `loc`.
    pub fn point_at(&self, loc: Nearest) -> C64 {
        locate(&self.vertices, loc)
    }
}

/// Point-to-segment distance and the clamped parameter.
pub fn point_segment(p: C64, a: C64, b: C64) -> (f64, f64) {
    let ab = b - a;
    let len2 = ab.norm_sqr();
    if len2 == 0.0 {
        return ((p - a).norm(), 0.0);
    }
    let t = (((p - a) * ab.conj()).re / len2).clamp(0.0, 1.0);
    ((p - (a + ab * t)).norm(), t)
}

/// Distance from `p` to the convex polygon with CCW vertices `v` (which may
/// be a scaled or rotated copy of a stored polygon), plus where the nearest
/// point sits.
pub fn distance_to_convex(v: &[C64], p: C64) -> (f64, Nearest) {
    match v.len() {
        0 => (f64::INFINITY, Nearest::Edge { edge: 0, t: 0.0 }),
        1 => ((p - v[0]).norm(), Nearest::Edge { edge: 0, t: 0.0 }),
        2 => {
            let (d, t) = point_segment(p, v[0], v[1]);
            (d, Nearest::Edge { edge: 0, t })
        }
        n => {
            if let Some(loc) = inside_fan(v, p) {
                return (0.0, loc);
            }
            let mut best = (f64::INFINITY, Nearest::Edge { edge: 0, t: 0.0 });
            for i in 0..n {
                let (d, t) = point_segment(p, v[i], v[(i + 1) % n]);
                if d < best.0 {
                    best = (d, Nearest::Edge { edge: i, t });
                }
            }
            best
        }
    }
}

/// Barycentric location of `p` in the fan triangulation from `v[0]`, if
/// `p` lies inside the polygon.
fn inside_fan(v: &[C64], p: C64) -> Option<Nearest> {
    let n = v.len();
    // A zero scale collapses every vertex to one point; all crosses vanish and
    // the edge branch must handle it.
    let mut any_positive = false;
    for i in 0..n {
        let cr = cross(v[i], v[(i + 1) % n], p);
        if cr < 0.0 {
            return None;
        }
        any_positive |= cr > 0.0;
    }
    if !any_positive {
        return None;
    }
    // Binary search for the wedge (v0, v_i, v_{i+1}) containing p.
    let (mut lo, mut hi) = (1usize, n - 1);
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        if cross(v[0], v[mid], p) >= 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let (a, b, c) = (v[0], v[lo], v[lo + 1]);
    let det = cross(a, b, c);
    if det <= 0.0 {
        return Some(Nearest::Inside {
            tri: lo,
            weights: [1.0, 0.0, 0.0],
        });
    }
    let wb = cross(a, p, c) / det;
    let wc = cross(a, b, p) / det;
    let wa = 1.0 - wb - wc;
    Some(Nearest::Inside {
        tri: lo,
        weights: [wa.clamp(0.0, 1.0), wb.clamp(0.0, 1.0), wc.clamp(0.0, 1.0)],
    })
}

fn locate(v: &[C64], loc: Nearest) -> C64 {
    let n = v.len();
    match loc {
        Nearest::Inside { tri, weights } => {
            v[0] * weights[0] + v[tri] * weights[1] + v[(tri + 1) % n] * weights[2]
        }
        Nearest::Edge { edge, t } => {
            if n == 0 {
                return C64::new(0.0, 0.0);
            }
            let a = v[edge % n];
            let b = v[(edge + 1) % n];
            a + (b - a) * t
        }
    }
}

/// One-sided Hausdorff distance `sup_{p∈from} dist(p, to)`. For convex
/// polygons the supremum is attained at a vertex of `from`.
pub fn directed_hausdorff(from: &ConvexPolygon, to: &ConvexPolygon) -> f64 {
    from.vertices()
        .iter()
        .map(|&p| to.distance(p))
        .fold(0.0, f64::max)
}

pub fn hausdorff(a: &ConvexPolygon, b: &ConvexPolygon) -> f64 {
    directed_hausdorff(a, b).max(directed_hausdorff(b, a))
}

/// Intersection of the lines `Re(e^{-iθ₁} z) = h₁` and `Re(e^{-iθ₂} z) = h₂`.
pub fn support_line_intersection(t1: f64, h1: f64, t2: f64, h2: f64) -> Option<C64> {
    let (s1, c1) = t1.sin_cos();
    let (s2, c2) = t2.sin_cos();
    let det = c1 * s2 - s1 * c2;
    if det.abs() < 1e-15 {
        return None;
    }
    let x = (h1 * s2 - s1 * h2) / det;
    let y = (c1 * h2 - h1 * c2) / det;
    Some(C64::new(x, y))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn square() -> ConvexPolygon {
        ConvexPolygon::hull(
            &[c(0.0, 0.0), c(1.0, 0.0), c(1.0, 1.0), c(0.0, 1.0), c(0.5, 0.5), c(0.5, 0.0)],
            1e-14,
        )
    }

    #[test]
    fn hull_drops_interior_and_collinear() {
        let sq = square();
        assert_eq!(sq.len(), 4);
        assert!((sq.area() - 1.0).abs() < 1e-15);
        assert!(sq.is_convex());
    }

    #[test]
    fn degenerate_hulls() {
        let p = ConvexPolygon::hull(&[c(1.0, 1.0), c(1.0, 1.0)], 1e-12);
        assert_eq!(p.len(), 1);
        let s = ConvexPolygon::hull(&[c(-1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0), c(0.3, 0.0)], 1e-12);
        assert_eq!(s.len(), 2);
        assert!((s.distance(c(0.5, 1e-9)) - 1e-9).abs() < 1e-18);
        assert!((s.distance(c(1.01, 0.0)) - 0.01).abs() < 1e-15);
        assert!((p.distance(c(1.0, 2.0)) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn distance_and_nearest_location() {
        let sq = square();
        let (d, loc) = distance_to_convex(sq.vertices(), c(0.25, 0.75));
        assert_eq!(d, 0.0);
        assert!((sq.point_at(loc) - c(0.25, 0.75)).norm() < 1e-15);
        let (d, loc) = distance_to_convex(sq.vertices(), c(2.0, 0.5));
        assert!((d - 1.0).abs() < 1e-15);
        assert!((sq.point_at(loc) - c(1.0, 0.5)).norm() < 1e-15);
        assert!((sq.signed_distance(c(0.5, 0.25)) + 0.25).abs() < 1e-15);
    }

    #[test]
    fn hausdorff_of_nested_squares() {
        let big = ConvexPolygon::hull(&[c(-1.0, -1.0), c(1.0, -1.0), c(1.0, 1.0), c(-1.0, 1.0)], 0.0);
        let small = ConvexPolygon::hull(&[c(-0.5, -0.5), c(0.5, -0.5), c(0.5, 0.5), c(-0.5, 0.5)], 0.0);
        assert_eq!(directed_hausdorff(&small, &big), 0.0);
        assert!((hausdorff(&small, &big) - 0.5 * 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn support_lines_meet_at_vertex() {
        // Square [-1,1]^2: lines at θ = 0 and θ = π/2 meet at 1+i.
        let z = support_line_intersection(0.0, 1.0, std::f64::consts::FRAC_PI_2, 1.0).unwrap();
        assert!((z - c(1.0, 1.0)).norm() < 1e-15);
    }
}
