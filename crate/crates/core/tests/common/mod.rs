//! Independent reference computations for the integration tests. Nothing
//! here calls the library's solvers or geometry; only its matrix container
//! is used to read entries.

#![allow(dead_code)]

use wprod_core::{CMatrix, C64};

type Dense = Vec<Vec<C64>>;

fn dense(a: &CMatrix) -> Dense {
    (0..a.dim()).map(|i| a.row(i).to_vec()).collect()
}

fn matmul(a: &Dense, b: &Dense) -> Dense {
    let n = a.len();
    let mut c = vec![vec![C64::new(0.0, 0.0); n]; n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i][k];
            for j in 0..n {
                c[i][j] += aik * b[k][j];
            }
        }
    }
    c
}

/// Characteristic polynomial `det(zI - A)` by Faddeev–LeVerrier, as
/// coefficients `[1, c_{n-1}, ..., c_0]` from the leading term down.
pub fn char_poly(a: &CMatrix) -> Vec<C64> {
    let n = a.dim();
    let a = dense(a);
    let mut coeffs = vec![C64::new(1.0, 0.0)];
    // M_k = A M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(A M_k)/k.
    let mut m = vec![vec![C64::new(0.0, 0.0); n]; n];
    for k in 1..=n {
        let prev = *coeffs.last().unwrap();
        let mut next = matmul(&a, &m);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += prev;
        }
        m = next;
        let am = matmul(&a, &m);
        let tr: C64 = (0..n).map(|i| am[i][i]).sum();
        coeffs.push(-tr / k as f64);
    }
    coeffs
}

fn horner(p: &[C64], z: C64) -> C64 {
    p.iter().fold(C64::new(0.0, 0.0), |acc, &c| acc * z + c)
}

/// All roots of a monic polynomial by Durand–Kerner (Weierstrass)
/// iteration, followed by a few Newton polishing steps.
pub fn durand_kerner(p: &[C64]) -> Vec<C64> {
    let n = p.len() - 1;
    if n == 0 {
        return Vec::new();
    }
    let bound = 1.0 + p[1..].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let seed = C64::new(0.4, 0.9);
    let mut z: Vec<C64> = (0..n).map(|k| seed.powu(k as u32) * bound).collect();
    for _ in 0..2000 {
        let mut delta = 0.0f64;
        for i in 0..n {
            let mut den = C64::new(1.0, 0.0);
            for j in 0..n {
                if i != j {
                    den *= z[i] - z[j];
                }
            }
            if den.norm() == 0.0 {
                continue;
            }
            let step = horner(p, z[i]) / den;
            z[i] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-15 * bound {
            break;
        }
    }
    let dp: Vec<C64> = p[..n].iter().enumerate().map(|(k, &c)| c * (n - k) as f64).collect();
    for zi in z.iter_mut() {
        for _ in 0..3 {
            let d = horner(&dp, *zi);
            if d.norm() > 0.0 {
                *zi -= horner(p, *zi) / d;
            }
        }
    }
    z
}

/// Sorted real parts of the characteristic-polynomial roots; meant for
/// Hermitian input.
pub fn hermitian_eigs_oracle(h: &CMatrix) -> Vec<f64> {
    let mut v: Vec<f64> = durand_kerner(&char_poly(h)).iter().map(|z| z.re).collect();
    v.sort_by(f64::total_cmp);
    v
}

fn cross(o: C64, a: C64, b: C64) -> f64 {
    (a - o).re * (b - o).im - (a - o).im * (b - o).re
}

/// Counter-clockwise convex hull (monotone chain).
pub fn hull(points: &[C64]) -> Vec<C64> {
    let mut p = points.to_vec();
    p.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    p.dedup_by(|a, b| (*a - *b).norm() < 1e-14);
    if p.len() < 3 {
        return p;
    }
    let mut h: Vec<C64> = Vec::new();
    for pass in 0..2 {
        let start = h.len();
        let iter: Box<dyn Iterator<Item = &C64>> = if pass == 0 { Box::new(p.iter()) } else { Box::new(p.iter().rev()) };
        for &q in iter {
            while h.len() >= start + 2 && cross(h[h.len() - 2], h[h.len() - 1], q) <= 0.0 {
                h.pop();
            }
            h.push(q);
        }
        h.pop();
    }
    h
}

pub fn segment_distance(p: C64, a: C64, b: C64) -> f64 {
    let d = b - a;
    let len2 = d.norm_sqr();
    let t = if len2 == 0.0 { 0.0 } else { (((p - a) * d.conj()).re / len2).clamp(0.0, 1.0) };
    (p - (a + d * t)).norm()
}

/// Distance from `p` to a convex polygon given counter-clockwise (0 inside).
pub fn polygon_distance(poly: &[C64], p: C64) -> f64 {
    match poly.len() {
        0 => f64::INFINITY,
        1 => (p - poly[0]).norm(),
        2 => segment_distance(p, poly[0], poly[1]),
        n => {
            let inside = (0..n).all(|i| cross(poly[i], poly[(i + 1) % n], p) >= 0.0);
            if inside {
                return 0.0;
            }
            (0..n).map(|i| segment_distance(p, poly[i], poly[(i + 1) % n])).fold(f64::INFINITY, f64::min)
        }
    }
}

/// Hausdorff distance of two convex polygons; for convex sets the extreme
/// distance is attained at a vertex.
pub fn polygon_hausdorff(a: &[C64], b: &[C64]) -> f64 {
    let ab = a.iter().map(|&p| polygon_distance(b, p)).fold(0.0, f64::max);
    let ba = b.iter().map(|&p| polygon_distance(a, p)).fold(0.0, f64::max);
    ab.max(ba)
}

pub const RINGS: usize = 8;
pub const PER_RING: usize = 64;

/// `RINGS × PER_RING` points filling a convex polygon: the perimeter
/// sampled by arc length, shrunk toward the vertex centroid.
pub fn fill_polygon(poly: &[C64]) -> Vec<C64> {
    let n = poly.len();
    let c: C64 = poly.iter().sum::<C64>() / n as f64;
    let perimeter = if n < 2 {
        Vec::from([poly[0]; PER_RING])
    } else {
        let edges: Vec<(C64, C64)> = (0..n).map(|i| (poly[i], poly[(i + 1) % n])).collect();
        let total: f64 = edges.iter().map(|(a, b)| (b - a).norm()).sum();
        (0..PER_RING)
            .map(|k| {
                let mut s = total * k as f64 / PER_RING as f64;
                for &(a, b) in &edges {
                    let l = (b - a).norm();
                    if s <= l && l > 0.0 {
                        return a + (b - a) * (s / l);
                    }
                    s -= l;
                }
                poly[0]
            })
            .collect()
    };
    ring_fill(c, &perimeter)
}

fn ring_fill(c: C64, perimeter: &[C64]) -> Vec<C64> {
    let mut out = Vec::with_capacity(RINGS * perimeter.len());
    for r in 0..RINGS {
        let s = 1.0 - r as f64 / RINGS as f64;
        out.extend(perimeter.iter().map(|&p| c + (p - c) * s));
    }
    out
}

/// Exact numerical range of a rank-one matrix: the closed elliptical disk
/// with foci 0 and `tr B` and major axis `||B||_F`.
pub fn rank_one_ellipse(b: &CMatrix) -> (C64, C64, f64, f64) {
    let t: C64 = (0..b.dim()).map(|i| b[(i, i)]).sum();
    let fro = b.as_slice().iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let major = fro / 2.0;
    let minor = ((fro * fro - t.norm_sqr()).max(0.0)).sqrt() / 2.0;
    let dir = if t.norm() > 0.0 { t / t.norm() } else { C64::new(1.0, 0.0) };
    (t / 2.0, dir, major, minor)
}

pub fn fill_ellipse(center: C64, dir: C64, major: f64, minor: f64) -> Vec<C64> {
    let perimeter: Vec<C64> = (0..PER_RING)
        .map(|k| {
            let t = std::f64::consts::TAU * k as f64 / PER_RING as f64;
            center + dir * C64::new(major * t.cos(), minor * t.sin())
        })
        .collect();
    ring_fill(center, &perimeter)
}

/// Smallest `|ab - λ|` over the two sample clouds.
pub fn brute_force_product_distance(sa: &[C64], sb: &[C64], lambda: C64) -> f64 {
    let mut best = f64::INFINITY;
    for &a in sa {
        for &b in sb {
            best = best.min((a * b - lambda).norm());
        }
    }
    best
}

pub fn trace_product(a: &CMatrix, b: &CMatrix) -> C64 {
    let n = a.dim();
    let mut t = C64::new(0.0, 0.0);
    for i in 0..n {
        for k in 0..n {
            t += a[(i, k)] * b[(k, i)];
        }
    }
    t
}

/// Greedy matching of two multisets; the largest matched distance.
pub fn multiset_distance(a: &[C64], b: &[C64]) -> f64 {
    assert_eq!(a.len(), b.len());
    let mut used = vec![false; b.len()];
    let mut worst = 0.0f64;
    for &x in a {
        let (j, d) = b
            .iter()
            .enumerate()
            .filter(|(j, _)| !used[*j])
            .map(|(j, &y)| (j, (x - y).norm()))
            .min_by(|p, q| p.1.total_cmp(&q.1))
            .unwrap();
        used[j] = true;
        worst = worst.max(d);
    }
    worst
}
