//! Minimal deterministic SVG writer for sets in the complex plane.
//!
//! Coordinates are printed with a fixed number of decimals so the same
//! inputs always give byte-identical files.

use std::fmt::Write;

use wprod_core::numrange::Membership;
use wprod_core::C64;

const WIDTH: f64 = 640.0;
/// Grid lines are drawn at integers unless that would give more than this
/// many lines per axis, in which case the step grows by powers of ten.
const MAX_GRID_LINES: f64 = 40.0;

pub struct Figure {
    title: String,
    polygons: Vec<(Vec<C64>, &'static str, bool)>,
    clouds: Vec<(Vec<C64>, &'static str)>,
    markers: Vec<(C64, &'static str, String)>,
}

pub fn verdict_color(m: Membership) -> &'static str {
    match m {
        Membership::In => "#1a9850",
        Membership::Out => "#d73027",
        Membership::Borderline => "#fc8d59",
    }
}

impl Figure {
    pub fn new(title: impl Into<String>) -> Self {
        Figure {
            title: title.into(),
            polygons: Vec::new(),
            clouds: Vec::new(),
            markers: Vec::new(),
        }
    }

    /// Closed boundary polyline; `dashed` for secondary outlines.
    pub fn polygon(&mut self, vertices: &[C64], color: &'static str, dashed: bool) -> &mut Self {
        self.polygons.push((vertices.to_vec(), color, dashed));
        self
    }

    pub fn cloud(&mut self, points: &[C64], color: &'static str) -> &mut Self {
        self.clouds.push((points.to_vec(), color));
        self
    }

    pub fn marker(&mut self, z: C64, color: &'static str, label: impl Into<String>) -> &mut Self {
        self.markers.push((z, color, label.into()));
        self
    }

    fn bbox(&self) -> (f64, f64, f64, f64) {
        let pts = self
            .polygons
            .iter()
            .flat_map(|p| p.0.iter())
            .chain(self.clouds.iter().flat_map(|c| c.0.iter()))
            .chain(self.markers.iter().map(|m| &m.0));
        let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
        for z in pts.filter(|z| z.re.is_finite() && z.im.is_finite()) {
            x0 = x0.min(z.re);
            x1 = x1.max(z.re);
            y0 = y0.min(z.im);
            y1 = y1.max(z.im);
        }
        if x0 > x1 {
            return (-1.0, 1.0, -1.0, 1.0);
        }
        // Degenerate extents (points, segments) get a unit-sized frame.
        let span = (x1 - x0).max(y1 - y0).max(1e-9);
        let pad_x = if x1 - x0 < 1e-3 * span { 0.5 * span } else { 0.0 };
        let pad_y = if y1 - y0 < 1e-3 * span { 0.5 * span } else { 0.0 };
        let (x0, x1, y0, y1) = (x0 - pad_x, x1 + pad_x, y0 - pad_y, y1 + pad_y);
        let (cx, cy) = ((x0 + x1) / 2.0, (y0 + y1) / 2.0);
        let (hx, hy) = (0.55 * (x1 - x0), 0.55 * (y1 - y0));
        (cx - hx, cx + hx, cy - hy, cy + hy)
    }

    pub fn render(&self) -> String {
        let (x0, x1, y0, y1) = self.bbox();
        let scale = WIDTH / (x1 - x0);
        let height = ((y1 - y0) * scale).round().max(1.0);
        let px = |z: C64| ((z.re - x0) * scale, (y1 - z.im) * scale);

        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH:.0}" height="{height:.0}" viewBox="0 0 {WIDTH:.0} {height:.0}">"#
        );
        let _ = writeln!(s, "<title>{}</title>", escape(&self.title));
        let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);

        let step = grid_step((x1 - x0).max(y1 - y0));
        s.push_str("<g stroke=\"#dddddd\" stroke-width=\"0.5\">\n");
        let mut k = (x0 / step).ceil() as i64;
        while (k as f64) * step <= x1 {
            let (x, _) = px(C64::new(k as f64 * step, 0.0));
            let _ = writeln!(s, r#"<line x1="{x:.3}" y1="0" x2="{x:.3}" y2="{height:.0}"/>"#);
            k += 1;
        }
        let mut k = (y0 / step).ceil() as i64;
        while (k as f64) * step <= y1 {
            let (_, y) = px(C64::new(0.0, k as f64 * step));
            let _ = writeln!(s, r#"<line x1="0" y1="{y:.3}" x2="{WIDTH:.0}" y2="{y:.3}"/>"#);
            k += 1;
        }
        s.push_str("</g>\n");

        s.push_str("<g stroke=\"#555555\" stroke-width=\"1\">\n");
        if x0 <= 0.0 && 0.0 <= x1 {
            let (x, _) = px(C64::new(0.0, 0.0));
            let _ = writeln!(s, r#"<line x1="{x:.3}" y1="0" x2="{x:.3}" y2="{height:.0}"/>"#);
        }
        if y0 <= 0.0 && 0.0 <= y1 {
            let (_, y) = px(C64::new(0.0, 0.0));
            let _ = writeln!(s, r#"<line x1="0" y1="{y:.3}" x2="{WIDTH:.0}" y2="{y:.3}"/>"#);
        }
        s.push_str("</g>\n");

        for (pts, color) in &self.clouds {
            let _ = writeln!(s, r#"<g fill="{color}" fill-opacity="0.25" stroke="none">"#);
            for &z in pts {
                let (x, y) = px(z);
                let _ = writeln!(s, r#"<circle cx="{x:.3}" cy="{y:.3}" r="1.5"/>"#);
            }
            s.push_str("</g>\n");
        }

        for (pts, color, dashed) in &self.polygons {
            if pts.is_empty() {
                continue;
            }
            let mut coords: Vec<String> = pts.iter().map(|&z| px(z)).map(|(x, y)| format!("{x:.3},{y:.3}")).collect();
            coords.push(coords[0].clone());
            let dash = if *dashed { r#" stroke-dasharray="4 3""# } else { "" };
            let _ = writeln!(
                s,
                r#"<polyline class="boundary" points="{}" fill="none" stroke="{color}" stroke-width="1.5"{dash}/>"#,
                coords.join(" ")
            );
        }

        for (z, color, label) in &self.markers {
            let (x, y) = px(*z);
            let _ = writeln!(
                s,
                r#"<circle class="marker" cx="{x:.3}" cy="{y:.3}" r="4" fill="{color}" stroke="black" stroke-width="0.5"><title>{}</title></circle>"#,
                escape(label)
            );
        }
        s.push_str("</svg>\n");
        s
    }
}

fn grid_step(span: f64) -> f64 {
    let mut step = 1.0;
    while span / step > MAX_GRID_LINES {
        step *= 10.0;
    }
    step
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
