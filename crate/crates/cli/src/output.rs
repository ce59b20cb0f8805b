use std::fmt::Write as _;
use std::io::{self, Write};
use std::path::Path;

use tempfile::NamedTempFile;

use wprod_core::classify::ClassificationReport;
use wprod_core::numrange::RangeApprox;
use wprod_core::productset::ContainmentReport;
use wprod_core::repro::ReproResult;

use crate::{fmt_c, WitnessOutcome};

/// Writes to `path` via a temporary file in the same directory and a rename,
/// so readers never see a partial file. `None` means stdout.
pub fn write_output(path: Option<&Path>, body: &str) -> io::Result<()> {
    let Some(path) = path else {
        let mut out = io::stdout().lock();
        out.write_all(body.as_bytes())?;
        return out.flush();
    };
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = NamedTempFile::new_in(dir)?;
    tmp.write_all(body.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

pub trait Render {
    fn render_text(&self) -> String;
}

impl Render for RangeApprox {
    fn render_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "numerical range, {} angles", self.m);
        let _ = writeln!(s, "  w(A) estimate    {:.9}", self.scale);
        let _ = writeln!(s, "  ||A||            {:.9}", self.operator_norm);
        let _ = writeln!(s, "  inner vertices   {}", self.inner_polygon.len());
        let _ = writeln!(s, "  outer vertices   {}", self.outer_polygon.len());
        let _ = writeln!(s, "  Hausdorff gap    {:.3e}", self.hausdorff_gap);
        s
    }
}

impl Render for ContainmentReport {
    fn render_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "overall: {:?}", self.overall);
        for ev in &self.eigen_verdicts {
            let v = &ev.verdict;
            let _ = write!(s, "  λ = {:<28} {:<10?} distance {:.6e}", fmt_c(ev.lambda), v.verdict, v.distance_estimate);
            if let Some(m) = v.certificate_margin {
                let _ = write!(s, "  certified margin {m:.6e}");
            }
            s.push('\n');
        }
        let _ = writeln!(s, "max violation distance: {:.6e}", self.max_violation_distance);
        s
    }
}

impl Render for ClassificationReport {
    fn render_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "PSD multiple        {}", self.is_psd_multiple);
        if let Some(p) = self.phase {
            let _ = writeln!(s, "phase               {p:.9}");
        }
        let _ = writeln!(s, "normality residual  {:.3e}", self.normality_residual);
        let r = &self.radii;
        let _ = writeln!(s, "w / r / ||A||       {:.9} / {:.9} / {:.9}", r.w, r.r, r.norm);
        let _ = writeln!(s, "radialoid           {}", r.radialoid);
        if let Some(mu) = self.w_attaining_mu {
            let _ = writeln!(s, "peak eigenvalue     {}", fmt_c(mu));
        }
        let _ = writeln!(s, "corner hypothesis   {:?}", self.corner_hypothesis);
        let _ = writeln!(s, "polygon case        {}", self.polygon_case);
        let _ = writeln!(s, "isolated peak case  {}", self.isolated_peak_case);
        s
    }
}

impl Render for WitnessOutcome {
    fn render_text(&self) -> String {
        match self {
            WitnessOutcome::Certificate { seed, certificate: c } => {
                let mut s = String::new();
                let _ = writeln!(s, "certificate found ({:?}, seed {seed})", c.construction);
                let _ = writeln!(s, "  λ = {}", fmt_c(c.lambda));
                let _ = writeln!(s, "  certified margin {:.6e}", c.margin());
                let _ = writeln!(s, "  B = {}", c.b.to_json());
                s
            }
            WitnessOutcome::PsdMultiple { .. } => {
                "A is a multiple of a PSD matrix; no witness exists\n".to_string()
            }
            WitnessOutcome::Inconclusive { seed, trials } => {
                format!("no certificate after the constructions and {trials} random trials (seed {seed})\n")
            }
        }
    }
}

impl Render for ReproResult {
    fn render_text(&self) -> String {
        let mut s = String::new();
        let status = if self.overall_pass { "PASS" } else { "FAIL" };
        let _ = writeln!(s, "{} {}", status, self.example_id);
        if let Some(seed) = self.seed {
            let _ = writeln!(s, "  seed {seed}");
        }
        for c in &self.claims {
            let mark = if c.pass { "ok  " } else { "FAIL" };
            let _ = writeln!(s, "  [{mark}] {}", c.description);
            let _ = writeln!(s, "         expected {}; observed {} (tol {:e})", c.expected, c.observed, c.tolerance);
        }
        if let Some(n) = &self.note {
            let _ = writeln!(s, "  note: {n}");
        }
        s
    }
}

impl Render for Vec<ReproResult> {
    fn render_text(&self) -> String {
        self.iter().map(|r| r.render_text()).collect()
    }
}
