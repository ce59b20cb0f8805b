//! Acceptance checks. Runs as a plain binary under `cargo test`, prints one
//! PASS/FAIL line per criterion and exits nonzero if any fails.

mod common;

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use wprod_core::classify::is_psd_multiple;
use wprod_core::matcore::{eig_general, eig_hermitian};
use wprod_core::numrange::{compute_range, radii, Membership};
use wprod_core::productset::{containment_check, product_convexity_probe, Containment};
use wprod_core::random::{random_complex_matrix, random_hermitian, random_normal_with_spectrum, random_psd_multiple, seeded};
use wprod_core::repro::{repro_cited_inclusions, roots_of_unity, truncation_certificate};
use wprod_core::witness::{falsify, random_rank_one_search, verify_certificate, witness_corner};
use wprod_core::{CMatrix, C64};

type Outcome = Result<String, String>;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn intro_counterexample() -> Outcome {
    let a = CMatrix::from_real_diag(&[1.0, -1.0]);
    let b = CMatrix::from_real_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]);
    let want = [c(0.0, 1.0), c(0.0, -1.0)];
    let eig = eig_general(&(&a * &b)).map_err(|e| e.to_string())?.eigenvalues;
    let err = multiset_distance(&eig, &want);
    ensure(err <= 1e-10, || format!("σ(AB) off by {err:.3e}"))?;
    let report = containment_check(&a, &b, 1e-6).map_err(|e| e.to_string())?;
    let mut worst: f64 = 0.0;
    for ev in &report.eigen_verdicts {
        let v = &ev.verdict;
        ensure(v.verdict == Membership::Out, || format!("{} is {:?}", ev.lambda, v.verdict))?;
        worst = worst.max((v.distance_estimate - 1.0).abs());
    }
    ensure(worst <= 1e-3, || format!("distance off by {worst:.3e}"))?;
    Ok(format!("σ(AB) error {err:.1e}, both Out, |distance - 1| ≤ {worst:.1e}"))
}

fn additive_formula() -> Outcome {
    let mut worst: f64 = 0.0;
    for (m, eps) in [(4.0, 0.01), (1.0, 1.0), (9.0, 0.04)] {
        let sum = CMatrix::from_real_rows(&[vec![0.0, m], vec![eps, 0.0]]);
        let eig = eig_general(&sum).map_err(|e| e.to_string())?.eigenvalues;
        let r = f64::sqrt(m * eps);
        worst = worst.max(multiset_distance(&eig, &[c(r, 0.0), c(-r, 0.0)]));
    }
    ensure(worst <= 1e-9, || format!("max error {worst:.3e}"))?;
    Ok(format!("max error {worst:.1e}"))
}

fn psd_containment() -> Outcome {
    let mut rng = seeded(3);
    let mut borderline = 0;
    for t in 0..100 {
        let n = 1 + t % 6;
        let a = random_psd_multiple(&mut rng, n, 0.0, 2.0);
        let b = random_complex_matrix(&mut rng, n);
        let report = containment_check(&a, &b, 1e-6).map_err(|e| e.to_string())?;
        ensure(report.overall == Containment::Contained, || format!("trial {t} (n={n}): {:?}", report.overall))?;
        let probe = product_convexity_probe(&a, &b, 100).map_err(|e| e.to_string())?;
        ensure(probe.convex, || format!("trial {t} (n={n}): product set reported non-convex"))?;
        borderline += probe.borderline_midpoints;
    }
    Ok(format!("100/100 Contained and convex ({borderline} borderline midpoints)"))
}

fn radialoid_necessity() -> Outcome {
    let a = CMatrix::from_real_rows(&[vec![0.0, 2.0], vec![0.0, 0.0]]);
    let r = radii(&a, 720, 1e-8).map_err(|e| e.to_string())?;
    let dev = (r.w - 1.0).abs().max(r.r.abs()).max((r.norm - 2.0).abs());
    ensure(dev <= 1e-8, || format!("(w, r, norm) = ({}, {}, {})", r.w, r.r, r.norm))?;
    let cert = random_rank_one_search(&a, 200, 0)
        .map_err(|e| e.to_string())?
        .ok_or("no witness within 200 trials")?;
    verify_certificate(&a, &cert).map_err(|e| e.to_string())?;
    Ok(format!(
        "(w, r, norm) within {dev:.1e}; witness from {} λ = {:.4}{:+.4}i, margin {:.4}",
        cert.parameters.trial.map_or("the singular-pair hint".to_string(), |t| format!("trial {t}")),
        cert.lambda.re,
        cert.lambda.im,
        cert.margin()
    ))
}

fn witness_soundness() -> Outcome {
    let mut rng = seeded(5);
    let mut min_ratio = f64::INFINITY;
    let mut done = 0;
    while done < 100 {
        let n = 2 + done % 3;
        let vals: Vec<C64> = (0..n).map(|_| wprod_core::random::complex_gaussian(&mut rng)).collect();
        let a = random_normal_with_spectrum(&mut rng, &vals);
        if is_psd_multiple(&a, 1e-8).map_err(|e| e.to_string())?.0 {
            continue;
        }
        let cert = falsify(&a).map_err(|e| format!("matrix {done}: {e}"))?.ok_or_else(|| format!("matrix {done}: no certificate"))?;
        let t = trace_product(&a, &cert.b);
        ensure((t - cert.lambda).norm() <= 1e-9 * (1.0 + t.norm()), || format!("matrix {done}: λ ≠ tr(AB)"))?;
        let margin = cert.margin();
        ensure(margin > 0.0, || format!("matrix {done}: nonpositive margin"))?;

        // Exact sets: W(A) is the hull of the prescribed spectrum and W(B)
        // the ellipse of the rank-one B.
        let sa = fill_polygon(&hull(&vals));
        let (center, dir, major, minor) = rank_one_ellipse(&cert.b);
        let sb = fill_ellipse(center, dir, major, minor);
        let brute = brute_force_product_distance(&sa, &sb, cert.lambda);
        ensure(brute >= margin / 2.0, || {
            format!("matrix {done}: false certificate (brute force {brute:.3e} < margin/2 {:.3e})", margin / 2.0)
        })?;
        min_ratio = min_ratio.min(brute / margin);
        done += 1;
    }
    Ok(format!("100/100 certificates confirmed; min brute/margin = {min_ratio:.3}"))
}

fn corner_fidelity() -> Outcome {
    let a = CMatrix::from_diag(&[c(1.0, 0.0), c(0.5, 0.4)]);
    let cert = witness_corner(&a).map_err(|e| e.to_string())?.ok_or("no corner certificate")?;
    let alpha1 = PI - 0.8f64.atan();
    let r1 = (0.5f64 * 0.5 + 0.4 * 0.4).sqrt();
    let theta = cert.parameters.theta.ok_or("no θ recorded")?;
    let (sa, ca) = alpha1.sin_cos();
    let (st, ct) = theta.sin_cos();
    let closed = c(2.0 * sa * ct + r1 * st, 2.0 * ca * ct + r1 * ct);
    let err = (cert.lambda - closed).norm();
    ensure(err <= 1e-9, || format!("λ = {} vs closed form {closed} (error {err:.3e})", cert.lambda))?;
    // Strict inequality: the eigenvalue lies outside the unit-disk cone the
    // product set occupies, sinα₁cosθ + r₁sinθ > sqrt((sinα₁cosθ)² + sin²θ).
    let s = sa * ct;
    let slack = s + r1 * st - (s * s + st * st).sqrt();
    ensure(slack > 0.0 && theta > 0.0 && theta < PI / 2.0, || format!("inequality fails: slack {slack:.3e}"))?;
    verify_certificate(&a, &cert).map_err(|e| e.to_string())?;
    Ok(format!("|λ - closed form| = {err:.1e}, θ = {theta:.6}, slack {slack:.4e}, r₁ = {r1:.6}"))
}

fn truncation_decay() -> Outcome {
    let ns = [4usize, 8, 16, 32, 90, 360];
    let mut margins = Vec::new();
    for n in ns {
        let cert = truncation_certificate(&roots_of_unity(n))
            .map_err(|e| format!("n={n}: {e}"))?
            .ok_or_else(|| format!("n={n}: no certificate"))?;
        margins.push(cert.margin());
    }
    let decreasing = margins.windows(2).all(|w| w[1] < w[0]) && margins.iter().all(|&m| m > 0.0);
    let ratio = margins[5] / margins[0];
    let listing: Vec<String> = ns.iter().zip(&margins).map(|(n, m)| format!("{n}:{m:.3e}")).collect();
    ensure(decreasing && ratio < 0.1, || format!("margins {}", listing.join(" ")))?;
    Ok(format!("margins {}; ratio {ratio:.2e}", listing.join(" ")))
}

fn cited_inclusions() -> Outcome {
    let r = repro_cited_inclusions(50, 8).map_err(|e| e.to_string())?;
    let failed: Vec<String> = r.failed_claims().map(|c| format!("{}: {}", c.description, c.observed)).collect();
    ensure(failed.is_empty() && r.overall_pass, || failed.join("; "))?;
    let detail: Vec<String> = r.claims.iter().map(|c| c.observed.clone()).collect();
    Ok(detail.join("; "))
}

fn numerics_oracles() -> Outcome {
    let mut rng = seeded(9);
    let mut eig_worst: f64 = 0.0;
    for t in 0..200 {
        let n = 1 + t % 6;
        let h = random_hermitian(&mut rng, n);
        let lib: Vec<f64> = eig_hermitian(&h).map_err(|e| e.to_string())?.iter().map(|p| p.value).collect();
        let want = hermitian_eigs_oracle(&h);
        for (x, y) in lib.iter().zip(&want) {
            eig_worst = eig_worst.max((x - y).abs());
        }
    }
    ensure(eig_worst <= 1e-8, || format!("Hermitian eigenvalue error {eig_worst:.3e}"))?;

    let m = 720;
    let mut range_worst: f64 = 0.0;
    for t in 0..60 {
        let n = 2 + t % 5;
        let vals: Vec<C64> = if t % 10 == 0 {
            roots_of_unity(n + 3).iter().map(|z| z + 1.0).collect()
        } else {
            (0..n).map(|_| wprod_core::random::complex_gaussian(&mut rng)).collect()
        };
        let a = random_normal_with_spectrum(&mut rng, &vals);
        let r = compute_range(&a, m).map_err(|e| e.to_string())?;
        let h = hull(&vals);
        let bound = 10.0 * r.operator_norm / (m * m) as f64;
        let d = polygon_hausdorff(r.outer_polygon.vertices(), &h).max(polygon_hausdorff(r.inner_polygon.vertices(), &h));
        ensure(d <= bound, || format!("trial {t}: Hausdorff {d:.3e} > {bound:.3e}"))?;
        range_worst = range_worst.max(d / bound);
    }
    Ok(format!("eigenvalue error {eig_worst:.1e}; worst range gap {range_worst:.2} of the bound"))
}

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Duration,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let criteria = [
        Criterion { id: 1, name: "intro counterexample", limit: secs(1), run: intro_counterexample },
        Criterion { id: 2, name: "additive formula", limit: secs(1), run: additive_formula },
        Criterion { id: 3, name: "PSD containment and convexity", limit: secs(120), run: psd_containment },
        Criterion { id: 4, name: "radialoid necessity", limit: secs(10), run: radialoid_necessity },
        Criterion { id: 5, name: "witness soundness", limit: secs(300), run: witness_soundness },
        Criterion { id: 6, name: "corner construction fidelity", limit: secs(5), run: corner_fidelity },
        Criterion { id: 7, name: "truncation decay", limit: secs(120), run: truncation_decay },
        Criterion { id: 8, name: "cited inclusions", limit: secs(60), run: cited_inclusions },
        Criterion { id: 9, name: "numerics oracles", limit: secs(60), run: numerics_oracles },
    ];
    let mut failures = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let (pass, detail) = match outcome {
            Ok(d) if elapsed <= c.limit => (true, d),
            Ok(d) => (false, format!("{d}; exceeded {:.0?} limit", c.limit)),
            Err(e) => (false, e),
        };
        if !pass {
            failures += 1;
        }
        println!(
            "{} [{}] {} ({:.2} s) {}",
            if pass { "PASS" } else { "FAIL" },
            c.id,
            c.name,
            elapsed.as_secs_f64(),
            detail
        );
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
