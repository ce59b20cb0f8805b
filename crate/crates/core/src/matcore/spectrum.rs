use super::C64;

/// Multiplicity-aware comparison of two eigenvalue multisets.
///
/// Pairs are matched greedily by globally smallest distance. Returns the
/// largest matched distance when the sets have equal size and every matched
/// pair is within `tol`, `None` otherwise.
pub fn match_multisets(a: &[C64], b: &[C64], tol: f64) -> Option<f64> {
    if a.len() != b.len() {
        return None;
    }
    let mut edges: Vec<(f64, usize, usize)> = Vec::with_capacity(a.len() * b.len());
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            edges.push(((x - y).norm(), i, j));
        }
    }
    edges.sort_by(|p, q| p.0.total_cmp(&q.0).then(p.1.cmp(&q.1)).then(p.2.cmp(&q.2)));
    let mut used_a = vec![false; a.len()];
    let mut used_b = vec![false; b.len()];
    let mut worst = 0.0_f64;
    let mut matched = 0;
    for (d, i, j) in edges {
        if used_a[i] || used_b[j] {
            continue;
        }
        if d > tol {
            return None;
        }
        used_a[i] = true;
        used_b[j] = true;
        worst = worst.max(d);
        matched += 1;
    }
    (matched == a.len()).then_some(worst)
}

/// Drops values with modulus at most `zero_tol`.
pub fn nonzero_part(values: &[C64], zero_tol: f64) -> Vec<C64> {
    values.iter().copied().filter(|z| z.norm() > zero_tol).collect()
}
