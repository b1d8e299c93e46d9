//! Minimal derivative-free simplex minimizer used by the entanglement
//! oracle. Deterministic for a fixed starting point: no randomness, stable
//! ordering, fixed coefficient schedule (reflection 1, expansion 2,
//! contraction 1/2, shrink 1/2).

#[derive(Debug, Clone)]
pub(crate) struct NmResult {
    pub x: Vec<f64>,
    pub value: f64,
    pub converged: bool,
}

pub(crate) fn nelder_mead<F>(
    f: &mut F,
    x0: &[f64],
    step: f64,
    max_iters: usize,
    ftol: f64,
) -> NmResult
where
    F: FnMut(&[f64]) -> f64,
{
    let n = x0.len();
    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n + 1);
    simplex.push((x0.to_vec(), f(x0)));
    for i in 0..n {
        let mut x = x0.to_vec();
        x[i] += step;
        let v = f(&x);
        simplex.push((x, v));
    }

    let mut converged = false;
    for _ in 0..max_iters {
        simplex.sort_by(|a, b| a.1.partial_cmp(&b.1).expect("objective returned NaN"));
        if simplex[n].1 - simplex[0].1 <= ftol {
            converged = true;
            break;
        }

        // Centroid of all points but the worst.
        let mut centroid = vec![0.0; n];
        for (x, _) in simplex.iter().take(n) {
            for (c, xi) in centroid.iter_mut().zip(x) {
                *c += xi / n as f64;
            }
        }
        let worst = simplex[n].clone();
        let point = |coef: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(&worst.0)
                .map(|(c, w)| c + coef * (c - w))
                .collect()
        };

        let reflected = point(1.0);
        let fr = f(&reflected);
        if fr < simplex[0].1 {
            let expanded = point(2.0);
            let fe = f(&expanded);
            simplex[n] = if fe < fr { (expanded, fe) } else { (reflected, fr) };
            continue;
        }
        if fr < simplex[n - 1].1 {
            simplex[n] = (reflected, fr);
            continue;
        }
        let contracted = if fr < worst.1 { point(0.5) } else { point(-0.5) };
        let fc = f(&contracted);
        if fc < worst.1.min(fr) {
            simplex[n] = (contracted, fc);
            continue;
        }
        // Shrink toward the best point.
        let best = simplex[0].0.clone();
        for entry in simplex.iter_mut().skip(1) {
            for (xi, bi) in entry.0.iter_mut().zip(&best) {
                *xi = bi + 0.5 * (*xi - bi);
            }
            entry.1 = f(&entry.0);
        }
    }

    simplex.sort_by(|a, b| a.1.partial_cmp(&b.1).expect("objective returned NaN"));
    NmResult {
        x: simplex[0].0.clone(),
        value: simplex[0].1,
        converged,
    }
}
