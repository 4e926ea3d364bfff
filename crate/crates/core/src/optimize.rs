//! Nelder-Mead simplex search for small, smooth, unconstrained problems.

/// Stopping rules for [`nelder_mead`].
#[derive(Debug, Clone, Copy)]
pub struct SimplexOptions {
    /// Stop when `f(worst) - f(best)` falls to this value or below.
    pub f_tol: f64,
    /// Stop when every vertex is within this distance (max-norm) of the best.
    pub x_tol: f64,
    pub max_evals: usize,
}

impl Default for SimplexOptions {
    fn default() -> Self {
        Self {
            f_tol: 1e-12,
            x_tol: 1e-12,
            max_evals: 10_000,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SimplexResult {
    pub x: Vec<f64>,
    pub value: f64,
    pub evals: usize,
    pub converged: bool,
}

/// Minimizes `f` starting from `start`, with the initial simplex spanned by
/// `start + step[i] e_i`.
pub fn nelder_mead<F>(mut f: F, start: &[f64], step: &[f64], opts: SimplexOptions) -> SimplexResult
where
    F: FnMut(&[f64]) -> f64,
{
    let dim = start.len();
    assert_eq!(dim, step.len(), "start and step dimensions differ");
    let (alpha, gamma, rho, sigma) = (1.0, 2.0, 0.5, 0.5);

    let mut evals = 0usize;
    let mut eval = |x: &[f64], evals: &mut usize| {
        *evals += 1;
        let v = f(x);
        if v.is_nan() {
            f64::INFINITY
        } else {
            v
        }
    };

    let mut pts: Vec<Vec<f64>> = Vec::with_capacity(dim + 1);
    pts.push(start.to_vec());
    for i in 0..dim {
        let mut p = start.to_vec();
        p[i] += step[i];
        pts.push(p);
    }
    let mut vals: Vec<f64> = pts.iter().map(|p| eval(p, &mut evals)).collect();
    let mut converged = false;

    while evals < opts.max_evals {
        let mut order: Vec<usize> = (0..=dim).collect();
        order.sort_by(|&a, &b| vals[a].total_cmp(&vals[b]));
        pts = order.iter().map(|&i| pts[i].clone()).collect();
        vals = order.iter().map(|&i| vals[i]).collect();

        let spread = vals[dim] - vals[0];
        let size = pts[1..]
            .iter()
            .flat_map(|p| p.iter().zip(&pts[0]).map(|(a, b)| (a - b).abs()))
            .fold(0.0, f64::max);
        if spread <= opts.f_tol || size <= opts.x_tol {
            converged = true;
            break;
        }

        let mut centroid = vec![0.0; dim];
        for p in &pts[..dim] {
            for (c, v) in centroid.iter_mut().zip(p) {
                *c += v / dim as f64;
            }
        }
        let along = |t: f64, from: &[f64]| -> Vec<f64> {
            centroid
                .iter()
                .zip(from)
                .map(|(c, w)| c + t * (c - w))
                .collect()
        };

        let reflected = along(alpha, &pts[dim]);
        let fr = eval(&reflected, &mut evals);
        if fr < vals[0] {
            let expanded = along(gamma, &pts[dim]);
            let fe = eval(&expanded, &mut evals);
            if fe < fr {
                pts[dim] = expanded;
                vals[dim] = fe;
            } else {
                pts[dim] = reflected;
                vals[dim] = fr;
            }
            continue;
        }
        if fr < vals[dim - 1] {
            pts[dim] = reflected;
            vals[dim] = fr;
            continue;
        }
        let (candidate, fc) = if fr < vals[dim] {
            // outside contraction
            let c: Vec<f64> = centroid
                .iter()
                .zip(&reflected)
                .map(|(m, r)| m + rho * (r - m))
                .collect();
            let fc = eval(&c, &mut evals);
            (c, fc)
        } else {
            let c: Vec<f64> = centroid
                .iter()
                .zip(&pts[dim])
                .map(|(m, w)| m + rho * (w - m))
                .collect();
            let fc = eval(&c, &mut evals);
            (c, fc)
        };
        if fc < vals[dim].min(fr) {
            pts[dim] = candidate;
            vals[dim] = fc;
            continue;
        }
        // shrink toward the best vertex
        let best = pts[0].clone();
        for i in 1..=dim {
            for (x, b) in pts[i].iter_mut().zip(&best) {
                *x = b + sigma * (*x - b);
            }
            vals[i] = eval(&pts[i], &mut evals);
        }
    }

    let best = (0..=dim)
        .min_by(|&a, &b| vals[a].total_cmp(&vals[b]))
        .unwrap_or(0);
    SimplexResult {
        x: pts[best].clone(),
        value: vals[best],
        evals,
        converged,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn rosenbrock_minimum() {
        let r = nelder_mead(
            |x| (1.0 - x[0]).powi(2) + 100.0 * (x[1] - x[0] * x[0]).powi(2),
            &[-1.2, 1.0],
            &[0.5, 0.5],
            SimplexOptions {
                f_tol: 1e-20,
                x_tol: 1e-12,
                max_evals: 5000,
            },
        );
        assert!(r.converged);
        assert_abs_diff_eq!(r.x[0], 1.0, epsilon = 1e-6);
        assert_abs_diff_eq!(r.x[1], 1.0, epsilon = 1e-6);
    }

    #[test]
    fn quadratic_three_dimensions() {
        let r = nelder_mead(
            |x| (x[0] - 0.7).powi(2) + 3.0 * (x[1] + 2.0).powi(2) + 0.5 * (x[2] - 3.0).powi(2),
            &[0.0, 0.0, 0.0],
            &[1.0, 1.0, 1.0],
            SimplexOptions {
                f_tol: 1e-24,
                x_tol: 1e-12,
                max_evals: 10_000,
            },
        );
        assert_abs_diff_eq!(r.x[0], 0.7, epsilon = 1e-8);
        assert_abs_diff_eq!(r.x[1], -2.0, epsilon = 1e-8);
        assert_abs_diff_eq!(r.x[2], 3.0, epsilon = 1e-8);
    }

    #[test]
    fn eval_budget_is_respected() {
        let mut count = 0;
        let r = nelder_mead(
            |x| {
                count += 1;
                x[0].sin() + x[1] * x[1]
            },
            &[0.0, 1.0],
            &[0.1, 0.1],
            SimplexOptions {
                f_tol: 0.0,
                x_tol: 0.0,
                max_evals: 50,
            },
        );
        assert!(!r.converged);
        assert!(r.evals <= 50 + 3);
        assert_eq!(count, r.evals);
    }
}
