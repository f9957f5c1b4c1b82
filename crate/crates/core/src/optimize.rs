//! Derivative-free minimization in two variables.

/// Outcome of a [`nelder_mead`] run.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Minimum {
    pub point: [f64; 2],
    pub value: f64,
    pub converged: bool,
}

/// Nelder–Mead simplex search from `start` with initial edge lengths `step`.
/// Stops once the simplex fits in a box of side `tol` or after `max_iter`
/// iterations.
pub(crate) fn nelder_mead<F>(f: F, start: [f64; 2], step: [f64; 2], tol: f64, max_iter: usize) -> Minimum
where
    F: Fn([f64; 2]) -> f64,
{
    let mut simplex = [start, [start[0] + step[0], start[1]], [start[0], start[1] + step[1]]];
    let mut values = simplex.map(&f);

    for _ in 0..max_iter {
        let mut order = [0usize, 1, 2];
        order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
        simplex = order.map(|i| simplex[i]);
        values = order.map(|i| values[i]);

        let spread = (0..2)
            .map(|d| {
                let lo = simplex.iter().map(|p| p[d]).fold(f64::INFINITY, f64::min);
                let hi = simplex.iter().map(|p| p[d]).fold(f64::NEG_INFINITY, f64::max);
                hi - lo
            })
            .fold(0.0, f64::max);
        if spread < tol {
            return Minimum { point: simplex[0], value: values[0], converged: true };
        }

        let centroid = [(simplex[0][0] + simplex[1][0]) / 2.0, (simplex[0][1] + simplex[1][1]) / 2.0];
        let along =
            |t: f64| [centroid[0] + t * (simplex[2][0] - centroid[0]), centroid[1] + t * (simplex[2][1] - centroid[1])];

        let reflected = along(-1.0);
        let fr = f(reflected);
        if fr < values[0] {
            let expanded = along(-2.0);
            let fe = f(expanded);
            if fe < fr {
                simplex[2] = expanded;
                values[2] = fe;
            } else {
                simplex[2] = reflected;
                values[2] = fr;
            }
            continue;
        }
        if fr < values[1] {
            simplex[2] = reflected;
            values[2] = fr;
            continue;
        }
        let (contracted, fc) = if fr < values[2] {
            let p = along(-0.5);
            (p, f(p))
        } else {
            let p = along(0.5);
            (p, f(p))
        };
        if fc < values[2].min(fr) {
            simplex[2] = contracted;
            values[2] = fc;
            continue;
        }
        for k in 1..3 {
            simplex[k] = [
                simplex[0][0] + 0.5 * (simplex[k][0] - simplex[0][0]),
                simplex[0][1] + 0.5 * (simplex[k][1] - simplex[0][1]),
            ];
            values[k] = f(simplex[k]);
        }
    }

    let best = (0..3).min_by(|&a, &b| values[a].total_cmp(&values[b])).unwrap_or(0);
    Minimum { point: simplex[best], value: values[best], converged: false }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_quadratic_minimum() {
        let m = nelder_mead(|[x, y]| (x - 1.0).powi(2) + 3.0 * (y + 2.0).powi(2), [0.0, 0.0], [0.5, 0.5], 1e-9, 5000);
        assert!(m.converged);
        assert!((m.point[0] - 1.0).abs() < 1e-6 && (m.point[1] + 2.0).abs() < 1e-6);
    }

    #[test]
    fn flat_direction_still_converges() {
        let m = nelder_mead(|[x, _]| (x - 0.3).powi(2), [0.0, 0.0], [0.1, 0.1], 1e-7, 5000);
        assert!(m.converged);
        assert!((m.point[0] - 0.3).abs() < 1e-6);
    }
}
