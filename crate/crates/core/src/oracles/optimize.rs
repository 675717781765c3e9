//! One-dimensional minimization and a through-origin linear fit.

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Minimizes `f` on [lo, hi]: a coarse scan of `scan_points` samples picks
/// the best bracket, then golden-section search shrinks it below `tol`.
/// Returns (x*, f(x*)).
pub fn golden_section_min<F: FnMut(f64) -> f64>(
    mut f: F,
    lo: f64,
    hi: f64,
    scan_points: usize,
    tol: f64,
) -> (f64, f64) {
    let n = scan_points.max(3);
    let step = (hi - lo) / (n - 1) as f64;
    let mut best = (lo, f(lo));
    let mut best_k = 0;
    for k in 1..n {
        let x = if k == n - 1 { hi } else { lo + step * k as f64 };
        let fx = f(x);
        if fx < best.1 {
            best = (x, fx);
            best_k = k;
        }
    }
    let mut a = if best_k == 0 { lo } else { lo + step * (best_k - 1) as f64 };
    let mut b = if best_k == n - 1 { hi } else { lo + step * (best_k + 1) as f64 };

    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while (b - a).abs() > tol {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    let x = 0.5 * (a + b);
    let fx = f(x);
    // The scan may already hold a lower value when f is flat to rounding.
    [(x, fx), (c, fc), (d, fd), best]
        .into_iter()
        .fold((x, fx), |acc, p| if p.1 < acc.1 { p } else { acc })
}

/// Least-squares slope of y = C·x through the origin and the relative
/// residual ‖y − Cx‖/‖y‖ (zero when y vanishes).
pub fn fit_through_origin(x: &[f64], y: &[f64]) -> (f64, f64) {
    let sxx: f64 = x.iter().map(|v| v * v).sum();
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| a * b).sum();
    let slope = if sxx > 0.0 { sxy / sxx } else { 0.0 };
    let ry: f64 = x.iter().zip(y).map(|(a, b)| (b - slope * a).powi(2)).sum::<f64>().sqrt();
    let ny: f64 = y.iter().map(|v| v * v).sum::<f64>().sqrt();
    let residual = if ny > 0.0 { ry / ny } else { 0.0 };
    (slope, residual)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn finds_interior_minimum() {
        let (x, fx) = golden_section_min(|x| (x - 0.3141).powi(2), 0.0, 1.0, 64, 1e-10);
        assert_abs_diff_eq!(x, 0.3141, epsilon = 1e-8);
        assert_abs_diff_eq!(fx, 0.0, epsilon = 1e-18);
    }

    #[test]
    fn finds_boundary_minimum() {
        let (x, _) = golden_section_min(|x| x, 0.0, 1.0, 64, 1e-10);
        assert!(x < 1e-9);
        let (x, _) = golden_section_min(|x| -x, 0.0, 1.0, 64, 1e-10);
        assert!(x > 1.0 - 1e-9);
    }

    #[test]
    fn scan_avoids_local_minimum() {
        // Shallow local minimum near 0.1, global minimum near 0.8.
        let f = |x: f64| -(-(x - 0.1f64).powi(2) / 0.001).exp() - 2.0 * (-(x - 0.8f64).powi(2) / 0.001).exp();
        let (x, _) = golden_section_min(f, 0.0, 1.0, 64, 1e-10);
        assert_abs_diff_eq!(x, 0.8, epsilon = 1e-6);
    }

    #[test]
    fn exact_line_fit() {
        let x = [1.0, 2.0, 4.0];
        let y = [3.0, 6.0, 12.0];
        let (c, r) = fit_through_origin(&x, &y);
        assert_abs_diff_eq!(c, 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(r, 0.0, epsilon = 1e-15);
        assert_eq!(fit_through_origin(&x, &[0.0; 3]), (0.0, 0.0));
    }
}
