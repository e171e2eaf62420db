//! One-dimensional maximization and bracketed root polishing.

const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Golden-section search for the maximum of a unimodal `f` on `[a, b]`.
///
/// Returns `(x_max, f_max)`, where the pair is the best point evaluated.
pub fn golden_section_max(
    f: impl Fn(f64) -> f64,
    mut a: f64,
    mut b: f64,
    tol: f64,
    max_evals: usize,
) -> (f64, f64) {
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    let mut evals = 2;
    while evals < max_evals && (b - a).abs() > tol {
        if f1 >= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2);
        }
        evals += 1;
    }
    if f1 >= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Newton iteration for a root of `f` inside a sign-changing bracket
/// `[lo, hi]`, falling back to bisection whenever a step leaves the bracket or
/// the derivative vanishes.
///
/// `fdf` returns `(f(x), f'(x))`. Returns `None` when the bracket does not
/// change sign.
pub fn newton_bracketed(
    fdf: impl Fn(f64) -> (f64, f64),
    mut lo: f64,
    mut hi: f64,
    xtol: f64,
    max_iter: usize,
) -> Option<f64> {
    let (flo, _) = fdf(lo);
    let (fhi, _) = fdf(hi);
    if flo == 0.0 {
        return Some(lo);
    }
    if fhi == 0.0 {
        return Some(hi);
    }
    if flo.signum() == fhi.signum() || !flo.is_finite() || !fhi.is_finite() {
        return None;
    }
    let lo_sign = flo.signum();
    let mut x = 0.5 * (lo + hi);
    for _ in 0..max_iter {
        let (fx, dfx) = fdf(x);
        if fx == 0.0 {
            return Some(x);
        }
        if fx.signum() == lo_sign {
            lo = x;
        } else {
            hi = x;
        }
        let newton = x - fx / dfx;
        let next = if dfx != 0.0 && newton.is_finite() && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        if (next - x).abs() <= xtol * (1.0 + x.abs()) || (hi - lo) <= xtol * (1.0 + x.abs()) {
            return Some(next);
        }
        x = next;
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_finds_parabola_peak() {
        let (x, fx) = golden_section_max(|x| -(x - 0.3) * (x - 0.3) + 2.0, 0.0, 1.0, 1e-12, 500);
        assert!((x - 0.3).abs() < 1e-6);
        assert!((fx - 2.0).abs() < 1e-12);
    }

    #[test]
    fn golden_handles_endpoint_maximum() {
        let (x, _) = golden_section_max(|x| x, 0.0, 1.0, 1e-10, 500);
        assert!(x > 1.0 - 1e-9);
    }

    #[test]
    fn newton_converges_on_sqrt_two() {
        let r = newton_bracketed(|x| (x * x - 2.0, 2.0 * x), 0.0, 3.0, 1e-15, 100).unwrap();
        assert!((r - 2f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn newton_survives_flat_derivative() {
        // derivative vanishes at the bracket midpoint
        let r = newton_bracketed(|x| (x * x * x, 3.0 * x * x), -1.0, 1.0, 1e-14, 200).unwrap();
        assert!(r.abs() < 1e-4);
    }

    #[test]
    fn newton_rejects_bracket_without_sign_change() {
        assert!(newton_bracketed(|x| (x * x + 1.0, 2.0 * x), -1.0, 1.0, 1e-12, 50).is_none());
    }
}
