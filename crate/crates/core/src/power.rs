//! Constants for power functions `f(x) = x^gamma`.
//!
//! For a power law the half-line constant is attained on every interval
//! `(0; eps)` and equals `P = (gamma*alpha+1)^{1/alpha} (gamma*beta+1)^{-1/beta}`.
//! The even extension `|x|^gamma` only needs the interval shapes `(-eps; 1)`,
//! `eps ∈ [0, 1]`, so its constant is `R = max_eps C(eps) * P` with the ratio
//! curve
//!
//! ```text
//! C(eps) = (eps^{gb+1} + 1)^{1/b} (1+eps)^{1/a} / ((eps^{ga+1} + 1)^{1/a} (1+eps)^{1/b})
//! ```
//!
//! All curve evaluations go through `t = ln eps` so that exponents
//! `gamma*beta + 1 -> 0` near the domain boundary do not overflow or underflow.

use crate::config::SearchConfig;
use crate::domain::ExponentPair;
use crate::error::{Error, Result};
use crate::scalar::{golden_section_max, newton_bracketed};

/// Everything computed for `x^gamma` and one exponent pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerRhiReport {
    pub pair: ExponentPair,
    pub gamma: f64,
    pub p_const: f64,
    pub eps_star: f64,
    pub c_max: f64,
    pub r_const: f64,
    pub residual13: f64,
    /// Largest magnitude among the three terms of the critical equation at `eps_star`.
    pub residual13_scale: f64,
    /// The critical equation only characterizes interior maximizers.
    pub residual13_applicable: bool,
}

/// Maximizer of the ratio curve on `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveMaximum {
    pub eps_star: f64,
    pub c_max: f64,
    /// `false` when the maximum sits at `eps = 0` (only for `gamma = 0`).
    pub interior: bool,
}

/// Value and term scale of the critical equation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Residual {
    pub value: f64,
    pub scale: f64,
}

/// Gap in `ln C` below which the critical point replaces the golden-section point.
const TIE_LN: f64 = 1e-12;

/// `(gamma*alpha+1)^{1/alpha} * (gamma*beta+1)^{-1/beta}`.
pub fn p_constant(pair: &ExponentPair, gamma: f64) -> Result<f64> {
    pair.gamma_domain().validate(gamma)?;
    let (a, b) = (pair.alpha(), pair.beta());
    let v = ((gamma * a).ln_1p() / a - (gamma * b).ln_1p() / b).exp();
    finite(v, "power-law half-line constant")
}

/// `ln C(e^t)`; `t <= 0`.
#[inline]
pub fn ln_c_at_log_eps(pair: &ExponentPair, gamma: f64, t: f64) -> f64 {
    let (a, b) = (pair.alpha(), pair.beta());
    let up_b = ((gamma * b + 1.0) * t).exp();
    let up_a = ((gamma * a + 1.0) * t).exp();
    let lin = t.exp().ln_1p();
    (up_b.ln_1p() - lin) / b + (lin - up_a.ln_1p()) / a
}

/// The ratio curve `C(eps)` on `[0, 1]`; exactly 1 at both ends.
pub fn c_eps(pair: &ExponentPair, gamma: f64, eps: f64) -> Result<f64> {
    pair.gamma_domain().validate(gamma)?;
    check_unit(eps, true)?;
    if eps == 0.0 {
        return Ok(1.0);
    }
    Ok(ln_c_at_log_eps(pair, gamma, eps.ln()).exp())
}

/// Left-hand side of the critical equation of the ratio curve:
///
/// `(a-b)(eps^{ga+gb+1} - 1) + b(ga+1)(eps^{gb+1} - eps^{ga}) + a(bg+1)(eps^{gb} - eps^{ga+1})`.
pub fn residual13(pair: &ExponentPair, gamma: f64, eps: f64) -> Result<f64> {
    Ok(residual13_terms(pair, gamma, eps)?.value)
}

pub fn residual13_terms(pair: &ExponentPair, gamma: f64, eps: f64) -> Result<Residual> {
    pair.gamma_domain().validate(gamma)?;
    check_unit(eps, false)?;
    let (r, _) = residual_and_slope_at_log(pair, gamma, eps.ln());
    Ok(r)
}

/// Residual at `eps = e^t` and its derivative with respect to `t`.
fn residual_and_slope_at_log(pair: &ExponentPair, gamma: f64, t: f64) -> (Residual, f64) {
    let (a, b) = (pair.alpha(), pair.beta());
    let (ga, gb) = (gamma * a, gamma * b);
    let pw = |p: f64| (p * t).exp();
    let t1 = (a - b) * (pw(ga + gb + 1.0) - 1.0);
    let t2 = b * (ga + 1.0) * (pw(gb + 1.0) - pw(ga));
    let t3 = a * (gb + 1.0) * (pw(gb) - pw(ga + 1.0));
    let d1 = (a - b) * (ga + gb + 1.0) * pw(ga + gb + 1.0);
    let d2 = b * (ga + 1.0) * ((gb + 1.0) * pw(gb + 1.0) - ga * pw(ga));
    let d3 = a * (gb + 1.0) * (gb * pw(gb) - (ga + 1.0) * pw(ga + 1.0));
    let res = Residual {
        value: t1 + t2 + t3,
        scale: t1.abs().max(t2.abs()).max(t3.abs()),
    };
    (res, d1 + d2 + d3)
}

/// Maximum of `C` over `[0, 1]`.
///
/// A global scan (uniform grid on `[0, 1]` merged with a log-spaced grid
/// reaching down to `10^eps_log_min_exp10`) locates the bracketing cell; the
/// cell is refined by golden-section search in `ln eps` and the result is
/// polished with a bracketed Newton iteration on the critical equation.
pub fn maximize_c(pair: &ExponentPair, gamma: f64, cfg: &SearchConfig) -> Result<CurveMaximum> {
    pair.gamma_domain().validate(gamma)?;
    let at_origin = CurveMaximum {
        eps_star: 0.0,
        c_max: 1.0,
        interior: false,
    };
    if gamma == 0.0 {
        return Ok(at_origin);
    }

    let ts = scan_grid(cfg);
    let values: Vec<f64> = ts.iter().map(|&t| ln_c_at_log_eps(pair, gamma, t)).collect();
    let (best, &best_val) = values
        .iter()
        .enumerate()
        .max_by(|x, y| x.1.total_cmp(y.1))
        .expect("scan grid is never empty");
    if !(best_val > 0.0) {
        return Ok(at_origin);
    }

    let lo = if best == 0 {
        ts[0] - (ts[1] - ts[0])
    } else {
        ts[best - 1]
    };
    let hi = if best + 1 == ts.len() { 0.0 } else { ts[best + 1] };
    let curve = |t: f64| ln_c_at_log_eps(pair, gamma, t);
    let (mut t_star, mut ln_star) = golden_section_max(curve, lo, hi, cfg.golden_tol, 400);
    if best_val > ln_star {
        t_star = ts[best];
        ln_star = best_val;
    }

    let polished = newton_bracketed(
        |t| {
            let (r, d) = residual_and_slope_at_log(pair, gamma, t);
            (r.value, d)
        },
        lo,
        hi,
        1e-15,
        cfg.newton_max_iter,
    );
    if let Some(t) = polished {
        let ln_t = curve(t);
        // Both points sit on the flat top of the curve, where `ln C` carries
        // rounding noise from its O(1) terms; the critical point wins ties.
        if ln_t >= ln_star - TIE_LN {
            t_star = t;
            ln_star = ln_t.max(ln_star);
        }
    }

    let c_max = finite(ln_star.exp(), "ratio curve maximum")?;
    Ok(CurveMaximum {
        eps_star: t_star.exp(),
        c_max,
        interior: true,
    })
}

/// Full report for `x^gamma`: `P`, the curve maximum and `R = C * P`.
pub fn r_constant(pair: &ExponentPair, gamma: f64, cfg: &SearchConfig) -> Result<PowerRhiReport> {
    let p_const = p_constant(pair, gamma)?;
    let max = maximize_c(pair, gamma, cfg)?;
    let (residual, applicable) = if max.interior && max.eps_star > 0.0 {
        let (r, _) = residual_and_slope_at_log(pair, gamma, max.eps_star.ln());
        (r, true)
    } else {
        (Residual { value: 0.0, scale: 0.0 }, false)
    };
    Ok(PowerRhiReport {
        pair: *pair,
        gamma,
        p_const,
        eps_star: max.eps_star,
        c_max: max.c_max,
        r_const: finite(max.c_max * p_const, "even-extension constant")?,
        residual13: residual.value,
        residual13_scale: residual.scale,
        residual13_applicable: applicable,
    })
}

/// Ascending `ln eps` scan points in `(-inf, 0)`.
fn scan_grid(cfg: &SearchConfig) -> Vec<f64> {
    let per_decade = cfg.eps_log_per_decade.max(1);
    let decades = cfg.eps_log_min_exp10.unsigned_abs() as usize;
    let ln10 = std::f64::consts::LN_10;
    let n = cfg.eps_grid.max(2);
    let uniform_min = (1.0 / n as f64).ln();
    let mut ts: Vec<f64> = (1..=decades * per_decade)
        .rev()
        .map(|k| -ln10 * k as f64 / per_decade as f64)
        .filter(|&t| t < uniform_min)
        .collect();
    ts.extend((1..n).map(|j| (j as f64 / n as f64).ln()));
    ts
}

fn check_unit(eps: f64, allow_zero: bool) -> Result<()> {
    let ok = if allow_zero { eps >= 0.0 } else { eps > 0.0 };
    if ok && eps <= 1.0 {
        Ok(())
    } else {
        Err(Error::domain(format!(
            "eps={eps} must lie in {}0, 1]",
            if allow_zero { "[" } else { "(" }
        )))
    }
}

fn finite(v: f64, what: &str) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::numeric(format!("{what} evaluated to {v}")))
    }
}
