//! Brute-force references for cross-checking the estimators.
//!
//! Nothing here calls into the adaptive quadrature or the optimizers: means
//! are computed with a fixed-step tanh-sinh rule, suprema by exhaustive grids
//! and the curve maximum by direct evaluation on a uniform grid. Grids are
//! nested, so doubling a grid count only adds candidates.

use rayon::prelude::*;

use crate::domain::{ExponentPair, Interval};
use crate::error::{Error, Result};
use crate::means::{FunctionKind, FunctionSpec};

pub const MIN_COUNT: usize = 64;

/// `pi / 2`, the tanh-sinh inner scale.
const HALF_PI: f64 = std::f64::consts::FRAC_PI_2;
/// Nodes closer than this to an endpoint are dropped.
const NODE_FLOOR: f64 = 1e-300;
/// Half-width of the tanh-sinh parameter range.
const T_MAX: f64 = 6.2;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleConfig {
    /// Points per dimension of the interval grid.
    pub interval_grid: usize,
    /// Points of the shape grid (`a/b` ratios) in the line search.
    pub eps_grid: usize,
    /// Nodes of the tanh-sinh rule per smooth piece.
    pub quad_panels: usize,
    /// Smallest and largest interval length for functions on the whole half-line.
    pub span: (f64, f64),
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            interval_grid: 64,
            eps_grid: 128,
            quad_panels: 96,
            span: (1e-4, 1e2),
        }
    }
}

impl OracleConfig {
    pub fn validate(&self) -> Result<()> {
        for (name, n) in [
            ("interval_grid", self.interval_grid),
            ("eps_grid", self.eps_grid),
            ("quad_panels", self.quad_panels),
        ] {
            if n < MIN_COUNT {
                return Err(Error::domain(format!("oracle {name} must be at least {MIN_COUNT} ({n})")));
            }
        }
        let (lo, hi) = self.span;
        if !(lo > 0.0 && hi > lo && hi.is_finite()) {
            return Err(Error::domain(format!("oracle span must satisfy 0 < lo < hi ({lo}, {hi})")));
        }
        Ok(())
    }
}

/// Fixed-step tanh-sinh rule on `[-1, 1]`, stored as
/// `(distance to the nearer endpoint, weight, nearer endpoint is the left one)`.
struct TanhSinh {
    nodes: Vec<(f64, f64, bool)>,
}

impl TanhSinh {
    fn new(count: usize) -> Self {
        let h = 2.0 * T_MAX / count as f64;
        let nodes = (0..=count)
            .filter_map(|k| {
                let t = -T_MAX + h * k as f64;
                let s = HALF_PI * t.sinh();
                let cosh_s = s.cosh();
                let w = h * HALF_PI * t.cosh() / (cosh_s * cosh_s);
                // 1 - |tanh s| without cancellation
                let d = 2.0 / ((2.0 * s.abs()).exp() + 1.0);
                (w > 0.0 && d > 0.0).then_some((d, w, t < 0.0))
            })
            .collect();
        Self { nodes }
    }

    /// `∫_lo^hi g` for `g` smooth inside `(lo, hi)`.
    fn integrate(&self, g: &impl Fn(f64) -> f64, lo: f64, hi: f64) -> f64 {
        let half = 0.5 * (hi - lo);
        let mut sum = 0.0;
        for &(d, w, left) in &self.nodes {
            let d = half * d;
            if d <= NODE_FLOOR {
                continue;
            }
            let x = if left { lo + d } else { hi - d };
            sum += w * g(x);
        }
        sum * half
    }
}

fn check_summable(f: &FunctionSpec, lo: f64, order: f64) -> Result<()> {
    match f.kind() {
        FunctionKind::PowerLaw { gamma } if lo == 0.0 && gamma * order <= -1.0 => Err(Error::domain(format!(
            "x^{} is not summable at the origin",
            gamma * order
        ))),
        FunctionKind::AffinePower { gamma, offset, .. }
            if lo == 0.0 && gamma * order <= -1.0 && !(*offset > 0.0 && order < 0.0) =>
        {
            Err(Error::domain(format!("x^{} is not summable at the origin", gamma * order)))
        }
        FunctionKind::SampledTable(t) if order < 0.0 && t.has_non_positive() => Err(Error::data(
            "negative-order mean requested for a table containing zero values",
        )),
        _ => Ok(()),
    }
}

/// `∫_lo^hi f^order` over `0 <= lo < hi`, split at table knots.
fn integral(f: &FunctionSpec, lo: f64, hi: f64, order: f64, rule: &TanhSinh) -> f64 {
    let g = |x: f64| f.eval(x).powf(order);
    match f.kind() {
        FunctionKind::SampledTable(t) => {
            let mut cuts = vec![lo];
            cuts.extend(t.xs().iter().copied().filter(|&x| x > lo && x < hi));
            cuts.push(hi);
            cuts.windows(2).map(|w| rule.integrate(&g, w[0], w[1])).sum()
        }
        _ => rule.integrate(&g, lo, hi),
    }
}

/// Power mean of the even extension over `(lo; hi)`, any sign.
fn even_mean(f: &FunctionSpec, lo: f64, hi: f64, order: f64, rule: &TanhSinh) -> Result<f64> {
    let pieces: Vec<(f64, f64)> = if lo >= 0.0 {
        vec![(lo, hi)]
    } else if hi <= 0.0 {
        vec![(-hi, -lo)]
    } else {
        vec![(0.0, -lo), (0.0, hi)]
    };
    let (s_lo, s_hi) = f.support();
    let mut total = 0.0;
    for (a, b) in pieces {
        if a < s_lo || b > s_hi {
            return Err(Error::data(format!("[{a}, {b}] leaves the sampled range [{s_lo}, {s_hi}]")));
        }
        check_summable(f, a, order)?;
        total += integral(f, a, b, order, rule);
    }
    Ok((total / (hi - lo)).powf(1.0 / order))
}

fn ratio(f: &FunctionSpec, lo: f64, hi: f64, pair: &ExponentPair, rule: &TanhSinh) -> Result<f64> {
    Ok(even_mean(f, lo, hi, pair.beta(), rule)? / even_mean(f, lo, hi, pair.alpha(), rule)?)
}

/// `lo * (hi/lo)^(k/n)`, `k = 0..=n`.
fn geometric(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let q = (hi / lo).ln();
    (0..=n).map(|k| lo * (q * k as f64 / n as f64).exp()).collect()
}

/// Geometric points merged with `hi * k/n`, `k = 1..=n`; small scales
/// and unit scales both get resolved.
fn mixed(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let mut v = geometric(lo, hi, n);
    v.extend((1..=n).map(|k| hi * k as f64 / n as f64));
    v.sort_by(f64::total_cmp);
    v.dedup();
    v
}

fn half_line_range(f: &FunctionSpec, cfg: &OracleConfig) -> (f64, f64, f64, f64) {
    match f.kind() {
        FunctionKind::SampledTable(t) => {
            let w = t.x_max() - t.x_min();
            (t.x_min(), t.x_max(), w * cfg.span.0 / cfg.span.1, w)
        }
        _ => (0.0, cfg.span.1, cfg.span.0, cfg.span.1),
    }
}

/// Max of the parallel evaluations, reduced in input order.
fn ordered_max(cands: &[(f64, f64)], eval: impl Fn(f64, f64) -> Result<f64> + Sync) -> Result<f64> {
    let vals: Vec<Result<f64>> = cands.par_iter().map(|&(lo, hi)| eval(lo, hi)).collect();
    let mut best = f64::NEG_INFINITY;
    for v in vals {
        let v = v?;
        if !v.is_finite() {
            return Err(Error::numeric(format!("oracle ratio evaluated to {v}")));
        }
        if v > best {
            best = v;
        }
    }
    if best == f64::NEG_INFINITY {
        return Err(Error::numeric("oracle grid is empty"));
    }
    Ok(best)
}

/// Largest mean ratio over the grid of half-line intervals `(a; a+h)`.
pub fn brute_p(f: &FunctionSpec, pair: &ExponentPair, cfg: &OracleConfig) -> Result<f64> {
    cfg.validate()?;
    let (origin, end, w_min, w_max) = half_line_range(f, cfg);
    let widths = mixed(w_min, w_max, cfg.interval_grid);
    let offsets: Vec<f64> = std::iter::once(0.0).chain(widths.iter().copied()).collect();
    let cands: Vec<(f64, f64)> = offsets
        .iter()
        .flat_map(|&a| widths.iter().map(move |&h| (origin + a, origin + a + h)))
        .filter(|&(_, hi)| hi <= end * (1.0 + 1e-12))
        .map(|(lo, hi)| (lo, hi.min(end)))
        .collect();
    let rule = TanhSinh::new(cfg.quad_panels);
    ordered_max(&cands, |lo, hi| ratio(f, lo, hi, pair, &rule))
}

/// Largest mean ratio of the even extension over intervals `(-a; b)`.
///
/// Both `a <= b` and `a > b` shapes are enumerated; no symmetry is assumed.
pub fn brute_r(f: &FunctionSpec, pair: &ExponentPair, cfg: &OracleConfig) -> Result<f64> {
    cfg.validate()?;
    let (origin, _, w_min, w_max) = half_line_range(f, cfg);
    if origin > 0.0 {
        return Err(Error::data(format!(
            "the even extension needs the function near the origin, but samples start at x={origin}"
        )));
    }
    let n = cfg.eps_grid;
    let mut shapes: Vec<f64> = std::iter::once(0.0)
        .chain((1..=n).map(|j| j as f64 / n as f64))
        .chain(geometric(1e-6, 1.0, n))
        .collect();
    shapes.sort_by(f64::total_cmp);
    shapes.dedup();
    let scales = mixed(w_min, w_max, cfg.interval_grid);
    let mut cands = Vec::with_capacity(2 * shapes.len() * scales.len());
    for &b in &scales {
        for &e in &shapes {
            // longer side to the right, then to the left
            cands.push((-e * b, b));
            if e < 1.0 {
                cands.push((-b, e * b));
            }
        }
    }
    let rule = TanhSinh::new(cfg.quad_panels);
    ordered_max(&cands, |lo, hi| ratio(f, lo, hi, pair, &rule))
}

/// Largest value of the shape function on `n` uniform points of `[0, 1]`,
/// evaluated straight from its product form.
pub fn brute_max_c(pair: &ExponentPair, gamma: f64, n: usize) -> (f64, f64) {
    let (a, b) = (pair.alpha(), pair.beta());
    let c = |e: f64| {
        let num = (e.powf(gamma * b + 1.0) + 1.0).powf(1.0 / b) * (1.0 + e).powf(1.0 / a);
        let den = (e.powf(gamma * a + 1.0) + 1.0).powf(1.0 / a) * (1.0 + e).powf(1.0 / b);
        num / den
    };
    let n = n.max(2);
    let vals: Vec<(f64, f64)> = (0..n)
        .into_par_iter()
        .map(|k| {
            let e = k as f64 / (n - 1) as f64;
            (e, c(e))
        })
        .collect();
    let mut best = (0.0, f64::NEG_INFINITY);
    for (e, v) in vals {
        if v > best.1 {
            best = (e, v);
        }
    }
    best
}

/// Power mean of `f` over a half-line interval, by the reference rule.
pub fn reference_mean(f: &FunctionSpec, interval: Interval, order: f64, cfg: &OracleConfig) -> Result<f64> {
    cfg.validate()?;
    even_mean(f, interval.lo(), interval.hi(), order, &TanhSinh::new(cfg.quad_panels))
}
