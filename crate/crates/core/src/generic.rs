//! Supremum searches for `P(f)` (intervals of the half-line) and `R(f̄)`
//! (intervals of the line, even extension) for arbitrary function specs.
//!
//! Reductions used when their hypotheses hold:
//! * monotone `f`: `P` only needs intervals `(0; w)`;
//! * even extensions: `R` only needs shapes `(-eps*b; b)` with `eps ∈ [0, 1]`;
//! * power laws: additionally scale-free, so `b = 1`.
//!
//! Every reported value is the largest ratio actually evaluated, hence a lower
//! bound on the true supremum, together with the interval that attains it.

use rayon::prelude::*;

use crate::classconst::a_bar;
use crate::config::SearchConfig;
use crate::domain::{ExponentPair, Interval};
use crate::error::{Error, Result};
use crate::means::{mean_ratio, mean_ratio_even, quad_mean_even, FunctionKind, FunctionSpec, MeanValue};
use crate::scalar::golden_section_max;

/// Smallest `eps` of the seed grid in the two-dimensional shape search.
const SHAPE_EPS_MIN: f64 = 1e-6;
/// Decades of the log-spaced `eps` grid in the power-law shape search.
const POWER_SHAPE_DECADES: usize = 30;
/// Allowance when comparing the extension ratio against its upper bound.
pub const BOUND_SLACK: f64 = 1e-6;

/// The function `x -> f(|x|)` on the whole line.
#[derive(Debug, Clone, Copy)]
pub struct EvenExtensionView<'a> {
    base: &'a FunctionSpec,
}

impl<'a> EvenExtensionView<'a> {
    pub fn new(base: &'a FunctionSpec) -> Self {
        Self { base }
    }

    pub fn base(&self) -> &FunctionSpec {
        self.base
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.base.eval(x.abs())
    }

    pub fn mean(&self, interval: Interval, order: f64, tol: f64) -> Result<MeanValue> {
        quad_mean_even(self.base, interval, order, tol)
    }

    pub fn ratio(&self, interval: Interval, pair: &ExponentPair, tol: f64) -> Result<f64> {
        mean_ratio_even(self.base, interval, pair, tol)
    }
}

/// Which interval family was searched.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reduction {
    /// Monotone function on the whole half-line: intervals `(0; w)` suffice.
    MonotoneOrigin,
    /// Monotone sampled table: the same family, but the matching interval
    /// may leave the sampled range, so the reduction is not guaranteed.
    MonotoneOriginUncertified,
    /// All intervals `(a; a+h)`.
    Unrestricted,
    /// Shapes `(-eps*b; b)`.
    EvenShape,
    /// Shapes `(-eps; 1)` for a power law.
    PowerShape,
}

impl Reduction {
    pub fn label(self) -> &'static str {
        match self {
            Reduction::MonotoneOrigin => "monotone-origin",
            Reduction::MonotoneOriginUncertified => "monotone-origin-uncertified",
            Reduction::Unrestricted => "unrestricted",
            Reduction::EvenShape => "even-shape",
            Reduction::PowerShape => "power-shape",
        }
    }

    /// Whether the searched family provably contains the supremum.
    pub fn certified(self) -> bool {
        self != Reduction::MonotoneOriginUncertified
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SupremumEstimate {
    pub value: f64,
    pub witness: Interval,
    pub search_points: usize,
    pub converged: bool,
    pub reduction: Reduction,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtensionReport {
    pub p: SupremumEstimate,
    pub r: SupremumEstimate,
    pub ratio: f64,
    pub a_bar_bound: f64,
}

/// Where half-line intervals may live.
#[derive(Debug, Clone, Copy)]
struct SearchDomain {
    origin: f64,
    end: f64,
    w_min: f64,
    w_max: f64,
}

fn search_domain(f: &FunctionSpec, cfg: &SearchConfig) -> Result<SearchDomain> {
    if !(cfg.scale_min > 0.0 && cfg.scale_max > cfg.scale_min) {
        return Err(Error::domain(format!(
            "invalid search scales [{}, {}]",
            cfg.scale_min, cfg.scale_max
        )));
    }
    Ok(match f.kind() {
        FunctionKind::SampledTable(t) => {
            let w_max = t.x_max() - t.x_min();
            SearchDomain {
                origin: t.x_min(),
                end: t.x_max(),
                w_min: w_max * cfg.scale_min / cfg.scale_max,
                w_max,
            }
        }
        _ => SearchDomain {
            origin: 0.0,
            end: cfg.scale_max,
            w_min: cfg.scale_min,
            w_max: cfg.scale_max,
        },
    })
}

fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let n = n.max(2);
    let (a, b) = (lo.ln(), hi.ln());
    (0..n).map(|k| a + (b - a) * k as f64 / (n - 1) as f64).collect()
}

/// Supremum over intervals of the half-line.
///
/// Known monotonicity triggers the one-dimensional search over `(0; w)`;
/// otherwise a log-spaced grid over left end and width is refined locally.
pub fn estimate_p(f: &FunctionSpec, pair: &ExponentPair, cfg: &SearchConfig) -> Result<SupremumEstimate> {
    let dom = search_domain(f, cfg)?;
    let tol = cfg.quad_tol;
    if f.monotonicity().is_known() {
        let reduction = if matches!(f.kind(), FunctionKind::SampledTable(_)) {
            Reduction::MonotoneOriginUncertified
        } else {
            Reduction::MonotoneOrigin
        };
        let seeds = log_grid(dom.w_min, dom.w_max, cfg.seed_grid);
        let (lo_t, hi_t) = (dom.w_min.ln(), dom.w_max.ln());
        let eval = |t: f64| -> Result<Option<(f64, Interval)>> {
            let t = t.clamp(lo_t, hi_t);
            let i = Interval::new(dom.origin, (dom.origin + t.exp()).min(dom.end))?;
            Ok(Some((mean_ratio(f, i, pair, tol)?, i)))
        };
        return search_1d(&seeds, eval, reduction);
    }

    let offsets: Vec<f64> = std::iter::once(f64::NEG_INFINITY)
        .chain(log_grid(dom.w_min, dom.w_max, cfg.seed_grid.saturating_sub(1)))
        .collect();
    let widths = log_grid(dom.w_min, dom.w_max, cfg.seed_grid);
    let step = widths[1] - widths[0];
    let eval = |u: f64, v: f64| -> Result<Option<(f64, Interval)>> {
        let a = dom.origin + u.exp();
        let h = v.exp();
        if v > dom.w_max.ln() + 1e-12 || a + h > dom.end * (1.0 + 1e-12) {
            return Ok(None);
        }
        let i = Interval::new(a, (a + h).min(dom.end))?;
        Ok(Some((mean_ratio(f, i, pair, tol)?, i)))
    };
    search_2d(&offsets, &widths, step, step, eval, cfg, Reduction::Unrestricted)
}

/// Supremum over intervals of the line for the even extension.
pub fn estimate_r(f: &FunctionSpec, pair: &ExponentPair, cfg: &SearchConfig) -> Result<SupremumEstimate> {
    estimate_r_given(f, pair, cfg, None)
}

/// `half` is a finished half-line estimate to reuse. Intervals on one side
/// of the origin reduce to half-line intervals, so only the ones straddling
/// it need a new search.
fn estimate_r_given(
    f: &FunctionSpec,
    pair: &ExponentPair,
    cfg: &SearchConfig,
    half: Option<&SupremumEstimate>,
) -> Result<SupremumEstimate> {
    let tol = cfg.quad_tol;
    if let FunctionKind::PowerLaw { .. } = f.kind() {
        let per_decade = cfg.eps_log_per_decade.max(1);
        let n = cfg.shape_grid.max(2);
        let uniform_min = (1.0 / n as f64).ln();
        let mut seeds: Vec<f64> = std::iter::once(f64::NEG_INFINITY)
            .chain(
                (1..=POWER_SHAPE_DECADES * per_decade)
                    .rev()
                    .map(|k| -std::f64::consts::LN_10 * k as f64 / per_decade as f64)
                    .filter(|&t| t < uniform_min),
            )
            .collect();
        seeds.extend((1..=n).map(|j| (j as f64 / n as f64).ln()));
        let eval = |t: f64| -> Result<Option<(f64, Interval)>> {
            let eps = t.min(0.0).exp();
            let i = Interval::new(-eps, 1.0)?;
            Ok(Some((mean_ratio_even(f, i, pair, tol)?, i)))
        };
        return search_1d(&seeds, eval, Reduction::PowerShape);
    }

    let dom = search_domain(f, cfg)?;
    if dom.origin > 0.0 {
        return Err(Error::data(format!(
            "the even extension needs the function near the origin, but samples start at x={}",
            dom.origin
        )));
    }
    let scales = log_grid(dom.w_min, dom.w_max, cfg.seed_grid);
    let shapes: Vec<f64> = std::iter::once(f64::NEG_INFINITY)
        .chain(log_grid(SHAPE_EPS_MIN, 1.0, cfg.seed_grid.saturating_sub(1)))
        .collect();
    let du = scales[1] - scales[0];
    let dv = shapes[2] - shapes[1];
    let eval = |u: f64, v: f64| -> Result<Option<(f64, Interval)>> {
        if u > dom.w_max.ln() + 1e-12 || v > 1e-12 {
            return Ok(None);
        }
        let b = u.exp().min(dom.w_max);
        let eps = v.exp().min(1.0);
        let i = Interval::new(-eps * b, b)?;
        Ok(Some((mean_ratio_even(f, i, pair, tol)?, i)))
    };
    let straddle = search_2d(&scales, &shapes, du, dv, eval, cfg, Reduction::EvenShape)?;
    let half = match half {
        Some(h) => *h,
        None => estimate_p(f, pair, cfg)?,
    };
    let points = straddle.search_points + half.search_points;
    let mut best = if half.value > straddle.value { half } else { straddle };
    best.search_points = points;
    best.reduction = Reduction::EvenShape;
    Ok(best)
}

/// Both constants, their quotient and the upper bound it must respect.
pub fn extension_ratio(f: &FunctionSpec, pair: &ExponentPair, cfg: &SearchConfig) -> Result<ExtensionReport> {
    let p = estimate_p(f, pair, cfg)?;
    let r = estimate_r_given(f, pair, cfg, Some(&p))?;
    let ratio = r.value / p.value;
    let bound = a_bar(pair);
    if !ratio.is_finite() {
        return Err(Error::numeric(format!("extension ratio evaluated to {ratio}")));
    }
    if ratio > bound + BOUND_SLACK {
        return Err(Error::numeric(format!(
            "extension ratio {ratio} exceeds the upper estimate {bound} for {pair}"
        )));
    }
    Ok(ExtensionReport {
        p,
        r,
        ratio,
        a_bar_bound: bound,
    })
}

type Candidate = (f64, Interval);

fn pick_best(results: Vec<Result<Option<Candidate>>>) -> Result<Option<(usize, Candidate)>> {
    let mut best: Option<(usize, Candidate)> = None;
    for (k, r) in results.into_iter().enumerate() {
        if let Some(c) = r? {
            if best.map_or(true, |(_, b)| c.0 > b.0) {
                best = Some((k, c));
            }
        }
    }
    Ok(best)
}

/// Scan ascending coordinates, then golden-section refine the bracketing cell.
fn search_1d(
    seeds: &[f64],
    eval: impl Fn(f64) -> Result<Option<Candidate>> + Sync,
    reduction: Reduction,
) -> Result<SupremumEstimate> {
    let results: Vec<_> = seeds.par_iter().map(|&t| eval(t)).collect();
    let mut points = results.len();
    let (k, mut best) = pick_best(results)?.ok_or_else(|| Error::numeric("empty search grid"))?;
    let lo = if k == 0 { seeds[0] } else { seeds[k - 1] };
    let hi = if k + 1 == seeds.len() { seeds[k] } else { seeds[k + 1] };
    if lo.is_finite() && hi > lo {
        let evals = std::cell::Cell::new(0usize);
        let first_err = std::cell::RefCell::new(None);
        let objective = |t: f64| {
            evals.set(evals.get() + 1);
            match eval(t) {
                Ok(Some((v, _))) => v,
                Ok(None) => f64::NEG_INFINITY,
                Err(e) => {
                    first_err.borrow_mut().get_or_insert(e);
                    f64::NEG_INFINITY
                }
            }
        };
        let (t, v) = golden_section_max(objective, lo, hi, 1e-10, 200);
        if let Some(e) = first_err.into_inner() {
            return Err(e);
        }
        points += evals.get();
        if v > best.0 {
            if let Some(c) = eval(t)? {
                best = c;
            }
        }
    }
    Ok(SupremumEstimate {
        value: best.0,
        witness: best.1,
        search_points: points,
        converged: true,
        reduction,
    })
}

/// Tensor seed grid followed by shrinking local grids around the incumbent.
fn search_2d(
    us: &[f64],
    vs: &[f64],
    du: f64,
    dv: f64,
    eval: impl Fn(f64, f64) -> Result<Option<Candidate>> + Sync,
    cfg: &SearchConfig,
    reduction: Reduction,
) -> Result<SupremumEstimate> {
    let seeds: Vec<(f64, f64)> = us.iter().flat_map(|&u| vs.iter().map(move |&v| (u, v))).collect();
    let results: Vec<_> = seeds.par_iter().map(|&(u, v)| eval(u, v)).collect();
    let mut points = results.len();
    let (k, mut best) = pick_best(results)?.ok_or_else(|| Error::numeric("no feasible interval in the search grid"))?;
    let (mut cu, mut cv) = seeds[k];
    let (mut su, mut sv) = (du, dv);
    let mut converged = cfg.refine_rounds == 0;
    let n = cfg.refine_grid.max(2);
    for round in 0..cfg.max_refine_rounds.max(cfg.refine_rounds) {
        if round >= cfg.refine_rounds && converged {
            break;
        }
        let local = |c: f64, s: f64| -> Vec<f64> {
            if !c.is_finite() {
                return vec![c];
            }
            (0..n).map(|i| c + s * (2.0 * i as f64 / (n - 1) as f64 - 1.0)).collect()
        };
        let lu = local(cu, su);
        let lv = local(cv, sv);
        let cand: Vec<(f64, f64)> = lu.iter().flat_map(|&u| lv.iter().map(move |&v| (u, v))).collect();
        let results: Vec<_> = cand.par_iter().map(|&(u, v)| eval(u, v)).collect();
        points += results.len();
        let prev = best.0;
        if let Some((j, c)) = pick_best(results)? {
            if c.0 > best.0 {
                best = c;
                (cu, cv) = cand[j];
            }
        }
        converged = (best.0 - prev) <= cfg.converge_rel * prev.abs();
        su /= cfg.refine_shrink;
        sv /= cfg.refine_shrink;
    }
    Ok(SupremumEstimate {
        value: best.0,
        witness: best.1,
        search_points: points,
        converged,
        reduction,
    })
}
