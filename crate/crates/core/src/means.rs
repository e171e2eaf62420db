//! Power means `M_{I,p}(f) = ((1/|I|) ∫_I f^p)^{1/p}`.
//!
//! Power laws have a closed form on `(0; eps)`. Everything else goes through
//! composite Gauss–Legendre quadrature on a mesh graded geometrically toward
//! the origin whenever the integrand may be irregular there. The innermost
//! panel `[0, delta]` is integrated after the substitution
//! `x = delta * u^m`, `m = 1/(1+s)`, where `s` is the leading exponent of the
//! integrand at the origin; this turns `x^s` into a constant and keeps
//! integrable singularities such as `x^{-0.9}` cheap.

use std::fmt;
use std::io::Read;
use std::path::Path;

use crate::domain::{ExponentPair, Interval};
use crate::error::{Error, Result};
use crate::quadrature::GaussLegendre;

const GRADE_RATIO: f64 = 0.25;
const BASE_DEPTH: usize = 12;
const DEPTH_STEP: usize = 6;
const MAX_EXP_PANELS: usize = 4096;

/// Default refinement budget for [`quad_mean`].
pub const DEFAULT_MAX_LEVEL: usize = 7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Monotonicity {
    Increasing,
    Decreasing,
    Unknown,
}

impl Monotonicity {
    pub fn is_known(self) -> bool {
        self != Monotonicity::Unknown
    }
}

impl fmt::Display for Monotonicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Monotonicity::Increasing => "increasing",
            Monotonicity::Decreasing => "decreasing",
            Monotonicity::Unknown => "unknown",
        })
    }
}

/// Non-negative samples on strictly increasing abscissae, evaluated by
/// piecewise-linear interpolation. There is no extrapolation: the function
/// only exists on `[x_0, x_last]`.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledTable {
    xs: Vec<f64>,
    fs: Vec<f64>,
}

impl SampledTable {
    pub fn new(xs: Vec<f64>, fs: Vec<f64>) -> Result<Self> {
        if xs.len() != fs.len() {
            return Err(Error::data(format!(
                "abscissae and values differ in length ({} vs {})",
                xs.len(),
                fs.len()
            )));
        }
        if xs.len() < 2 {
            return Err(Error::data("a sampled table needs at least 2 points"));
        }
        if xs.iter().chain(&fs).any(|v| !v.is_finite()) {
            return Err(Error::data("table contains non-finite entries"));
        }
        if xs[0] < 0.0 {
            return Err(Error::data(format!(
                "abscissae must lie on the half-line, found x={}",
                xs[0]
            )));
        }
        if let Some(w) = xs.windows(2).find(|w| w[1] <= w[0]) {
            return Err(Error::data(format!(
                "abscissae must be strictly increasing ({} then {})",
                w[0], w[1]
            )));
        }
        if let Some(v) = fs.iter().find(|v| **v < 0.0) {
            return Err(Error::data(format!("table values must be non-negative, found {v}")));
        }
        Ok(Self { xs, fs })
    }

    /// Reads a table from CSV with the exact header `x,f`.
    pub fn from_csv_reader<R: Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
        let headers = rdr
            .headers()
            .map_err(|e| Error::data(format!("cannot read CSV header: {e}")))?
            .clone();
        if headers.len() != 2 || &headers[0] != "x" || &headers[1] != "f" {
            return Err(Error::data(format!(
                "CSV header must be `x,f`, found `{}`",
                headers.iter().collect::<Vec<_>>().join(",")
            )));
        }
        let mut xs = Vec::new();
        let mut fs = Vec::new();
        for (line, record) in rdr.records().enumerate() {
            let record = record.map_err(|e| Error::data(format!("CSV row {}: {e}", line + 2)))?;
            let parse = |i: usize| -> Result<f64> {
                record[i].parse::<f64>().map_err(|e| {
                    Error::data(format!("CSV row {}: cannot parse `{}`: {e}", line + 2, &record[i]))
                })
            };
            xs.push(parse(0)?);
            fs.push(parse(1)?);
        }
        Self::new(xs, fs)
    }

    pub fn from_csv_path(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let file = std::fs::File::open(path)
            .map_err(|e| Error::data(format!("cannot open {}: {e}", path.display())))?;
        Self::from_csv_reader(file)
    }

    pub fn xs(&self) -> &[f64] {
        &self.xs
    }

    pub fn values(&self) -> &[f64] {
        &self.fs
    }

    pub fn x_min(&self) -> f64 {
        self.xs[0]
    }

    pub fn x_max(&self) -> f64 {
        self.xs[self.xs.len() - 1]
    }

    pub fn has_non_positive(&self) -> bool {
        self.fs.iter().any(|v| *v <= 0.0)
    }

    /// `None` outside the sampled range.
    pub fn eval(&self, x: f64) -> Option<f64> {
        if !(x >= self.x_min() && x <= self.x_max()) {
            return None;
        }
        let i = self.xs.partition_point(|&k| k <= x);
        if i == 0 {
            return Some(self.fs[0]);
        }
        if i >= self.xs.len() {
            return Some(self.fs[self.fs.len() - 1]);
        }
        let (x0, x1) = (self.xs[i - 1], self.xs[i]);
        let (f0, f1) = (self.fs[i - 1], self.fs[i]);
        let t = (x - x0) / (x1 - x0);
        Some(f0 + t * (f1 - f0))
    }

    fn is_nondecreasing(&self) -> bool {
        self.fs.windows(2).all(|w| w[1] >= w[0])
    }

    fn is_nonincreasing(&self) -> bool {
        self.fs.windows(2).all(|w| w[1] <= w[0])
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum FunctionKind {
    /// `x^gamma`
    PowerLaw { gamma: f64 },
    /// `scale * x^gamma + offset`
    AffinePower { scale: f64, gamma: f64, offset: f64 },
    /// `exp(-rate * x)`
    ExpDecay { rate: f64 },
    SampledTable(SampledTable),
}

/// A non-negative function on the half-line together with what is known
/// about its monotonicity.
#[derive(Debug, Clone, PartialEq)]
pub struct FunctionSpec {
    kind: FunctionKind,
    monotonicity: Monotonicity,
}

impl FunctionSpec {
    /// Validates parameters and checks declared monotonicity against the
    /// function (analytically for the closed families, against the samples
    /// for tables).
    pub fn new(kind: FunctionKind, monotonicity: Monotonicity) -> Result<Self> {
        match &kind {
            FunctionKind::PowerLaw { gamma } => {
                if !gamma.is_finite() {
                    return Err(Error::domain(format!("power-law exponent must be finite ({gamma})")));
                }
            }
            FunctionKind::AffinePower { scale, gamma, offset } => {
                if !(scale.is_finite() && *scale > 0.0) {
                    return Err(Error::domain(format!("scale must be positive ({scale})")));
                }
                if !gamma.is_finite() {
                    return Err(Error::domain(format!("exponent must be finite ({gamma})")));
                }
                if !(offset.is_finite() && *offset >= 0.0) {
                    return Err(Error::domain(format!("offset must be non-negative ({offset})")));
                }
            }
            FunctionKind::ExpDecay { rate } => {
                if !(rate.is_finite() && *rate > 0.0) {
                    return Err(Error::domain(format!("decay rate must be positive ({rate})")));
                }
            }
            FunctionKind::SampledTable(_) => {}
        }
        let spec = Self { kind, monotonicity };
        if monotonicity.is_known() && !spec.admits(monotonicity) {
            return Err(Error::data(format!(
                "declared {monotonicity} monotonicity is inconsistent with the function"
            )));
        }
        Ok(spec)
    }

    /// `x^gamma` with its analytic monotonicity declared.
    pub fn power_law(gamma: f64) -> Result<Self> {
        let m = if gamma < 0.0 {
            Monotonicity::Decreasing
        } else {
            Monotonicity::Increasing
        };
        Self::new(FunctionKind::PowerLaw { gamma }, m)
    }

    pub fn affine_power(scale: f64, gamma: f64, offset: f64) -> Result<Self> {
        let m = if gamma < 0.0 {
            Monotonicity::Decreasing
        } else {
            Monotonicity::Increasing
        };
        Self::new(FunctionKind::AffinePower { scale, gamma, offset }, m)
    }

    pub fn exp_decay(rate: f64) -> Result<Self> {
        Self::new(FunctionKind::ExpDecay { rate }, Monotonicity::Decreasing)
    }

    /// The constant function `value > 0`.
    pub fn constant(value: f64) -> Result<Self> {
        Self::affine_power(value, 0.0, 0.0)
    }

    pub fn sampled(table: SampledTable, monotonicity: Monotonicity) -> Result<Self> {
        Self::new(FunctionKind::SampledTable(table), monotonicity)
    }

    /// Same function with different monotonicity metadata (validated).
    pub fn with_monotonicity(self, monotonicity: Monotonicity) -> Result<Self> {
        Self::new(self.kind, monotonicity)
    }

    pub fn kind(&self) -> &FunctionKind {
        &self.kind
    }

    pub fn monotonicity(&self) -> Monotonicity {
        self.monotonicity
    }

    fn admits(&self, m: Monotonicity) -> bool {
        let inc = matches!(m, Monotonicity::Increasing);
        match &self.kind {
            FunctionKind::PowerLaw { gamma } | FunctionKind::AffinePower { gamma, .. } => {
                *gamma == 0.0 || (*gamma > 0.0) == inc
            }
            FunctionKind::ExpDecay { .. } => !inc,
            FunctionKind::SampledTable(t) => {
                if inc {
                    t.is_nondecreasing()
                } else {
                    t.is_nonincreasing()
                }
            }
        }
    }

    pub fn is_constant(&self) -> bool {
        match &self.kind {
            FunctionKind::PowerLaw { gamma } | FunctionKind::AffinePower { gamma, .. } => *gamma == 0.0,
            FunctionKind::ExpDecay { .. } => false,
            FunctionKind::SampledTable(t) => t.fs.windows(2).all(|w| w[0] == w[1]),
        }
    }

    /// Closed half-line range where the function is defined.
    pub fn support(&self) -> (f64, f64) {
        match &self.kind {
            FunctionKind::SampledTable(t) => (t.x_min(), t.x_max()),
            _ => (0.0, f64::INFINITY),
        }
    }

    /// Value at `x >= 0`; NaN outside the support.
    pub fn eval(&self, x: f64) -> f64 {
        match &self.kind {
            FunctionKind::PowerLaw { gamma } => x.powf(*gamma),
            FunctionKind::AffinePower { scale, gamma, offset } => scale * x.powf(*gamma) + offset,
            FunctionKind::ExpDecay { rate } => (-rate * x).exp(),
            FunctionKind::SampledTable(t) => t.eval(x).unwrap_or(f64::NAN),
        }
    }

    /// `ln f(e^t)`, evaluated without forming `e^t` where possible.
    fn ln_eval_at_log(&self, t: f64) -> f64 {
        match &self.kind {
            FunctionKind::PowerLaw { gamma } => gamma * t,
            FunctionKind::AffinePower { scale, gamma, offset } => {
                let u = scale.ln() + gamma * t;
                if *offset == 0.0 {
                    u
                } else {
                    let c = offset.ln();
                    let (hi, lo) = if u > c { (u, c) } else { (c, u) };
                    hi + (lo - hi).exp().ln_1p()
                }
            }
            FunctionKind::ExpDecay { rate } => -rate * t.exp(),
            FunctionKind::SampledTable(_) => self.eval(t.exp()).ln(),
        }
    }

    /// `ln f(x)` for `x >= 0`.
    fn ln_eval(&self, x: f64) -> f64 {
        if x > 0.0 && !matches!(self.kind, FunctionKind::SampledTable(_)) {
            self.ln_eval_at_log(x.ln())
        } else {
            self.eval(x).ln()
        }
    }

    /// Exponent `s` with `f(x) ~ A x^s` as `x -> 0`.
    fn origin_exponent(&self) -> f64 {
        match &self.kind {
            FunctionKind::PowerLaw { gamma } => *gamma,
            FunctionKind::AffinePower { gamma, offset, .. } => {
                if *offset == 0.0 || *gamma < 0.0 {
                    *gamma
                } else {
                    0.0
                }
            }
            _ => 0.0,
        }
    }

    /// The closed power families are non-smooth at the origin unless constant.
    fn irregular_at_origin(&self) -> bool {
        match &self.kind {
            FunctionKind::PowerLaw { gamma } | FunctionKind::AffinePower { gamma, .. } => *gamma != 0.0,
            _ => false,
        }
    }

    /// Checks that `f^order` is summable on `[lo, hi]` (half-line coordinates)
    /// and that the interval lies inside the support.
    fn check_half_line(&self, lo: f64, hi: f64, order: f64) -> Result<()> {
        if lo < 0.0 {
            return Err(Error::domain(format!("half-line mean requested on [{lo}, {hi}]")));
        }
        let (s_lo, s_hi) = self.support();
        if lo < s_lo || hi > s_hi {
            return Err(Error::data(format!(
                "interval [{lo}, {hi}] leaves the sampled range [{s_lo}, {s_hi}]"
            )));
        }
        if let FunctionKind::SampledTable(t) = &self.kind {
            if order < 0.0 && t.has_non_positive() {
                return Err(Error::data(
                    "negative-order mean requested for a table containing zero values",
                ));
            }
        }
        if lo == 0.0 && self.irregular_at_origin() {
            let s = self.origin_exponent() * order;
            if s <= -1.0 {
                return Err(Error::domain(format!(
                    "integrand behaves like x^{s} at the origin and is not summable"
                )));
            }
        }
        Ok(())
    }
}

impl fmt::Display for FunctionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            FunctionKind::PowerLaw { gamma } => write!(f, "x^{gamma}"),
            FunctionKind::AffinePower { scale, gamma, offset } => write!(f, "{scale}*x^{gamma}+{offset}"),
            FunctionKind::ExpDecay { rate } => write!(f, "exp(-{rate}*x)"),
            FunctionKind::SampledTable(t) => write!(f, "table[{} points on {}..{}]", t.xs.len(), t.x_min(), t.x_max()),
        }
    }
}

/// A computed power mean.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeanValue {
    pub value: f64,
    /// `ln value`, available even when `value` itself leaves the `f64` range.
    pub ln_value: f64,
    pub order: f64,
    pub interval: Interval,
    /// Difference between the last two refinement levels.
    pub abs_error_estimate: f64,
}

/// `M_{(0;eps),order}(x^gamma) = eps^gamma * (gamma*order + 1)^{-1/order}`.
pub fn power_mean_closed(gamma: f64, order: f64, eps: f64) -> Result<f64> {
    if order == 0.0 || !order.is_finite() {
        return Err(Error::domain(format!("mean order must be finite and nonzero ({order})")));
    }
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(Error::domain(format!("interval length must be positive ({eps})")));
    }
    let s = gamma * order;
    if !(s > -1.0) {
        return Err(Error::domain(format!(
            "x^{gamma} raised to order {order} is not summable at the origin"
        )));
    }
    Ok((gamma * eps.ln() - s.ln_1p() / order).exp())
}

/// Power mean of `f` over `interval ⊂ [0, ∞)`.
///
/// On success `|value - true mean| <= tol * (1 + |value|)` up to the
/// reliability of the two-level error estimate.
pub fn quad_mean(f: &FunctionSpec, interval: Interval, order: f64, tol: f64) -> Result<MeanValue> {
    quad_mean_with_budget(f, interval, order, tol, DEFAULT_MAX_LEVEL)
}

pub fn quad_mean_with_budget(
    f: &FunctionSpec,
    interval: Interval,
    order: f64,
    tol: f64,
    max_level: usize,
) -> Result<MeanValue> {
    check_order_tol(order, tol)?;
    f.check_half_line(interval.lo(), interval.hi(), order)?;
    let segments = [(interval.lo(), interval.hi())];
    let (ln_value, err) = mean_over_segments(f, &segments, interval.len(), order, tol, max_level, interval)?;
    mean_value(ln_value, order, interval, err)
}

/// Power mean of the even extension `f(|x|)` over an arbitrary interval.
pub fn quad_mean_even(f: &FunctionSpec, interval: Interval, order: f64, tol: f64) -> Result<MeanValue> {
    quad_mean_even_with_budget(f, interval, order, tol, DEFAULT_MAX_LEVEL)
}

pub fn quad_mean_even_with_budget(
    f: &FunctionSpec,
    interval: Interval,
    order: f64,
    tol: f64,
    max_level: usize,
) -> Result<MeanValue> {
    check_order_tol(order, tol)?;
    let segments = even_segments(interval);
    for &(a, b) in &segments {
        f.check_half_line(a, b, order)?;
    }
    let (ln_value, err) = mean_over_segments(f, &segments, interval.len(), order, tol, max_level, interval)?;
    mean_value(ln_value, order, interval, err)
}

fn mean_value(ln_value: f64, order: f64, interval: Interval, abs_error_estimate: f64) -> Result<MeanValue> {
    let value = ln_value.exp();
    if !(value.is_finite() && value > 0.0) {
        return Err(Error::numeric(format!(
            "mean of order {order} on {interval} is e^{ln_value}, outside the f64 range"
        )));
    }
    Ok(MeanValue {
        value,
        ln_value,
        order,
        interval,
        abs_error_estimate,
    })
}

/// `M_{I,beta}(f) / M_{I,alpha}(f)` on `I ⊂ [0, ∞)`, formed from log-means
/// so that it stays finite when the means themselves do not.
pub fn mean_ratio(f: &FunctionSpec, interval: Interval, pair: &ExponentPair, tol: f64) -> Result<f64> {
    let ln_mean = |order: f64| -> Result<f64> {
        check_order_tol(order, tol)?;
        f.check_half_line(interval.lo(), interval.hi(), order)?;
        let seg = [(interval.lo(), interval.hi())];
        Ok(mean_over_segments(f, &seg, interval.len(), order, tol, DEFAULT_MAX_LEVEL, interval)?.0)
    };
    ratio_from_logs(ln_mean(pair.beta())?, ln_mean(pair.alpha())?, interval)
}

/// Same ratio for the even extension over any interval of the line.
pub fn mean_ratio_even(f: &FunctionSpec, interval: Interval, pair: &ExponentPair, tol: f64) -> Result<f64> {
    let segments = even_segments(interval);
    let ln_mean = |order: f64| -> Result<f64> {
        check_order_tol(order, tol)?;
        for &(a, b) in &segments {
            f.check_half_line(a, b, order)?;
        }
        Ok(mean_over_segments(f, &segments, interval.len(), order, tol, DEFAULT_MAX_LEVEL, interval)?.0)
    };
    ratio_from_logs(ln_mean(pair.beta())?, ln_mean(pair.alpha())?, interval)
}

fn ratio_from_logs(ln_hi: f64, ln_lo: f64, interval: Interval) -> Result<f64> {
    let r = (ln_hi - ln_lo).exp();
    if r.is_finite() {
        Ok(r)
    } else {
        Err(Error::numeric(format!("mean ratio on {interval} evaluated to {r}")))
    }
}

/// Half-line pieces covered by `interval` after folding at the origin.
fn even_segments(interval: Interval) -> Vec<(f64, f64)> {
    let (lo, hi) = (interval.lo(), interval.hi());
    if lo >= 0.0 {
        vec![(lo, hi)]
    } else if hi <= 0.0 {
        vec![(-hi, -lo)]
    } else {
        vec![(0.0, -lo), (0.0, hi)]
    }
}

fn check_order_tol(order: f64, tol: f64) -> Result<()> {
    if order == 0.0 || !order.is_finite() {
        return Err(Error::domain(format!("mean order must be finite and nonzero ({order})")));
    }
    if !(tol > 0.0) {
        return Err(Error::domain(format!("tolerance must be positive ({tol})")));
    }
    Ok(())
}

/// `ln M` over the union of `segments` together with the error estimate
/// in value units. Integrands are scaled by `e^{-shift}` so that neither
/// `f^order` nor the mean needs to be representable.
fn mean_over_segments(
    f: &FunctionSpec,
    segments: &[(f64, f64)],
    length: f64,
    order: f64,
    tol: f64,
    max_level: usize,
    interval: Interval,
) -> Result<(f64, f64)> {
    let shift = segments
        .iter()
        .flat_map(|&(a, b)| [a, 0.5 * (a + b), b])
        .filter(|&x| x > 0.0)
        .map(|x| order * f.ln_eval(x))
        .filter(|v| v.is_finite())
        .fold(f64::NEG_INFINITY, f64::max);
    let shift = if shift.is_finite() { shift } else { 0.0 };
    let mut prev: Option<f64> = None;
    let mut last_err = f64::INFINITY;
    for level in 0..=max_level {
        let integral: f64 = segments
            .iter()
            .map(|&(a, b)| if b > a { half_line_integral(f, a, b, order, shift, level) } else { 0.0 })
            .sum();
        // mean / e^{shift/order}
        let scaled = (integral / length).powf(1.0 / order);
        if !(scaled.is_finite() && scaled > 0.0) {
            return Err(Error::numeric(format!(
                "mean of order {order} on {interval} evaluated to {scaled} (scaled by e^{})",
                shift / order
            )));
        }
        if let Some(p) = prev {
            let diff = (scaled - p).abs();
            last_err = diff * (shift / order).exp();
            if diff <= tol * (1.0 + scaled) {
                return Ok((scaled.ln() + shift / order, last_err));
            }
        }
        prev = Some(scaled);
    }
    Err(Error::Quadrature {
        lo: interval.lo(),
        hi: interval.hi(),
        levels: max_level + 1,
        estimate: last_err,
        tol,
    })
}

/// `e^{-shift} ∫_lo^hi f(x)^order dx` at mesh refinement `level`, `0 <= lo < hi`.
fn half_line_integral(f: &FunctionSpec, lo: f64, hi: f64, order: f64, shift: f64, level: usize) -> f64 {
    let rule = GaussLegendre::standard();
    let split = 1usize << level;
    let integrand = |x: f64| (order * f.ln_eval(x) - shift).exp();
    let panels = |a: f64, b: f64, n: usize| -> f64 {
        let h = (b - a) / n as f64;
        (0..n)
            .map(|k| {
                let left = a + k as f64 * h;
                let right = if k + 1 == n { b } else { left + h };
                rule.integrate(left, right, integrand)
            })
            .sum()
    };

    if f.irregular_at_origin() && lo < hi * GRADE_RATIO {
        let max_depth = BASE_DEPTH + DEPTH_STEP * level;
        let mut total = 0.0;
        let mut right = hi;
        let mut depth = 0;
        loop {
            let left = right * GRADE_RATIO;
            if left <= lo {
                total += panels(lo, right, split);
                break;
            }
            total += panels(left, right, split);
            depth += 1;
            if lo == 0.0 && depth >= max_depth {
                total += origin_panel(f, left, order, shift, split);
                break;
            }
            right = left;
        }
        return total;
    }

    match f.kind() {
        FunctionKind::SampledTable(t) => {
            let mut total = 0.0;
            let mut left = lo;
            for &knot in t.xs.iter().filter(|&&k| k > lo && k < hi) {
                total += panels(left, knot, split);
                left = knot;
            }
            total + panels(left, hi, split)
        }
        FunctionKind::ExpDecay { rate } => {
            let base = ((rate * order.abs() * (hi - lo)) / 4.0).ceil().clamp(1.0, MAX_EXP_PANELS as f64);
            panels(lo, hi, base as usize * split)
        }
        _ => panels(lo, hi, split),
    }
}

/// `e^{-shift} ∫_0^delta f^order` via `x = delta * u^m`, `m = 1/(1+s)`.
fn origin_panel(f: &FunctionSpec, delta: f64, order: f64, shift: f64, split: usize) -> f64 {
    let rule = GaussLegendre::standard();
    let s = f.origin_exponent() * order;
    let m = 1.0 / (1.0 + s);
    let ln_delta = delta.ln();
    let ln_jac0 = ln_delta + m.ln() - shift;
    let h = 1.0 / split as f64;
    (0..split)
        .map(|k| {
            let a = k as f64 * h;
            rule.integrate(a, a + h, |u| {
                let ln_u = u.ln();
                let ln_f = f.ln_eval_at_log(ln_delta + m * ln_u);
                (order * ln_f + ln_jac0 + (m - 1.0) * ln_u).exp()
            })
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(a: f64, b: f64) -> Interval {
        Interval::new(a, b).unwrap()
    }

    #[test]
    fn closed_form_examples() {
        assert!((power_mean_closed(1.0, 1.0, 1.0).unwrap() - 0.5).abs() < 1e-15);
        assert!((power_mean_closed(0.0, 7.0, 3.0).unwrap() - 1.0).abs() < 1e-15);
        assert!((power_mean_closed(1.0, 2.0, 1.0).unwrap() - 3f64.sqrt().recip()).abs() < 1e-15);
        assert!(matches!(power_mean_closed(-1.0, 1.0, 1.0), Err(Error::Domain(_))));
        assert!(matches!(power_mean_closed(1.0, 0.0, 1.0), Err(Error::Domain(_))));
    }

    #[test]
    fn closed_form_scale_covariance() {
        for &(g, p) in &[(0.7, 2.0), (-0.3, 1.5), (2.0, -0.4), (-0.2, -3.0)] {
            let base = power_mean_closed(g, p, 0.8).unwrap();
            for &lam in &[0.01, 3.0, 250.0] {
                let scaled = power_mean_closed(g, p, lam * 0.8).unwrap();
                let want = lam.powf(g) * base;
                assert!((scaled - want).abs() <= 1e-13 * want, "{g} {p} {lam}");
            }
        }
    }

    #[test]
    fn quadrature_examples() {
        let x = FunctionSpec::power_law(1.0).unwrap();
        let m = quad_mean(&x, iv(0.0, 1.0), 1.0, 1e-10).unwrap();
        assert!((m.value - 0.5).abs() < 1e-10);
        let m = quad_mean(&x, iv(0.0, 1.0), 2.0, 1e-10).unwrap();
        assert!((m.value - 3f64.sqrt().recip()).abs() < 1e-10);

        let g = FunctionSpec::power_law(-0.4).unwrap();
        let m = quad_mean(&g, iv(0.0, 1.0), -1.0, 1e-8).unwrap();
        assert!((m.value - 1.4).abs() < 1e-6, "{}", m.value);
        assert!(m.abs_error_estimate <= 1e-8 * (1.0 + m.value));
    }

    #[test]
    fn quadrature_matches_closed_form_on_grid() {
        let gammas = [-0.95, -0.5, -0.1, 0.3, 1.0, 2.5, 7.0];
        let orders = [-3.0, -1.0, -0.5, 0.5, 1.0, 2.0, 5.0];
        for &g in &gammas {
            let f = FunctionSpec::power_law(g).unwrap();
            for &p in &orders {
                if g * p <= -0.99 {
                    continue;
                }
                let exact = power_mean_closed(g, p, 2.0).unwrap();
                let m = quad_mean(&f, iv(0.0, 2.0), p, 1e-11).unwrap();
                assert!(
                    (m.value - exact).abs() <= 1e-9 * (1.0 + exact),
                    "gamma {g} order {p}: {} vs {exact}",
                    m.value
                );
            }
        }
    }

    #[test]
    fn ratio_examples() {
        let pair = ExponentPair::new(1.0, 2.0).unwrap();
        let five = FunctionSpec::constant(5.0).unwrap();
        for i in [iv(0.0, 1.0), iv(2.0, 9.0)] {
            assert!((mean_ratio(&five, i, &pair, 1e-12).unwrap() - 1.0).abs() < 1e-12);
        }
        let x = FunctionSpec::power_law(1.0).unwrap();
        let r = mean_ratio(&x, iv(0.0, 1.0), &pair, 1e-12).unwrap();
        assert!((r - 2.0 / 3f64.sqrt()).abs() < 1e-11);
        // ∫_1^2 x = 3/2, ∫_1^2 x^2 = 7/3
        let r = mean_ratio(&x, iv(1.0, 2.0), &pair, 1e-12).unwrap();
        assert!((r - (7.0f64 / 3.0).sqrt() / 1.5).abs() < 1e-11);
    }

    #[test]
    fn holder_monotonicity_on_assorted_functions() {
        let fs = [
            FunctionSpec::power_law(0.6).unwrap(),
            FunctionSpec::affine_power(2.0, -0.3, 1.0).unwrap(),
            FunctionSpec::exp_decay(3.0).unwrap(),
        ];
        let pairs = [(0.5, 3.0), (-1.5, -0.5), (-1.0, 2.0)];
        for f in &fs {
            for &(a, b) in &pairs {
                let pair = ExponentPair::new(a, b).unwrap();
                for i in [iv(0.0, 1.0), iv(0.3, 4.0)] {
                    let r = mean_ratio(f, i, &pair, 1e-10).unwrap();
                    assert!(r > 1.0, "{f} {pair} {i}: {r}");
                }
            }
        }
    }

    #[test]
    fn even_extension_mean_splits_at_origin() {
        let x = FunctionSpec::power_law(1.0).unwrap();
        // mean of |x| on (-1/2, 1) is (1/8 + 1/2) / 1.5
        let m = quad_mean_even(&x, iv(-0.5, 1.0), 1.0, 1e-12).unwrap();
        assert!((m.value - 0.625 / 1.5).abs() < 1e-12);
        let m = quad_mean_even(&x, iv(-3.0, -1.0), 1.0, 1e-12).unwrap();
        assert!((m.value - 2.0).abs() < 1e-12);
    }

    #[test]
    fn affine_power_near_origin() {
        // (x^-0.5 + 1)^2 = x^-1 + 2 x^-0.5 + 1 is not summable; order 1 is.
        let f = FunctionSpec::affine_power(1.0, -0.5, 1.0).unwrap();
        let m = quad_mean(&f, iv(0.0, 1.0), 1.0, 1e-11).unwrap();
        assert!((m.value - 3.0).abs() < 1e-9, "{}", m.value);
        assert!(matches!(quad_mean(&f, iv(0.0, 1.0), 2.0, 1e-10), Err(Error::Domain(_))));
        // increasing with offset: ∫_0^1 (2 x^0.5 + 1) = 4/3 + 1
        let f = FunctionSpec::affine_power(2.0, 0.5, 1.0).unwrap();
        let m = quad_mean(&f, iv(0.0, 1.0), 1.0, 1e-12).unwrap();
        assert!((m.value - 7.0 / 3.0).abs() < 1e-10);
    }

    #[test]
    fn exp_decay_mean() {
        let f = FunctionSpec::exp_decay(2.0).unwrap();
        // mean of e^{-2x} on (0, 3)
        let want = (1.0 - (-6.0f64).exp()) / 6.0;
        let m = quad_mean(&f, iv(0.0, 3.0), 1.0, 1e-13).unwrap();
        assert!((m.value - want).abs() < 1e-12);
    }

    #[test]
    fn table_interpolation_and_range() {
        let t = SampledTable::new(vec![0.0, 1.0, 3.0], vec![1.0, 3.0, 3.0]).unwrap();
        assert_eq!(t.eval(0.5), Some(2.0));
        assert_eq!(t.eval(2.0), Some(3.0));
        assert_eq!(t.eval(3.5), None);
        let f = FunctionSpec::sampled(t, Monotonicity::Increasing).unwrap();
        // ∫_0^3 = 2 + 6
        let m = quad_mean(&f, iv(0.0, 3.0), 1.0, 1e-13).unwrap();
        assert!((m.value - 8.0 / 3.0).abs() < 1e-13);
        assert!(matches!(quad_mean(&f, iv(1.0, 4.0), 1.0, 1e-8), Err(Error::Data(_))));
    }

    #[test]
    fn table_validation() {
        assert!(SampledTable::new(vec![1.0], vec![1.0]).is_err());
        assert!(SampledTable::new(vec![1.0, 1.0], vec![1.0, 2.0]).is_err());
        assert!(SampledTable::new(vec![1.0, 2.0], vec![1.0, -2.0]).is_err());
        assert!(SampledTable::new(vec![-1.0, 2.0], vec![1.0, 2.0]).is_err());
        let t = SampledTable::new(vec![1.0, 2.0, 3.0], vec![1.0, 2.0, 1.5]).unwrap();
        assert!(FunctionSpec::sampled(t.clone(), Monotonicity::Increasing).is_err());
        assert!(FunctionSpec::sampled(t.clone(), Monotonicity::Decreasing).is_err());
        assert!(FunctionSpec::sampled(t, Monotonicity::Unknown).is_ok());
    }

    #[test]
    fn zeros_reject_negative_orders() {
        let t = SampledTable::new(vec![0.0, 1.0, 2.0], vec![0.0, 1.0, 2.0]).unwrap();
        let f = FunctionSpec::sampled(t, Monotonicity::Unknown).unwrap();
        assert!(quad_mean(&f, iv(0.5, 2.0), 1.0, 1e-10).is_ok());
        assert!(matches!(quad_mean(&f, iv(0.5, 2.0), -1.0, 1e-10), Err(Error::Data(_))));
    }

    #[test]
    fn analytic_monotonicity_is_checked() {
        assert!(FunctionSpec::new(FunctionKind::PowerLaw { gamma: -1.0 }, Monotonicity::Increasing).is_err());
        assert!(FunctionSpec::new(FunctionKind::ExpDecay { rate: 1.0 }, Monotonicity::Increasing).is_err());
        assert!(FunctionSpec::new(FunctionKind::PowerLaw { gamma: 0.0 }, Monotonicity::Decreasing).is_ok());
        assert!(FunctionSpec::exp_decay(0.0).is_err());
        assert!(FunctionSpec::affine_power(1.0, 1.0, -1.0).is_err());
    }

    #[test]
    fn csv_ingestion() {
        let data = "x,f\n0.0, 2\n0.5,3\n1,4\n";
        let t = SampledTable::from_csv_reader(data.as_bytes()).unwrap();
        assert_eq!(t.xs(), &[0.0, 0.5, 1.0]);
        assert_eq!(t.values(), &[2.0, 3.0, 4.0]);
        assert!(SampledTable::from_csv_reader("x,y\n1,2\n2,3\n".as_bytes()).is_err());
        assert!(SampledTable::from_csv_reader("x,f\n1,2\n0.5,3\n".as_bytes()).is_err());
        assert!(SampledTable::from_csv_reader("x,f\n1,abc\n2,3\n".as_bytes()).is_err());
    }
}
