//! Class-level constants.
//!
//! * `a_bar`: upper estimate for how much the half-line constant of any
//!   non-negative function can grow under even extension.
//! * `c_class`: the exact supremum of that growth over power functions.
//!
//! The true growth constant over all functions lies in `[c_class, a_bar]`
//! and is not computed here.

use std::fmt;

use rayon::prelude::*;

use crate::config::SearchConfig;
use crate::domain::{Case, ExponentPair, ExtReal};
use crate::error::{Error, Result};
use crate::power::{maximize_c, p_constant};

/// Piecewise branch of `c_class` active for a pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    /// `0 < alpha <= beta/2`: `2^{1/alpha - 1/beta}`
    PosPosWide,
    /// `beta/2 < alpha < beta`: `2^{1/beta}`
    PosPosNarrow,
    /// `alpha <= 2 beta < 0`: `2^{1/alpha - 1/beta}`
    NegNegWide,
    /// `2 beta < alpha < beta`: `2^{-1/alpha}`
    NegNegNarrow,
    /// `0 < beta <= -alpha`: `2^{1/beta}`
    MixedBetaSmall,
    /// `beta > -alpha`: `2^{-1/alpha}`
    MixedAlphaSmall,
}

impl Branch {
    pub fn label(self) -> &'static str {
        match self {
            Branch::PosPosWide => "A: 0<alpha<=beta/2",
            Branch::PosPosNarrow => "A: beta/2<alpha<beta",
            Branch::NegNegWide => "B: alpha<=2*beta",
            Branch::NegNegNarrow => "B: 2*beta<alpha<beta",
            Branch::MixedBetaSmall => "C: 0<beta<=-alpha",
            Branch::MixedAlphaSmall => "C: beta>-alpha",
        }
    }

    /// End of the admissible exponent domain along which the power-law
    /// ratio `R/P` tends to the branch value.
    pub fn limit(self, pair: &ExponentPair) -> GammaLimit {
        match self {
            Branch::PosPosWide => GammaLimit::PlusInfinity,
            Branch::NegNegWide => GammaLimit::MinusInfinity,
            Branch::PosPosNarrow | Branch::MixedBetaSmall => GammaLimit::Lower(-1.0 / pair.beta()),
            Branch::NegNegNarrow | Branch::MixedAlphaSmall => GammaLimit::Upper(-1.0 / pair.alpha()),
        }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GammaLimit {
    PlusInfinity,
    MinusInfinity,
    /// Open lower end `-1/beta`.
    Lower(f64),
    /// Open upper end `-1/alpha`.
    Upper(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassConstants {
    pub pair: ExponentPair,
    pub a_bar: f64,
    pub c_class: f64,
    pub branch: Branch,
    pub sharpness_ratio: f64,
}

/// Upper estimate of the extension growth over all non-negative functions.
pub fn a_bar(pair: &ExponentPair) -> f64 {
    let (a, b) = (pair.alpha(), pair.beta());
    match pair.case() {
        Case::PosPos => 2f64.powf(1.0 / a),
        Case::NegNeg => 2f64.powf(-1.0 / b),
        Case::NegPos => 2f64.powf(1.0 / b - 1.0 / a),
    }
}

/// Supremum of the extension growth over power functions, with its branch.
pub fn c_class(pair: &ExponentPair) -> (f64, Branch) {
    let (a, b) = (pair.alpha(), pair.beta());
    match pair.case() {
        Case::PosPos => {
            if a <= b / 2.0 {
                (2f64.powf(1.0 / a - 1.0 / b), Branch::PosPosWide)
            } else {
                (2f64.powf(1.0 / b), Branch::PosPosNarrow)
            }
        }
        Case::NegNeg => {
            if a <= 2.0 * b {
                (2f64.powf(1.0 / a - 1.0 / b), Branch::NegNegWide)
            } else {
                (2f64.powf(-1.0 / a), Branch::NegNegNarrow)
            }
        }
        Case::NegPos => {
            if b <= -a {
                (2f64.powf(1.0 / b), Branch::MixedBetaSmall)
            } else {
                (2f64.powf(-1.0 / a), Branch::MixedAlphaSmall)
            }
        }
    }
}

pub fn class_constants(pair: &ExponentPair) -> ClassConstants {
    let a_bar = a_bar(pair);
    let (c_class, branch) = c_class(pair);
    ClassConstants {
        pair: *pair,
        a_bar,
        c_class,
        branch,
        sharpness_ratio: c_class / a_bar,
    }
}

/// Pointwise majorant of the power-law ratio curve `C(eps)` for the sign
/// regime of `(pair, gamma)`.
pub fn majorant(pair: &ExponentPair, gamma: f64, eps: f64) -> Result<f64> {
    pair.gamma_domain().validate(gamma)?;
    if !(0.0..=1.0).contains(&eps) {
        return Err(Error::domain(format!("eps={eps} must lie in [0, 1]")));
    }
    let (a, b) = (pair.alpha(), pair.beta());
    let grow = || (1.0 + eps).powf(1.0 / a - 1.0 / b);
    let shrink_beta = || (2.0 / (eps + 1.0)).powf(1.0 / b);
    let shrink_alpha = || ((eps + 1.0) / 2.0).powf(1.0 / a);
    Ok(match (pair.case(), gamma >= 0.0) {
        (Case::PosPos, true) => grow(),
        (Case::PosPos, false) => shrink_beta(),
        (Case::NegNeg, false) => grow(),
        (Case::NegNeg, true) => shrink_alpha(),
        (Case::NegPos, true) => shrink_alpha(),
        (Case::NegPos, false) => shrink_beta(),
    })
}

/// Maximum of [`majorant`] over `eps ∈ [0, 1]`, an upper bound for the curve maximum.
pub fn majorant_bound(pair: &ExponentPair, gamma: f64) -> Result<f64> {
    pair.gamma_domain().validate(gamma)?;
    let (a, b) = (pair.alpha(), pair.beta());
    Ok(match (pair.case(), gamma >= 0.0) {
        (Case::PosPos, true) | (Case::NegNeg, false) => 2f64.powf(1.0 / a - 1.0 / b),
        (Case::PosPos, false) | (Case::NegPos, false) => 2f64.powf(1.0 / b),
        (Case::NegNeg, true) | (Case::NegPos, true) => 2f64.powf(-1.0 / a),
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub gamma: f64,
    pub eps_star: f64,
    /// Maximum of the ratio curve, i.e. `R/P` for `x^gamma`.
    pub c: f64,
    pub p: f64,
    pub r: f64,
}

/// Curve maxima for a sequence of admissible exponents (row order preserved).
pub fn gamma_sweep(pair: &ExponentPair, gammas: &[f64], cfg: &SearchConfig) -> Result<Vec<SweepRow>> {
    gammas
        .par_iter()
        .map(|&gamma| {
            let p = p_constant(pair, gamma)?;
            let m = maximize_c(pair, gamma, cfg)?;
            Ok(SweepRow {
                gamma,
                eps_star: m.eps_star,
                c: m.c_max,
                p,
                r: m.c_max * p,
            })
        })
        .collect()
}

/// Distance to a finite domain end below which boundary sweeps stop,
/// relative to the end itself; stays clear of the validation guard band.
pub const APPROACH_MIN_REL: f64 = 1e-8;
/// Largest magnitude used when sweeping toward an infinite end.
pub const APPROACH_MAX_ABS: f64 = 1e8;

/// Exponents marching toward `limit`: halving distances for a finite end
/// (starting halfway between the end and zero), decades for an infinite one.
pub fn approach_sequence(limit: GammaLimit, count: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(count);
    match limit {
        GammaLimit::PlusInfinity | GammaLimit::MinusInfinity => {
            let sign = if limit == GammaLimit::PlusInfinity { 1.0 } else { -1.0 };
            let mut mag = 1.0;
            while out.len() < count && mag <= APPROACH_MAX_ABS {
                out.push(sign * mag);
                mag *= 10.0;
            }
        }
        GammaLimit::Lower(end) | GammaLimit::Upper(end) => {
            let mut dist = 0.5 * end.abs();
            while out.len() < count && dist >= APPROACH_MIN_REL * end.abs() {
                // the domain interior is on the side of zero
                out.push(end - end.signum() * dist);
                dist *= 0.5;
            }
        }
    }
    out
}

/// `approach_sequence` toward the limit of the active branch.
pub fn branch_approach(pair: &ExponentPair, count: usize) -> Vec<f64> {
    approach_sequence(c_class(pair).1.limit(pair), count)
}

/// Exponent-domain end on a given side, if finite.
pub fn domain_end(pair: &ExponentPair, upper: bool) -> GammaLimit {
    let d = pair.gamma_domain();
    match (upper, if upper { d.upper } else { d.lower }) {
        (_, ExtReal::Finite(x)) if upper => GammaLimit::Upper(x),
        (_, ExtReal::Finite(x)) => GammaLimit::Lower(x),
        (true, _) => GammaLimit::PlusInfinity,
        (false, _) => GammaLimit::MinusInfinity,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SharpnessRow {
    pub alpha: f64,
    pub beta: f64,
    pub c_class: f64,
    pub a_bar: f64,
    pub ratio: f64,
}

/// `c_class / a_bar` for a fixed `alpha` and a sequence of `beta`.
pub fn sharpness_table(alpha_fixed: f64, betas: &[f64]) -> Result<Vec<SharpnessRow>> {
    betas.iter().map(|&b| sharpness_row(alpha_fixed, b)).collect()
}

/// `c_class / a_bar` for a fixed `beta` and a sequence of `alpha` (the
/// `alpha -> -inf` direction).
pub fn sharpness_table_alpha(beta_fixed: f64, alphas: &[f64]) -> Result<Vec<SharpnessRow>> {
    alphas.iter().map(|&a| sharpness_row(a, beta_fixed)).collect()
}

fn sharpness_row(alpha: f64, beta: f64) -> Result<SharpnessRow> {
    let pair = ExponentPair::new(alpha, beta)?;
    let k = class_constants(&pair);
    Ok(SharpnessRow {
        alpha,
        beta,
        c_class: k.c_class,
        a_bar: k.a_bar,
        ratio: k.sharpness_ratio,
    })
}
