//! Validated exponent pairs, the admissible power-exponent domain and intervals.

use std::fmt;

use crate::error::{Error, Result};

/// Relative distance to a finite end of the admissible exponent domain below
/// which a power exponent is rejected by [`GammaDomain::validate`].
pub const GAMMA_BOUNDARY_REL: f64 = 1e-9;

/// Sign regime of an exponent pair.
///
/// The three regimes carry different closed forms for every class constant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Case {
    /// `0 < alpha < beta`
    PosPos,
    /// `alpha < beta < 0`
    NegNeg,
    /// `alpha < 0 < beta`
    NegPos,
}

impl Case {
    pub fn label(self) -> &'static str {
        match self {
            Case::PosPos => "PosPos",
            Case::NegNeg => "NegNeg",
            Case::NegPos => "NegPos",
        }
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Pair of mean orders `alpha < beta`, both nonzero and finite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExponentPair {
    alpha: f64,
    beta: f64,
}

impl ExponentPair {
    /// Rejects `alpha >= beta` instead of swapping: every formula downstream is
    /// orientation-sensitive.
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !alpha.is_finite() || !beta.is_finite() {
            return Err(Error::domain(format!(
                "exponents must be finite (alpha={alpha}, beta={beta})"
            )));
        }
        if alpha == 0.0 || beta == 0.0 {
            return Err(Error::domain(format!(
                "exponents must be nonzero (alpha={alpha}, beta={beta})"
            )));
        }
        if alpha >= beta {
            return Err(Error::domain(format!(
                "alpha must be strictly less than beta (alpha={alpha}, beta={beta})"
            )));
        }
        Ok(Self { alpha, beta })
    }

    #[inline]
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    #[inline]
    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn case(&self) -> Case {
        classify_case(self)
    }

    pub fn gamma_domain(&self) -> GammaDomain {
        gamma_domain(self)
    }
}

impl fmt::Display for ExponentPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.alpha, self.beta)
    }
}

pub fn classify_case(pair: &ExponentPair) -> Case {
    match (pair.alpha > 0.0, pair.beta > 0.0) {
        (true, _) => Case::PosPos,
        (false, false) => Case::NegNeg,
        (false, true) => Case::NegPos,
    }
}

/// A real number or one of the two infinities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtReal {
    NegInf,
    Finite(f64),
    PosInf,
}

impl ExtReal {
    pub fn finite(self) -> Option<f64> {
        match self {
            ExtReal::Finite(x) => Some(x),
            _ => None,
        }
    }
}

impl fmt::Display for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtReal::NegInf => f.write_str("-inf"),
            ExtReal::Finite(x) => write!(f, "{x}"),
            ExtReal::PosInf => f.write_str("+inf"),
        }
    }
}

/// Open interval of power exponents `gamma` with `alpha*gamma > -1` and
/// `beta*gamma > -1`, i.e. those for which `x^gamma` has finite positive means
/// of both orders near the origin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaDomain {
    pub lower: ExtReal,
    pub upper: ExtReal,
}

impl GammaDomain {
    pub fn contains(&self, gamma: f64) -> bool {
        if !gamma.is_finite() {
            return false;
        }
        let above = match self.lower {
            ExtReal::NegInf => true,
            ExtReal::Finite(lo) => gamma > lo,
            ExtReal::PosInf => false,
        };
        let below = match self.upper {
            ExtReal::PosInf => true,
            ExtReal::Finite(hi) => gamma < hi,
            ExtReal::NegInf => false,
        };
        above && below
    }

    /// Membership plus a guard band of relative width [`GAMMA_BOUNDARY_REL`]
    /// at each finite end, where the constants degenerate.
    pub fn validate(&self, gamma: f64) -> Result<()> {
        if !self.contains(gamma) {
            return Err(Error::domain(format!(
                "gamma={gamma} lies outside the admissible domain ({}, {})",
                self.lower, self.upper
            )));
        }
        for bound in [self.lower, self.upper].into_iter().filter_map(ExtReal::finite) {
            if (gamma - bound).abs() <= GAMMA_BOUNDARY_REL * bound.abs() {
                return Err(Error::domain(format!(
                    "gamma={gamma} is within {GAMMA_BOUNDARY_REL:e} (relative) of the domain boundary {bound}"
                )));
            }
        }
        Ok(())
    }
}

impl fmt::Display for GammaDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.lower, self.upper)
    }
}

pub fn gamma_domain(pair: &ExponentPair) -> GammaDomain {
    let (a, b) = (pair.alpha, pair.beta);
    match classify_case(pair) {
        Case::PosPos => GammaDomain {
            lower: ExtReal::Finite(-1.0 / b),
            upper: ExtReal::PosInf,
        },
        Case::NegNeg => GammaDomain {
            lower: ExtReal::NegInf,
            upper: ExtReal::Finite(-1.0 / a),
        },
        Case::NegPos => GammaDomain {
            lower: ExtReal::Finite(-1.0 / b),
            upper: ExtReal::Finite(-1.0 / a),
        },
    }
}

/// Bounded interval with positive length.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !lo.is_finite() || !hi.is_finite() {
            return Err(Error::domain(format!("interval ends must be finite ({lo}, {hi})")));
        }
        if lo >= hi {
            return Err(Error::domain(format!("empty interval ({lo}, {hi})")));
        }
        Ok(Self { lo, hi })
    }

    #[inline]
    pub fn lo(&self) -> f64 {
        self.lo
    }

    #[inline]
    pub fn hi(&self) -> f64 {
        self.hi
    }

    #[inline]
    pub fn len(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.lo, self.hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn pair(a: f64, b: f64) -> ExponentPair {
        ExponentPair::new(a, b).unwrap()
    }

    #[test]
    fn classify_examples() {
        assert_eq!(pair(1.0, 2.0).case(), Case::PosPos);
        assert_eq!(pair(-2.0, -1.0).case(), Case::NegNeg);
        assert_eq!(pair(-1.0, 1.0).case(), Case::NegPos);
    }

    #[test]
    fn rejects_bad_pairs() {
        assert!(ExponentPair::new(2.0, 1.0).is_err());
        assert!(ExponentPair::new(1.0, 1.0).is_err());
        assert!(ExponentPair::new(0.0, 1.0).is_err());
        assert!(ExponentPair::new(-1.0, 0.0).is_err());
        assert!(ExponentPair::new(f64::NAN, 1.0).is_err());
        assert!(ExponentPair::new(1.0, f64::INFINITY).is_err());
    }

    #[test]
    fn domain_examples() {
        let d = pair(1.0, 2.0).gamma_domain();
        assert_eq!(d.lower, ExtReal::Finite(-0.5));
        assert_eq!(d.upper, ExtReal::PosInf);

        let d = pair(-2.0, -1.0).gamma_domain();
        assert_eq!(d.lower, ExtReal::NegInf);
        assert_eq!(d.upper, ExtReal::Finite(0.5));

        let d = pair(-1.0, 1.0).gamma_domain();
        assert_eq!(d.lower, ExtReal::Finite(-1.0));
        assert_eq!(d.upper, ExtReal::Finite(1.0));
    }

    #[test]
    fn validate_rejects_boundary_band() {
        let d = pair(1.0, 2.0).gamma_domain();
        assert!(d.validate(-0.5).is_err());
        assert!(d.validate(-0.5 + 1e-12).is_err());
        assert!(d.validate(-0.5 + 1e-6).is_ok());
        assert!(d.validate(1e6).is_ok());
        assert!(d.validate(f64::INFINITY).is_err());
    }

    #[test]
    fn membership_matches_direct_products() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut checked = 0;
        while checked < 1000 {
            let a: f64 = rng.gen_range(-5.0..5.0);
            let b: f64 = rng.gen_range(-5.0..5.0);
            let Ok(p) = ExponentPair::new(a.min(b), a.max(b)) else {
                continue;
            };
            let g: f64 = rng.gen_range(-10.0..10.0);
            let direct = p.alpha() * g > -1.0 && p.beta() * g > -1.0;
            assert_eq!(p.gamma_domain().contains(g), direct, "pair {p} gamma {g}");
            checked += 1;
        }
    }

    #[test]
    fn interval_requires_positive_length() {
        assert!(Interval::new(1.0, 1.0).is_err());
        assert!(Interval::new(2.0, 1.0).is_err());
        let i = Interval::new(-0.5, 1.0).unwrap();
        assert_eq!(i.len(), 1.5);
    }
}
