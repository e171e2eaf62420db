//! Self-check suites: library results against closed forms and the
//! brute-force oracle. Used by `rhi verify`.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::classconst::{
    a_bar, approach_sequence, c_class, domain_end, gamma_sweep, majorant, sharpness_table, sharpness_table_alpha,
    GammaLimit,
};
use crate::config::SearchConfig;
use crate::domain::{ExponentPair, ExtReal, Interval};
use crate::error::Result;
use crate::generic::{estimate_p, estimate_r};
use crate::means::{
    mean_ratio, power_mean_closed, quad_mean, quad_mean_even, FunctionSpec, Monotonicity, SampledTable,
};
use crate::oracle::{brute_max_c, brute_p, brute_r, reference_mean, OracleConfig};
use crate::power::{c_eps, maximize_c, p_constant, r_constant, residual13_terms};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Means,
    Power,
    Class,
    Generic,
}

impl Suite {
    pub const ALL: [Suite; 4] = [Suite::Means, Suite::Power, Suite::Class, Suite::Generic];

    pub fn label(self) -> &'static str {
        match self {
            Suite::Means => "means",
            Suite::Power => "power",
            Suite::Class => "class",
            Suite::Generic => "generic",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub suite: Suite,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:4}  {:8} {:40} {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.suite.label(),
            self.name,
            self.detail
        )
    }
}

struct Recorder {
    suite: Suite,
    checks: Vec<Check>,
}

impl Recorder {
    fn new(suite: Suite) -> Self {
        Self { suite, checks: Vec::new() }
    }

    /// Records `body`'s verdict; an error counts as a failure.
    fn check(&mut self, name: &str, body: impl FnOnce() -> Result<(bool, String)>) {
        let (passed, detail) = match body() {
            Ok(v) => v,
            Err(e) => (false, format!("error: {e}")),
        };
        self.checks.push(Check {
            suite: self.suite,
            name: name.to_string(),
            passed,
            detail,
        });
    }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

/// Random admissible pair, all three sign cases.
pub fn random_pair(rng: &mut impl Rng) -> ExponentPair {
    loop {
        let (a, b) = match rng.gen_range(0..3) {
            0 => {
                let a = rng.gen_range(0.2..3.0);
                (a, a + rng.gen_range(0.2..3.0))
            }
            1 => {
                let b = -rng.gen_range(0.2..3.0);
                (b - rng.gen_range(0.2..3.0), b)
            }
            _ => (-rng.gen_range(0.2..3.0), rng.gen_range(0.2..3.0)),
        };
        if let Ok(p) = ExponentPair::new(a, b) {
            return p;
        }
    }
}

/// Random nonzero exponent well inside the admissible domain of `pair`.
pub fn random_gamma(rng: &mut impl Rng, pair: &ExponentPair) -> f64 {
    let d = pair.gamma_domain();
    let lo = match d.lower {
        ExtReal::Finite(x) => 0.9 * x,
        _ => -5.0,
    };
    let hi = match d.upper {
        ExtReal::Finite(x) => 0.9 * x,
        _ => 5.0,
    };
    loop {
        let g = rng.gen_range(lo..hi);
        if g.abs() > 1e-3 {
            return g;
        }
    }
}

/// Runs one suite; deterministic for a fixed seed.
pub fn run_suite(suite: Suite, seed: u64) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (suite as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
    let mut r = Recorder::new(suite);
    match suite {
        Suite::Means => means_suite(&mut r, &mut rng),
        Suite::Power => power_suite(&mut r, &mut rng),
        Suite::Class => class_suite(&mut r, &mut rng),
        Suite::Generic => generic_suite(&mut r),
    }
    r.checks
}

pub fn run_all(seed: u64) -> Vec<Check> {
    Suite::ALL.iter().flat_map(|&s| run_suite(s, seed)).collect()
}

fn means_suite(r: &mut Recorder, rng: &mut ChaCha8Rng) {
    let tol = 1e-11;
    let oracle = OracleConfig::default();

    let cases: Vec<(f64, f64, f64)> = (0..40)
        .map(|_| {
            let order = rng.gen_range(0.3..3.0) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
            let s = rng.gen_range(-0.8..4.0);
            (s / order, order, rng.gen_range(0.01..20.0))
        })
        .collect();
    r.check("power law means match closed form", || {
        let mut worst: f64 = 0.0;
        for &(g, order, eps) in &cases {
            let f = FunctionSpec::power_law(g)?;
            let q = quad_mean(&f, Interval::new(0.0, eps)?, order, tol)?.value;
            worst = worst.max(rel(q, power_mean_closed(g, order, eps)?));
        }
        Ok((worst <= 1e-9, format!("40 cases, worst rel err {worst:.2e}")))
    });

    let reference = |name: &str, f: FunctionSpec, iv: (f64, f64), orders: &[f64], r: &mut Recorder| {
        let orders = orders.to_vec();
        r.check(name, || {
            let i = Interval::new(iv.0, iv.1)?;
            let mut worst: f64 = 0.0;
            for &o in &orders {
                let q = quad_mean(&f, i, o, tol)?.value;
                worst = worst.max(rel(q, reference_mean(&f, i, o, &oracle)?));
            }
            Ok((worst <= 1e-8, format!("worst rel err {worst:.2e} vs tanh-sinh")))
        });
    };
    reference("exp decay means match oracle", FunctionSpec::exp_decay(1.5).unwrap(), (0.0, 4.0), &[-2.0, 0.5, 3.0], r);
    reference(
        "affine power means match oracle",
        FunctionSpec::affine_power(2.0, -0.4, 0.3).unwrap(),
        (0.0, 2.0),
        &[-3.0, 1.0, 2.0],
        r,
    );
    let table = SampledTable::new(vec![0.0, 0.5, 1.5, 3.0], vec![1.0, 3.0, 0.5, 2.0]).unwrap();
    reference(
        "sampled table means match oracle",
        FunctionSpec::sampled(table.clone(), Monotonicity::Unknown).unwrap(),
        (0.2, 2.7),
        &[-1.0, 1.0, 4.0],
        r,
    );

    let holder: Vec<(f64, f64, f64, f64, f64)> = (0..30)
        .map(|_| {
            let a = rng.gen_range(-3.0..3.0f64);
            let b = a + rng.gen_range(0.1..3.0);
            (a, b, rng.gen_range(0.0..2.0), rng.gen_range(0.1..5.0), rng.gen_range(0.2..2.0))
        })
        .collect();
    r.check("means increase with the order", || {
        let mut bad = 0;
        for &(a, b, lo, len, rate) in &holder {
            if a == 0.0 || b == 0.0 {
                continue;
            }
            let f = FunctionSpec::exp_decay(rate)?;
            let i = Interval::new(lo, lo + len)?;
            if quad_mean(&f, i, a, tol)?.value > quad_mean(&f, i, b, tol)?.value * (1.0 + 1e-12) {
                bad += 1;
            }
        }
        Ok((bad == 0, format!("{bad} violations in {}", holder.len())))
    });

    r.check("constant function mean", || {
        let f = FunctionSpec::constant(2.5)?;
        let m = quad_mean(&f, Interval::new(0.3, 7.0)?, -1.7, tol)?.value;
        Ok((rel(m, 2.5) < 1e-13, format!("mean {m}")))
    });

    r.check("even mean mirror symmetry", || {
        let f = FunctionSpec::affine_power(1.0, 0.7, 0.1)?;
        let a = quad_mean_even(&f, Interval::new(-0.3, 2.0)?, 1.5, tol)?.value;
        let b = quad_mean_even(&f, Interval::new(-2.0, 0.3)?, 1.5, tol)?.value;
        Ok((rel(a, b) < 1e-12, format!("{a} vs {b}")))
    });

    r.check("even mean on the half-line", || {
        let f = FunctionSpec::exp_decay(0.7)?;
        let i = Interval::new(0.0, 3.0)?;
        let a = quad_mean_even(&f, i, -1.2, tol)?.value;
        let b = quad_mean(&f, i, -1.2, tol)?.value;
        Ok((rel(a, b) < 1e-13, format!("{a} vs {b}")))
    });

    r.check("means are homogeneous", || {
        let i = Interval::new(0.0, 1.3)?;
        let one = quad_mean(&FunctionSpec::affine_power(1.0, 0.5, 0.0)?, i, 2.2, tol)?.value;
        let three = quad_mean(&FunctionSpec::affine_power(3.0, 0.5, 0.0)?, i, 2.2, tol)?.value;
        Ok((rel(three, 3.0 * one) < 1e-11, format!("{three} vs 3*{one}")))
    });
}

fn power_suite(r: &mut Recorder, rng: &mut ChaCha8Rng) {
    let cfg = SearchConfig::default();
    for (a, b, g) in [(1.0, 2.0, 1.0), (-1.0, 1.0, 0.5), (-3.0, -1.0, -2.0), (1.0, 2.0, -0.3)] {
        r.check(&format!("curve maximum vs grid ({a},{b},{g})"), || {
            let p = ExponentPair::new(a, b)?;
            let m = maximize_c(&p, g, &cfg)?;
            let (_, v) = brute_max_c(&p, g, 200_000);
            let ok = m.c_max >= v - 1e-12 && m.c_max - v <= 1e-8;
            Ok((ok, format!("optimizer {:.15} grid {:.15}", m.c_max, v)))
        });
    }

    let samples: Vec<(ExponentPair, f64)> = (0..50)
        .map(|_| {
            let p = random_pair(rng);
            (p, random_gamma(rng, &p))
        })
        .collect();
    r.check("curve exceeds one inside (0,1)", || {
        let mut worst = f64::INFINITY;
        for (p, g) in &samples {
            for k in 1..20 {
                worst = worst.min(c_eps(p, *g, k as f64 / 20.0)?);
            }
        }
        Ok((worst > 1.0, format!("min over 950 points {worst:.17}")))
    });
    r.check("curve equals one at both ends", || {
        let mut worst: f64 = 0.0;
        for (p, g) in &samples {
            worst = worst.max((c_eps(p, *g, 0.0)? - 1.0).abs());
            worst = worst.max((c_eps(p, *g, 1.0)? - 1.0).abs());
        }
        Ok((worst <= 1e-12, format!("max deviation {worst:.2e}")))
    });
    r.check("critical equation at maximizers", || {
        let mut worst: f64 = 0.0;
        for (p, g) in &samples {
            let rep = r_constant(p, *g, &cfg)?;
            if rep.residual13_applicable {
                worst = worst.max(rep.residual13.abs() / rep.residual13_scale);
            }
        }
        Ok((worst <= 1e-8, format!("max scaled residual {worst:.2e}")))
    });
    r.check("critical equation vanishes at eps=1", || {
        let mut worst: f64 = 0.0;
        for (p, g) in &samples {
            worst = worst.max(residual13_terms(p, *g, 1.0)?.value.abs());
        }
        Ok((worst <= 1e-12, format!("max |residual| {worst:.2e}")))
    });
    r.check("R equals curve maximum times P", || {
        let mut worst: f64 = 0.0;
        for (p, g) in samples.iter().take(10) {
            let rep = r_constant(p, *g, &cfg)?;
            worst = worst.max(rel(rep.r_const, rep.c_max * p_constant(p, *g)?));
        }
        Ok((worst <= 1e-15, format!("max rel err {worst:.2e}")))
    });
    r.check("P closed form vs quadrature", || {
        let mut worst: f64 = 0.0;
        for (p, g) in samples.iter().take(10) {
            let f = FunctionSpec::power_law(*g)?;
            let q = mean_ratio(&f, Interval::new(0.0, 1.7)?, p, 1e-12)?;
            worst = worst.max(rel(q, p_constant(p, *g)?));
        }
        Ok((worst <= 1e-9, format!("max rel err {worst:.2e}")))
    });
    r.check("constant exponent gives unit constants", || {
        let rep = r_constant(&ExponentPair::new(1.0, 2.0)?, 0.0, &cfg)?;
        let ok = rep.p_const == 1.0 && rep.c_max == 1.0 && rep.r_const == 1.0;
        Ok((ok, format!("P={} C={} R={}", rep.p_const, rep.c_max, rep.r_const)))
    });
}

fn class_suite(r: &mut Recorder, rng: &mut ChaCha8Rng) {
    let cfg = SearchConfig::default();
    r.check("constants for (1,2)", || {
        let p = ExponentPair::new(1.0, 2.0)?;
        let ok = c_class(&p).0 == 2f64.sqrt() && a_bar(&p) == 2.0;
        Ok((ok, format!("c={} a={}", c_class(&p).0, a_bar(&p))))
    });
    r.check("constants for (-1,1)", || {
        let p = ExponentPair::new(-1.0, 1.0)?;
        let ok = c_class(&p).0 == 2.0 && a_bar(&p) == 4.0;
        Ok((ok, format!("c={} a={}", c_class(&p).0, a_bar(&p))))
    });
    let seam = |name: &str, left: (f64, f64), right: (f64, f64), r: &mut Recorder| {
        r.check(name, || {
            let l = c_class(&ExponentPair::new(left.0, left.1)?).0;
            let rr = c_class(&ExponentPair::new(right.0, right.1)?).0;
            Ok(((l - rr).abs() <= 1e-12, format!("{l} | {rr}")))
        });
    };
    let h = 1e-14;
    seam("seam alpha=beta/2", (1.0 - h, 2.0), (1.0 + h, 2.0), r);
    seam("seam alpha=2*beta", (-2.0 - h, -1.0), (-2.0 + h, -1.0), r);
    seam("seam beta=-alpha", (-1.0, 1.0 - h), (-1.0, 1.0 + h), r);

    let pairs: Vec<ExponentPair> = (0..100).map(|_| random_pair(rng)).collect();
    r.check("class constant below upper estimate", || {
        let bad = pairs.iter().filter(|p| !(c_class(p).0 < a_bar(p))).count();
        Ok((bad == 0, format!("{bad} of {} pairs violate", pairs.len())))
    });
    let curves: Vec<(ExponentPair, f64, f64)> = pairs
        .iter()
        .take(30)
        .map(|p| (*p, random_gamma(rng, p), rng.gen_range(0.0..1.0)))
        .collect();
    r.check("majorant dominates the curve", || {
        let mut bad = 0;
        for (p, g, e) in &curves {
            if c_eps(p, *g, *e)? > majorant(p, *g, *e)? * (1.0 + 1e-12) {
                bad += 1;
            }
        }
        Ok((bad == 0, format!("{bad} violations")))
    });
    r.check("sweep to +inf increases to 2^(1/2)", || {
        let p = ExponentPair::new(1.0, 2.0)?;
        let rows = gamma_sweep(&p, &approach_sequence(GammaLimit::PlusInfinity, 4), &cfg)?;
        let mono = rows.windows(2).all(|w| w[1].c > w[0].c);
        let last = rows.last().map_or(0.0, |x| x.c);
        let ok = mono && last >= 0.98 * 2f64.sqrt() && last <= 2f64.sqrt();
        Ok((ok, format!("last C {last:.12}")))
    });
    r.check("sweep to -1/beta increases to 2^(1/beta)", || {
        let p = ExponentPair::new(1.0, 2.0)?;
        let rows = gamma_sweep(&p, &approach_sequence(domain_end(&p, false), 20), &cfg)?;
        let mono = rows.windows(2).all(|w| w[1].c > w[0].c);
        let last = rows.last().map_or(0.0, |x| x.c);
        let ok = mono && last >= 0.98 * 2f64.sqrt() && last <= 2f64.sqrt();
        Ok((ok, format!("last C {last:.12}")))
    });
    r.check("sweeps stay below the class constant", || {
        let mut worst = f64::NEG_INFINITY;
        for p in pairs.iter().take(10) {
            let gs: Vec<f64> = [false, true]
                .iter()
                .flat_map(|&up| approach_sequence(domain_end(p, up), 6))
                .collect();
            for row in gamma_sweep(p, &gs, &cfg)? {
                worst = worst.max(row.c - c_class(p).0);
            }
        }
        Ok((worst <= 1e-12, format!("max C - c_class {worst:.2e}")))
    });
    r.check("sharpness ratio rises to one (beta)", || {
        let betas: Vec<f64> = (1..=10).map(|k| 2f64.powi(k)).collect();
        let rows = sharpness_table(1.0, &betas)?;
        let mono = rows.windows(2).all(|w| w[1].ratio > w[0].ratio);
        let last = rows.last().map_or(0.0, |x| x.ratio);
        let ok = mono && last >= 0.999 && (last - 2f64.powf(-1.0 / 1024.0)).abs() < 1e-15;
        Ok((ok, format!("last ratio {last:.15}")))
    });
    r.check("sharpness ratio rises to one (alpha)", || {
        let alphas: Vec<f64> = (2..=10).map(|k| -(2f64.powi(k))).collect();
        let rows = sharpness_table_alpha(-1.0, &alphas)?;
        let mono = rows.windows(2).all(|w| w[1].ratio > w[0].ratio);
        let last = rows.last().map_or(0.0, |x| x.ratio);
        Ok((mono && last >= 0.999, format!("last ratio {last:.15}")))
    });
}

fn generic_suite(r: &mut Recorder) {
    let cfg = SearchConfig::default();
    let oracle = OracleConfig::default();
    let suite: Vec<(&str, FunctionSpec, ExponentPair)> = vec![
        ("x^1", FunctionSpec::power_law(1.0).unwrap(), ExponentPair::new(1.0, 2.0).unwrap()),
        ("x^-0.4", FunctionSpec::power_law(-0.4).unwrap(), ExponentPair::new(-1.0, 1.0).unwrap()),
        ("exp(-x)", FunctionSpec::exp_decay(1.0).unwrap(), ExponentPair::new(1.0, 2.0).unwrap()),
        (
            "2x^0.5+0.3",
            FunctionSpec::affine_power(2.0, 0.5, 0.3).unwrap(),
            ExponentPair::new(-2.0, -1.0).unwrap(),
        ),
        (
            "table",
            FunctionSpec::sampled(
                SampledTable::new(vec![0.0, 1.0, 2.0, 4.0], vec![0.5, 1.0, 3.0, 3.5]).unwrap(),
                Monotonicity::Increasing,
            )
            .unwrap(),
            ExponentPair::new(-1.0, 2.0).unwrap(),
        ),
    ];
    for (name, f, p) in &suite {
        r.check(&format!("P estimate vs oracle, {name}"), || {
            let est = estimate_p(f, p, &cfg)?.value;
            let brute = brute_p(f, p, &oracle)?;
            let err = rel(est, brute);
            Ok((err <= 1e-4, format!("estimate {est:.10} oracle {brute:.10}")))
        });
    }
    for (name, f, p) in &suite {
        r.check(&format!("R/P below upper estimate, {name}"), || {
            let ratio = estimate_r(f, p, &cfg)?.value / estimate_p(f, p, &cfg)?.value;
            Ok((ratio <= a_bar(p) + 1e-6, format!("ratio {ratio:.10} bound {}", a_bar(p))))
        });
    }
    r.check("unrestricted search below 1-D reduction", || {
        let mut worst = f64::NEG_INFINITY;
        for (_, f, p) in &suite {
            let one = estimate_p(f, p, &cfg)?.value;
            worst = worst.max(brute_p(f, p, &oracle)? - one);
        }
        Ok((worst <= 1e-4, format!("max excess {worst:.2e}")))
    });
    r.check("R of x^1 vs curve maximum", || {
        let p = ExponentPair::new(1.0, 2.0)?;
        let f = FunctionSpec::power_law(1.0)?;
        let est = estimate_r(&f, &p, &cfg)?.value;
        let want = r_constant(&p, 1.0, &cfg)?.r_const;
        Ok((rel(est, want) <= 1e-6, format!("estimate {est:.12} closed {want:.12}")))
    });
    r.check("oracle R of x^1 vs curve maximum", || {
        let p = ExponentPair::new(1.0, 2.0)?;
        let f = FunctionSpec::power_law(1.0)?;
        let brute = brute_r(&f, &p, &oracle)?;
        let want = r_constant(&p, 1.0, &cfg)?.r_const;
        Ok((brute <= want + 1e-9 && rel(brute, want) <= 1e-3, format!("oracle {brute:.12} closed {want:.12}")))
    });
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_pass_and_are_deterministic() {
        let a = run_suite(Suite::Power, 7);
        assert!(a.iter().all(|c| c.passed), "{:#?}", a.iter().filter(|c| !c.passed).collect::<Vec<_>>());
        assert_eq!(a, run_suite(Suite::Power, 7));
        let m = run_suite(Suite::Means, 7);
        assert!(m.iter().all(|c| c.passed), "{:#?}", m.iter().filter(|c| !c.passed).collect::<Vec<_>>());
    }

    #[test]
    fn random_samples_are_admissible() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..500 {
            let p = random_pair(&mut rng);
            let g = random_gamma(&mut rng, &p);
            assert!(p.gamma_domain().validate(g).is_ok());
        }
    }
}
