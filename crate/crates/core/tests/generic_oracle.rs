use rhi::generic::{estimate_p, estimate_r, extension_ratio};
use rhi::means::{FunctionSpec, Monotonicity, SampledTable};
use rhi::oracle::{brute_p, brute_r, OracleConfig};
use rhi::{ExponentPair, SearchConfig};

fn pair(a: f64, b: f64) -> ExponentPair {
    ExponentPair::new(a, b).unwrap()
}

fn bump() -> FunctionSpec {
    let t = SampledTable::new(vec![0.0, 1.0, 1.5, 3.0, 6.0], vec![1.0, 4.0, 0.7, 2.0, 0.3]).unwrap();
    FunctionSpec::sampled(t, Monotonicity::Unknown).unwrap()
}

/// The search must find at least what the brute-force grid finds, and not
/// run far past it.
fn agree(search: f64, oracle: f64) {
    assert!(search >= oracle * (1.0 - 1e-6), "search {search} below oracle {oracle}");
    assert!(search <= oracle * (1.0 + 1e-2), "search {search} far above oracle {oracle}");
}

#[test]
fn half_line_constant_of_non_monotone_table() {
    let cfg = SearchConfig::default();
    let oracle = OracleConfig::default();
    for p in [pair(1.0, 2.0), pair(-1.0, 1.0), pair(-2.0, -0.5)] {
        agree(estimate_p(&bump(), &p, &cfg).unwrap().value, brute_p(&bump(), &p, &oracle).unwrap());
    }
}

#[test]
fn extension_constant_of_affine_power() {
    let cfg = SearchConfig::default();
    let oracle = OracleConfig::default();
    let f = FunctionSpec::affine_power(2.0, -0.3, 1.0).unwrap();
    for p in [pair(1.0, 2.0), pair(-1.0, 1.0)] {
        let est = estimate_r(&f, &p, &cfg).unwrap();
        assert!(est.converged);
        agree(est.value, brute_r(&f, &p, &oracle).unwrap());
    }
}

#[test]
fn extension_never_lowers_the_constant() {
    let cfg = SearchConfig::default();
    for f in [bump(), FunctionSpec::exp_decay(0.5).unwrap(), FunctionSpec::power_law(0.5).unwrap()] {
        for p in [pair(0.5, 3.0), pair(-1.5, 0.5)] {
            let rep = extension_ratio(&f, &p, &cfg).unwrap();
            assert!(rep.ratio >= 1.0 - 1e-9, "ratio {}", rep.ratio);
            assert!(rep.ratio <= rep.a_bar_bound + 1e-6);
        }
    }
}
