//! Estimators against the brute-force oracle.

use rhi::generic::{estimate_p, estimate_r};
use rhi::means::FunctionSpec;
use rhi::oracle::{brute_max_c, brute_p, brute_r, OracleConfig};
use rhi::power::maximize_c;
use rhi::{ExponentPair, SearchConfig};

fn main() -> rhi::Result<()> {
    let cfg = SearchConfig::default();
    let oracle = OracleConfig::default();
    let pair = ExponentPair::new(1.0, 2.0)?;

    let m = maximize_c(&pair, 1.0, &cfg)?;
    let (e, v) = brute_max_c(&pair, 1.0, 1_000_000);
    println!("curve maximum  optimizer {:.14} at {:.10}  grid {:.14} at {:.10}", m.c_max, m.eps_star, v, e);

    for (name, f) in [("x", FunctionSpec::power_law(1.0)?), ("exp(-x)", FunctionSpec::exp_decay(1.0)?)] {
        let (ep, bp) = (estimate_p(&f, &pair, &cfg)?.value, brute_p(&f, &pair, &oracle)?);
        let (er, br) = (estimate_r(&f, &pair, &cfg)?.value, brute_r(&f, &pair, &oracle)?);
        println!("{name:8} P estimate {ep:.10} oracle {bp:.10} | R estimate {er:.10} oracle {br:.10}");
    }
    Ok(())
}
