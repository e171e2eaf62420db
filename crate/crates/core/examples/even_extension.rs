//! P and R for non-power functions, and the growth ratio R/P against
//! the upper estimate.

use rhi::generic::extension_ratio;
use rhi::means::{FunctionSpec, Monotonicity};
use rhi::{ExponentPair, SearchConfig};

fn main() -> rhi::Result<()> {
    // keep exp(-x) on intervals where its negative-order means stay moderate
    let cfg = SearchConfig {
        scale_max: 10.0,
        ..SearchConfig::default()
    };
    let funcs = [
        ("exp(-x)", FunctionSpec::exp_decay(1.0)?),
        ("x^0.5+0.2", FunctionSpec::affine_power(1.0, 0.5, 0.2)?),
        ("3x^-0.4+1", FunctionSpec::affine_power(3.0, -0.4, 1.0)?),
        ("x^2 (no monotonicity)", FunctionSpec::power_law(2.0)?.with_monotonicity(Monotonicity::Unknown)?),
    ];
    for (a, b) in [(1.0, 2.0), (-1.0, 1.0)] {
        let pair = ExponentPair::new(a, b)?;
        println!("pair {pair}");
        for (name, f) in &funcs {
            let rep = match extension_ratio(f, &pair, &cfg) {
                Ok(rep) => rep,
                Err(e) => {
                    println!("  {name:24} {e}");
                    continue;
                }
            };
            println!(
                "  {name:24} P {:.8} on {}  R {:.8} on {}  R/P {:.6} <= {}",
                rep.p.value, rep.p.witness, rep.r.value, rep.r.witness, rep.ratio, rep.a_bar_bound
            );
        }
    }
    Ok(())
}
