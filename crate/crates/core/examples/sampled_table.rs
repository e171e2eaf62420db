//! Constants of a function known only through samples (`x,f` CSV).

use rhi::generic::{estimate_p, extension_ratio};
use rhi::means::{FunctionSpec, Monotonicity, SampledTable};
use rhi::{ExponentPair, SearchConfig};

const RAMP: &str = "x,f\n0,0.5\n0.5,0.8\n1,1.0\n2,3.0\n4,3.5\n";

fn main() -> rhi::Result<()> {
    let table = SampledTable::from_csv_reader(RAMP.as_bytes())?;
    let cfg = SearchConfig::default();
    let pair = ExponentPair::new(-1.0, 2.0)?;

    let declared = FunctionSpec::sampled(table.clone(), Monotonicity::Increasing)?;
    let free = FunctionSpec::sampled(table, Monotonicity::Unknown)?;
    for (label, f) in [("declared increasing", &declared), ("no monotonicity", &free)] {
        let p = estimate_p(f, &pair, &cfg)?;
        println!(
            "{label:20} P {:.8} on {} ({}, certified {}, {} evaluations)",
            p.value,
            p.witness,
            p.reduction.label(),
            p.reduction.certified(),
            p.search_points
        );
    }
    let rep = extension_ratio(&free, &pair, &cfg)?;
    println!("even extension        R {:.8} on {}  R/P {:.6} <= {}", rep.r.value, rep.r.witness, rep.ratio, rep.a_bar_bound);
    Ok(())
}
