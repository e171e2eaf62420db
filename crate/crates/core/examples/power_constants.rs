//! P, the ratio-curve maximum C and R = C*P for power functions, one pair
//! per sign case.

use rhi::power::r_constant;
use rhi::{ExponentPair, SearchConfig};

fn main() -> rhi::Result<()> {
    let cfg = SearchConfig::default();
    let runs = [
        ((1.0, 2.0), [-0.45, -0.3, 0.5, 1.0, 10.0]),
        ((-3.0, -1.0), [-10.0, -2.0, -0.5, 0.2, 0.3]),
        ((-1.0, 1.0), [-0.9, -0.5, 0.5, 0.9, 0.99]),
    ];
    println!("{:>6} {:>6} {:>7} {:>12} {:>12} {:>12} {:>12} {:>10}", "alpha", "beta", "gamma", "P", "eps*", "C", "R", "resid");
    for ((a, b), gammas) in runs {
        let pair = ExponentPair::new(a, b)?;
        for g in gammas {
            let r = r_constant(&pair, g, &cfg)?;
            println!(
                "{a:>6} {b:>6} {g:>7} {:>12.8} {:>12.6e} {:>12.8} {:>12.8} {:>10.1e}",
                r.p_const, r.eps_star, r.c_max, r.r_const, r.residual13
            );
        }
    }
    Ok(())
}
