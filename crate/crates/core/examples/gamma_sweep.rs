//! The ratio-curve maximum grows monotonically toward the class constant
//! as gamma approaches the limit of the active branch.

use rhi::classconst::{branch_approach, c_class, domain_end, approach_sequence, gamma_sweep};
use rhi::{ExponentPair, SearchConfig};

fn main() -> rhi::Result<()> {
    let cfg = SearchConfig::default();
    for (a, b) in [(1.0, 2.0), (1.0, 4.0), (-1.0, 1.0)] {
        let pair = ExponentPair::new(a, b)?;
        let (c, branch) = c_class(&pair);
        println!("pair {pair}, class constant {c:.12} ({})", branch.label());
        let toward_branch = branch_approach(&pair, 8);
        let toward_lower = approach_sequence(domain_end(&pair, false), 8);
        for (label, gammas) in [("branch limit", toward_branch), ("lower end", toward_lower)] {
            println!("  toward {label}");
            for row in gamma_sweep(&pair, &gammas, &cfg)? {
                println!("    gamma {:>14.8}  eps* {:>10.3e}  C {:.12}  C/c {:.6}", row.gamma, row.eps_star, row.c, row.c / c);
            }
        }
    }
    Ok(())
}
