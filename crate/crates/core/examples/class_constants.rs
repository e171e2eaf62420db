//! Upper estimate and class constant for pairs in every branch.

use rhi::classconst::class_constants;
use rhi::ExponentPair;

fn main() -> rhi::Result<()> {
    let pairs = [(1.0, 2.0), (1.0, 1.5), (0.5, 4.0), (-3.0, -1.0), (-1.5, -1.0), (-1.0, 1.0), (-1.0, 3.0), (-4.0, 0.5)];
    println!("{:>6} {:>6} {:>8} {:>12} {:>12} {:>8}  branch", "alpha", "beta", "case", "c_class", "a_bar", "ratio");
    for (a, b) in pairs {
        let pair = ExponentPair::new(a, b)?;
        let k = class_constants(&pair);
        println!(
            "{a:>6} {b:>6} {:>8} {:>12.9} {:>12.9} {:>8.5}  {}",
            pair.case().label(),
            k.c_class,
            k.a_bar,
            k.sharpness_ratio,
            k.branch.label()
        );
    }
    Ok(())
}
