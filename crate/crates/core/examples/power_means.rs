//! Power means of a few functions over a few intervals, and the
//! monotonicity of the mean in its order.

use rhi::means::{power_mean_closed, quad_mean, FunctionSpec};
use rhi::Interval;

fn main() -> rhi::Result<()> {
    let funcs = [
        ("x^0.5", FunctionSpec::power_law(0.5)?),
        ("x^-0.3", FunctionSpec::power_law(-0.3)?),
        ("exp(-x)", FunctionSpec::exp_decay(1.0)?),
        ("2x^0.5+1", FunctionSpec::affine_power(2.0, 0.5, 1.0)?),
    ];
    let orders = [-1.5, -1.0, 0.5, 1.0, 2.0, 3.0];
    let iv = Interval::new(0.0, 2.0)?;

    print!("{:10}", "f \\ order");
    for o in orders {
        print!("{o:>12}");
    }
    println!();
    for (name, f) in &funcs {
        print!("{name:10}");
        for o in orders {
            print!("{:>12.6}", quad_mean(f, iv, o, 1e-12)?.value);
        }
        println!();
    }

    // x^gamma on (0; eps) has a closed form
    let m = quad_mean(&funcs[0].1, iv, 2.0, 1e-12)?;
    println!(
        "\nx^0.5, order 2 on {iv}: quadrature {:.15} closed form {:.15} (err est {:.1e})",
        m.value,
        power_mean_closed(0.5, 2.0, 2.0)?,
        m.abs_error_estimate
    );
    Ok(())
}
