//! c_class / a_bar tends to one as beta grows (alpha fixed) and as alpha
//! falls (beta fixed, negative).

use rhi::classconst::{sharpness_table, sharpness_table_alpha};

fn main() -> rhi::Result<()> {
    let betas: Vec<f64> = (1..=10).map(|k| 2f64.powi(k)).collect();
    println!("alpha = 1");
    for r in sharpness_table(1.0, &betas)? {
        println!("  beta {:>6}  c {:.10}  a_bar {:.10}  ratio {:.10}", r.beta, r.c_class, r.a_bar, r.ratio);
    }
    let alphas: Vec<f64> = (2..=10).map(|k| -(2f64.powi(k))).collect();
    println!("beta = -1");
    for r in sharpness_table_alpha(-1.0, &alphas)? {
        println!("  alpha {:>6}  c {:.10}  a_bar {:.10}  ratio {:.10}", r.alpha, r.c_class, r.a_bar, r.ratio);
    }
    Ok(())
}
