// Nearest-target distance laws: Rayleigh for the macro tier and the
// Rician mixture for clustered small cells.
//
// ```bash
// cargo run --release --example distance_distributions
// ```

use std::error::Error;

use hetnet_handover::analytics::{mean_cluster_distance_numeric, mean_cluster_distance_ub, mean_r_sm, rician_cdf, rician_mean};
use hetnet_handover::oracle::mean_cluster_distance_quadrature;
use hetnet_handover::specfun::I0_EXP_FIT;

pub fn main() -> Result<(), Box<dyn Error>> {
    for lambda_m in [1e-6, 2e-6, 5e-6] {
        println!("macro density {lambda_m:.0e}: mean distance {:.1} m", mean_r_sm(lambda_m)?);
    }

    println!("\nRician cdf, offset 100 m, sigma 150 m");
    for r in [50.0, 150.0, 300.0, 600.0] {
        println!("  P(R <= {r:>5}) = {:.4}", rician_cdf(r, 100.0, 150.0)?);
    }
    println!("  mean {:.1} m", rician_mean(100.0, 150.0));

    println!("\n{:>8} {:>6} {:>12} {:>12} {:>12}", "lambda", "sigma", "numeric", "triple int", "upper bound");
    for (lambda, sigma) in [(5e-6, 100.0), (2e-5, 150.0), (1e-4, 250.0)] {
        println!(
            "{lambda:>8.0e} {sigma:>6} {:>12.3} {:>12.3} {:>12.3}",
            mean_cluster_distance_numeric(lambda, sigma)?,
            mean_cluster_distance_quadrature(lambda, sigma),
            mean_cluster_distance_ub(lambda, sigma, &I0_EXP_FIT)?
        );
    }
    Ok(())
}
