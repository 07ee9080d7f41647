// Marcum Q1, the Bessel I0 fit and erf next to their reference routes.
//
// ```bash
// cargo run --release --example special_functions
// ```

use std::error::Error;

use hetnet_handover::oracle::{erf_taylor, i0_power_series, marcum_q1_quadrature};
use hetnet_handover::specfun::{erf, i0_exp_approx, i0_series, marcum_q1, I0_EXP_FIT};

pub fn main() -> Result<(), Box<dyn Error>> {
    println!("{:>5} {:>5} {:>20} {:>20}", "a", "b", "Q1 series", "Q1 quadrature");
    for (a, b) in [(0.0, 1.0), (1.0, 1.0), (2.0, 3.0), (5.0, 4.0), (8.0, 10.0)] {
        println!("{a:>5} {b:>5} {:>20.15} {:>20.15}", marcum_q1(a, b)?, marcum_q1_quadrature(a, b));
    }

    println!("\n{:>6} {:>16} {:>16} {:>10}", "z", "I0", "exp-sum fit", "rel err");
    for z in [0.5, 5.0, 11.0, 15.0, 30.0, 50.0] {
        let exact = i0_series(z)?;
        let fit = i0_exp_approx(z, &I0_EXP_FIT);
        println!("{z:>6} {exact:>16.6e} {fit:>16.6e} {:>10.2e}", (fit - exact).abs() / exact);
    }
    println!("I0(2) by the raw power series: {:.15}", i0_power_series(2.0, 40));

    println!("\nerf(0.7) {:.15}  Taylor {:.15}", erf(0.7), erf_taylor(0.7));
    Ok(())
}
