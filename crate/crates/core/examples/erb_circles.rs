// Builds the handover and failure boundaries around one target cell and
// checks that points on the handover circle see equal biased power.
//
// ```bash
// cargo run --example erb_circles
// ```

use std::error::Error;

use hetnet_handover::geometry::Point;
use hetnet_handover::radio::{dl_rss, erb_pair, linear_to_db, TierRadioParams};

pub fn main() -> Result<(), Box<dyn Error>> {
    let hotspot = TierRadioParams::from_db(36.0, 5.0, 4.0, 140.7, 36.7)?;
    let small = TierRadioParams::from_db(30.0, 5.0, 4.0, 140.7, 36.7)?;
    let target = Point::new(120.0, 40.0);

    let pair = erb_pair(&hotspot, &small, target, 0.5)?;
    println!("xi {:.4}  xi_f {:.4}  lambda* {:.4}", pair.xi, pair.xi_f, pair.lambda_star);
    for (name, c) in [("handover", pair.handover_circle), ("failure", pair.failure_circle)] {
        println!(
            "{name:>8}: center ({:.1}, {:.1}) radius {:.1} m, encloses {:?}",
            c.center.x, c.center.y, c.radius, c.encloses
        );
    }

    let c = pair.handover_circle;
    println!("\nbiased RSS gap along the handover circle");
    for k in 0..6 {
        let theta = k as f64 * std::f64::consts::PI / 3.0;
        let p = c.center + Point::from_polar(c.radius, theta);
        let s = dl_rss(&hotspot, p.norm())?;
        let t = dl_rss(&small, p.distance(target))?;
        println!("  theta {theta:.2}: {:+.2e} dB", linear_to_db(s / t));
    }
    Ok(())
}
