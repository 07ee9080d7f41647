// Draws one macro/small/hotspot deployment and prints its summary.
//
// ```bash
// cargo run --example point_processes -- points.csv
// ```

use std::error::Error;
use std::fs::File;

use hetnet_handover::geometry::{nearest_neighbor_distance, sample_ppp, sample_tcp, ClusterConfig, Region, Tier};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn main() -> Result<(), Box<dyn Error>> {
    run(std::env::args().nth(1))
}

pub fn run(arg: Option<String>) -> Result<(), Box<dyn Error>> {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let region = Region::square(5000.0)?;

    let macro_cells = sample_ppp(&region, 2e-6, Tier::Macro, &mut rng)?;
    let small_cells = sample_ppp(&region, 2e-5, Tier::Small, &mut rng)?;
    let hotspots = sample_tcp(&region, &ClusterConfig::new(2e-6, 150.0, 5.0)?, &mut rng)?;

    println!("region {:.0} km^2", region.area() / 1e6);
    println!("macro     {:5} (expected {:.0})", macro_cells.len(), 2e-6 * region.area());
    println!("small     {:5} (expected {:.0})", small_cells.len(), 2e-5 * region.area());
    println!(
        "hotspots  {:5} in {} clusters (expected {:.0})",
        hotspots.offspring.len(),
        hotspots.parents.len(),
        5.0 * 2e-6 * region.area()
    );

    let spread = hotspots
        .offspring
        .points
        .iter()
        .zip(&hotspots.parent_index)
        .map(|(p, &k)| p.distance(hotspots.parents.points[k]))
        .sum::<f64>()
        / hotspots.offspring.len().max(1) as f64;
    println!("mean offspring-to-parent distance {spread:.1} m (Rayleigh mean {:.1} m)", 150.0 * (std::f64::consts::PI / 2.0).sqrt());

    let center = region.center();
    println!(
        "nearest small cell to the center {:.1} m, nearest hotspot {:.1} m",
        nearest_neighbor_distance(center, &small_cells)?,
        nearest_neighbor_distance(center, &hotspots.offspring)?
    );

    if let Some(path) = arg {
        let mut f = File::create(&path)?;
        hotspots.offspring.write_csv(&mut f)?;
        println!("hotspot offspring written to {path}");
    }
    Ok(())
}
