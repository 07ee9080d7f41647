// Compares how often RWP and MRWP users sit in the border strips of a
// square cell.
//
// ```bash
// cargo run --release --example mobility_occupancy
// ```

use std::error::Error;

use hetnet_handover::geometry::{partition_five, Region, SubRegion};
use hetnet_handover::mobility::{empirical_occupancy, expected_movement_time, generate_trajectory, MobilityConfig, Trajectory};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn occupancy(region: &Region, cfg: &MobilityConfig, seed: u64) -> Result<[f64; 5], Box<dyn Error>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let trajectories = (0..500)
        .map(|_| {
            let start = region.sample_uniform(&mut rng);
            generate_trajectory(start, 99, region, cfg, &mut rng)
        })
        .collect::<Result<Vec<Trajectory>, _>>()?;
    Ok(empirical_occupancy(&trajectories, &partition_five(region, 0.1)?)?)
}

pub fn main() -> Result<(), Box<dyn Error>> {
    let region = Region::square(1000.0)?;
    let mrwp = MobilityConfig {
        sigma_rwp: 200.0,
        p_z: 0.3,
        sigma_z: 200.0,
        velocity: 16.7,
        pause: 5.0,
    };
    let rwp = MobilityConfig { p_z: 0.0, ..mrwp };

    println!("{:>6} {:>10} {:>10} {:>10}", "model", "E[L'] m", "E[move] s", "border");
    for (name, cfg) in [("RWP", rwp), ("MRWP", mrwp)] {
        let occ = occupancy(&region, &cfg, 7)?;
        let border: f64 = SubRegion::ALL.iter().filter(|s| s.is_border()).map(|s| occ[s.index()]).sum();
        println!(
            "{name:>6} {:>10.1} {:>10.2} {:>10.4}",
            cfg.mean_transition_length(),
            expected_movement_time(&cfg),
            border
        );
    }
    Ok(())
}
