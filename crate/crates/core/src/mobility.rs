//! Modified random waypoint (MRWP) mobility.
//!
//! Each transition length is `L + mu * Z` with `L ~ Rayleigh(sigma_rwp)`,
//! `mu ~ Bernoulli(p_z)` and `Z ~ Rayleigh(sigma_z)`; the heading is uniform
//! on `[0, 2pi)`. The Bernoulli-gated extension pushes users toward the
//! border of a finite region, countering the center bias of plain RWP.
//! Moves that would leave the region stop on the boundary along their ray.

use std::f64::consts::{PI, TAU};
use std::io::Write;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{ensure_non_negative, ensure_positive, Error, Result};
use crate::geometry::{FivePartition, Point, Region};

/// `sqrt(pi / 2)`, the Rayleigh mean per unit scale.
pub const RAYLEIGH_MEAN_FACTOR: f64 = 1.253_314_137_315_500_3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MobilityConfig {
    /// Rayleigh scale of the base transition length, meters.
    pub sigma_rwp: f64,
    /// Probability that a transition is extended.
    pub p_z: f64,
    /// Rayleigh scale of the extension, meters.
    pub sigma_z: f64,
    /// Constant user speed, m/s.
    pub velocity: f64,
    /// Constant pause at every waypoint, seconds.
    pub pause: f64,
}

impl MobilityConfig {
    pub fn validate(&self) -> Result<()> {
        ensure_positive("sigma_rwp", self.sigma_rwp)?;
        if !(0.0..=1.0).contains(&self.p_z) {
            return Err(Error::invalid("p_z", format!("must lie in [0, 1], got {}", self.p_z)));
        }
        ensure_positive("sigma_z", self.sigma_z)?;
        ensure_positive("velocity", self.velocity)?;
        ensure_non_negative("pause", self.pause)
    }

    /// `E[L'] = sqrt(pi/2) * (sigma_rwp + p_z * sigma_z)`.
    pub fn mean_transition_length(&self) -> f64 {
        RAYLEIGH_MEAN_FACTOR * (self.sigma_rwp + self.p_z * self.sigma_z)
    }
}

fn rayleigh<R: Rng + ?Sized>(scale: f64, rng: &mut R) -> f64 {
    // 1 - U lies in (0, 1], so the log is finite.
    let u: f64 = rng.random();
    scale * (-2.0 * (1.0 - u).ln()).sqrt()
}

/// `L + mu Z`. The extension `Z` is drawn even when `mu = 0`, so runs that
/// differ only in `p_z` consume the stream in lockstep.
pub fn draw_transition_length<R: Rng + ?Sized>(cfg: &MobilityConfig, rng: &mut R) -> f64 {
    let base = rayleigh(cfg.sigma_rwp, rng);
    let extended = rng.random_bool(cfg.p_z);
    let extra = rayleigh(cfg.sigma_z, rng);
    if extended {
        base + extra
    } else {
        base
    }
}

/// Walks `length` meters from `from` along `heading` (radians), stopping at
/// the first boundary of `region` met on the way.
pub fn step_along_ray(from: Point, length: f64, heading: f64, region: &Region) -> Point {
    let (dy, dx) = heading.sin_cos();
    let reach = |pos: f64, dir: f64, lo: f64, hi: f64| {
        if dir > 0.0 {
            (hi - pos) / dir
        } else if dir < 0.0 {
            (lo - pos) / dir
        } else {
            f64::INFINITY
        }
    };
    let t_exit = reach(from.x, dx, region.x_min, region.x_max).min(reach(from.y, dy, region.y_min, region.y_max));
    let t = length.min(t_exit.max(0.0));
    Point::new(
        (from.x + t * dx).clamp(region.x_min, region.x_max),
        (from.y + t * dy).clamp(region.y_min, region.y_max),
    )
}

/// Next MRWP waypoint. Draws that leave the user in place (zero length, or a
/// heading straight into the boundary the user stands on) are redrawn.
pub fn next_waypoint<R: Rng + ?Sized>(current: Point, region: &Region, cfg: &MobilityConfig, rng: &mut R) -> Point {
    loop {
        let length = draw_transition_length(cfg, rng);
        let heading = rng.random_range(0.0..TAU);
        let next = step_along_ray(current, length, heading, region);
        if next != current {
            return next;
        }
    }
}

/// A realized MRWP path with constant speed and pause.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub waypoints: Vec<Point>,
    pub velocity: f64,
    pub pause: f64,
}

impl Trajectory {
    pub fn segments(&self) -> impl Iterator<Item = (Point, Point)> + '_ {
        self.waypoints.windows(2).map(|w| (w[0], w[1]))
    }

    pub fn path_length(&self) -> f64 {
        self.segments().map(|(a, b)| a.distance(b)).sum()
    }

    /// Travel time plus one pause per move.
    pub fn duration(&self) -> f64 {
        let moves = self.waypoints.len().saturating_sub(1) as f64;
        self.path_length() / self.velocity + moves * self.pause
    }

    /// Writes `user_id,seq,x_m,y_m` rows, with a header when `header` is set.
    pub fn write_csv<W: Write>(&self, user_id: usize, header: bool, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        if header {
            w.write_record(["user_id", "seq", "x_m", "y_m"])?;
        }
        for (seq, p) in self.waypoints.iter().enumerate() {
            w.write_record([user_id.to_string(), seq.to_string(), p.x.to_string(), p.y.to_string()])?;
        }
        w.flush()?;
        Ok(())
    }
}

pub fn generate_trajectory<R: Rng + ?Sized>(
    start: Point,
    n_moves: usize,
    region: &Region,
    cfg: &MobilityConfig,
    rng: &mut R,
) -> Result<Trajectory> {
    cfg.validate()?;
    if !region.contains(start) {
        return Err(Error::invalid("start", format!("{start:?} lies outside the region")));
    }
    if n_moves == 0 {
        return Err(Error::invalid("n_moves", "must be >= 1"));
    }
    let mut waypoints = Vec::with_capacity(n_moves + 1);
    waypoints.push(start);
    let mut current = start;
    for _ in 0..n_moves {
        current = next_waypoint(current, region, cfg, rng);
        waypoints.push(current);
    }
    Ok(Trajectory {
        waypoints,
        velocity: cfg.velocity,
        pause: cfg.pause,
    })
}

/// Fraction of all waypoints in each sub-region, indexed by
/// [`SubRegion::index`](crate::geometry::SubRegion::index).
pub fn empirical_occupancy(trajectories: &[Trajectory], partition: &FivePartition) -> Result<[f64; 5]> {
    let mut counts = [0usize; 5];
    let mut total = 0usize;
    for p in trajectories.iter().flat_map(|t| t.waypoints.iter()) {
        if let Some(part) = partition.locate(*p) {
            counts[part.index()] += 1;
            total += 1;
        }
    }
    if total == 0 {
        return Err(Error::NoData("no waypoint inside the partitioned region"));
    }
    Ok(counts.map(|c| c as f64 / total as f64))
}

/// Mean duration of one movement: `E[L'] / V + pause`.
pub fn expected_movement_time(cfg: &MobilityConfig) -> f64 {
    cfg.mean_transition_length() / cfg.velocity + cfg.pause
}

/// Heading of the segment `a -> b` in `[0, 2pi)`.
pub fn bearing(a: Point, b: Point) -> f64 {
    let t = (b.y - a.y).atan2(b.x - a.x);
    if t < 0.0 {
        t + 2.0 * PI
    } else {
        t
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{partition_five, SubRegion};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn cfg(p_z: f64) -> MobilityConfig {
        MobilityConfig {
            sigma_rwp: 100.0,
            p_z,
            sigma_z: 100.0,
            velocity: 10.0,
            pause: 0.0,
        }
    }

    #[test]
    fn movement_time_without_pause_is_rayleigh_mean_over_speed() {
        let t = expected_movement_time(&cfg(0.0));
        assert!((t - 12.533_141_373_155).abs() < 1e-9);
    }

    #[test]
    fn sampled_transition_length_matches_mean() {
        let c = MobilityConfig { sigma_z: 250.0, ..cfg(0.3) };
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let n = 200_000;
        let mean = (0..n).map(|_| draw_transition_length(&c, &mut rng)).sum::<f64>() / n as f64;
        assert!((mean / c.mean_transition_length() - 1.0).abs() < 0.01, "{mean}");
    }

    #[test]
    fn movement_time_tends_to_pause_at_high_speed() {
        let mut c = cfg(0.3);
        c.pause = 4.0;
        c.velocity = 1e12;
        assert!((expected_movement_time(&c) - 4.0).abs() < 1e-6);
    }

    #[test]
    fn interior_step_is_not_clamped() {
        let r = Region::square(1000.0).unwrap();
        let p = step_along_ray(r.center(), 100.0, 1.0, &r);
        assert!((p.distance(r.center()) - 100.0).abs() < 1e-9);
    }

    #[test]
    fn zero_length_step_stays_put() {
        let r = Region::square(1000.0).unwrap();
        assert_eq!(step_along_ray(r.center(), 0.0, 2.0, &r), r.center());
    }

    #[test]
    fn long_step_toward_corner_lands_on_boundary() {
        let r = Region::square(100.0).unwrap();
        let from = Point::new(90.0, 95.0);
        let heading = std::f64::consts::FRAC_PI_4;
        let p = step_along_ray(from, 1e6, heading, &r);
        // The ray leaves through the top edge after 5 m in y.
        assert!((p.y - 100.0).abs() < 1e-12);
        assert!((p.x - 95.0).abs() < 1e-9);
    }

    #[test]
    fn trajectory_has_n_plus_one_waypoints() {
        let r = Region::square(1000.0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let t = generate_trajectory(r.center(), 1, &r, &cfg(0.3), &mut rng).unwrap();
        assert_eq!(t.waypoints.len(), 2);
        assert!(generate_trajectory(r.center(), 0, &r, &cfg(0.3), &mut rng).is_err());
        assert!(generate_trajectory(Point::new(-1.0, 0.0), 3, &r, &cfg(0.3), &mut rng).is_err());
    }

    #[test]
    fn single_central_waypoint_occupancy() {
        let r = Region::square(1.0).unwrap();
        let part = partition_five(&r, 0.25).unwrap();
        let t = Trajectory {
            waypoints: vec![Point::new(0.5, 0.5)],
            velocity: 1.0,
            pause: 0.0,
        };
        let occ = empirical_occupancy(&[t], &part).unwrap();
        assert_eq!(occ[SubRegion::Center.index()], 1.0);
        assert_eq!(occ.iter().sum::<f64>(), 1.0);
        assert!(empirical_occupancy(&[], &part).is_err());
    }

    #[test]
    fn invalid_configs_rejected() {
        let mut c = cfg(1.5);
        assert!(c.validate().is_err());
        c.p_z = 0.5;
        c.pause = -1.0;
        assert!(c.validate().is_err());
    }
}
