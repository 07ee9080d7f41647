use std::path::Path;

use hetnet_handover::analytics::{prob_sojourn_ge, rician_cdf, PairKind};
use hetnet_handover::config::{emit_config, parse_config, ConfigFile, ExperimentSpec, SweepAxis, SweepSection};
use hetnet_handover::geometry::{nearest_neighbor, Point, PointSet, Region, Tier};
use hetnet_handover::mobility::step_along_ray;
use hetnet_handover::radio::{erb_circle, TierRadioParams};
use hetnet_handover::sim::segment_circle_crossings;
use hetnet_handover::specfun::marcum_q1;
use proptest::prelude::*;

fn point(range: f64) -> impl Strategy<Value = Point> {
    (-range..range, -range..range).prop_map(|(x, y)| Point::new(x, y))
}

proptest! {
    #[test]
    fn marcum_is_a_probability_monotone_in_both_arguments(a in 0.0..15.0f64, b in 0.0..15.0f64, d in 0.01..2.0f64) {
        let q = marcum_q1(a, b).unwrap();
        prop_assert!((0.0..=1.0).contains(&q));
        prop_assert!(marcum_q1(a, b + d).unwrap() <= q + 1e-12);
        prop_assert!(marcum_q1(a + d, b).unwrap() >= q - 1e-12);
    }

    #[test]
    fn rician_cdf_is_monotone(w in 0.0..500.0f64, sigma in 10.0..300.0f64, r in 0.0..1500.0f64, dr in 0.1..100.0f64) {
        let f = rician_cdf(r, w, sigma).unwrap();
        prop_assert!((0.0..=1.0).contains(&f));
        prop_assert!(rician_cdf(r + dr, w, sigma).unwrap() >= f - 1e-12);
    }

    #[test]
    fn sojourn_probability_falls_with_threshold(t in 0.0..20.0f64, dt in 0.1..5.0f64, c in 0.05..0.95f64) {
        for pair in PairKind::ALL {
            let p = prob_sojourn_ge(pair, t, 16.7, c, 2e-5, 150.0).unwrap();
            prop_assert!((0.0..=1.0).contains(&p));
            prop_assert!(prob_sojourn_ge(pair, t + dt, 16.7, c, 2e-5, 150.0).unwrap() <= p + 1e-12);
        }
    }

    #[test]
    fn erb_circle_points_have_equal_rss(target in point(800.0), dp in 0.5..12.0f64, theta in 0.0..std::f64::consts::TAU) {
        prop_assume!(target.norm() > 1.0);
        let serving = TierRadioParams::from_db(30.0 + dp, 5.0, 4.0, 140.7, 36.7).unwrap();
        let small = TierRadioParams::from_db(30.0, 5.0, 4.0, 140.7, 36.7).unwrap();
        let xi = hetnet_handover::radio::xi_factor(&serving, &small);
        let c = erb_circle(target, xi, 1.0).unwrap();
        let p = Point::new(c.center.x + c.radius * theta.cos(), c.center.y + c.radius * theta.sin());
        let diff = serving.log_rss(p.norm()) - small.log_rss(p.distance(target));
        prop_assert!(diff.abs() < 1e-9, "log-RSS gap {}", diff);
    }

    #[test]
    fn crossings_agree_with_dense_sampling(p0 in point(100.0), p1 in point(100.0), center in point(60.0), r in 5.0..80.0f64) {
        let circle = hetnet_handover::radio::Circle::new(center, r);
        let x = segment_circle_crossings(p0, p1, &circle);
        let n = 10_000;
        let inside = |s: f64| (p0 + (p1 - p0) * s).distance(center) < r;
        let mut flips = 0;
        let mut prev = inside(0.0);
        let mut near_tangent = false;
        for k in 1..=n {
            let s = k as f64 / n as f64;
            let now = inside(s);
            if now != prev {
                flips += 1;
            }
            prev = now;
            let gap = ((p0 + (p1 - p0) * s).distance(center) - r).abs();
            near_tangent |= gap < 1e-6 * r;
        }
        prop_assume!(!near_tangent);
        // Endpoints lying exactly on the circle cannot happen with continuous draws.
        let transversal = x.params.iter().filter(|s| **s > 0.0 && **s < 1.0).count();
        prop_assert_eq!(flips, transversal);
    }

    #[test]
    fn steps_stay_in_region(from in (0.0..1000.0f64, 0.0..1000.0f64), len in 0.0..5000.0f64, heading in 0.0..std::f64::consts::TAU) {
        let region = Region::square(1000.0).unwrap();
        let p = step_along_ray(Point::new(from.0, from.1), len, heading, &region);
        prop_assert!(region.contains(p));
        prop_assert!(Point::new(from.0, from.1).distance(p) <= len + 1e-9);
    }

    #[test]
    fn nearest_neighbor_matches_scan(q in point(500.0), pts in prop::collection::vec(point(500.0), 1..60)) {
        let set = PointSet::new(Tier::Small, pts.clone());
        let (i, d) = nearest_neighbor(q, &set).unwrap();
        let scan = pts.iter().map(|p| p.distance(q)).fold(f64::INFINITY, f64::min);
        prop_assert!((d - scan).abs() <= 1e-9 * scan.max(1.0));
        prop_assert!((pts[i].distance(q) - scan).abs() <= 1e-9 * scan.max(1.0));
    }

    #[test]
    fn config_round_trips(
        sigma in 10.0..400.0f64,
        v in 1.0..150.0f64,
        trials in 1usize..50,
        seed in any::<u64>(),
        pair in prop::sample::select(PairKind::ALL.to_vec()),
        n in 1usize..5,
    ) {
        let mut file = ConfigFile { pair, ..ConfigFile::default() };
        file.cluster.sigma_m = sigma;
        file.mobility.velocity_kmh = v;
        file.simulation.n_trials = trials;
        file.simulation.seed = seed;
        file.sweep = Some(SweepSection { axis: SweepAxis::Threshold, values: (1..=n).map(|k| k as f64 * 0.5).collect() });
        let spec = ExperimentSpec::from_file(file).unwrap();
        let again = parse_config(&emit_config(&spec), Path::new("round-trip")).unwrap();
        prop_assert_eq!(again, spec);
    }
}
