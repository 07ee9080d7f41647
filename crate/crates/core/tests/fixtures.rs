//! Library values against the frozen constants in `fixtures/derived.toml`.

use std::path::Path;

use approx::assert_relative_eq;
use hetnet_handover::analytics::{
    handover_triggered_rate, mean_cluster_distance_numeric, prob_sojourn_ge, rician_cdf, PairKind,
};
use hetnet_handover::config::parse_config;
use hetnet_handover::oracle::{compute_fixtures, Fixtures};
use hetnet_handover::radio::{xi_factor, TierRadioParams};
use hetnet_handover::specfun::{erf, i0_series, marcum_q1};

fn fixtures() -> Fixtures {
    Fixtures::load(&Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/derived.toml")).unwrap()
}

#[test]
fn special_functions_match_frozen_values() {
    let f = fixtures();
    assert_relative_eq!(i0_series(1.0).unwrap(), f.get("i0_at_1").unwrap(), max_relative = 1e-13);
    assert_relative_eq!(erf(1.0), f.get("erf_at_1").unwrap(), epsilon = 1e-13);
    assert_relative_eq!(marcum_q1(1.0, 1.0).unwrap(), f.get("marcum_q1_1_1").unwrap(), epsilon = 1e-10);
    assert_relative_eq!(rician_cdf(1.0, 1.0, 1.0).unwrap(), f.get("rician_cdf_w1_s1_r1").unwrap(), epsilon = 1e-10);
}

#[test]
fn xi_for_six_db_weaker_target() {
    let serving = TierRadioParams::from_db(36.0, 5.0, 4.0, 140.7, 40.0).unwrap();
    let target = TierRadioParams::from_db(30.0, 5.0, 4.0, 140.7, 40.0).unwrap();
    assert_relative_eq!(xi_factor(&serving, &target), fixtures().get("xi_6db_alpha4").unwrap(), max_relative = 1e-12);
}

#[test]
fn cluster_mean_distance_and_triggered_rate() {
    let f = fixtures();
    let r_bar = mean_cluster_distance_numeric(2e-5, 150.0).unwrap();
    assert_relative_eq!(r_bar, f.get("mean_cluster_distance_2e-5_150").unwrap(), max_relative = 1e-6);

    let spec = parse_config("", Path::new("defaults")).unwrap();
    let s = spec.scenario(0);
    let (c, _) = s.lambda_xi(PairKind::HotspotSmall, r_bar);
    let h_t = handover_triggered_rate(c, r_bar, s.region_area, 10.0, &s.mobility).unwrap();
    assert_relative_eq!(h_t, f.get("triggered_rate_hotspot_small_default").unwrap(), max_relative = 1e-6);
}

#[test]
fn small_to_macro_sojourn_example() {
    let p = prob_sojourn_ge(PairKind::SmallMacro, 1.0, 16.67, 0.25, 1e-6, 1.0).unwrap();
    assert_relative_eq!(p, fixtures().get("sojourn_sm_example").unwrap(), max_relative = 1e-14);
}

#[test]
fn oracles_reproduce_the_file() {
    let frozen = fixtures();
    let fresh = compute_fixtures();
    assert_eq!(frozen.entries.len(), fresh.entries.len());
    for (a, b) in frozen.entries.iter().zip(&fresh.entries) {
        assert_eq!(a.name, b.name);
        assert_relative_eq!(a.value, b.value, max_relative = 1e-9);
    }
}
