//! Runs every example so they cannot rot.

#![allow(dead_code)]

mod point_processes {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/point_processes.rs"));
}

#[test]
fn point_processes_runs() {
    point_processes::run(None).expect("point_processes example should run");
}

mod mobility_occupancy {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/mobility_occupancy.rs"));
}

#[test]
fn mobility_occupancy_runs() {
    mobility_occupancy::main().expect("mobility_occupancy example should run");
}

mod erb_circles {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/erb_circles.rs"));
}

#[test]
fn erb_circles_runs() {
    erb_circles::main().expect("erb_circles example should run");
}

mod special_functions {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/special_functions.rs"));
}

#[test]
fn special_functions_runs() {
    special_functions::main().expect("special_functions example should run");
}

mod distance_distributions {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/distance_distributions.rs"));
}

#[test]
fn distance_distributions_runs() {
    distance_distributions::main().expect("distance_distributions example should run");
}

mod segment_crossings {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/segment_crossings.rs"));
}

#[test]
fn segment_crossings_runs() {
    segment_crossings::main().expect("segment_crossings example should run");
}

mod analytic_sweep {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/analytic_sweep.rs"));
}

#[test]
fn analytic_sweep_runs() {
    analytic_sweep::run(None).expect("analytic_sweep example should run");
}

mod monte_carlo {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/monte_carlo.rs"));
}

#[test]
fn monte_carlo_runs() {
    monte_carlo::main().expect("monte_carlo example should run");
}

mod config_sweep {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/config_sweep.rs"));
}

#[test]
fn config_sweep_runs() {
    config_sweep::run(None).expect("config_sweep example should run");
}
