//! Handover analysis for two-tier networks with clustered hotspots.
//!
//! The library samples Poisson and Thomas cluster deployments, moves users
//! with a modified random waypoint model, evaluates closed-form handover,
//! failure and ping-pong rates, and checks them with a seeded Monte Carlo
//! simulator.
//!
//! Each capability has a runnable example:
//!
//! ```bash
//! cargo run --example point_processes
//! cargo run --release --example mobility_occupancy
//! cargo run --example erb_circles
//! cargo run --release --example special_functions
//! cargo run --release --example distance_distributions
//! cargo run --example segment_crossings
//! cargo run --example analytic_sweep
//! cargo run --release --example monte_carlo
//! cargo run --example config_sweep -- examples/configs/threshold_sweep.toml
//! ```

pub mod analytics;
pub mod commands;
pub mod config;
pub mod error;
pub mod geometry;
pub mod mobility;
pub mod oracle;
pub mod quad;
pub mod radio;
pub mod sim;
pub mod specfun;

pub use error::{Error, Result};
