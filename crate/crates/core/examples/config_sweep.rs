// Loads a TOML experiment, applies overrides and prints the resolved file.
//
// ```bash
// cargo run --example config_sweep -- examples/configs/threshold_sweep.toml
// ```

use std::error::Error;
use std::path::PathBuf;

use hetnet_handover::commands::cmd_analyze;
use hetnet_handover::config::{emit_config, load_config};

pub fn main() -> Result<(), Box<dyn Error>> {
    run(std::env::args().nth(1))
}

pub fn run(arg: Option<String>) -> Result<(), Box<dyn Error>> {
    let path = arg
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples/configs/threshold_sweep.toml"));
    let spec = load_config(&path)?.with_overrides(Some(42), None, Some(2))?;

    println!("{}", emit_config(&spec));
    let axis = spec.axis().map_or("none", |a| a.label());
    println!("{} points along {axis}", spec.points.len());

    let report = cmd_analyze(&spec)?;
    print!("{}", report.csv);
    eprintln!("{}", report.summary);
    Ok(())
}
