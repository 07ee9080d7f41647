// Closed-form handover metrics over a velocity sweep, written as CSV.
//
// ```bash
// cargo run --example analytic_sweep -- sweep.csv
// ```

use std::error::Error;
use std::path::Path;

use hetnet_handover::analytics::{analyze, PairKind};
use hetnet_handover::commands::cmd_analyze;
use hetnet_handover::config::parse_config;

const CONFIG: &str = r#"
pair = "S'S"

[sweep]
axis = "velocity"
values = [30.0, 60.0, 90.0, 120.0]
"#;

pub fn main() -> Result<(), Box<dyn Error>> {
    run(std::env::args().nth(1))
}

pub fn run(arg: Option<String>) -> Result<(), Box<dyn Error>> {
    let spec = parse_config(CONFIG, Path::new("velocity sweep"))?;

    for (i, point) in spec.points.iter().enumerate() {
        let s = spec.scenario(i);
        let m = analyze(&s, PairKind::HotspotSmall)?;
        println!(
            "V {:>5.1} km/h: H_t {:.3e}/s  H {:.3e}/s  H_f {:.3e}  H_p {:.3e}/s",
            point.value.unwrap_or_default(),
            m.triggered_rate,
            m.handover_rate,
            m.failure_rate,
            m.pingpong_rate
        );
    }

    let report = cmd_analyze(&spec)?;
    match arg {
        Some(path) => std::fs::write(&path, &report.csv)?,
        None => print!("\n{}", report.csv),
    }
    Ok(())
}
