// A small Monte Carlo campaign set against the closed forms.
//
// ```bash
// cargo run --release --example monte_carlo
// ```

use std::error::Error;
use std::path::Path;

use hetnet_handover::config::parse_config;
use hetnet_handover::sim::compare_to_analytics;

const CONFIG: &str = r#"
[cluster]
mean_offspring = 0.2

[simulation]
n_users = 200
n_moves = 50
n_trials = 8
seed = 3
"#;

pub fn main() -> Result<(), Box<dyn Error>> {
    let spec = parse_config(CONFIG, Path::new("campaign"))?;
    let cfg = &spec.points[0].sim;
    let (campaign, rows) = compare_to_analytics(cfg, spec.mean_distance_mode())?;

    let exposure: f64 = campaign.trials.iter().map(|t| t.exposure_time).sum();
    println!("{} trials, {:.0} user-hours", campaign.trials.len(), exposure / 3600.0);
    for pe in &campaign.estimate.pairs {
        println!("{:>4}: mean target count {:.2}", pe.pair.label(), pe.n_bs_mean);
    }

    println!("\n{:>4} {:>4} {:>12} {:>12} {:>8}", "pair", "", "analytic", "simulated", "ratio");
    for r in rows {
        let analytic = r.analytic.map_or_else(|| "n/a".to_owned(), |v| format!("{v:.3e}"));
        let ratio = r.ratio.map_or_else(|| "n/a".to_owned(), |v| format!("{v:.3}"));
        println!("{:>4} {:>4} {analytic:>12} {:>12.3e} {ratio:>8}", r.pair.label(), r.metric.label(), r.simulated);
    }
    Ok(())
}
