//! The experiment drivers behind the `hetnet-handover` binary.
//!
//! `analyze`, `simulate` and `validate` return their CSV as a string. Every
//! CSV opens with a `# schema_version=1` comment, then a header row, and ends
//! with a newline.

use std::fmt::Write as _;

use serde::Serialize;

use crate::analytics::analyze;
use crate::config::ExperimentSpec;
use crate::error::Result;
use crate::oracle::compute_fixtures;
use crate::sim::{compare_to_analytics, run_campaign, ComparisonRow};

pub const SCHEMA_LINE: &str = "# schema_version=1";

/// A CSV body plus a human-readable summary for the terminal.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub csv: String,
    pub summary: String,
}

fn to_csv<R: Serialize>(rows: &[R], header: &[&str]) -> Result<String> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    w.write_record(header)?;
    for r in rows {
        w.serialize(r)?;
    }
    let body = w.into_inner().map_err(|e| e.into_error())?;
    Ok(format!("{SCHEMA_LINE}\n{}", String::from_utf8_lossy(&body)))
}

#[derive(Debug, Serialize)]
struct AnalyzeRow {
    pair: String,
    lambda_s: f64,
    sigma: f64,
    v_mps: f64,
    t_s: f64,
    tp_s: f64,
    h_t: f64,
    h: f64,
    h_f: f64,
    h_p: f64,
}

pub const ANALYZE_HEADER: [&str; 10] = ["pair", "lambda_s", "sigma", "V_mps", "T_s", "Tp_s", "H_t", "H", "H_f", "H_p"];

/// Closed-form metrics of the configured pair, one row per sweep point.
pub fn cmd_analyze(spec: &ExperimentSpec) -> Result<Report> {
    let pair = spec.pair();
    let mut rows = Vec::with_capacity(spec.points.len());
    let mut clamped = 0;
    for (i, p) in spec.points.iter().enumerate() {
        let m = analyze(&spec.scenario(i), pair)?;
        if m.pingpong_clamped() {
            clamped += 1;
        }
        rows.push(AnalyzeRow {
            pair: pair.label().to_string(),
            lambda_s: p.sim.lambda_s,
            sigma: p.sim.cluster.sigma,
            v_mps: p.sim.mobility.velocity,
            t_s: p.sim.thresholds.t_threshold,
            tp_s: p.sim.thresholds.t_pingpong,
            h_t: m.triggered_rate,
            h: m.handover_rate,
            h_f: m.failure_rate,
            h_p: m.pingpong_rate,
        });
    }
    let mut summary = format!("analyze {pair}: {} point(s)", rows.len());
    if clamped > 0 {
        let _ = write!(summary, ", ping-pong bracket negative and clamped at {clamped}");
    }
    Ok(Report {
        csv: to_csv(&rows, &ANALYZE_HEADER)?,
        summary,
    })
}

#[derive(Debug, Serialize)]
struct SimulateRow {
    point: usize,
    axis_value: Option<f64>,
    trial: u64,
    pair: String,
    n_bs: u64,
    triggered: u64,
    handovers: u64,
    failures: u64,
    pingpongs: u64,
    overlaps: u64,
    degenerate_skipped: u64,
    exposure_s: f64,
    h_t: f64,
    h: f64,
    h_f: Option<f64>,
    h_p: f64,
}

pub const SIMULATE_HEADER: [&str; 16] = [
    "point",
    "axis_value",
    "trial",
    "pair",
    "n_bs",
    "triggered",
    "handovers",
    "failures",
    "pingpongs",
    "overlaps",
    "degenerate_skipped",
    "exposure_s",
    "H_t",
    "H",
    "H_f",
    "H_p",
];

/// Per-trial event counts and rates of the configured pair, one row per
/// sweep point and trial. `H_f` is empty for a trial without triggers.
pub fn cmd_simulate(spec: &ExperimentSpec) -> Result<Report> {
    let pair = spec.pair();
    let mut rows = Vec::new();
    let mut summary = String::new();
    for (i, p) in spec.points.iter().enumerate() {
        let campaign = run_campaign(&p.sim)?;
        for t in &campaign.trials {
            let c = t.pair(pair);
            let per_s = |n: u64| n as f64 / t.exposure_time;
            rows.push(SimulateRow {
                point: i,
                axis_value: p.value,
                trial: t.trial,
                pair: pair.label().to_string(),
                n_bs: c.n_bs,
                triggered: c.triggered,
                handovers: c.handovers,
                failures: c.failures,
                pingpongs: c.pingpongs,
                overlaps: c.overlaps,
                degenerate_skipped: c.degenerate_skipped,
                exposure_s: t.exposure_time,
                h_t: per_s(c.triggered),
                h: per_s(c.handovers),
                h_f: (c.triggered > 0).then(|| c.failures as f64 / c.triggered as f64),
                h_p: per_s(c.pingpongs),
            });
        }
        let e = campaign.estimate.pair(pair);
        let _ = writeln!(
            summary,
            "point {i}{}: H_t {:.4e}  H {:.4e}  H_f {:.4e}  H_p {:.4e}  (N_bs {:.2}, {} trials)",
            axis_note(spec, p.value),
            e.triggered_rate.mean,
            e.handover_rate.mean,
            e.failure_rate.mean,
            e.pingpong_rate.mean,
            e.n_bs_mean,
            campaign.trials.len()
        );
    }
    Ok(Report {
        csv: to_csv(&rows, &SIMULATE_HEADER)?,
        summary,
    })
}

fn axis_note(spec: &ExperimentSpec, value: Option<f64>) -> String {
    match (spec.axis(), value) {
        (Some(a), Some(v)) => format!(" ({a} = {v})"),
        _ => String::new(),
    }
}

#[derive(Debug, Serialize)]
struct ValidateRow {
    point: usize,
    axis_value: Option<f64>,
    pair: String,
    metric: &'static str,
    analytic: Option<f64>,
    simulated: f64,
    half_width: Option<f64>,
    ratio: Option<f64>,
    analytic_below_sim: bool,
    note: String,
}

pub const VALIDATE_HEADER: [&str; 10] = [
    "point",
    "axis_value",
    "pair",
    "metric",
    "analytic",
    "simulated",
    "half_width",
    "ratio",
    "analytic_below_sim",
    "note",
];

/// Campaign plus closed forms at every sweep point, for all three pairs.
/// The closed forms use the simulated mean base-station count.
pub fn cmd_validate(spec: &ExperimentSpec) -> Result<Report> {
    let mut rows = Vec::new();
    let mut summary = String::new();
    for (i, p) in spec.points.iter().enumerate() {
        let (_, cmp) = compare_to_analytics(&p.sim, spec.mean_distance_mode())?;
        let _ = writeln!(summary, "point {i}{}", axis_note(spec, p.value));
        let _ = writeln!(summary, "  {:<4} {:<4} {:>11} {:>11} {:>10} {:>7}", "pair", "H", "analytic", "simulated", "+/-", "ratio");
        for r in &cmp {
            summary_line(&mut summary, r);
            rows.push(ValidateRow {
                point: i,
                axis_value: p.value,
                pair: r.pair.label().to_string(),
                metric: r.metric.label(),
                analytic: r.analytic,
                simulated: r.simulated,
                half_width: r.half_width,
                ratio: r.ratio,
                analytic_below_sim: r.analytic_below_sim,
                note: r.note.clone(),
            });
        }
    }
    Ok(Report {
        csv: to_csv(&rows, &VALIDATE_HEADER)?,
        summary,
    })
}

fn summary_line(out: &mut String, r: &ComparisonRow) {
    let opt = |v: Option<f64>, prec: usize| v.map_or_else(|| "-".to_string(), |x| format!("{x:.prec$e}"));
    let ratio = r.ratio.map_or_else(|| "-".to_string(), |x| format!("{x:.3}"));
    let _ = writeln!(
        out,
        "  {:<4} {:<4} {:>11} {:>11} {:>10} {:>7}",
        r.pair.label(),
        r.metric.label(),
        opt(r.analytic, 4),
        format!("{:.4e}", r.simulated),
        opt(r.half_width, 2),
        ratio
    );
}

/// Recomputes the regression constants from their oracles, as TOML.
pub fn cmd_fixtures() -> String {
    compute_fixtures().to_toml()
}
