//! TOML experiment files.
//!
//! Every key carries its unit in the name. Absent keys take the defaults of
//! the reference deployment; unknown keys are rejected. Decibel and km/h
//! values are converted once, when the file is resolved into
//! [`ExperimentSpec::points`].
//!
//! ```toml
//! pair = "S'S"
//!
//! [cluster]
//! sigma_m = 150.0
//!
//! [mobility]
//! velocity_kmh = 60.0
//!
//! [sweep]
//! axis = "sigma"
//! values = [50.0, 100.0, 150.0, 200.0]
//! ```

use std::fmt;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::analytics::{HandoverThresholds, MeanDistanceMode, PairKind, Scenario};
use crate::error::{Error, Result};
use crate::geometry::{ClusterConfig, Region};
use crate::mobility::MobilityConfig;
use crate::radio::{db_to_linear, TierRadioParams, TierSet};
use crate::sim::SimConfig;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RegionSection {
    pub width_m: f64,
    pub height_m: f64,
}

impl Default for RegionSection {
    fn default() -> Self {
        RegionSection {
            width_m: 5000.0,
            height_m: 5000.0,
        }
    }
}

/// `lambda_m` and `lambda_p` default to a tenth of `lambda_s`, also at every
/// point of a `lambda_s` sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DensitySection {
    pub lambda_s_per_m2: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda_m_per_m2: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda_p_per_m2: Option<f64>,
}

impl Default for DensitySection {
    fn default() -> Self {
        DensitySection {
            lambda_s_per_m2: 2e-5,
            lambda_m_per_m2: None,
            lambda_p_per_m2: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ClusterSection {
    pub sigma_m: f64,
    pub mean_offspring: f64,
}

impl Default for ClusterSection {
    fn default() -> Self {
        ClusterSection {
            sigma_m: 150.0,
            mean_offspring: 5.0,
        }
    }
}

/// One tier in dB units. Path loss is `pathloss_1km_db + pathloss_slope_db * log10(r / km)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct TierDb {
    pub tx_power_dbm: Option<f64>,
    pub antenna_gain_dbi: Option<f64>,
    pub bias_db: Option<f64>,
    pub pathloss_1km_db: Option<f64>,
    pub pathloss_slope_db: Option<f64>,
}

impl TierDb {
    fn full(p: f64, g: f64, b: f64, pl: f64, slope: f64) -> Self {
        TierDb {
            tx_power_dbm: Some(p),
            antenna_gain_dbi: Some(g),
            bias_db: Some(b),
            pathloss_1km_db: Some(pl),
            pathloss_slope_db: Some(slope),
        }
    }

    pub fn macro_default() -> Self {
        Self::full(46.0, 14.0, 0.0, 128.1, 37.6)
    }

    pub fn small_default() -> Self {
        Self::full(30.0, 5.0, 4.0, 140.7, 36.7)
    }

    /// 6 dB above the PPP small cells, so the hotspot-to-small boundary is a
    /// proper circle.
    pub fn hotspot_default() -> Self {
        Self::full(36.0, 5.0, 4.0, 140.7, 36.7)
    }

    fn filled(&self, d: &TierDb) -> TierDb {
        TierDb {
            tx_power_dbm: self.tx_power_dbm.or(d.tx_power_dbm),
            antenna_gain_dbi: self.antenna_gain_dbi.or(d.antenna_gain_dbi),
            bias_db: self.bias_db.or(d.bias_db),
            pathloss_1km_db: self.pathloss_1km_db.or(d.pathloss_1km_db),
            pathloss_slope_db: self.pathloss_slope_db.or(d.pathloss_slope_db),
        }
    }

    fn to_linear(&self) -> Result<TierRadioParams> {
        let v = |x: Option<f64>| x.unwrap_or(f64::NAN);
        TierRadioParams::from_db(
            v(self.tx_power_dbm),
            v(self.antenna_gain_dbi),
            v(self.bias_db),
            v(self.pathloss_1km_db),
            v(self.pathloss_slope_db),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TierSection {
    #[serde(rename = "macro")]
    pub macro_cell: TierDb,
    pub small: TierDb,
    pub hotspot: TierDb,
}

impl Default for TierSection {
    fn default() -> Self {
        TierSection {
            macro_cell: TierDb::macro_default(),
            small: TierDb::small_default(),
            hotspot: TierDb::hotspot_default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MobilitySection {
    pub sigma_rwp_m: f64,
    pub p_z: f64,
    pub sigma_z_m: f64,
    pub velocity_kmh: f64,
    pub pause_s: f64,
}

impl Default for MobilitySection {
    fn default() -> Self {
        MobilitySection {
            sigma_rwp_m: 200.0,
            p_z: 0.3,
            sigma_z_m: 200.0,
            velocity_kmh: 60.0,
            pause_s: 5.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct HandoverSection {
    pub t_threshold_s: f64,
    pub t_pingpong_s: f64,
    pub q_out_db: f64,
}

impl Default for HandoverSection {
    fn default() -> Self {
        HandoverSection {
            t_threshold_s: 1.0,
            t_pingpong_s: 10.0,
            q_out_db: -3.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SimulationSection {
    pub n_users: usize,
    pub n_moves: usize,
    pub n_trials: usize,
    pub seed: u64,
    pub workers: usize,
    /// `E[N_bs]` used by the closed forms in `analyze`.
    pub expected_n_bs: f64,
    pub mean_distance: MeanDistanceMode,
}

impl Default for SimulationSection {
    fn default() -> Self {
        SimulationSection {
            n_users: 50,
            n_moves: 100,
            n_trials: 20,
            seed: 1,
            workers: 1,
            expected_n_bs: 10.0,
            mean_distance: MeanDistanceMode::Numeric,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SweepAxis {
    /// Per m^2.
    #[serde(rename = "lambda_s")]
    LambdaS,
    /// Meters.
    #[serde(rename = "sigma")]
    Sigma,
    /// km/h.
    #[serde(rename = "velocity")]
    Velocity,
    /// dBm.
    #[serde(rename = "tx_power_s'")]
    TxPowerHotspot,
    /// Seconds.
    #[serde(rename = "T")]
    Threshold,
    /// Seconds.
    #[serde(rename = "T_p")]
    PingPongWindow,
}

impl SweepAxis {
    pub fn label(self) -> &'static str {
        match self {
            SweepAxis::LambdaS => "lambda_s",
            SweepAxis::Sigma => "sigma",
            SweepAxis::Velocity => "velocity",
            SweepAxis::TxPowerHotspot => "tx_power_s'",
            SweepAxis::Threshold => "T",
            SweepAxis::PingPongWindow => "T_p",
        }
    }
}

impl fmt::Display for SweepAxis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSection {
    pub axis: SweepAxis,
    pub values: Vec<f64>,
}

/// The file as written, with section defaults filled in.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ConfigFile {
    pub pair: PairKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
    pub region: RegionSection,
    pub density: DensitySection,
    pub cluster: ClusterSection,
    pub tier: TierSection,
    pub mobility: MobilitySection,
    pub handover: HandoverSection,
    pub simulation: SimulationSection,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepSection>,
}

impl Default for ConfigFile {
    fn default() -> Self {
        ConfigFile {
            pair: PairKind::HotspotSmall,
            output: None,
            region: RegionSection::default(),
            density: DensitySection::default(),
            cluster: ClusterSection::default(),
            tier: TierSection::default(),
            mobility: MobilitySection::default(),
            handover: HandoverSection::default(),
            simulation: SimulationSection::default(),
            sweep: None,
        }
    }
}

/// One resolved configuration of a sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepPoint {
    /// `None` when the file has no sweep.
    pub value: Option<f64>,
    pub sim: SimConfig,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentSpec {
    pub file: ConfigFile,
    pub points: Vec<SweepPoint>,
}

impl ExperimentSpec {
    pub fn pair(&self) -> PairKind {
        self.file.pair
    }

    pub fn axis(&self) -> Option<SweepAxis> {
        self.file.sweep.as_ref().map(|s| s.axis)
    }

    pub fn mean_distance_mode(&self) -> MeanDistanceMode {
        self.file.simulation.mean_distance
    }

    /// Analytic scenario at sweep point `i`.
    pub fn scenario(&self, i: usize) -> Scenario {
        self.points[i]
            .sim
            .scenario(self.file.simulation.expected_n_bs, self.mean_distance_mode())
    }

    /// Validates `file` exhaustively and resolves every sweep point.
    pub fn from_file(mut file: ConfigFile) -> Result<Self> {
        file.tier.macro_cell = file.tier.macro_cell.filled(&TierDb::macro_default());
        file.tier.small = file.tier.small.filled(&TierDb::small_default());
        file.tier.hotspot = file.tier.hotspot.filled(&TierDb::hotspot_default());

        let mut problems = Vec::new();
        let values: Vec<Option<f64>> = match &file.sweep {
            None => vec![None],
            Some(s) => {
                if s.values.is_empty() {
                    problems.push("sweep.values: must not be empty".to_string());
                }
                if s.values.iter().any(|v| !v.is_finite()) {
                    problems.push("sweep.values: must be finite".to_string());
                }
                if s.values.windows(2).any(|w| w[1] <= w[0]) {
                    problems.push("sweep.values: must be strictly increasing".to_string());
                }
                s.values.iter().copied().map(Some).collect()
            }
        };
        if !(file.simulation.expected_n_bs.is_finite() && file.simulation.expected_n_bs >= 0.0) {
            problems.push(format!(
                "simulation.expected_n_bs: must be finite and >= 0, got {}",
                file.simulation.expected_n_bs
            ));
        }
        let mut points = Vec::with_capacity(values.len());
        for value in values {
            match resolve_point(&file, value) {
                Ok(sim) => points.push(SweepPoint { value, sim }),
                Err(errs) => {
                    for e in errs {
                        let msg = match value {
                            Some(v) => format!("at {} = {v}: {e}", file.sweep.as_ref().map_or("", |s| s.axis.label())),
                            None => e,
                        };
                        if !problems.contains(&msg) {
                            problems.push(msg);
                        }
                    }
                }
            }
        }
        if !problems.is_empty() {
            return Err(Error::ConfigInvalid(problems));
        }
        Ok(ExperimentSpec { file, points })
    }

    /// Overrides simulation settings from the command line.
    pub fn with_overrides(&self, seed: Option<u64>, trials: Option<usize>, workers: Option<usize>) -> Result<Self> {
        let mut file = self.file.clone();
        if let Some(s) = seed {
            file.simulation.seed = s;
        }
        if let Some(t) = trials {
            file.simulation.n_trials = t;
        }
        if let Some(w) = workers {
            file.simulation.workers = w;
        }
        Self::from_file(file)
    }
}

/// Builds the simulation config of one point, collecting every violation.
fn resolve_point(file: &ConfigFile, value: Option<f64>) -> std::result::Result<SimConfig, Vec<String>> {
    let mut f = file.clone();
    if let (Some(s), Some(v)) = (&file.sweep, value) {
        match s.axis {
            SweepAxis::LambdaS => f.density.lambda_s_per_m2 = v,
            SweepAxis::Sigma => f.cluster.sigma_m = v,
            SweepAxis::Velocity => f.mobility.velocity_kmh = v,
            SweepAxis::TxPowerHotspot => f.tier.hotspot.tx_power_dbm = Some(v),
            SweepAxis::Threshold => f.handover.t_threshold_s = v,
            SweepAxis::PingPongWindow => f.handover.t_pingpong_s = v,
        }
    }
    let mut errs = Vec::new();
    let mut keep = |section: &str, r: Result<()>| {
        if let Err(e) = r {
            errs.push(format!("{section}: {e}"));
        }
    };
    let region = Region::new(0.0, f.region.width_m, 0.0, f.region.height_m);
    keep("region", region.as_ref().map(|_| ()).map_err(clone_err));
    let lambda_s = f.density.lambda_s_per_m2;
    let lambda_m = f.density.lambda_m_per_m2.unwrap_or(lambda_s / 10.0);
    let lambda_p = f.density.lambda_p_per_m2.unwrap_or(lambda_s / 10.0);
    let cluster = ClusterConfig::new(lambda_p, f.cluster.sigma_m, f.cluster.mean_offspring);
    keep("cluster", cluster.as_ref().map(|_| ()).map_err(clone_err));
    let tiers = [
        ("tier.macro", f.tier.macro_cell.to_linear()),
        ("tier.small", f.tier.small.to_linear()),
        ("tier.hotspot", f.tier.hotspot.to_linear()),
    ];
    for (name, t) in &tiers {
        keep(name, t.as_ref().map(|_| ()).map_err(clone_err));
    }
    let mobility = MobilityConfig {
        sigma_rwp: f.mobility.sigma_rwp_m,
        p_z: f.mobility.p_z,
        sigma_z: f.mobility.sigma_z_m,
        velocity: f.mobility.velocity_kmh / 3.6,
        pause: f.mobility.pause_s,
    };
    keep("mobility", mobility.validate());
    let thresholds = HandoverThresholds {
        t_threshold: f.handover.t_threshold_s,
        t_pingpong: f.handover.t_pingpong_s,
        q_out: db_to_linear(f.handover.q_out_db),
    };
    keep("handover", thresholds.validate());
    let [(_, m), (_, s), (_, h)] = tiers;
    let (Ok(region), Ok(cluster), Ok(m), Ok(s), Ok(h)) = (region, cluster, m, s, h) else {
        return Err(errs);
    };
    let sim = SimConfig {
        region,
        tiers: TierSet {
            macro_cell: m,
            small_cell: s,
            hotspot: h,
        },
        lambda_m,
        lambda_s,
        cluster,
        mobility,
        thresholds,
        n_users: f.simulation.n_users,
        n_moves: f.simulation.n_moves,
        n_trials: f.simulation.n_trials,
        master_seed: f.simulation.seed,
        workers: f.simulation.workers,
    };
    keep("simulation", sim.validate());
    if errs.is_empty() {
        Ok(sim)
    } else {
        Err(errs)
    }
}

fn clone_err(e: &Error) -> Error {
    Error::OutOfValidity(e.to_string())
}

pub fn parse_config(text: &str, origin: &Path) -> Result<ExperimentSpec> {
    let file: ConfigFile = toml::from_str(text).map_err(|e| Error::ConfigParse {
        path: origin.to_path_buf(),
        message: e.to_string(),
    })?;
    ExperimentSpec::from_file(file)
}

pub fn load_config(path: &Path) -> Result<ExperimentSpec> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::ConfigParse {
        path: path.to_path_buf(),
        message: e.to_string(),
    })?;
    parse_config(&text, path)
}

/// Serializes the resolved file; `parse_config(&emit_config(s))` gives `s` back.
pub fn emit_config(spec: &ExperimentSpec) -> String {
    toml::to_string(&spec.file).expect("config sections always serialize")
}
