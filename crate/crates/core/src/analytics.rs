//! Closed-form distance laws, mean distances and handover metrics.
//!
//! Three cross-tier pairs are modelled. `SM` is a PPP small cell handing
//! over to a macro cell, `S'S` a hotspot (cluster) small cell handing over
//! to a PPP small cell and `S'M` a hotspot small cell handing over to a
//! macro cell. The mean serving-to-target distance `E[R]` feeds the ERB
//! radius; rates are per user and per second.

use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{ensure_non_negative, ensure_positive, Error, Result};
use crate::geometry::Tier;
use crate::mobility::{MobilityConfig, RAYLEIGH_MEAN_FACTOR};
use crate::quad;
use crate::radio::{xi_factor, xi_failure, TierSet};
use crate::specfun::{erf, i0e, i1e, marcum_q1, BesselApproxTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PairKind {
    #[serde(rename = "SM")]
    SmallMacro,
    #[serde(rename = "S'S")]
    HotspotSmall,
    #[serde(rename = "S'M")]
    HotspotMacro,
}

impl PairKind {
    pub const ALL: [PairKind; 3] = [PairKind::SmallMacro, PairKind::HotspotSmall, PairKind::HotspotMacro];

    pub fn label(self) -> &'static str {
        match self {
            PairKind::SmallMacro => "SM",
            PairKind::HotspotSmall => "S'S",
            PairKind::HotspotMacro => "S'M",
        }
    }

    pub fn from_label(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|p| p.label() == s)
    }

    pub fn serving_tier(self) -> Tier {
        match self {
            PairKind::SmallMacro => Tier::Small,
            PairKind::HotspotSmall | PairKind::HotspotMacro => Tier::Hotspot,
        }
    }

    pub fn target_tier(self) -> Tier {
        match self {
            PairKind::SmallMacro | PairKind::HotspotMacro => Tier::Macro,
            PairKind::HotspotSmall => Tier::Small,
        }
    }
}

impl fmt::Display for PairKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HandoverThresholds {
    /// Time-to-trigger `T`, seconds. Zero is allowed.
    pub t_threshold: f64,
    /// Ping-pong window `T_p`, seconds.
    pub t_pingpong: f64,
    /// Failure offset `Q_out`, linear.
    pub q_out: f64,
}

impl HandoverThresholds {
    pub fn validate(&self) -> Result<()> {
        ensure_non_negative("t_threshold", self.t_threshold)?;
        ensure_positive("t_pingpong", self.t_pingpong)?;
        if !(self.q_out > 0.0 && self.q_out < 1.0) {
            return Err(Error::invalid("q_out", format!("must lie in (0, 1), got {}", self.q_out)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HandoverMetrics {
    pub pair: PairKind,
    /// Triggered handovers per second.
    pub triggered_rate: f64,
    /// Executed handovers per second.
    pub handover_rate: f64,
    /// Failures per triggered handover.
    pub failure_rate: f64,
    /// Ping-pongs per second, clamped at zero.
    pub pingpong_rate: f64,
    /// Ping-pong rate before clamping; negative values flag the clamp.
    pub pingpong_raw: f64,
}

impl HandoverMetrics {
    pub fn pingpong_clamped(&self) -> bool {
        self.pingpong_raw < 0.0
    }
}

/// PDF of the distance from a typical point to the nearest point of a PPP.
pub fn pdf_r_sm(r: f64, lambda_m: f64) -> f64 {
    if r < 0.0 {
        return 0.0;
    }
    2.0 * PI * lambda_m * r * (-PI * lambda_m * r * r).exp()
}

pub fn cdf_r_sm(r: f64, lambda_m: f64) -> f64 {
    if r <= 0.0 {
        return 0.0;
    }
    -(-PI * lambda_m * r * r).exp_m1()
}

/// `1 / (2 sqrt(lambda_m))`.
pub fn mean_r_sm(lambda_m: f64) -> Result<f64> {
    ensure_positive("lambda_m", lambda_m)?;
    Ok(0.5 / lambda_m.sqrt())
}

/// Rician density of the offspring-to-target distance given the parent is
/// at distance `w` from the target.
pub fn rician_pdf(r: f64, w: f64, sigma: f64) -> f64 {
    if r < 0.0 {
        return 0.0;
    }
    let s2 = sigma * sigma;
    // exp(-(r^2 + w^2) / 2s^2) I0(wr/s^2) rewritten with the scaled Bessel.
    r / s2 * (-(r - w) * (r - w) / (2.0 * s2)).exp() * i0e(w * r / s2)
}

/// `1 - Q1(w / sigma, r / sigma)`.
pub fn rician_cdf(r: f64, w: f64, sigma: f64) -> Result<f64> {
    ensure_positive("sigma", sigma)?;
    ensure_non_negative("w", w)?;
    if r <= 0.0 {
        return Ok(0.0);
    }
    Ok(1.0 - marcum_q1(w / sigma, r / sigma)?)
}

/// Mean of the Rician law, `sigma sqrt(pi/2) L_{1/2}(-w^2 / 2 sigma^2)`.
pub fn rician_mean(w: f64, sigma: f64) -> f64 {
    let y = w * w / (4.0 * sigma * sigma);
    sigma * RAYLEIGH_MEAN_FACTOR * ((1.0 + 2.0 * y) * i0e(y) + 2.0 * y * i1e(y))
}

/// Mean distance from a cluster offspring to the nearest point of a PPP of
/// density `lambda`, averaging the Rician mean over the parent distance.
pub fn mean_cluster_distance_numeric(lambda: f64, sigma: f64) -> Result<f64> {
    ensure_positive("lambda", lambda)?;
    ensure_positive("sigma", sigma)?;
    // Beyond this radius the parent-distance law holds less than e^-40.
    let w_max = (40.0 / (PI * lambda)).sqrt();
    quad::integrate(
        |w| pdf_r_sm(w, lambda) * rician_mean(w, sigma),
        0.0,
        w_max,
        8,
        1e-10,
        "mean cluster distance",
    )
}

/// `F_k(w) = int_0^inf r^2 exp(-r^2/2s^2 + b w r/s^2) dr` in closed form.
pub fn f_k_exact(w: f64, sigma: f64, b_k: f64) -> f64 {
    let s = sigma;
    let u = b_k * w / s;
    s * s * b_k * w + RAYLEIGH_MEAN_FACTOR * (s * b_k * b_k * w * w + s * s * s) * (0.5 * u * u).exp() * (1.0 + erf(u / std::f64::consts::SQRT_2))
}

/// Closed-form bound on the mean cluster distance, built from the
/// first-interval coefficients of `table` with `q = pi lambda sigma^2`.
pub fn mean_cluster_distance_ub(lambda: f64, sigma: f64, table: &BesselApproxTable) -> Result<f64> {
    ensure_positive("lambda", lambda)?;
    ensure_positive("sigma", sigma)?;
    let q = PI * lambda * sigma * sigma;
    let mut sum = 0.0;
    for &(a, b) in &table.coeffs[0] {
        let d = 2.0 * q + 1.0 - b * b;
        if d <= 0.0 {
            return Err(Error::OutOfValidity(format!(
                "2q + 1 - b^2 = {d} <= 0 for b = {b} (q = {q})"
            )));
        }
        sum += a * (2.0 / d + b / (2.0 * q + 1.0).powf(1.5) + 4.0 * b * b / (d * d));
    }
    Ok((2.0 * PI).sqrt() * q * sigma * sum)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MeanDistanceMode {
    /// Quadrature of the exact cluster mean.
    #[default]
    Numeric,
    /// The exponential-sum closed form.
    UpperBound,
}

/// Inputs shared by the analytic metrics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scenario {
    pub region_area: f64,
    pub lambda_m: f64,
    pub lambda_s: f64,
    pub sigma: f64,
    pub tiers: TierSet,
    pub mobility: MobilityConfig,
    pub thresholds: HandoverThresholds,
    pub n_bs_mean: f64,
    pub mean_distance_mode: MeanDistanceMode,
    pub table: BesselApproxTable,
}

impl Scenario {
    /// Density of the target tier of `pair`.
    pub fn target_density(&self, pair: PairKind) -> f64 {
        match pair.target_tier() {
            Tier::Macro => self.lambda_m,
            _ => self.lambda_s,
        }
    }

    pub fn mean_distance(&self, pair: PairKind) -> Result<f64> {
        let lambda = self.target_density(pair);
        match (pair, self.mean_distance_mode) {
            (PairKind::SmallMacro, _) => mean_r_sm(lambda),
            (_, MeanDistanceMode::Numeric) => mean_cluster_distance_numeric(lambda, self.sigma),
            (_, MeanDistanceMode::UpperBound) => mean_cluster_distance_ub(lambda, self.sigma, &self.table),
        }
    }

    /// `(lambda* xi, lambda* xi_f)` with the target placed at the mean distance.
    pub fn lambda_xi(&self, pair: PairKind, mean_distance: f64) -> (f64, f64) {
        let serving = self.tiers.get(pair.serving_tier());
        let target = self.tiers.get(pair.target_tier());
        let xi = xi_factor(serving, target);
        let xi_f = xi_failure(xi, self.thresholds.q_out, target.pathloss_exponent);
        let alpha_ratio = serving.pathloss_exponent / target.pathloss_exponent;
        let lambda_star = (mean_distance * mean_distance).powf(alpha_ratio - 1.0);
        (lambda_star * xi, lambda_star * xi_f)
    }
}

fn ensure_inside(lambda_xi: f64) -> Result<()> {
    if lambda_xi > 0.0 && lambda_xi < 1.0 {
        Ok(())
    } else {
        Err(Error::OutOfValidity(format!(
            "lambda* xi = {lambda_xi}; the closed forms need the ERB circle to enclose the target (0 < lambda* xi < 1)"
        )))
    }
}

/// `(2/|S|) sqrt(c)/(1-c) E[N_bs] E[R] / (1/V + pause/E[L'])` with `c = lambda* xi`.
pub fn handover_triggered_rate(
    lambda_xi: f64,
    mean_distance: f64,
    region_area: f64,
    n_bs_mean: f64,
    mobility: &MobilityConfig,
) -> Result<f64> {
    ensure_inside(lambda_xi)?;
    ensure_non_negative("mean_distance", mean_distance)?;
    ensure_positive("region_area", region_area)?;
    ensure_non_negative("n_bs_mean", n_bs_mean)?;
    mobility.validate()?;
    let radius_factor = lambda_xi.sqrt() / (1.0 - lambda_xi);
    let per_meter = 1.0 / mobility.velocity + mobility.pause / mobility.mean_transition_length();
    Ok(2.0 / region_area * radius_factor * n_bs_mean * mean_distance / per_meter)
}

/// Probability that the in-circle sojourn is at least `t`.
///
/// `lambda_target` is the density of the target tier; `sigma` is ignored
/// for [`PairKind::SmallMacro`].
pub fn prob_sojourn_ge(pair: PairKind, t: f64, velocity: f64, lambda_xi: f64, lambda_target: f64, sigma: f64) -> Result<f64> {
    ensure_non_negative("t", t)?;
    ensure_positive("velocity", velocity)?;
    ensure_positive("lambda_target", lambda_target)?;
    ensure_inside(lambda_xi)?;
    let c = lambda_xi;
    match pair {
        PairKind::SmallMacro => {
            let vt = velocity * t;
            Ok((-4.0 * lambda_target * vt * vt * (1.0 - c).powi(2) / (PI * c)).exp())
        }
        PairKind::HotspotSmall | PairKind::HotspotMacro => {
            ensure_positive("sigma", sigma)?;
            let a = 1.0 / (2.0 * sigma * lambda_target.sqrt());
            let b = 2.0 * t * velocity * (1.0 - c) / (PI * sigma * c.sqrt());
            marcum_q1(a, b)
        }
    }
}

/// `P(S >= T) - P(S_f >= T_p)`, the ping-pong bracket before clamping.
pub fn pingpong_bracket(p_ge_t: f64, p_f_ge_tp: f64) -> f64 {
    p_ge_t - p_f_ge_tp
}

fn sojourn(s: &Scenario, pair: PairKind, t: f64, lambda_xi: f64) -> Result<f64> {
    prob_sojourn_ge(pair, t, s.mobility.velocity, lambda_xi, s.target_density(pair), s.sigma)
}

/// `H = H_t P(S >= T)`.
pub fn handover_rate(s: &Scenario, pair: PairKind) -> Result<f64> {
    let r = s.mean_distance(pair)?;
    let (c, _) = s.lambda_xi(pair, r);
    let h_t = handover_triggered_rate(c, r, s.region_area, s.n_bs_mean, &s.mobility)?;
    Ok(h_t * sojourn(s, pair, s.thresholds.t_threshold, c)?)
}

/// `H_f = H_{f,t} P(S_f <= T) / H_t`.
pub fn handover_failure_rate(s: &Scenario, pair: PairKind) -> Result<f64> {
    Ok(analyze(s, pair)?.failure_rate)
}

/// `H_p = H_t [P(S >= T) - P(S_f >= T_p)]`, clamped at zero.
pub fn pingpong_rate(s: &Scenario, pair: PairKind) -> Result<f64> {
    Ok(analyze(s, pair)?.pingpong_rate)
}

/// All four analytic metrics for one pair.
pub fn analyze(s: &Scenario, pair: PairKind) -> Result<HandoverMetrics> {
    s.thresholds.validate()?;
    let r = s.mean_distance(pair)?;
    let (c, c_f) = s.lambda_xi(pair, r);
    let h_t = handover_triggered_rate(c, r, s.region_area, s.n_bs_mean, &s.mobility)?;
    let h_ft = handover_triggered_rate(c_f, r, s.region_area, s.n_bs_mean, &s.mobility)?;
    let t = s.thresholds.t_threshold;
    let p_t = sojourn(s, pair, t, c)?;
    let p_f_t = sojourn(s, pair, t, c_f)?;
    let p_f_tp = sojourn(s, pair, s.thresholds.t_pingpong, c_f)?;
    let failure_rate = if h_t > 0.0 { h_ft * (1.0 - p_f_t) / h_t } else { 0.0 };
    let pingpong_raw = h_t * pingpong_bracket(p_t, p_f_tp);
    Ok(HandoverMetrics {
        pair,
        triggered_rate: h_t,
        handover_rate: h_t * p_t,
        failure_rate,
        pingpong_rate: pingpong_raw.max(0.0),
        pingpong_raw,
    })
}
