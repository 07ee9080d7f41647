//! Downlink RSS, strongest-RSS association and the circular approximation
//! of the equal-biased-RSS boundary (ERB) between a serving and a target BS.
//!
//! Coordinates handed to the ERB functions are relative to the serving BS.

use serde::{Deserialize, Serialize};

use crate::error::{ensure_positive, Error, Result};
use crate::geometry::{Point, PointSet, Tier};

pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

pub fn linear_to_db(linear: f64) -> f64 {
    10.0 * linear.log10()
}

/// Per-tier link parameters, all linear. Build with
/// [`TierRadioParams::from_db`]; that is the only place dB values enter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TierRadioParams {
    /// Transmit power, mW.
    pub tx_power: f64,
    pub antenna_gain: f64,
    pub bias: f64,
    /// Path gain at 1 m.
    pub pathloss_intercept: f64,
    pub pathloss_exponent: f64,
}

impl TierRadioParams {
    /// Path loss follows `pl_1km_db + pl_slope_db * log10(r / 1 km)`.
    pub fn from_db(tx_power_dbm: f64, antenna_gain_dbi: f64, bias_db: f64, pl_1km_db: f64, pl_slope_db: f64) -> Result<Self> {
        let exponent = pl_slope_db / 10.0;
        // Re-reference the intercept from 1 km to 1 m.
        let pl_1m_db = pl_1km_db - 3.0 * pl_slope_db;
        let params = TierRadioParams {
            tx_power: db_to_linear(tx_power_dbm),
            antenna_gain: db_to_linear(antenna_gain_dbi),
            bias: db_to_linear(bias_db),
            pathloss_intercept: db_to_linear(-pl_1m_db),
            pathloss_exponent: exponent,
        };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        ensure_positive("tx_power", self.tx_power)?;
        ensure_positive("antenna_gain", self.antenna_gain)?;
        ensure_positive("bias", self.bias)?;
        ensure_positive("pathloss_intercept", self.pathloss_intercept)?;
        if !(self.pathloss_exponent.is_finite() && self.pathloss_exponent > 2.0) {
            return Err(Error::invalid(
                "pathloss_exponent",
                format!("must exceed 2, got {}", self.pathloss_exponent),
            ));
        }
        Ok(())
    }

    /// `B * P * G * C`, the biased received power at 1 m.
    pub fn effective_gain(&self) -> f64 {
        self.bias * self.tx_power * self.antenna_gain * self.pathloss_intercept
    }

    /// Natural log of the biased RSS at `distance`; `+inf` at distance 0.
    pub fn log_rss(&self, distance: f64) -> f64 {
        self.effective_gain().ln() - self.pathloss_exponent * distance.ln()
    }
}

/// Radio parameters of all three tiers.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TierSet {
    pub macro_cell: TierRadioParams,
    pub small_cell: TierRadioParams,
    pub hotspot: TierRadioParams,
}

impl TierSet {
    pub fn get(&self, tier: Tier) -> &TierRadioParams {
        match tier {
            Tier::Macro => &self.macro_cell,
            Tier::Small => &self.small_cell,
            Tier::Hotspot => &self.hotspot,
        }
    }
}

pub fn dl_rss(tier: &TierRadioParams, distance: f64) -> Result<f64> {
    ensure_positive("distance", distance)?;
    Ok(tier.effective_gain() * distance.powf(-tier.pathloss_exponent))
}

/// `(K_target / K_serving)^(2 / alpha_target)` with `K = B P G C`.
pub fn xi_factor(serving: &TierRadioParams, target: &TierRadioParams) -> f64 {
    (target.effective_gain() / serving.effective_gain()).powf(2.0 / target.pathloss_exponent)
}

/// `xi * q_out^(2 / alpha_target)`.
pub fn xi_failure(xi: f64, q_out: f64, target_exponent: f64) -> f64 {
    xi * q_out.powf(2.0 / target_exponent)
}

/// Linearization scale `|target|^(2 (alpha_ratio - 1))` that replaces
/// `r^(2 alpha_ratio)` by `lambda* r^2` over `[0, |target|]`.
///
/// This is not the exact L1-optimal scale for `alpha_ratio != 1`; that one
/// is `(|target| 2^(-1/3))^(2 (alpha_ratio - 1))`, see
/// [`crate::oracle::linearization_l1_minimizer`].
pub fn lambda_star(target: Point, alpha_ratio: f64) -> Result<f64> {
    let d2 = target.norm_sq();
    if d2 == 0.0 {
        return Err(Error::invalid("target", "target BS coincides with the serving BS"));
    }
    Ok(d2.powf(alpha_ratio - 1.0))
}

/// Which BS a circular ERB encloses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Enclosed {
    /// `lambda* xi < 1`: the target-dominant region is the disk.
    Target,
    /// `lambda* xi > 1`: the target dominates outside the disk.
    Serving,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Circle {
    pub center: Point,
    pub radius: f64,
    pub encloses: Enclosed,
}

impl Circle {
    pub fn new(center: Point, radius: f64) -> Self {
        Circle {
            center,
            radius,
            encloses: Enclosed::Target,
        }
    }

    pub fn contains(&self, p: Point) -> bool {
        (p - self.center).norm_sq() < self.radius * self.radius
    }

    /// Whether `p` is on the target-dominant side of the boundary.
    pub fn in_target_region(&self, p: Point) -> bool {
        self.contains(p) == (self.encloses == Enclosed::Target)
    }

    pub fn translated(&self, by: Point) -> Circle {
        Circle {
            center: self.center + by,
            ..*self
        }
    }
}

const DEGENERATE_TOL: f64 = 1e-12;

/// Circle `B(X~, R~)` with `X~ = target / (1 - c)` and
/// `R~ = sqrt(c |target|^2) / |1 - c|`, `c = lambda* xi`.
pub fn erb_circle(target: Point, xi: f64, lambda_star: f64) -> Result<Circle> {
    let c = lambda_star * xi;
    if !(c.is_finite() && c > 0.0) {
        return Err(Error::invalid("lambda_star * xi", format!("must be finite and > 0, got {c}")));
    }
    let denom = 1.0 - c;
    if denom.abs() <= DEGENERATE_TOL {
        return Err(Error::DegenerateBoundary { lambda_xi: c });
    }
    if target.norm_sq() == 0.0 {
        return Err(Error::invalid("target", "target BS coincides with the serving BS"));
    }
    Ok(Circle {
        center: target * (1.0 / denom),
        radius: (c * target.norm_sq()).sqrt() / denom.abs(),
        encloses: if c < 1.0 { Enclosed::Target } else { Enclosed::Serving },
    })
}

/// Same construction as [`erb_circle`] with `xi_f` in place of `xi`.
pub fn erb_failure_circle(target: Point, xi_f: f64, lambda_star: f64) -> Result<Circle> {
    erb_circle(target, xi_f, lambda_star)
}

/// Handover and handover-failure circles of one (serving, target) pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ErbPair {
    pub xi: f64,
    pub xi_f: f64,
    pub lambda_star: f64,
    pub handover_circle: Circle,
    pub failure_circle: Circle,
    pub q_out: f64,
}

impl ErbPair {
    pub fn lambda_xi(&self) -> f64 {
        self.lambda_star * self.xi
    }

    pub fn lambda_xi_f(&self) -> f64 {
        self.lambda_star * self.xi_f
    }
}

/// Builds the ERB pair for a target at `target` (relative to the serving BS).
pub fn erb_pair(serving: &TierRadioParams, target_tier: &TierRadioParams, target: Point, q_out: f64) -> Result<ErbPair> {
    ensure_positive("q_out", q_out)?;
    let xi = xi_factor(serving, target_tier);
    let xi_f = xi_failure(xi, q_out, target_tier.pathloss_exponent);
    let alpha_ratio = serving.pathloss_exponent / target_tier.pathloss_exponent;
    let lambda_star = lambda_star(target, alpha_ratio)?;
    Ok(ErbPair {
        xi,
        xi_f,
        lambda_star,
        handover_circle: erb_circle(target, xi, lambda_star)?,
        failure_circle: erb_failure_circle(target, xi_f, lambda_star)?,
        q_out,
    })
}

/// One tier of a deployment as seen by the association rule.
#[derive(Debug, Clone, Copy)]
pub struct TierLayer<'a> {
    pub points: &'a PointSet,
    pub params: &'a TierRadioParams,
}

/// Strongest biased DL-RSS. Ties go to the earlier tier (M, S, S') and
/// then to the lower index.
pub fn serving_bs(location: Point, deployment: &[TierLayer<'_>]) -> Result<(Tier, usize)> {
    let mut layers: Vec<&TierLayer<'_>> = deployment.iter().collect();
    layers.sort_by_key(|l| l.points.tier);
    let mut best: Option<(Tier, usize, f64)> = None;
    for layer in layers {
        for (i, bs) in layer.points.points.iter().enumerate() {
            let rss = layer.params.log_rss(location.distance(*bs));
            if best.is_none_or(|(_, _, b)| rss > b) {
                best = Some((layer.points.tier, i, rss));
            }
        }
    }
    best.map(|(t, i, _)| (t, i)).ok_or(Error::NoCoverage)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> TierRadioParams {
        TierRadioParams::from_db(30.0, 5.0, 4.0, 140.7, 36.7).unwrap()
    }

    #[test]
    fn rss_at_one_meter_is_effective_gain() {
        let t = small();
        assert!((dl_rss(&t, 1.0).unwrap() / t.effective_gain() - 1.0).abs() < 1e-14);
        assert!(dl_rss(&t, 0.0).is_err());
    }

    #[test]
    fn doubling_distance_divides_by_two_to_alpha() {
        let t = small();
        let ratio = dl_rss(&t, 10.0).unwrap() / dl_rss(&t, 20.0).unwrap();
        assert!((ratio - 2f64.powf(3.67)).abs() < 1e-10);
    }

    #[test]
    fn identical_tiers_have_unit_xi_and_degenerate_circle() {
        let t = small();
        assert_eq!(xi_factor(&t, &t), 1.0);
        assert!(matches!(
            erb_circle(Point::new(100.0, 0.0), 1.0, 1.0),
            Err(Error::DegenerateBoundary { .. })
        ));
    }

    #[test]
    fn lambda_star_examples() {
        assert_eq!(lambda_star(Point::new(7.0, -2.0), 1.0).unwrap(), 1.0);
        assert!((lambda_star(Point::new(3.0, 4.0), 1.5).unwrap() - 5.0).abs() < 1e-12);
        assert!(lambda_star(Point::ORIGIN, 1.2).is_err());
    }

    #[test]
    fn apollonius_quarter() {
        let d = 120.0;
        let c = erb_circle(Point::new(d, 0.0), 0.25, 1.0).unwrap();
        assert!((c.center.x - 4.0 * d / 3.0).abs() < 1e-12);
        assert_eq!(c.center.y, 0.0);
        assert!((c.radius - 2.0 * d / 3.0).abs() < 1e-12);
        assert_eq!(c.encloses, Enclosed::Target);
    }

    #[test]
    fn stronger_target_encloses_serving() {
        let c = erb_circle(Point::new(100.0, 0.0), 4.0, 1.0).unwrap();
        assert_eq!(c.encloses, Enclosed::Serving);
        assert!(c.contains(Point::ORIGIN));
        assert!(!c.in_target_region(Point::ORIGIN));
        assert!(c.in_target_region(Point::new(100.0, 0.0)));
        assert!(c.radius > 0.0);
    }

    #[test]
    fn serving_bs_picks_nearer_of_equal_tier() {
        let t = small();
        let ps = PointSet::new(Tier::Small, vec![Point::new(0.0, 0.0), Point::new(10.0, 0.0)]);
        let layer = [TierLayer { points: &ps, params: &t }];
        assert_eq!(serving_bs(Point::new(7.0, 0.0), &layer).unwrap(), (Tier::Small, 1));
        // Equidistant: lower index wins.
        assert_eq!(serving_bs(Point::new(5.0, 3.0), &layer).unwrap(), (Tier::Small, 0));
        assert!(matches!(serving_bs(Point::ORIGIN, &[]), Err(Error::NoCoverage)));
    }

    #[test]
    fn macro_path_loss_at_one_km() {
        let m = TierRadioParams::from_db(0.0, 0.0, 0.0, 128.1, 37.6).unwrap();
        let pl_db = -linear_to_db(dl_rss(&m, 1000.0).unwrap());
        assert!((pl_db - 128.1).abs() < 1e-9);
    }
}
