//! Reference computations that reach the same quantities as the library by
//! a different route, plus the frozen regression constants derived from them.
//!
//! Nothing here calls into `specfun` or `analytics`; every value is rebuilt
//! from defining integrals, power series or plain dB arithmetic. The routes
//! are slow and meant for tests and for `hetnet-handover fixtures`.

use std::f64::consts::PI;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Current layout of the fixtures file.
pub const FIXTURES_SCHEMA_VERSION: u32 = 1;

/// Integrates over `[a, b]` split into `panels` equal pieces.
fn panels_integral<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, panels: usize, abs_tol: f64) -> f64 {
    let h = (b - a) / panels as f64;
    (0..panels)
        .map(|i| {
            let lo = a + h * i as f64;
            let hi = if i + 1 == panels { b } else { lo + h };
            quadrature::integrate(&f, lo, hi, abs_tol / panels as f64).integral
        })
        .sum()
}

/// `sum_{k < terms} ((z/2)^k / k!)^2`.
pub fn i0_power_series(z: f64, terms: usize) -> f64 {
    let mut term = 1.0;
    let mut sum = 0.0;
    for k in 0..terms {
        if k > 0 {
            term *= z / (2.0 * k as f64);
        }
        sum += term * term;
    }
    sum
}

/// `exp(-z) I0(z)` from `(1/pi) int_0^pi exp(z (cos t - 1)) dt`.
pub fn i0e_integral(z: f64) -> f64 {
    // The integrand is concentrated in a window of width ~ 1/sqrt(z) at t = 0.
    let split = (12.0 / z.max(1e-300).sqrt()).min(PI);
    let f = |t: f64| (z * (t.cos() - 1.0)).exp();
    let mut v = quadrature::integrate(f, 0.0, split, 1e-15).integral;
    if split < PI {
        v += quadrature::integrate(f, split, PI, 1e-15).integral;
    }
    v / PI
}

/// Maclaurin series of erf, accurate for `|x| <= 3`.
pub fn erf_taylor(x: f64) -> f64 {
    let mut sum = 0.0;
    let mut pow = x;
    let mut fact = 1.0;
    for n in 0..80 {
        if n > 0 {
            pow *= -x * x;
            fact *= n as f64;
        }
        sum += pow / (fact * (2 * n + 1) as f64);
    }
    2.0 / PI.sqrt() * sum
}

/// `Q1(a, b) = int_b^inf x exp(-(x^2 + a^2)/2) I0(a x) dx` by nested quadrature.
pub fn marcum_q1_quadrature(a: f64, b: f64) -> f64 {
    // exp(-(x - a)^2 / 2) is below 1e-30 past a + 12.
    let hi = a.max(b) + 12.0;
    if b >= hi {
        return 0.0;
    }
    let f = |x: f64| x * (-0.5 * (x - a) * (x - a)).exp() * i0e_integral(a * x);
    // Split at the mode so each panel sees one side of the bump.
    let mut knots = vec![b];
    if a > b {
        knots.push(a);
    }
    knots.push(hi);
    knots.windows(2).map(|w| panels_integral(f, w[0], w[1], 4, 1e-14)).sum()
}

/// Mean distance from a Gaussian-scattered offspring to the nearest point of
/// a PPP of density `lambda`, as the triple integral over the parent
/// distance `w`, the offset radius `rho` and the offset angle `t`:
///
/// `E|w e1 + rho (cos t, sin t)|` with `w ~ 2 pi lambda w exp(-pi lambda w^2)`
/// and `rho ~ Rayleigh(sigma)`.
pub fn mean_cluster_distance_quadrature(lambda: f64, sigma: f64) -> f64 {
    let w_max = (40.0 / (PI * lambda)).sqrt();
    let rho_max = sigma * 80f64.sqrt();
    let norm_angle = |w: f64, rho: f64| {
        quadrature::integrate(|t: f64| (w * w + rho * rho + 2.0 * w * rho * t.cos()).max(0.0).sqrt(), 0.0, PI, 1e-9 * (w + rho + 1.0)).integral
            / PI
    };
    let over_rho = |w: f64| {
        let g = |rho: f64| rho / (sigma * sigma) * (-rho * rho / (2.0 * sigma * sigma)).exp() * norm_angle(w, rho);
        let tol = 1e-9 * (w + sigma);
        if w > 0.0 && w < rho_max {
            panels_integral(g, 0.0, w, 1, tol) + panels_integral(g, w, rho_max, 2, tol)
        } else {
            panels_integral(g, 0.0, rho_max, 2, tol)
        }
    };
    let pdf_w = |w: f64| 2.0 * PI * lambda * w * (-PI * lambda * w * w).exp();
    panels_integral(|w| pdf_w(w) * over_rho(w), 0.0, w_max, 8, 1e-8 * (sigma + w_max))
}

/// `10^((target_db - serving_db) / 10 * 2 / alpha)`: the ERB ratio from dB
/// figures of merit (power + gain + bias + intercept).
pub fn xi_from_db(serving_db: f64, target_db: f64, alpha: f64) -> f64 {
    10f64.powf((target_db - serving_db) / 10.0 * 2.0 / alpha)
}

/// `int_0^q |r^(2 alpha) - lambda r^2| dr` by the midpoint rule on `n` cells.
pub fn linearization_objective(lambda: f64, q: f64, alpha: f64, n: usize) -> f64 {
    let h = q / n as f64;
    (0..n)
        .map(|i| {
            let r = (i as f64 + 0.5) * h;
            (r.powf(2.0 * alpha) - lambda * r * r).abs()
        })
        .sum::<f64>()
        * h
}

/// Result of a grid search for the L1 scale.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridMinimum {
    pub lambda: f64,
    pub step: f64,
    pub objective: f64,
}

/// Minimizes [`linearization_objective`] over `n_grid` equally spaced `lambda` in `[lo, hi]`.
pub fn linearization_grid_search(q: f64, alpha: f64, lo: f64, hi: f64, n_grid: usize, n_quad: usize) -> GridMinimum {
    let step = (hi - lo) / (n_grid - 1) as f64;
    let mut best = GridMinimum {
        lambda: lo,
        step,
        objective: f64::INFINITY,
    };
    for i in 0..n_grid {
        let lambda = lo + step * i as f64;
        let obj = linearization_objective(lambda, q, alpha, n_quad);
        if obj < best.objective {
            best = GridMinimum {
                lambda,
                step,
                objective: obj,
            };
        }
    }
    best
}

/// Exact minimizer of [`linearization_objective`] in the continuum limit.
///
/// The derivative in `lambda` is `(2 r0^3 - q^3) / 3` (up to sign) with
/// `r0 = lambda^(1 / (2 alpha - 2))` the crossing point, so the optimum has
/// `r0 = q 2^(-1/3)`.
pub fn linearization_l1_minimizer(q: f64, alpha: f64) -> f64 {
    (q * 2f64.powf(-1.0 / 3.0)).powf(2.0 * (alpha - 1.0))
}

/// `(2/A) sqrt(c)/(1-c) N E[R] / (1/V + pause / E[L'])` with the transition
/// mean `E[L'] = sqrt(pi/2) (sigma_rwp + p_z sigma_z)`.
#[allow(clippy::too_many_arguments)]
pub fn triggered_rate_direct(
    area: f64,
    c: f64,
    n_bs: f64,
    mean_distance: f64,
    velocity: f64,
    pause: f64,
    sigma_rwp: f64,
    p_z: f64,
    sigma_z: f64,
) -> f64 {
    let mean_len = (PI / 2.0).sqrt() * (sigma_rwp + p_z * sigma_z);
    2.0 / area * c.sqrt() / (1.0 - c) * n_bs * mean_distance / (1.0 / velocity + pause / mean_len)
}

/// One frozen constant.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FixtureEntry {
    pub name: String,
    pub value: f64,
    pub oracle: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Fixtures {
    pub schema_version: u32,
    #[serde(rename = "fixture")]
    pub entries: Vec<FixtureEntry>,
}

impl Fixtures {
    pub fn get(&self, name: &str) -> Result<f64> {
        self.entries
            .iter()
            .find(|e| e.name == name)
            .map(|e| e.value)
            .ok_or_else(|| Error::OutOfValidity(format!("fixture `{name}` missing")))
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("fixtures always serialize")
    }

    pub fn parse(text: &str, origin: &Path) -> Result<Self> {
        let f: Fixtures = toml::from_str(text).map_err(|e| Error::ConfigParse {
            path: origin.to_path_buf(),
            message: e.to_string(),
        })?;
        if f.schema_version != FIXTURES_SCHEMA_VERSION {
            return Err(Error::ConfigParse {
                path: origin.to_path_buf(),
                message: format!("schema_version {} (expected {FIXTURES_SCHEMA_VERSION})", f.schema_version),
            });
        }
        Ok(f)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?, path)
    }
}

/// Recomputes every regression constant from its oracle.
///
/// The reference deployment is the default experiment: `lambda_S = 2e-5`,
/// `sigma = 150 m`, 60 km/h, 5 s pause, 5 km square, ten base stations, a
/// 36 dBm hotspot tier handing over to 30 dBm small cells.
pub fn compute_fixtures() -> Fixtures {
    let mut entries = Vec::new();
    let mut push = |name: &str, value: f64, oracle: &str| {
        entries.push(FixtureEntry {
            name: name.to_string(),
            value,
            oracle: oracle.to_string(),
        })
    };
    push("i0_at_1", i0_power_series(1.0, 30), "30-term power series");
    push("erf_at_1", erf_taylor(1.0), "Maclaurin series, 80 terms");
    let q11 = marcum_q1_quadrature(1.0, 1.0);
    push("marcum_q1_1_1", q11, "nested quadrature of the defining integral");
    push("rician_cdf_w1_s1_r1", 1.0 - q11, "complement of the quadrature Q1");
    push("xi_6db_alpha4", xi_from_db(6.0, 0.0, 4.0), "dB arithmetic");

    let lambda_s = 2e-5;
    let sigma = 150.0;
    let r_bar = mean_cluster_distance_quadrature(lambda_s, sigma);
    push("mean_cluster_distance_2e-5_150", r_bar, "triple quadrature over parent distance and Gaussian offset");

    let alpha_s = 3.67;
    let c = xi_from_db(36.0, 30.0, alpha_s);
    let h_t = triggered_rate_direct(25e6, c, 10.0, r_bar, 60.0 / 3.6, 5.0, 200.0, 0.3, 200.0);
    push("triggered_rate_hotspot_small_default", h_t, "direct evaluation on oracle inputs");

    let (lm, v, t, c_sm) = (1e-6, 16.67, 1.0, 0.25);
    push(
        "sojourn_sm_example",
        (-4.0 * lm * v * v * t * t * (1.0 - c_sm) * (1.0 - c_sm) / (PI * c_sm)).exp(),
        "direct evaluation",
    );
    Fixtures {
        schema_version: FIXTURES_SCHEMA_VERSION,
        entries,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn series_and_integral_agree() {
        for z in [0.0, 0.3, 1.0, 4.0, 9.0] {
            let a = i0_power_series(z, 40) * (-z).exp();
            assert!((a - i0e_integral(z)).abs() < 1e-13, "z={z}");
        }
    }

    #[test]
    fn erf_taylor_known() {
        assert!((erf_taylor(0.5) - 0.520_499_877_813_046_5).abs() < 1e-15);
        assert!((erf_taylor(-2.0) + 0.995_322_265_018_952_7).abs() < 1e-14);
    }

    #[test]
    fn marcum_edges() {
        assert!((marcum_q1_quadrature(0.0, 1.5) - (-1.125f64).exp()).abs() < 1e-12);
        assert!((marcum_q1_quadrature(2.0, 0.0) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn linearization_unit_exponent_is_exact() {
        let m = linearization_grid_search(300.0, 1.0, 0.5, 1.5, 1001, 1000);
        assert!((m.lambda - 1.0).abs() <= m.step);
        assert_eq!(linearization_l1_minimizer(300.0, 1.0), 1.0);
    }

    #[test]
    fn fixtures_round_trip() {
        let f = Fixtures {
            schema_version: FIXTURES_SCHEMA_VERSION,
            entries: vec![FixtureEntry {
                name: "x".into(),
                value: 0.1,
                oracle: "y".into(),
            }],
        };
        let back = Fixtures::parse(&f.to_toml(), Path::new("f.toml")).unwrap();
        assert_eq!(back, f);
        assert!(back.get("z").is_err());
    }
}
