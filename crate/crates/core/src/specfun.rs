//! Modified Bessel functions of order 0 and 1, the exponential-sum
//! approximation of `I0`, Marcum `Q1` and `erf`.

use crate::error::{Error, Result};

/// Below this argument the power series is used, above it the large-`z`
/// asymptotic expansion.
const SERIES_LIMIT: f64 = 50.0;

/// `exp(-z) * I_nu(z)` for `nu` in {0, 1} and `z >= 0`.
fn bessel_i_scaled(nu: u32, z: f64) -> f64 {
    debug_assert!(nu <= 1 && z >= 0.0);
    if z <= SERIES_LIMIT {
        // I_nu(z) = sum_k (z/2)^(2k+nu) / (k! (k+nu)!)
        let h = 0.5 * z;
        let h2 = h * h;
        let mut term = if nu == 0 { 1.0 } else { h };
        let mut sum = term;
        let mut k = 0.0;
        loop {
            k += 1.0;
            term *= h2 / (k * (k + nu as f64));
            sum += term;
            if term <= sum * 1e-17 {
                break;
            }
        }
        sum * (-z).exp()
    } else {
        // exp(-z) I_nu(z) ~ (2 pi z)^(-1/2) sum_k (-1)^k a_k(nu) / z^k
        let mu = 4.0 * (nu * nu) as f64;
        let mut term = 1.0;
        let mut sum = 1.0;
        for k in 1..60 {
            let odd = (2 * k - 1) as f64;
            let next = -term * (mu - odd * odd) / (k as f64 * 8.0 * z);
            if next.abs() >= term.abs() {
                break;
            }
            term = next;
            sum += term;
            if term.abs() <= sum.abs() * 1e-17 {
                break;
            }
        }
        sum / (2.0 * std::f64::consts::PI * z).sqrt()
    }
}

/// `exp(-|z|) I0(z)`.
pub fn i0e(z: f64) -> f64 {
    bessel_i_scaled(0, z.abs())
}

/// `exp(-|z|) I1(|z|)`.
pub fn i1e(z: f64) -> f64 {
    bessel_i_scaled(1, z.abs())
}

/// `I0(z)` for `z >= 0`; overflows to `inf` above `z ~ 713`.
pub fn i0_series(z: f64) -> Result<f64> {
    if z.is_nan() || z < 0.0 {
        return Err(Error::invalid("z", format!("I0 argument must be >= 0, got {z}")));
    }
    if z <= SERIES_LIMIT {
        Ok(bessel_i_scaled(0, z) * z.exp())
    } else {
        // Split the exponential so the product stays finite as long as I0 does.
        let half = (0.5 * z).exp();
        Ok(bessel_i_scaled(0, z) * half * half)
    }
}

/// Piecewise four-term exponential fit `I0(z) ~ sum_k a_k exp(b_k z)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesselApproxTable {
    /// Lower bounds of the four intervals; the last one is unbounded.
    pub breaks: [f64; 4],
    /// `(a_k, b_k)` per interval.
    pub coeffs: [[(f64, f64); 4]; 4],
}

pub const I0_EXP_FIT: BesselApproxTable = BesselApproxTable {
    breaks: [0.0, 11.5, 20.0, 37.25],
    coeffs: [
        [(0.1682, 0.7536), (0.1472, 0.9736), (0.4450, -0.715), (0.2382, 0.2343)],
        [(0.2667, 0.4710), (0.4916, -163.4), (0.1110, 0.9852), (0.1304, 0.8554)],
        [(0.1121, 0.9807), (0.1055, 0.8672), (-1.8e-4, 1.0795), (0.0033, 1.0385)],
        [(2.4e-9, 1.144), (0.0675, 0.995), (0.0547, 0.567), (0.0787, 0.946)],
    ],
};

impl BesselApproxTable {
    /// Index of the interval containing `z >= 0`.
    pub fn interval(&self, z: f64) -> usize {
        self.breaks.iter().rposition(|&lo| z >= lo).unwrap_or(0)
    }

    /// Upper end of interval `i`, `inf` for the last one.
    pub fn upper(&self, i: usize) -> f64 {
        self.breaks.get(i + 1).copied().unwrap_or(f64::INFINITY)
    }

    pub fn eval_interval(&self, i: usize, z: f64) -> f64 {
        self.coeffs[i].iter().map(|&(a, b)| a * (b * z).exp()).sum()
    }
}

pub fn i0_exp_approx(z: f64, table: &BesselApproxTable) -> f64 {
    table.eval_interval(table.interval(z), z)
}

/// Log of the Poisson pmf at `k` with mean `mu > 0`.
fn ln_poisson(k: f64, mu: f64) -> f64 {
    k * mu.ln() - mu - libm::lgamma(k + 1.0)
}

/// Index window `[lo, hi]` outside of which a Poisson(`mu`) pmf is negligible.
fn poisson_window(mu: f64) -> (usize, usize) {
    let spread = 40.0 * mu.sqrt() + 40.0;
    ((mu - spread).max(0.0).floor() as usize, (mu + spread).ceil() as usize)
}

/// Marcum `Q1(a, b)`.
///
/// Uses `Q1(a, b) = P(Y <= X)` with independent `X ~ Poisson(a^2/2)` and
/// `Y ~ Poisson(b^2/2)`, summed in log space over the windows where either
/// pmf carries mass, so large arguments neither overflow nor underflow.
pub fn marcum_q1(a: f64, b: f64) -> Result<f64> {
    if !(a >= 0.0 && a.is_finite()) {
        return Err(Error::invalid("a", format!("must be finite and >= 0, got {a}")));
    }
    if b.is_nan() || b < 0.0 {
        return Err(Error::invalid("b", format!("must be >= 0, got {b}")));
    }
    if b == 0.0 {
        return Ok(1.0);
    }
    if b.is_infinite() {
        return Ok(0.0);
    }
    let alpha = 0.5 * a * a;
    let beta = 0.5 * b * b;
    if alpha == 0.0 {
        return Ok((-beta).exp());
    }
    let (x_lo, x_hi) = poisson_window(alpha);
    let (y_lo, _) = poisson_window(beta);
    if x_hi < y_lo {
        // X never reaches the bulk of Y.
        return Ok(0.0);
    }
    // P(Y <= y_lo - 1) is negligible by construction of the window.
    let mut cdf_y = 0.0;
    for j in y_lo..x_lo {
        cdf_y += ln_poisson(j as f64, beta).exp();
    }
    let mut q = 0.0;
    for k in x_lo..=x_hi {
        if k >= y_lo {
            cdf_y += ln_poisson(k as f64, beta).exp();
        }
        q += ln_poisson(k as f64, alpha).exp() * cdf_y.min(1.0);
    }
    Ok(q.clamp(0.0, 1.0))
}

pub fn erf(x: f64) -> f64 {
    libm::erf(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn i0_known_values() {
        assert_eq!(i0_series(0.0).unwrap(), 1.0);
        assert!((i0_series(1.0).unwrap() - 1.266_065_877_752_008_4).abs() < 1e-15);
        assert!(i0_series(-0.5).is_err());
        // Series and asymptotic branches meet smoothly.
        let below = i0e(SERIES_LIMIT - 1e-9);
        let above = i0e(SERIES_LIMIT + 1e-9);
        assert!((below / above - 1.0).abs() < 1e-10);
    }

    #[test]
    fn i1_small_and_large() {
        // I1(1) = 0.565159103992485...
        assert!((i1e(1.0) * 1f64.exp() - 0.565_159_103_992_485).abs() < 1e-14);
        let below = i1e(SERIES_LIMIT - 1e-9);
        let above = i1e(SERIES_LIMIT + 1e-9);
        assert!((below / above - 1.0).abs() < 1e-10);
    }

    #[test]
    fn table_sum_at_zero() {
        assert!((i0_exp_approx(0.0, &I0_EXP_FIT) - 0.9986).abs() < 1e-12);
        assert_eq!(I0_EXP_FIT.interval(11.5), 1);
        assert_eq!(I0_EXP_FIT.interval(11.499), 0);
        assert_eq!(I0_EXP_FIT.interval(1e3), 3);
        assert_eq!(I0_EXP_FIT.upper(3), f64::INFINITY);
    }

    #[test]
    fn marcum_edges() {
        assert_eq!(marcum_q1(3.0, 0.0).unwrap(), 1.0);
        assert!((marcum_q1(0.0, 2.0).unwrap() - (-2f64).exp()).abs() < 1e-15);
        assert!((marcum_q1(1.0, 1.0).unwrap() - 0.732_879_803_796_82).abs() < 1e-10);
        assert!(marcum_q1(-1.0, 1.0).is_err());
        // Far tails.
        assert!(marcum_q1(60.0, 5.0).unwrap() > 1.0 - 1e-12);
        assert!(marcum_q1(5.0, 60.0).unwrap() < 1e-12);
    }

    #[test]
    fn erf_values() {
        assert_eq!(erf(0.0), 0.0);
        assert!((erf(1.0) - 0.842_700_792_949_714_9).abs() < 1e-15);
        assert_eq!(erf(-0.3), -erf(0.3));
    }
}
