//! Thin panel-splitting layer over the double-exponential integrator of the
//! `quadrature` crate, with relative-tolerance control and a convergence
//! check.

use crate::error::{Error, Result};

/// Integrates `f` over `[a, b]` split into `panels` equal pieces, aiming at
/// `rel_tol` relative to the magnitude of the result.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, panels: usize, rel_tol: f64, what: &'static str) -> Result<f64> {
    let panels = panels.max(1);
    let h = (b - a) / panels as f64;
    let run = |abs_target: f64| {
        let mut total = 0.0;
        let mut err = 0.0;
        for i in 0..panels {
            let lo = a + h * i as f64;
            let hi = if i + 1 == panels { b } else { lo + h };
            let out = quadrature::integrate(&f, lo, hi, abs_target / panels as f64);
            total += out.integral;
            err += out.error_estimate;
        }
        (total, err)
    };
    // A coarse pass fixes the scale for the absolute target of the fine pass.
    let (coarse, _) = run(1e-6 * (b - a).abs().max(1.0));
    let target = rel_tol * coarse.abs().max(f64::MIN_POSITIVE);
    let (value, err) = run(target);
    if !value.is_finite() || err > 10.0 * target.max(rel_tol * value.abs()) {
        return Err(Error::Quadrature {
            what,
            estimate: value,
            error: err,
        });
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_and_gaussian() {
        let v = integrate(|x| x * x, 0.0, 3.0, 1, 1e-12, "x^2").unwrap();
        assert!((v - 9.0).abs() < 1e-11);
        let g = integrate(|x| (-x * x).exp(), -10.0, 10.0, 4, 1e-12, "gauss").unwrap();
        assert!((g - std::f64::consts::PI.sqrt()).abs() < 1e-11);
    }
}
