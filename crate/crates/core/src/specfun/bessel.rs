//! Modified Bessel functions `I_nu`, `K_nu` of half-integer order.
//!
//! `K_{l+1/2}` comes from its terminating sum
//!
//! ```text
//! e^y K_{l+1/2}(y) = sqrt(pi/(2y)) * sum_{k=0}^{l} (l+k)! / (k! (l-k)! (2y)^k)
//! ```
//!
//! which has only positive terms. `I_{l+1/2}` for `l >= 1` is normalised
//! Miller-style: the ratio `I_{nu+1}/I_nu` is taken from its continued
//! fraction (the backward, stable direction for `I`), and the Wronskian
//! `I_nu K_{nu+1} + I_{nu+1} K_nu = 1/y` fixes the scale against `K`.
//! The upward three-term recurrence for `I` is never used.

use std::f64::consts::{LN_2, PI};

use super::Order;
use crate::error::{require_positive, Error, Result};
use crate::numeric::CompensatedSum;

/// Beyond this argument the product `2y I K` is evaluated from its
/// terminating large-argument polynomial (the `e^{-2y}` remainder is below
/// `1e-34` there).
fn polynomial_threshold(order: Order) -> f64 {
    let l = order.l() as f64;
    (l * (l + 1.0)).max(40.0)
}

/// `e^{+y} K_nu(y)`.
pub fn bessel_k_scaled(order: Order, y: f64) -> Result<f64> {
    require_positive("bessel_k_scaled", "y", y)?;
    let v = k_scaled_unchecked(order, y);
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Overflow {
            func: "bessel_k_scaled",
            detail: format!("nu = {}, y = {y}", order.nu()),
        })
    }
}

/// `K_nu(y)`. Underflows to zero for large `y`.
pub fn bessel_k(order: Order, y: f64) -> Result<f64> {
    let scaled = bessel_k_scaled(order, y)?;
    Ok(scaled * (-y).exp())
}

fn k_scaled_unchecked(order: Order, y: f64) -> f64 {
    let l = order.l() as f64;
    let two_y = 2.0 * y;
    let mut term = 1.0;
    let mut acc = CompensatedSum::new();
    acc.add(term);
    for k in 0..order.l() {
        let k = k as f64;
        term *= (l + k + 1.0) * (l - k) / ((k + 1.0) * two_y);
        acc.add(term);
    }
    (PI / two_y).sqrt() * acc.value()
}

/// `y * K_{nu+1}(y) / K_nu(y)` by the forward ratio recurrence
/// `u_j = y^2 / u_{j-1} + (2j + 1)`, `u_0 = y + 1`. All terms are positive
/// so the recurrence is stable, and it never overflows.
fn k_ratio_times_y(order: Order, y: f64) -> f64 {
    let y2 = y * y;
    let mut u = y + 1.0;
    for j in 1..=order.l() {
        u = y2 / u + (2 * j + 1) as f64;
    }
    u
}

/// `K_{nu+1}(y) / K_nu(y)`.
pub fn bessel_k_ratio(order: Order, y: f64) -> Result<f64> {
    require_positive("bessel_k_ratio", "y", y)?;
    Ok(k_ratio_times_y(order, y) / y)
}

/// `I_{nu+1}(y) / I_nu(y)` from the continued fraction
/// `1 / (2(nu+1)/y + 1 / (2(nu+2)/y + ...))`, modified Lentz evaluation.
pub fn bessel_i_ratio(order: Order, y: f64) -> Result<f64> {
    require_positive("bessel_i_ratio", "y", y)?;
    i_ratio_cf(order.nu(), y)
}

fn i_ratio_cf(nu: f64, y: f64) -> Result<f64> {
    const TINY: f64 = 1e-300;
    let inv_y = 1.0 / y;
    let b = |k: f64| 2.0 * (nu + k) * inv_y;
    let mut f = b(1.0);
    let mut c = f;
    let mut d = 0.0;
    // Convergence sets in once 2(nu+k)/y exceeds about 2, i.e. k ~ y.
    let max_iter = 200 + 4 * (y.ceil() as usize);
    for k in 2..max_iter {
        let bk = b(k as f64);
        d += bk;
        if d == 0.0 {
            d = TINY;
        }
        d = 1.0 / d;
        c = bk + 1.0 / c;
        if c == 0.0 {
            c = TINY;
        }
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).abs() < 0.5 * f64::EPSILON {
            return Ok(1.0 / f);
        }
    }
    Err(Error::NoConvergence {
        func: "bessel_i_ratio",
        detail: format!("continued fraction at nu = {nu}, y = {y} after {max_iter} terms"),
    })
}

/// `e^{-y} I_nu(y)`.
pub fn bessel_i_scaled(order: Order, y: f64) -> Result<f64> {
    require_positive("bessel_i_scaled", "y", y)?;
    if order.l() == 0 {
        // sqrt(2/(pi y)) sinh(y) e^{-y}
        return Ok(-(-2.0 * y).exp_m1() / (2.0 * PI * y).sqrt());
    }
    let k = k_scaled_unchecked(order, y);
    if !k.is_finite() {
        // I_nu K_nu ~ 1/(2 nu): I has underflowed.
        return Ok(0.0);
    }
    let s = k_ratio_times_y(order, y) / y;
    let r = i_ratio_cf(order.nu(), y)?;
    Ok(1.0 / (y * k * (s + r)))
}

/// `I_nu(y)`. Fails with [`Error::Overflow`] once `e^y` leaves the f64
/// range; use [`bessel_i_scaled`] there.
pub fn bessel_i(order: Order, y: f64) -> Result<f64> {
    let scaled = bessel_i_scaled(order, y)?;
    let v = scaled * y.exp();
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Overflow {
            func: "bessel_i",
            detail: format!("nu = {}, y = {y}; use bessel_i_scaled", order.nu()),
        })
    }
}

/// `ln(2y I_nu(y) K_nu(y))`, the integrand of the per-l energy.
///
/// Computed from the scaled functions, where the exponentials cancel:
/// with the Wronskian normalisation above,
/// `ln(2y) + ln(e^{-y} I) + ln(e^{y} K) = ln 2 - ln(K_{nu+1}/K_nu + I_{nu+1}/I_nu)`,
/// which needs no value that can overflow. Past the polynomial threshold the
/// terminating large-argument product is used instead.
pub fn log_ik_product(order: Order, y: f64) -> Result<f64> {
    require_positive("log_ik_product", "y", y)?;
    if y >= polynomial_threshold(order) {
        return Ok(log_polynomial_product(order, y));
    }
    log_product_from_ratios(order, y)
}

fn log_product_from_ratios(order: Order, y: f64) -> Result<f64> {
    let s = k_ratio_times_y(order, y) / y;
    let r = i_ratio_cf(order.nu(), y)?;
    Ok(LN_2 - (s + r).ln())
}

/// `ln(2 I_nu(y) K_nu(y)) = log_ik_product - ln y`, smooth at `y = 0`.
pub(crate) fn log_2ik_product(order: Order, y: f64) -> Result<f64> {
    require_positive("log_2ik_product", "y", y)?;
    if y >= polynomial_threshold(order) {
        return Ok(log_polynomial_product(order, y) - y.ln());
    }
    let u = k_ratio_times_y(order, y);
    let r = i_ratio_cf(order.nu(), y)?;
    Ok(LN_2 - (u + y * r).ln())
}

/// `ln(sum_m c_m y^{-2m})` with the terminating coefficients of
/// [`super::ik_product_series`], summed on the fly.
fn log_polynomial_product(order: Order, y: f64) -> f64 {
    let mu = order.mu();
    let w = 1.0 / (y * y);
    let mut term = 1.0;
    let mut acc = CompensatedSum::new();
    for m in 1.. {
        let odd = (2 * m - 1) as f64;
        term *= -(odd / (2 * m) as f64) * (mu - odd * odd) * 0.25 * w;
        if term == 0.0 {
            break;
        }
        acc.add(term);
    }
    acc.value().ln_1p()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn o(l: u32) -> Order {
        Order::new(l).unwrap()
    }

    /// Power series for I_nu, an independent route.
    fn i_series(nu: f64, y: f64) -> f64 {
        // Gamma(nu + 1) for half-integer nu via Gamma(1/2) = sqrt(pi).
        let mut gamma = PI.sqrt();
        let mut a = 0.5;
        while a < nu + 0.75 {
            gamma *= a;
            a += 1.0;
        }
        let q = 0.25 * y * y;
        let mut term = (0.5 * y).powf(nu) / gamma;
        let mut sum = term;
        for k in 1..2000 {
            let k = k as f64;
            term *= q / (k * (nu + k));
            sum += term;
            if term < 1e-18 * sum {
                break;
            }
        }
        sum
    }

    #[test]
    fn closed_form_values() {
        assert_relative_eq!(
            bessel_i(o(0), 1.0).unwrap(),
            0.937_674_888_245_488_8,
            max_relative = 1e-14
        );
        assert_relative_eq!(
            bessel_i(o(1), 1.0).unwrap(),
            0.293_525_326_347_479_6,
            max_relative = 1e-13
        );
        let k0 = (PI / 2.0).sqrt() * (-1.0f64).exp();
        assert_relative_eq!(bessel_k(o(0), 1.0).unwrap(), k0, max_relative = 1e-15);
        assert_relative_eq!(bessel_k(o(1), 1.0).unwrap(), 2.0 * k0, max_relative = 1e-15);
        assert_relative_eq!(
            bessel_k(o(0), 1.0).unwrap(),
            0.461_068_504_447_894_4,
            max_relative = 1e-14
        );
    }

    #[test]
    fn i_matches_power_series() {
        for l in 0..=20u32 {
            for &y in &[0.1, 0.5, 1.0, 2.0, 5.0, 10.0] {
                let got = bessel_i(o(l), y).unwrap();
                let want = i_series(l as f64 + 0.5, y);
                assert_relative_eq!(got, want, max_relative = 1e-12);
            }
        }
    }

    #[test]
    fn i_half_vanishes_at_origin() {
        let y = 1e-12;
        let v = bessel_i(o(0), y).unwrap();
        assert!(v > 0.0 && v < 1e-5);
        assert_relative_eq!(v, (2.0 * y / PI).sqrt(), max_relative = 1e-10);
    }

    #[test]
    fn scaled_half_order_at_large_argument() {
        let v = bessel_i_scaled(o(0), 700.0).unwrap();
        assert_relative_eq!(v, (1.0 / (2.0 * PI * 700.0)).sqrt(), max_relative = 1e-15);
        assert_relative_eq!(
            bessel_i_scaled(o(0), 1.0).unwrap(),
            (-1.0f64).exp() * 0.937_674_888_245_488_8,
            max_relative = 1e-14
        );
        assert!(bessel_i_scaled(o(30), 5e4).unwrap().is_finite());
        assert!(bessel_k_scaled(o(30), 5e4).unwrap().is_finite());
    }

    #[test]
    fn unscaled_i_reports_overflow() {
        assert!(matches!(bessel_i(o(2), 800.0), Err(Error::Overflow { .. })));
        assert_eq!(bessel_k(o(2), 800.0).unwrap(), 0.0);
    }

    #[test]
    fn non_positive_arguments_are_domain_errors() {
        for f in [
            bessel_i,
            bessel_k,
            bessel_i_scaled,
            bessel_k_scaled,
            log_ik_product,
        ] {
            assert!(matches!(f(o(1), 0.0), Err(Error::Domain { .. })));
            assert!(matches!(f(o(1), -2.0), Err(Error::Domain { .. })));
        }
    }

    #[test]
    fn scaled_product_equals_unscaled_product() {
        for l in [0u32, 3, 9] {
            for &y in &[0.3, 4.0, 25.0] {
                let a = bessel_i_scaled(o(l), y).unwrap() * bessel_k_scaled(o(l), y).unwrap();
                let b = bessel_i(o(l), y).unwrap() * bessel_k(o(l), y).unwrap();
                assert_relative_eq!(a, b, max_relative = 1e-13);
            }
        }
    }

    #[test]
    fn wronskian() {
        for l in 0..=20u32 {
            let mut y = 0.1;
            while y <= 50.0 {
                let lhs = bessel_i(o(l), y).unwrap() * bessel_k(o(l + 1), y).unwrap()
                    + bessel_i(o(l + 1), y).unwrap() * bessel_k(o(l), y).unwrap();
                assert_relative_eq!(lhs, 1.0 / y, max_relative = 1e-10);
                y *= 1.37;
            }
        }
    }

    #[test]
    fn log_product_half_order_identity() {
        let mut y: f64 = 1e-3;
        while y <= 30.0 {
            let want = (-(-2.0 * y).exp()).ln_1p();
            assert!(
                (log_ik_product(o(0), y).unwrap() - want).abs() <= 1e-12,
                "y = {y}"
            );
            y *= 1.21;
        }
        assert!((log_ik_product(o(0), 1.0).unwrap() + 0.145_413_457_868_9).abs() < 1e-12);
        assert!((log_ik_product(o(0), 10.0).unwrap() + 2.061_153_622_438_558e-9).abs() < 1e-15);
    }

    #[test]
    fn log_product_agrees_with_scaled_logs() {
        for l in [1u32, 4, 12, 30] {
            for &y in &[0.05f64, 0.7, 3.0, 20.0, 200.0] {
                let direct = (2.0 * y).ln()
                    + bessel_i_scaled(o(l), y).unwrap().ln()
                    + bessel_k_scaled(o(l), y).unwrap().ln();
                let got = log_ik_product(o(l), y).unwrap();
                assert!(
                    (got - direct).abs() < 1e-12 * (1.0 + direct.abs()),
                    "l={l} y={y}"
                );
            }
        }
    }

    #[test]
    fn log_product_branches_join() {
        for l in [0u32, 3, 10, 40] {
            let t = polynomial_threshold(o(l));
            let a = log_product_from_ratios(o(l), t).unwrap();
            let b = log_ik_product(o(l), t).unwrap();
            assert!((a - b).abs() < 2e-15, "l={l}: {a} vs {b}");
            let g = log_2ik_product(o(l), t).unwrap() + t.ln();
            assert!((g - b).abs() < 1e-13);
        }
    }

    #[test]
    fn log_product_large_argument_asymptote() {
        for l in [1u32, 5, 20] {
            let mu = o(l).mu();
            let y = 1e5;
            let v = log_ik_product(o(l), y).unwrap();
            assert!(v < 0.0);
            assert_relative_eq!(v, -(mu - 1.0) / (8.0 * y * y), max_relative = 1e-6);
        }
        let v = log_ik_product(o(60), 9.99e5).unwrap();
        assert!(v.is_finite() && v < 0.0);
    }

    #[test]
    fn log_product_small_argument_behaviour() {
        // 2y I K -> y / nu as y -> 0.
        for l in [0u32, 2, 15] {
            let nu = l as f64 + 0.5;
            let y = 1e-8;
            assert!((log_ik_product(o(l), y).unwrap() - (y / nu).ln()).abs() < 1e-6);
        }
    }
}
