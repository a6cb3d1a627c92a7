//! Large-argument Hankel series `P_nu`, `Q_nu` and the product series of
//! `2y I_nu(y) K_nu(y)`.

use num_complex::Complex64;
use serde::Serialize;

use super::Order;
use crate::error::{Error, Result};

/// Hard cap on the number of series terms (counting the leading `1`).
pub const PQ_MAX_TERMS: usize = 8;

/// Factor turning the heuristic `8|z| >> 4 nu^2 - 1` into a test.
pub const VALIDITY_FACTOR: f64 = 10.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PQPair {
    pub p: Complex64,
    pub q: Complex64,
    pub terms_used: usize,
    /// `8|z| >= 10 (4 nu^2 - 1)`.
    pub validity_ok: bool,
}

/// Evaluates the asymptotic series
///
/// ```text
/// P ~ 1 - (mu-1)(mu-9) / (2! (8z)^2) + ...,   Q ~ (mu-1)/(8z) - ...
/// ```
///
/// stopping before the first term that is larger in magnitude than its
/// predecessor, or after [`PQ_MAX_TERMS`] terms. For half-integer orders the
/// series terminates after `l + 1` terms and is then exact.
pub fn asymptotic_pq(order: Order, z: Complex64) -> Result<PQPair> {
    if z.norm() == 0.0 || !z.is_finite() {
        return Err(Error::domain(
            "asymptotic_pq",
            format!("|z| must be finite and > 0, got {z}"),
        ));
    }
    let mu = order.mu();
    let eight_z = 8.0 * z;
    let mut p = Complex64::new(1.0, 0.0);
    let mut q = Complex64::new(0.0, 0.0);
    // term_k = prod_{j<=k} (mu - (2j-1)^2) / (k! (8z)^k)
    let mut term = Complex64::new(1.0, 0.0);
    let mut terms_used = 1;
    for k in 1..PQ_MAX_TERMS {
        let odd = (2 * k - 1) as f64;
        let next = term * (mu - odd * odd) / (k as f64 * eight_z);
        if next == Complex64::new(0.0, 0.0) || next.norm() > term.norm() {
            break;
        }
        term = next;
        // signs: P gets +,-,+,... on even k; Q gets +,-,... on odd k
        let signed = if (k / 2) % 2 == 0 { term } else { -term };
        if k % 2 == 0 {
            p += signed;
        } else {
            q += signed;
        }
        terms_used += 1;
    }
    Ok(PQPair {
        p,
        q,
        terms_used,
        validity_ok: 8.0 * z.norm() >= VALIDITY_FACTOR * (mu - 1.0),
    })
}

/// Coefficients `c_m` of the terminating expansion
///
/// ```text
/// 2y I_nu(y) K_nu(y) = sum_{m=0}^{l} c_m y^{-2m} + O(e^{-2y}),
/// c_m = (-1)^m (2m-1)!!/(2m)!! * prod_{j=1}^{m} (mu - (2j-1)^2) / 4^m.
/// ```
pub fn ik_product_series(order: Order) -> Vec<f64> {
    let mu = order.mu();
    let mut coeffs = Vec::with_capacity(order.l() as usize + 1);
    let mut c = 1.0;
    coeffs.push(c);
    for m in 1..=order.l() as usize {
        let odd = (2 * m - 1) as f64;
        c *= -(odd / (2 * m) as f64) * (mu - odd * odd) * 0.25;
        coeffs.push(c);
    }
    coeffs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::{bessel_i_scaled, bessel_k_scaled};

    fn o(l: u32) -> Order {
        Order::new(l).unwrap()
    }

    fn re(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn half_order_is_exact() {
        for z in [re(0.01), re(3.0), Complex64::new(-2.0, 7.0)] {
            let pq = asymptotic_pq(o(0), z).unwrap();
            assert_eq!(pq.p, re(1.0));
            assert_eq!(pq.q, re(0.0));
            assert_eq!(pq.terms_used, 1);
        }
    }

    #[test]
    fn leading_q_term() {
        let pq = asymptotic_pq(o(1), re(100.0)).unwrap();
        assert!((pq.q.re - 0.01).abs() < 1e-15);
        assert!(pq.validity_ok);
        assert!(!asymptotic_pq(o(1), re(0.1)).unwrap().validity_ok);
    }

    #[test]
    fn terms_used_is_capped() {
        let pq = asymptotic_pq(o(200), re(1e9)).unwrap();
        assert_eq!(pq.terms_used, PQ_MAX_TERMS);
        let pq = asymptotic_pq(o(2), re(50.0)).unwrap();
        assert_eq!(pq.terms_used, 3);
    }

    #[test]
    fn tends_to_one_and_zero() {
        let pq = asymptotic_pq(o(5), Complex64::new(0.0, 1e12)).unwrap();
        assert!((pq.p - 1.0).norm() < 1e-18);
        assert!(pq.q.norm() < 1e-10);
    }

    #[test]
    fn zero_argument_rejected() {
        assert!(asymptotic_pq(o(1), re(0.0)).is_err());
    }

    #[test]
    fn p2_plus_q2_decays_like_inverse_square() {
        let order = o(2);
        let dev = |r: f64| {
            let pq = asymptotic_pq(order, re(r)).unwrap();
            (pq.p * pq.p + pq.q * pq.q - 1.0).norm()
        };
        let slope = (dev(1e4).ln() - dev(1e2).ln()) / (1e4f64.ln() - 1e2f64.ln());
        assert!((slope + 2.0).abs() <= 0.1, "slope {slope}");
    }

    #[test]
    fn product_series_reproduces_bessel_product() {
        // The K series is exact, I's dominant part is exact: for y >> 1
        // the product polynomial equals 2y I K up to e^{-2y}.
        for l in [1u32, 3, 6] {
            let coeffs = ik_product_series(o(l));
            assert_eq!(coeffs.len(), l as usize + 1);
            let y: f64 = 40.0;
            let poly: f64 = coeffs
                .iter()
                .enumerate()
                .map(|(m, c)| c * y.powi(-2 * m as i32))
                .sum();
            let direct =
                2.0 * y * bessel_i_scaled(o(l), y).unwrap() * bessel_k_scaled(o(l), y).unwrap();
            assert!((poly - direct).abs() < 1e-14, "l={l}");
        }
        let c = ik_product_series(o(1));
        assert_eq!(c, vec![1.0, -1.0]);
    }
}
