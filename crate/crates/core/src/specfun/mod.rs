//! Special functions for half-integer Bessel orders.
//!
//! Everything here is specialised to orders `nu = l + 1/2`, where the
//! modified Bessel functions have elementary closed forms and the
//! asymptotic series terminate. The exponentially scaled functions are the
//! primary representation; unscaled values are thin wrappers that report
//! overflow instead of returning infinities.

mod asymptotic;
mod bernoulli;
mod bessel;
mod spherical;

pub use asymptotic::{asymptotic_pq, ik_product_series, PQPair};
pub use bernoulli::{bernoulli_poly, hurwitz_zeta_nonpos, BERNOULLI_MAX_DEGREE, HURWITZ_MAX_N};
pub(crate) use bessel::log_2ik_product;
pub use bessel::{
    bessel_i, bessel_i_ratio, bessel_i_scaled, bessel_k, bessel_k_ratio, bessel_k_scaled,
    log_ik_product,
};
pub use spherical::{spherical_j, spherical_j_with_derivative};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest angular momentum accepted by [`Order::new`].
pub const MAX_L: u32 = 1_000_000;

/// A half-integer Bessel order `nu = l + 1/2` tied to angular momentum `l`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct Order {
    l: u32,
}

impl Order {
    pub fn new(l: u32) -> Result<Self> {
        if l > MAX_L {
            return Err(Error::range(
                "Order::new",
                format!("l = {l} exceeds {MAX_L}"),
            ));
        }
        Ok(Order { l })
    }

    /// Builds the order from `nu`, which must be a positive half-integer.
    pub fn from_nu(nu: f64) -> Result<Self> {
        let l = nu - 0.5;
        if !nu.is_finite() || l < 0.0 || l.fract() != 0.0 {
            return Err(Error::domain(
                "Order::from_nu",
                format!("nu must be one of 1/2, 3/2, 5/2, ..., got {nu}"),
            ));
        }
        if l > MAX_L as f64 {
            return Err(Error::range(
                "Order::from_nu",
                format!("nu = {nu} too large"),
            ));
        }
        Order::new(l as u32)
    }

    #[inline]
    pub fn l(self) -> u32 {
        self.l
    }

    #[inline]
    pub fn nu(self) -> f64 {
        self.l as f64 + 0.5
    }

    /// `mu = 4 nu^2`, the parameter of the large-argument series.
    #[inline]
    pub fn mu(self) -> f64 {
        let two_nu = 2.0 * self.l as f64 + 1.0;
        two_nu * two_nu
    }

    /// The next order up, `nu + 1`.
    pub fn succ(self) -> Result<Self> {
        Order::new(self.l + 1)
    }
}

impl TryFrom<u32> for Order {
    type Error = Error;

    fn try_from(l: u32) -> Result<Self> {
        Order::new(l)
    }
}

impl From<Order> for u32 {
    fn from(order: Order) -> u32 {
        order.l
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_nu_is_half_integer() {
        for l in [0u32, 1, 7, 40, MAX_L] {
            let o = Order::new(l).unwrap();
            assert_eq!(o.nu(), l as f64 + 0.5);
            assert!(o.nu() > 0.0);
            assert_eq!(o.mu(), 4.0 * o.nu() * o.nu());
        }
        assert!(Order::new(MAX_L + 1).is_err());
    }

    #[test]
    fn from_nu_rejects_integer_orders() {
        assert_eq!(Order::from_nu(2.5).unwrap().l(), 2);
        assert!(Order::from_nu(2.0).is_err());
        assert!(Order::from_nu(-0.5).is_err());
        assert!(Order::from_nu(f64::NAN).is_err());
    }
}
