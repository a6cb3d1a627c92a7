//! Bernoulli polynomials up to degree 8 and the Hurwitz zeta function at
//! non-positive integers, `zeta(-n, a) = -B_{n+1}(a) / (n + 1)`.

use crate::error::{Error, Result};

pub const BERNOULLI_MAX_DEGREE: u32 = 8;
pub const HURWITZ_MAX_N: u32 = BERNOULLI_MAX_DEGREE - 1;

/// Exact rational coefficients `(numerator, denominator)` in ascending
/// powers of the argument.
const COEFFS: [&[(i64, i64)]; 9] = [
    &[(1, 1)],
    &[(-1, 2), (1, 1)],
    &[(1, 6), (-1, 1), (1, 1)],
    &[(0, 1), (1, 2), (-3, 2), (1, 1)],
    &[(-1, 30), (0, 1), (1, 1), (-2, 1), (1, 1)],
    &[(0, 1), (-1, 6), (0, 1), (5, 3), (-5, 2), (1, 1)],
    &[(1, 42), (0, 1), (-1, 2), (0, 1), (5, 2), (-3, 1), (1, 1)],
    &[
        (0, 1),
        (1, 6),
        (0, 1),
        (-7, 6),
        (0, 1),
        (7, 2),
        (-7, 2),
        (1, 1),
    ],
    &[
        (-1, 30),
        (0, 1),
        (2, 3),
        (0, 1),
        (-7, 3),
        (0, 1),
        (14, 3),
        (-4, 1),
        (1, 1),
    ],
];

/// `B_n(alpha)` for `0 <= n <= 8`, Horner evaluation of exact coefficients.
pub fn bernoulli_poly(n: u32, alpha: f64) -> Result<f64> {
    if n > BERNOULLI_MAX_DEGREE {
        return Err(Error::range(
            "bernoulli_poly",
            format!("degree {n} outside 0..={BERNOULLI_MAX_DEGREE}"),
        ));
    }
    if !alpha.is_finite() {
        return Err(Error::domain("bernoulli_poly", format!("alpha = {alpha}")));
    }
    let v = COEFFS[n as usize]
        .iter()
        .rev()
        .fold(0.0, |acc, &(num, den)| {
            acc * alpha + num as f64 / den as f64
        });
    Ok(v)
}

/// Hurwitz `zeta(-n, alpha)` for `0 <= n <= 7` and `0 < alpha <= 1`.
///
/// Exact zeros (such as `zeta(-2, 1/2)`) come out as `+0.0`.
pub fn hurwitz_zeta_nonpos(n: u32, alpha: f64) -> Result<f64> {
    if n > HURWITZ_MAX_N {
        return Err(Error::range(
            "hurwitz_zeta_nonpos",
            format!("n = {n} outside 0..={HURWITZ_MAX_N}"),
        ));
    }
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::range(
            "hurwitz_zeta_nonpos",
            format!("alpha = {alpha} outside (0, 1]"),
        ));
    }
    let b = bernoulli_poly(n + 1, alpha)?;
    // + 0.0 normalises a negative zero
    Ok(-b / (n + 1) as f64 + 0.0)
}
