//! Spherical Bessel functions of the first kind, `j_l(x) = sqrt(pi/(2x)) J_{l+1/2}(x)`.

use crate::error::{require_positive, Result};

/// `j_l(x)` for `x > 0`.
///
/// Upward recurrence `j_{l+1} = (2l+1)/x j_l - j_{l-1}` from the closed
/// forms of `j_0`, `j_1` while `x >= l`; below that the upward direction
/// loses accuracy and a normalised downward (Miller) recurrence is used.
pub fn spherical_j(l: u32, x: f64) -> Result<f64> {
    require_positive("spherical_j", "x", x)?;
    Ok(pair(l, x).0)
}

/// `(j_l(x), j_l'(x))`, with `j_l' = j_{l-1} - (l+1)/x j_l` (`j_0' = -j_1`).
pub fn spherical_j_with_derivative(l: u32, x: f64) -> Result<(f64, f64)> {
    require_positive("spherical_j_with_derivative", "x", x)?;
    if l == 0 {
        let (j1, j0) = pair(1, x);
        return Ok((j0, -j1));
    }
    let (jl, jlm1) = pair(l, x);
    Ok((jl, jlm1 - (l as f64 + 1.0) / x * jl))
}

/// `(j_l(x), j_{l-1}(x))`; the second entry is meaningless for `l = 0`.
fn pair(l: u32, x: f64) -> (f64, f64) {
    let (s, c) = x.sin_cos();
    let j0 = s / x;
    if l == 0 {
        return (j0, f64::NAN);
    }
    if x >= l as f64 {
        let mut prev = j0;
        let mut cur = (j0 - c) / x;
        for n in 1..l {
            let next = (2 * n + 1) as f64 / x * cur - prev;
            prev = cur;
            cur = next;
        }
        (cur, prev)
    } else {
        downward(l, x, j0)
    }
}

fn downward(l: u32, x: f64, j0: f64) -> (f64, f64) {
    const BIG: f64 = 1e250;
    // The spurious growing solution is damped by ~x/(2n+3) per step.
    let start = l + 60 + x as u32;
    let mut above = 0.0;
    let mut cur = 1e-300;
    let mut at_l = 0.0;
    let mut at_lm1 = 0.0;
    let mut f0 = 0.0;
    let mut f1 = 0.0;
    for n in (0..start).rev() {
        // f_n = (2n+3)/x f_{n+1} - f_{n+2}
        let next = (2 * n + 3) as f64 / x * cur - above;
        above = cur;
        cur = next;
        if cur.abs() > BIG {
            let k = 1.0 / BIG;
            cur *= k;
            above *= k;
            at_l *= k;
            at_lm1 *= k;
            f1 *= k;
        }
        match n {
            _ if n == l => at_l = cur,
            _ if n + 1 == l => at_lm1 = cur,
            _ => {}
        }
        if n == 1 {
            f1 = cur;
        }
        if n == 0 {
            f0 = cur;
        }
    }
    // Normalise against whichever of j_0, j_1 is larger in magnitude.
    let c = x.cos();
    let j1 = if x > 0.5 { (j0 - c) / x } else { series_j1(x) };
    let scale = if j0.abs() >= j1.abs() {
        j0 / f0
    } else {
        j1 / f1
    };
    (at_l * scale, at_lm1 * scale)
}

/// `j_1(x) = x/3 - x^3/30 + x^5/840 - ...` for small `x`.
fn series_j1(x: f64) -> f64 {
    let x2 = x * x;
    let mut term = x / 3.0;
    let mut sum = term;
    for k in 1..20 {
        let k = k as f64;
        term *= -x2 / (2.0 * k * (2.0 * k + 3.0));
        sum += term;
    }
    sum
}
