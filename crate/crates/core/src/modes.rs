//! Dirichlet eigenfrequencies of the sphere: positive zeros of `j_l`.
//!
//! Zeros are indexed from `n = 0`, so `j_zero(l, 0)` is the first positive
//! zero (tables that count from 1 call it `z_{l,1}`).

use std::f64::consts::{FRAC_PI_2, PI};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{require_positive, Error, Result};
use crate::numeric::CompensatedSum;
use crate::specfun::{spherical_j, spherical_j_with_derivative};

/// Leading large-zero estimate `pi (n + l/2 + 1)`.
pub fn mcmahon_estimate(l: u32, n: u32) -> f64 {
    PI * (n as f64 + 0.5 * l as f64 + 1.0)
}

/// The `(n+1)`-th positive zero of `j_l`.
///
/// In the asymptotic regime, where the first McMahon correction
/// `(4 nu^2 - 1) / (8 beta)` is below 1/2, the zero is bracketed by
/// `beta -+ pi/2` around the estimate `beta`. Otherwise, or if that bracket
/// shows no sign change, the zero is located by interlacing:
/// `z_{n,l-1} < z_{n,l} < z_{n+1,l-1}`, recursing down to `j_0`.
pub fn j_zero(l: u32, n: u32) -> Result<f64> {
    let beta = mcmahon_estimate(l, n);
    let nu = l as f64 + 0.5;
    if (4.0 * nu * nu - 1.0) / (8.0 * beta) <= 0.5 {
        if l == 0 {
            return Ok(beta);
        }
        let lo = beta - FRAC_PI_2;
        let hi = beta + FRAC_PI_2;
        if sign_change(l, lo, hi)? {
            return refine_zero(l, lo, hi);
        }
    }
    let table = zero_table(l, n)?;
    Ok(table[l as usize][n as usize])
}

fn sign_change(l: u32, lo: f64, hi: f64) -> Result<bool> {
    Ok(spherical_j(l, lo)? * spherical_j(l, hi)? < 0.0)
}

/// Zeros `z_{n,l}` for all `l <= l_max`, `n <= n_max`, built row by row
/// through interlacing. Row `l` of the result has `n_max + 1` entries.
pub fn zero_table(l_max: u32, n_max: u32) -> Result<Vec<Vec<f64>>> {
    let width = |l: u32| (n_max + (l_max - l)) as usize + 1;
    let mut rows: Vec<Vec<f64>> = Vec::with_capacity(l_max as usize + 1);
    rows.push((0..width(0)).map(|k| PI * (k as f64 + 1.0)).collect());
    for l in 1..=l_max {
        let prev = &rows[l as usize - 1];
        let row = (0..width(l))
            .into_par_iter()
            .map(|k| refine_zero(l, prev[k], prev[k + 1]))
            .collect::<Result<Vec<f64>>>()?;
        rows.push(row);
    }
    for row in &mut rows {
        row.truncate(n_max as usize + 1);
    }
    Ok(rows)
}

/// Safeguarded Newton iteration on a bracket with a sign change.
fn refine_zero(l: u32, mut lo: f64, mut hi: f64) -> Result<f64> {
    let f_lo = spherical_j(l, lo)?;
    let f_hi = spherical_j(l, hi)?;
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if f_lo * f_hi > 0.0 {
        return Err(Error::NoConvergence {
            func: "j_zero",
            detail: format!("no sign change of j_{l} on [{lo}, {hi}]"),
        });
    }
    let lo_negative = f_lo < 0.0;
    let mut x = 0.5 * (lo + hi);
    let mut last_step = hi - lo;
    for _ in 0..200 {
        let (f, df) = spherical_j_with_derivative(l, x)?;
        if f == 0.0 {
            return Ok(x);
        }
        if (f < 0.0) == lo_negative {
            lo = x;
        } else {
            hi = x;
        }
        let newton = x - f / df;
        let step;
        if df != 0.0 && newton > lo && newton < hi && (f / df).abs() < 0.5 * last_step {
            step = (f / df).abs();
            x = newton;
        } else {
            step = 0.5 * (hi - lo);
            x = 0.5 * (lo + hi);
        }
        last_step = step;
        if step <= 2.0 * f64::EPSILON * x || hi - lo <= 4.0 * f64::EPSILON * x {
            return Ok(x);
        }
    }
    Err(Error::NoConvergence {
        func: "j_zero",
        detail: format!("root of j_{l} in [{lo}, {hi}] after 200 iterations"),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Mode {
    pub l: u32,
    pub n: u32,
    /// `z_{n,l} / a`.
    pub omega: f64,
    /// Degeneracy weight `l + 1/2`.
    pub weight: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ModeSpectrum {
    pub radius_a: f64,
    /// Ordered by `l`, then `n`.
    pub entries: Vec<Mode>,
}

impl ModeSpectrum {
    pub fn modes_for(&self, l: u32) -> impl Iterator<Item = &Mode> {
        self.entries.iter().filter(move |m| m.l == l)
    }

    /// Verifies ordering, interlacing and the zero residual
    /// `|j_l(z)| <= 1e-10 max(1, |z j_l'(z)|)`.
    pub fn check_invariants(&self) -> Result<()> {
        let a = self.radius_a;
        let l_max = self.entries.iter().map(|m| m.l).max().unwrap_or(0);
        let rows: Vec<Vec<f64>> = (0..=l_max)
            .map(|l| self.modes_for(l).map(|m| m.omega * a).collect())
            .collect();
        for (l, row) in rows.iter().enumerate() {
            if row.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::Invariant(format!("zeros of j_{l} not increasing")));
            }
            for &z in row {
                let (j, dj) = spherical_j_with_derivative(l as u32, z)?;
                if j.abs() > 1e-10 * (dj.abs() * z).max(1.0) {
                    return Err(Error::Invariant(format!(
                        "|j_{l}({z})| = {} too large",
                        j.abs()
                    )));
                }
            }
        }
        for l in 1..rows.len() {
            let (below, row) = (&rows[l - 1], &rows[l]);
            for (n, &z) in row.iter().enumerate() {
                let ok_low = below.get(n).is_none_or(|&b| b < z);
                let ok_high = below.get(n + 1).is_none_or(|&b| z < b);
                if !(ok_low && ok_high) {
                    return Err(Error::Invariant(format!(
                        "interlacing fails at l = {l}, n = {n}"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// All modes with `l <= l_max`, `n <= n_max` for a sphere of radius `a`.
pub fn build_spectrum(l_max: u32, n_max: u32, a: f64) -> Result<ModeSpectrum> {
    require_positive("build_spectrum", "a", a)?;
    let table = zero_table(l_max, n_max)?;
    let entries = table
        .iter()
        .enumerate()
        .flat_map(|(l, row)| {
            row.iter().enumerate().map(move |(n, &z)| Mode {
                l: l as u32,
                n: n as u32,
                omega: z / a,
                weight: l as f64 + 0.5,
            })
        })
        .collect();
    Ok(ModeSpectrum {
        radius_a: a,
        entries,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WeylCheck {
    /// `int_0^K k^3 dk = K^4 / 4`.
    pub lhs: f64,
    /// Box mode sum with the leading-order frequencies.
    pub rhs: f64,
    pub rel_err: f64,
}

/// Compares the continuum integral `int_0^K k^3 dk` against the discrete sum
///
/// ```text
/// (1/L^3) sum_l (l + 1/2) sum_n (pi/L) [(n + 1/2) + (l + 1)/2]
/// ```
///
/// over the estimated box frequencies that lie below the cutoff, i.e.
/// `pi [(n + 1/2) + (l + 1)/2] <= K L`.
pub fn weyl_density_check(box_radius: f64, cutoff: f64) -> Result<WeylCheck> {
    require_positive("weyl_density_check", "L", box_radius)?;
    require_positive("weyl_density_check", "K", cutoff)?;
    let kl = cutoff * box_radius;
    if kl <= PI {
        return Err(Error::precondition(
            "weyl_density_check",
            format!("K L = {kl} must exceed pi for a non-empty spectrum"),
        ));
    }
    let mut total = CompensatedSum::new();
    for l in 0u64.. {
        let mut inner = CompensatedSum::new();
        let mut any = false;
        for n in 0u64.. {
            let bracket = (n as f64 + 0.5) + (l as f64 + 1.0) / 2.0;
            if PI * bracket > kl {
                break;
            }
            inner.add(PI / box_radius * bracket);
            any = true;
        }
        if !any {
            break;
        }
        total.add((l as f64 + 0.5) * inner.value());
    }
    let lhs = cutoff.powi(4) / 4.0;
    let rhs = total.value() / box_radius.powi(3);
    Ok(WeylCheck {
        lhs,
        rhs,
        rel_err: (lhs - rhs).abs() / lhs,
    })
}
