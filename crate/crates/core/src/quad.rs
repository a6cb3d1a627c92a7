//! Semi-infinite quadrature of `ln(2y I_nu(y) K_nu(y))` over `(0, inf)`.
//!
//! The range is split in three:
//!
//! * `(0, y0]`: the integrand behaves like `ln y` plus a smooth part. The
//!   smooth part `ln(2 I K)` is integrated numerically and
//!   `int_0^{y0} ln y dy = y0 (ln y0 - 1)` is added analytically.
//! * `[y0, Y]`: globally adaptive Gauss-Legendre panels, each error estimated
//!   from the difference between the panel rule and the rule on its two
//!   halves.
//! * `[Y, inf)`: integrated term by term from the exact large-argument
//!   product `2y I K = sum_m c_m y^{-2m}`; the log of that polynomial is
//!   expanded in `y^{-2}` and summed until the terms vanish. Its leading
//!   term is [`tail_estimate`].

use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::pairwise_sum;
use crate::specfun::{ik_product_series, log_2ik_product, log_ik_product, Order};

const GAUSS_POINTS: usize = 20;
const MAX_PANELS: usize = 4000;

pub const MIN_REL_TOL: f64 = 1e-14;
pub const MAX_REL_TOL: f64 = 1e-3;
pub const DEFAULT_REL_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuadratureResult {
    pub value: f64,
    pub abs_err_estimate: f64,
    pub evaluations: usize,
    /// Analytic contribution of `[Y, inf)`.
    pub tail_correction: f64,
    /// `(y0, Y)`.
    pub split_points: (f64, f64),
    pub panels: usize,
}

/// Split points for one integration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadPlan {
    pub y0: f64,
    pub y_tail: f64,
}

impl QuadPlan {
    /// `y0 = min(1, nu)/4`, `Y = max(30, 10 nu)`.
    pub fn for_order(order: Order) -> Self {
        let nu = order.nu();
        QuadPlan {
            y0: nu.min(1.0) / 4.0,
            y_tail: (10.0 * nu).max(30.0),
        }
    }

    pub fn with_tail_at(self, y_tail: f64) -> Self {
        QuadPlan { y_tail, ..self }
    }
}

/// Leading behaviour of the tail, `int_Y^inf ln(2y I K) dy ~ -(4 nu^2 - 1)/(8Y)`.
pub fn tail_estimate(order: Order, y_tail: f64) -> Result<f64> {
    check_tail_point("tail_estimate", order, y_tail)?;
    Ok(-(order.mu() - 1.0) / (8.0 * y_tail))
}

fn check_tail_point(func: &'static str, order: Order, y_tail: f64) -> Result<()> {
    let min = (2.0 * order.nu()).max(10.0);
    if !(y_tail.is_finite() && y_tail >= min) {
        return Err(Error::precondition(
            func,
            format!("Y = {y_tail} must be >= {min}"),
        ));
    }
    Ok(())
}

/// Full tail `int_Y^inf ln(2y I K) dy` and a bound on what was left out.
fn tail_series(order: Order, y_tail: f64) -> (f64, f64) {
    // Work with w-scaled coefficients c_m Y^{-2m}; ln P = sum_m d_m Y^{-2m}
    // follows from m d_m = m c_m - sum_{k<m} k d_k c_{m-k}.
    let w = 1.0 / (y_tail * y_tail);
    let mut c = ik_product_series(order);
    let mut scale = 1.0;
    for cm in c.iter_mut() {
        *cm *= scale;
        scale *= w;
    }
    let coeff = |j: usize| c.get(j).copied().unwrap_or(0.0);
    let mut d: Vec<f64> = vec![0.0];
    let mut sum = 0.0;
    let mut small_run = 0;
    let mut last = 0.0;
    for m in 1..400usize {
        let conv: f64 = (1..m).map(|k| k as f64 * d[k] * coeff(m - k)).sum();
        let dm = coeff(m) - conv / m as f64;
        d.push(dm);
        let term = dm / (2 * m - 1) as f64;
        sum += term;
        last = term.abs();
        if last <= 1e-18 * sum.abs() || dm == 0.0 && m > c.len() {
            small_run += 1;
            if small_run == 2 {
                break;
            }
        } else {
            small_run = 0;
        }
    }
    // e^{-2y} part of 2y I K neglected in the polynomial
    let l = order.l() as f64;
    let exp_part = (-2.0 * y_tail + l * (l + 1.0) / y_tail).exp();
    (y_tail * sum, y_tail * 2.0 * last + exp_part)
}

fn gauss_legendre() -> &'static [(f64, f64)] {
    static RULE: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    RULE.get_or_init(|| {
        let n = GAUSS_POINTS;
        let mut rule = Vec::with_capacity(n);
        for i in 0..n {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre(n, x);
            dp = if d != 0.0 { d } else { dp };
            rule.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
        }
        rule
    })
}

/// `(P_n(x), P_n'(x))`.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
        p0 = p1;
        p1 = p2;
    }
    (p1, n as f64 * (x * p1 - p0) / (x * x - 1.0))
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Region {
    /// `ln(2 I K)` on `(0, y0]`.
    Head,
    /// `ln(2y I K)` on `[y0, Y]`.
    Body,
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    region: Region,
    coarse: f64,
    left: f64,
    right: f64,
}

impl Panel {
    fn value(&self) -> f64 {
        self.left + self.right
    }

    fn err(&self) -> f64 {
        (self.coarse - self.value()).abs()
    }
}

struct Integrator {
    order: Order,
    evaluations: usize,
}

impl Integrator {
    fn rule(&mut self, region: Region, a: f64, b: f64) -> Result<f64> {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let mut acc = 0.0;
        for &(x, w) in gauss_legendre() {
            let y = mid + half * x;
            let f = match region {
                Region::Head => log_2ik_product(self.order, y)?,
                Region::Body => log_ik_product(self.order, y)?,
            };
            acc += w * f;
        }
        self.evaluations += GAUSS_POINTS;
        Ok(half * acc)
    }

    fn panel(&mut self, region: Region, a: f64, b: f64, coarse: Option<f64>) -> Result<Panel> {
        let coarse = match coarse {
            Some(v) => v,
            None => self.rule(region, a, b)?,
        };
        let m = 0.5 * (a + b);
        let left = self.rule(region, a, m)?;
        let right = self.rule(region, m, b)?;
        Ok(Panel {
            a,
            b,
            region,
            coarse,
            left,
            right,
        })
    }
}

/// `int_0^inf ln(2y I_nu(y) K_nu(y)) dy` with the default split points.
pub fn integrate_log_product(order: Order, rel_tol: f64) -> Result<QuadratureResult> {
    integrate_with_plan(order, rel_tol, QuadPlan::for_order(order))
}

/// As [`integrate_log_product`] with explicit split points.
///
/// Succeeds when the error estimate is within
/// `max(rel_tol |value|, 1e-14 nu^2)`; otherwise returns
/// [`Error::ToleranceNotMet`] carrying the best result.
pub fn integrate_with_plan(order: Order, rel_tol: f64, plan: QuadPlan) -> Result<QuadratureResult> {
    integrate_impl(order, rel_tol, plan, MAX_PANELS)
}

fn integrate_impl(
    order: Order,
    rel_tol: f64,
    plan: QuadPlan,
    max_panels: usize,
) -> Result<QuadratureResult> {
    if !(MIN_REL_TOL..=MAX_REL_TOL).contains(&rel_tol) {
        return Err(Error::precondition(
            "integrate_log_product",
            format!("rel_tol = {rel_tol} outside [{MIN_REL_TOL:e}, {MAX_REL_TOL:e}]"),
        ));
    }
    let QuadPlan { y0, y_tail } = plan;
    if !(y0 > 0.0 && y0 < y_tail) {
        return Err(Error::precondition(
            "integrate_log_product",
            format!("need 0 < y0 < Y, got y0 = {y0}, Y = {y_tail}"),
        ));
    }
    check_tail_point("integrate_log_product", order, y_tail)?;

    let nu = order.nu();
    let floor = 1e-14 * nu * nu;
    // |value| ~ pi (nu/2 + 1/(128 nu)) from the large-order expansion
    let scale = std::f64::consts::PI * (0.5 * nu + 1.0 / (128.0 * nu));
    let budget = 0.5 * (rel_tol * scale).max(floor);

    let mut it = Integrator {
        order,
        evaluations: 0,
    };
    let mut panels = vec![it.panel(Region::Head, 0.0, y0, None)?];
    let mut a = y0;
    while a < y_tail {
        let b = if 2.0 * a >= 0.75 * y_tail {
            y_tail
        } else {
            2.0 * a
        };
        panels.push(it.panel(Region::Body, a, b, None)?);
        a = b;
    }

    let mut exhausted = false;
    loop {
        let total: f64 = panels.iter().map(Panel::err).sum();
        if total <= budget {
            break;
        }
        if panels.len() >= max_panels {
            exhausted = true;
            break;
        }
        let (worst, _) = panels.iter().enumerate().fold((0, -1.0), |best, (i, p)| {
            if p.err() > best.1 {
                (i, p.err())
            } else {
                best
            }
        });
        let p = panels[worst];
        let m = 0.5 * (p.a + p.b);
        if m <= p.a || m >= p.b {
            exhausted = true;
            break;
        }
        let lo = it.panel(p.region, p.a, m, Some(p.left))?;
        let hi = it.panel(p.region, m, p.b, Some(p.right))?;
        panels[worst] = lo;
        panels.insert(worst + 1, hi);
    }

    let values: Vec<f64> = panels.iter().map(Panel::value).collect();
    let quad_err: f64 = panels.iter().map(Panel::err).sum();
    let (tail, tail_bound) = tail_series(order, y_tail);
    let log_part = y0 * (y0.ln() - 1.0);
    let body = pairwise_sum(&values);
    let value = body + log_part + tail;

    let abs_sum: f64 = values.iter().map(|v| v.abs()).sum::<f64>() + log_part.abs();
    let roundoff = f64::EPSILON * (16.0 * abs_sum + (nu + 10.0) * y_tail);
    let abs_err_estimate = quad_err + tail_bound + roundoff;

    let result = QuadratureResult {
        value,
        abs_err_estimate,
        evaluations: it.evaluations,
        tail_correction: tail,
        split_points: (y0, y_tail),
        panels: panels.len(),
    };
    if exhausted || abs_err_estimate > (rel_tol * value.abs()).max(floor) {
        return Err(Error::ToleranceNotMet(Box::new(result)));
    }
    Ok(result)
}
