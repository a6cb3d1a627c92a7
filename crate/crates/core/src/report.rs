//! The built-in verification suite and its machine-readable report.

use std::f64::consts::PI;

use serde::Serialize;

use crate::casimir::{
    contour_decay_check, e_l_asymptotic, per_l_energy, total_energy, DEFAULT_L_MAX, MIN_L_MAX,
};
use crate::error::Result;
use crate::modes::{build_spectrum, j_zero, weyl_density_check};
use crate::quad::{integrate_log_product, integrate_with_plan, QuadPlan, DEFAULT_REL_TOL};
use crate::specfun::{hurwitz_zeta_nonpos, Order};

/// How `measured` is compared with `expected`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Comparison {
    /// `|measured - expected| <= tolerance`
    Within,
    /// `measured >= expected - tolerance`
    AtLeast,
    /// `measured <= expected + tolerance`
    AtMost,
}

impl Comparison {
    pub fn holds(self, measured: f64, expected: f64, tolerance: f64) -> bool {
        match self {
            Comparison::Within => (measured - expected).abs() <= tolerance,
            Comparison::AtLeast => measured >= expected - tolerance,
            Comparison::AtMost => measured <= expected + tolerance,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckEntry {
    pub name: String,
    pub measured: f64,
    pub expected: f64,
    pub tolerance: f64,
    pub comparison: Comparison,
    pub pass: bool,
}

impl CheckEntry {
    /// `pass` is derived; a NaN measurement always fails.
    pub fn new(
        name: impl Into<String>,
        measured: f64,
        expected: f64,
        tolerance: f64,
        comparison: Comparison,
    ) -> Self {
        CheckEntry {
            name: name.into(),
            measured,
            expected,
            tolerance,
            comparison,
            pass: comparison.holds(measured, expected, tolerance),
        }
    }

    fn flag(name: &str, ok: bool) -> Self {
        CheckEntry::new(
            name,
            if ok { 1.0 } else { 0.0 },
            1.0,
            0.0,
            Comparison::Within,
        )
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct CheckReport {
    pub checks: Vec<CheckEntry>,
    pub all_passed: bool,
    /// Checks left out by `fast` mode.
    pub skipped: Vec<String>,
}

impl CheckReport {
    fn push(&mut self, entry: CheckEntry) {
        self.checks.push(entry);
    }

    fn finish(mut self) -> Self {
        self.all_passed = self.checks.iter().all(|c| c.pass);
        self
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckEntry> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Skip the full-resolution total energy runs.
    pub fast: bool,
    /// Shift one measurement so that the suite must fail.
    pub perturb: bool,
}

/// Reference total energy times radius.
pub const GOLDEN_ENERGY_TIMES_A: f64 = 0.002819;
pub const GOLDEN_TOLERANCE: f64 = 2e-5;
pub const SCALING_RADII: [f64; 4] = [0.5, 1.0, 2.0, 10.0];
pub const WEYL_BOX_SIZES: [f64; 4] = [25.0, 50.0, 100.0, 200.0];

const PERTURBATION: f64 = 1e-6;

pub fn run_verify(options: VerifyOptions) -> Result<CheckReport> {
    let mut report = CheckReport::default();
    let tol = DEFAULT_REL_TOL;

    report.push(CheckEntry::new(
        "zeta_minus2_half",
        hurwitz_zeta_nonpos(2, 0.5)?,
        0.0,
        0.0,
        Comparison::Within,
    ));
    report.push(CheckEntry::new(
        "zeta_0_half",
        hurwitz_zeta_nonpos(0, 0.5)?,
        0.0,
        0.0,
        Comparison::Within,
    ));

    let half = Order::new(0)?;
    let q = integrate_log_product(half, tol)?;
    report.push(CheckEntry::new(
        "integral_nu_half",
        q.value,
        -PI * PI / 12.0,
        1e-10,
        Comparison::Within,
    ));

    let row0 = per_l_energy(0, tol)?;
    let shift = if options.perturb { PERTURBATION } else { 0.0 };
    report.push(CheckEntry::new(
        "e0_times_a",
        row0.e_l_times_a + shift,
        -PI / 24.0,
        1e-10,
        Comparison::Within,
    ));
    report.push(CheckEntry::new(
        "e0_tilde_times_a",
        row0.e_l_tilde_times_a,
        -PI / 24.0 + 0.125 + 1.0 / 128.0,
        1e-10,
        Comparison::Within,
    ));

    let deviation = |l: u32| -> Result<f64> {
        let row = per_l_energy(l, tol)?;
        Ok((row.e_l_times_a - e_l_asymptotic(l, 1.0)?).abs())
    };
    let (d10, d20) = (deviation(10)?, deviation(20)?);
    report.push(CheckEntry::new(
        "asymptotic_deviation_l20",
        d20,
        0.0,
        1e-4,
        Comparison::AtMost,
    ));
    report.push(CheckEntry::new(
        "asymptotic_decay_ratio_l10_l20",
        d10 / d20,
        4.0,
        0.0,
        Comparison::AtLeast,
    ));

    for l in [5u32, 20] {
        let order = Order::new(l)?;
        let base = integrate_log_product(order, tol)?;
        let plan = QuadPlan::for_order(order);
        let doubled = integrate_with_plan(order, tol, plan.with_tail_at(2.0 * plan.y_tail))?;
        report.push(CheckEntry::new(
            format!("tail_doubling_l{l}"),
            (doubled.value - base.value).abs(),
            0.0,
            3.0 * base.abs_err_estimate,
            Comparison::AtMost,
        ));
    }

    let weyl = WEYL_BOX_SIZES
        .iter()
        .map(|&l| weyl_density_check(l, 1.0).map(|c| c.rel_err))
        .collect::<Result<Vec<_>>>()?;
    let decreases = weyl.windows(2).filter(|w| w[1] < w[0]).count();
    report.push(CheckEntry::new(
        "weyl_rel_err_strict_decreases",
        decreases as f64,
        (WEYL_BOX_SIZES.len() - 1) as f64,
        0.0,
        Comparison::Within,
    ));

    report.push(contour_decay_check(Order::new(2)?, &[1e2, 1e3, 1e4])?.to_entry());
    report.push(contour_decay_check(half, &[1e0, 1e1, 1e2])?.to_entry());

    let worst_j0 = (0..20u32)
        .map(|n| j_zero(0, n).map(|z| (z - (n + 1) as f64 * PI).abs()))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    report.push(CheckEntry::new(
        "j0_zeros_n_pi",
        worst_j0,
        0.0,
        1e-12,
        Comparison::AtMost,
    ));
    report.push(CheckEntry::new(
        "j1_first_zero",
        j_zero(1, 0)?,
        4.493_409_457_909_064,
        1e-10,
        Comparison::Within,
    ));
    let spectrum_ok = build_spectrum(10, 20, 1.0)?.check_invariants().is_ok();
    report.push(CheckEntry::flag("spectrum_l10_n20_invariants", spectrum_ok));

    let l_max = if options.fast {
        report.skipped.push("total_energy_golden".into());
        MIN_L_MAX
    } else {
        DEFAULT_L_MAX
    };
    let runs = SCALING_RADII
        .iter()
        .map(|&a| total_energy(a, l_max, tol))
        .collect::<Result<Vec<_>>>()?;
    let reference = runs[1].total_energy_times_a;
    let spread = runs
        .iter()
        .map(|b| ((b.total_energy * b.radius_a - reference) / reference).abs())
        .fold(0.0, f64::max);
    report.push(CheckEntry::new(
        "scaling_energy_times_a",
        spread,
        0.0,
        1e-12,
        Comparison::AtMost,
    ));
    let assembly_ok = runs
        .iter()
        .all(|b| b.check_assembly().is_ok() && b.force == b.total_energy / b.radius_a);
    report.push(CheckEntry::flag("force_equals_energy_over_a", assembly_ok));
    report.push(CheckEntry::flag(
        "quadrature_tolerances_met",
        runs.iter().all(|b| b.tolerance_met()),
    ));
    if !options.fast {
        report.push(CheckEntry::new(
            "total_energy_golden",
            reference,
            GOLDEN_ENERGY_TIMES_A,
            GOLDEN_TOLERANCE,
            Comparison::Within,
        ));
    }

    Ok(report.finish())
}
