use std::io::Write;

use log::{info, warn};
use serde::Serialize;
use serde_json::json;

use casimir_core::casimir::{per_l_energy, EnergyBreakdown};
use casimir_core::specfun::{
    bessel_i, bessel_i_scaled, bessel_k, bessel_k_scaled, log_ik_product, Order,
};
use casimir_core::{
    e_l_asymptotic, j_zero, mcmahon_estimate, run_verify, total_energy, Error, VerifyOptions,
};

use crate::args::{Command, Format};
use crate::output::{
    OutputDocument, Timer, EXIT_OK, EXIT_TOLERANCE, EXIT_USAGE, EXIT_VERIFY_FAILED,
};

/// Upper limits that keep the zero table cheap.
const MAX_ZERO_L: u32 = 1000;
const MAX_ZERO_COUNT: u32 = 1000;

pub fn run(command: Command) -> u8 {
    let timer = Timer::start();
    let outcome = match command {
        Command::Energy {
            radius,
            lmax,
            tol,
            format,
        } => energy(radius, lmax, tol, format, &timer),
        Command::Zeros { l, count, radius } => zeros(l, count, radius, &timer),
        Command::Bessel { nu, y } => bessel(nu, y, &timer),
        Command::Perl { l, radius, tol } => perl(l, radius, tol, &timer),
        Command::Verify { fast, perturb } => verify(fast, perturb, &timer),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::ToleranceNotMet(_) => EXIT_TOLERANCE,
                _ => EXIT_USAGE,
            }
        }
    }
}

/// A closed stdout (e.g. piped into `head`) is not an error.
fn print(doc: &OutputDocument) {
    let _ = writeln!(std::io::stdout().lock(), "{}", doc.render());
}

fn energy(radius: f64, lmax: u32, tol: f64, format: Format, timer: &Timer) -> Result<u8, Error> {
    let breakdown = total_energy(radius, lmax, tol)?;
    for w in &breakdown.warnings {
        warn!("{w}");
    }
    info!(
        "E a = {:e} from {} quadrature evaluations",
        breakdown.total_energy_times_a,
        breakdown.total_evaluations()
    );
    match format {
        Format::Json => {
            let inputs = json!({ "radius": radius, "lmax": lmax, "tol": tol, "format": "json" });
            print(&OutputDocument::new(
                "energy",
                inputs,
                &breakdown,
                &breakdown.warnings,
                timer,
            ));
        }
        Format::Csv => {
            write_csv(&breakdown).map_err(|e| Error::Invariant(format!("csv output: {e}")))?
        }
    }
    Ok(if breakdown.warnings.is_empty() {
        EXIT_OK
    } else {
        EXIT_TOLERANCE
    })
}

#[derive(Serialize)]
struct CsvRow {
    l: u32,
    nu: f64,
    e_l_times_a: f64,
    e_l_tilde_times_a: f64,
    quad_abs_err: f64,
}

fn write_csv(breakdown: &EnergyBreakdown) -> csv::Result<()> {
    let mut out = csv::Writer::from_writer(std::io::stdout().lock());
    for r in &breakdown.per_l {
        out.serialize(CsvRow {
            l: r.l,
            nu: r.nu,
            e_l_times_a: r.e_l_times_a,
            e_l_tilde_times_a: r.e_l_tilde_times_a,
            quad_abs_err: r.quad_abs_err,
        })?;
    }
    out.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct ZeroRow {
    n: u32,
    zero: f64,
    omega: f64,
    mcmahon: f64,
    mcmahon_error: f64,
}

fn zeros(l: u32, count: u32, radius: f64, timer: &Timer) -> Result<u8, Error> {
    if radius.is_nan() || radius <= 0.0 {
        return Err(Error::Domain {
            func: "zeros",
            detail: format!("radius must be positive, got {radius}"),
        });
    }
    if l > MAX_ZERO_L || count == 0 || count > MAX_ZERO_COUNT {
        return Err(Error::Domain {
            func: "zeros",
            detail: format!("need l <= {MAX_ZERO_L} and 1 <= count <= {MAX_ZERO_COUNT}"),
        });
    }
    let rows = (0..count)
        .map(|n| {
            let z = j_zero(l, n)?;
            let m = mcmahon_estimate(l, n);
            Ok(ZeroRow {
                n: n + 1,
                zero: z,
                omega: z / radius,
                mcmahon: m,
                mcmahon_error: m - z,
            })
        })
        .collect::<Result<Vec<_>, Error>>()?;
    let inputs = json!({ "l": l, "count": count, "radius": radius });
    print(&OutputDocument::new(
        "zeros",
        inputs,
        json!({ "zeros": rows }),
        &[],
        timer,
    ));
    Ok(EXIT_OK)
}

fn bessel(nu: f64, y: f64, timer: &Timer) -> Result<u8, Error> {
    let order = Order::from_nu(nu)?;
    if y.is_nan() || y <= 0.0 {
        return Err(Error::Domain {
            func: "bessel",
            detail: format!("y must be positive, got {y}"),
        });
    }
    let mut warnings = Vec::new();
    let mut keep = |name: &str, r: Result<f64, Error>| -> Result<Option<f64>, Error> {
        match r {
            Ok(v) => Ok(Some(v)),
            Err(Error::Overflow { .. } | Error::Range { .. }) => {
                warnings.push(format!("{name} is not representable at nu = {nu}, y = {y}"));
                Ok(None)
            }
            Err(e) => Err(e),
        }
    };
    let results = json!({
        "i": keep("i", bessel_i(order, y))?,
        "k": keep("k", bessel_k(order, y))?,
        "i_scaled": keep("i_scaled", bessel_i_scaled(order, y))?,
        "k_scaled": keep("k_scaled", bessel_k_scaled(order, y))?,
        "log_ik_product": keep("log_ik_product", log_ik_product(order, y))?,
    });
    let inputs = json!({ "nu": nu, "y": y });
    print(&OutputDocument::new(
        "bessel", inputs, results, &warnings, timer,
    ));
    Ok(EXIT_OK)
}

fn perl(l: u32, radius: f64, tol: f64, timer: &Timer) -> Result<u8, Error> {
    let asymptotic = e_l_asymptotic(l, radius)?;
    let row = per_l_energy(l, tol)?;
    let warnings: Vec<String> = if row.tolerance_met {
        Vec::new()
    } else {
        vec![format!(
            "quadrature error estimate {:e} above tolerance",
            row.quadrature.abs_err_estimate
        )]
    };
    let results = json!({
        "l": l,
        "nu": row.nu,
        "e_l": row.e_l_times_a / radius,
        "e_l_tilde": row.e_l_tilde_times_a / radius,
        "e_l_asymptotic": asymptotic,
        "e_l_times_a": row.e_l_times_a,
        "e_l_tilde_times_a": row.e_l_tilde_times_a,
        "quad_abs_err": row.quad_abs_err,
        "tolerance_met": row.tolerance_met,
        "quadrature": row.quadrature,
    });
    let inputs = json!({ "l": l, "radius": radius, "tol": tol });
    print(&OutputDocument::new(
        "perl", inputs, results, &warnings, timer,
    ));
    Ok(if row.tolerance_met {
        EXIT_OK
    } else {
        EXIT_TOLERANCE
    })
}

fn verify(fast: bool, perturb: bool, timer: &Timer) -> Result<u8, Error> {
    let report = run_verify(VerifyOptions { fast, perturb })?;
    let warnings: Vec<String> = report
        .failures()
        .map(|c| format!("check failed: {}", c.name))
        .collect();
    for w in &warnings {
        warn!("{w}");
    }
    let inputs = json!({ "fast": fast });
    print(&OutputDocument::new(
        "verify", inputs, &report, &warnings, timer,
    ));
    Ok(if report.all_passed {
        EXIT_OK
    } else {
        EXIT_VERIFY_FAILED
    })
}
