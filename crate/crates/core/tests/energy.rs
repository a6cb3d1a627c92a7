use std::f64::consts::PI;

use casimir_core::quad::{integrate_with_plan, QuadPlan};
use casimir_core::specfun::Order;
use casimir_core::{integrate_log_product, total_energy, Error};

/// `2y I_{3/2}(y) K_{3/2}(y) = 1 - 1/y^2 + e^{-2y}(1 + 1/y)^2
///                          = (y + 1) g(y) / y^2`, `g = y(1 + e^{-2y}) - (1 - e^{-2y})`.
/// Below `y = 1`, `g` comes from its Taylor series
/// `sum_k (-2)^k (k - 1) y^{k+1} / (k + 1)!` to avoid cancellation.
fn log_product_three_halves(y: f64) -> f64 {
    let g = if y < 1.0 {
        let mut sum = 0.0;
        let mut pow = y; // (-2)^k y^{k+1} / (k+1)!
        for k in 1..60 {
            pow *= -2.0 * y / (k as f64 + 1.0);
            sum += (k as f64 - 1.0) * pow;
        }
        sum
    } else {
        let e = (-2.0 * y).exp();
        y * (1.0 + e) - (1.0 - e)
    };
    ((y + 1.0) * g / (y * y)).ln()
}

/// Romberg on [lo, hi] with `levels` halvings.
fn romberg(f: impl Fn(f64) -> f64, lo: f64, hi: f64, levels: usize) -> f64 {
    let mut prev = vec![0.5 * (hi - lo) * (f(lo) + f(hi))];
    for k in 1..levels {
        let n = 1usize << k;
        let h = (hi - lo) / n as f64;
        let mids: f64 = (1..n).step_by(2).map(|i| f(lo + i as f64 * h)).sum();
        let mut row = vec![0.5 * prev[0] + h * mids];
        for j in 1..=k {
            let p = 4f64.powi(j as i32);
            row.push((p * row[j - 1] - prev[j - 1]) / (p - 1.0));
        }
        prev = row;
    }
    *prev.last().unwrap()
}

#[test]
fn three_halves_against_romberg() {
    // [0, 1] via y = e^{-u}, which removes the logarithmic endpoint; [1, inf)
    // via y = 1 + t / (1 - t).
    let head = romberg(
        |u| (-u).exp() * log_product_three_halves((-u).exp()),
        0.0,
        48.0,
        18,
    );
    let body = romberg(
        |t| {
            if t >= 1.0 {
                // ln(1 - 1/y^2 + ...) y^2 -> -1
                -1.0
            } else {
                let y = 1.0 / (1.0 - t);
                log_product_three_halves(y) / (1.0 - t).powi(2)
            }
        },
        0.0,
        1.0,
        20,
    );
    let want = head + body;
    let got = integrate_log_product(Order::new(1).unwrap(), 1e-12).unwrap();
    assert!((got.value - want).abs() < 1e-8, "{} vs {want}", got.value);
    assert!((got.value + 2.371_723_144_228_059_6).abs() < 1e-10);
}

#[test]
fn reference_integrals() {
    let table = [
        (0u32, -PI * PI / 12.0),
        (2, -3.936_608_567_884_118_7),
        (5, -8.643_822_443_503_302),
        (10, -16.495_696_040_341_221),
        (20, -32.202_521_563_560_59),
        (40, -63.617_857_201_797_26),
    ];
    for (l, want) in table {
        let q = integrate_log_product(Order::new(l).unwrap(), 1e-12).unwrap();
        assert!(
            (q.value - want).abs() < 1e-10,
            "l={l}: {} vs {want}",
            q.value
        );
        assert!(q.abs_err_estimate < 1e-9);
    }
}

#[test]
fn doubling_tail_point_is_within_error_estimate() {
    for l in [0u32, 1, 3, 10, 25, 60] {
        let order = Order::new(l).unwrap();
        let plan = QuadPlan::for_order(order);
        let base = integrate_with_plan(order, 1e-12, plan).unwrap();
        let doubled =
            integrate_with_plan(order, 1e-12, plan.with_tail_at(2.0 * plan.y_tail)).unwrap();
        assert!(
            (doubled.value - base.value).abs() < 3.0 * base.abs_err_estimate,
            "l={l}: {} vs {}",
            (doubled.value - base.value).abs(),
            base.abs_err_estimate
        );
    }
}

#[test]
fn headline_energy_and_scaling() {
    let reference = total_energy(1.0, 40, 1e-12).unwrap();
    let c = reference.total_energy_times_a;
    assert!((0.002799..=0.002839).contains(&c), "{c}");
    // Independent high-precision value of the same truncated sum plus tail.
    assert!((c - 0.002_816_770_5).abs() < 1e-9, "{c}");
    assert!(reference.warnings.is_empty());
    assert_eq!(reference.zeta_counterterms, (0.0, 0.0));
    for a in [0.5, 2.0, 10.0] {
        let b = total_energy(a, 40, 1e-12).unwrap();
        assert!(((b.total_energy * a - c) / c).abs() <= 1e-12);
        assert_eq!(b.force, b.total_energy / a);
        b.check_assembly().unwrap();
    }
}

#[test]
fn truncation_order_is_converged() {
    let lo = total_energy(1.0, 30, 1e-12).unwrap().total_energy_times_a;
    let hi = total_energy(1.0, 50, 1e-12).unwrap().total_energy_times_a;
    assert!((lo - hi).abs() < 1e-6, "{lo} vs {hi}");
}

#[test]
fn rejects_bad_arguments() {
    assert!(matches!(
        total_energy(-1.0, 40, 1e-12),
        Err(Error::Domain { .. }) | Err(Error::Precondition { .. })
    ));
    assert!(matches!(
        total_energy(1.0, 70, 1e-12),
        Err(Error::Precondition { .. })
    ));
}
