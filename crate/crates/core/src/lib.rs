//! Casimir energy of a massless scalar field with Dirichlet boundary
//! conditions on a spherical shell, by per-l mode-difference summation.
//!
//! * [`specfun`]: half-integer Bessel functions, spherical Bessel `j_l`,
//!   large-argument series, Bernoulli polynomials and Hurwitz zeta values.
//! * [`modes`]: zeros of `j_l` (the interior eigenfrequencies) and the
//!   box-mode density comparison.
//! * [`quad`]: the semi-infinite integral of `ln(2y I_nu K_nu)`.
//! * [`casimir`]: per-l energies, counterterm subtraction, total energy,
//!   force and the contour-decay check.
//! * [`report`]: the built-in verification suite.

pub mod casimir;
pub mod error;
pub mod modes;
pub mod numeric;
pub mod quad;
pub mod report;
pub mod specfun;

pub use casimir::{
    contour_decay_check, e_l, e_l_asymptotic, e_l_tilde, force, per_l_energy, total_energy,
    DecayCheck, EnergyBreakdown, PerLEnergy,
};
pub use error::{Error, Result};
pub use modes::{
    build_spectrum, j_zero, mcmahon_estimate, weyl_density_check, Mode, ModeSpectrum, WeylCheck,
};
pub use quad::{integrate_log_product, tail_estimate, QuadPlan, QuadratureResult};
pub use report::{run_verify, CheckEntry, CheckReport, Comparison, VerifyOptions};
pub use specfun::Order;
