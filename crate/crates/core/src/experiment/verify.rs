//! Numerical self-checks across the walk, reduced model and phase formulas.

use std::f64::consts::FRAC_PI_2;
use std::fmt;

use num_complex::Complex64;

use crate::error::Result;
use crate::phase;
use crate::reduced::{self, ReducedState};
use crate::walk::{self, StateVector, WalkParams};

pub const UNITARITY_TOL: f64 = 1e-12;
pub const EIGENVECTOR_TOL: f64 = 1e-12;
pub const MATCHING_TOL: f64 = 1e-12;
pub const SIGMA_TOL: f64 = 1e-12;
pub const SYMMETRY_TOL: f64 = 1e-10;
pub const EQUIVALENCE_TOL: f64 = 1e-10;
pub const NORM_STEP_TOL: f64 = 1e-12;
pub const NORM_DRIFT_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyOptions {
    pub n_values: Vec<usize>,
    pub phi_values: Vec<f64>,
    /// Trajectory length for the symmetry and full/reduced checks.
    pub steps: usize,
    /// Trajectory length for the accumulated norm drift check.
    pub norm_steps: usize,
    /// Debug: feed `eta = 0` to the phase-matching check.
    pub force_uncorrected_eta: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            n_values: vec![4, 16, 64],
            phi_values: vec![0.0, 0.3, 0.8f64.asin()],
            steps: 200,
            norm_steps: 1000,
            force_uncorrected_eta: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub max_deviation: f64,
    pub tolerance: f64,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.max_deviation < self.tolerance
    }
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {:<22} max_deviation={:.3e} tolerance={:.0e}",
            if self.passed() { "PASS" } else { "FAIL" },
            self.name,
            self.max_deviation,
            self.tolerance
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub checks: Vec<CheckOutcome>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckOutcome::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckOutcome> {
        self.checks.iter().filter(|c| !c.passed())
    }
}

#[derive(Default)]
struct Tracker(f64);

impl Tracker {
    fn see(&mut self, x: f64) {
        // NaN must fail the check
        if x.is_nan() {
            self.0 = f64::INFINITY;
        } else {
            self.0 = self.0.max(x);
        }
    }
}

fn max_diff(a: &ReducedState, b: &ReducedState) -> f64 {
    (a.0 - b.0).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Correction phases checked for each `(N, phi)`: uncorrected and, unless
/// blocked, the matched phase.
fn etas(n: usize, phi: f64) -> Result<Vec<f64>> {
    let mut out = vec![0.0];
    if phi < FRAC_PI_2 {
        out.push(phase::corrected_eta(phi, n)?);
    }
    Ok(out)
}

pub fn run_verify(opts: &VerifyOptions) -> Result<VerifyReport> {
    let mut unitarity = Tracker::default();
    let mut eigen = Tracker::default();
    let mut matching = Tracker::default();
    let mut sigma = Tracker::default();
    let mut symmetry = Tracker::default();
    let mut equivalence = Tracker::default();
    let mut residual = Tracker::default();
    let mut norm_step = Tracker::default();
    let mut norm_drift = Tracker::default();

    for &n in &opts.n_values {
        let theta = phase::overlap_angle(n)?;
        let psi = reduced::psi_minus_one(n)?;
        let (_, w) = reduced::s_and_w_states(n)?;
        let start = reduced::reduced_initial_state(n)?;
        for &phi in &opts.phi_values {
            for eta in etas(n, phi)? {
                let ops = reduced::build_reduced_operators(n, phi, eta)?;
                for m in [&ops.shift, &ops.coin_oracle, &ops.step] {
                    unitarity.see(reduced::unitarity_defect(m));
                }
                eigen.see(max_diff(
                    &psi.apply(&ops.coin_oracle),
                    &ReducedState(-psi.0),
                ));
                let hop_phase = Complex64::from_polar(1.0, phi);
                eigen.see(max_diff(
                    &psi.apply(&ops.shift),
                    &ReducedState(psi.0 * hop_phase),
                ));

                let params = WalkParams::new(n, phi, eta, 0)?;
                let full = walk::evolve(&params, opts.steps);
                let reduced = reduced::reduced_evolve(n, phi, eta, opts.steps)?;
                for (a, b) in full.iter().zip(&reduced) {
                    equivalence.see((a - b).abs());
                }
                trajectory_checks(
                    &params,
                    opts.steps,
                    &mut symmetry,
                    &mut residual,
                    &mut norm_step,
                )?;

                let mut state = walk::initial_state(&params);
                for _ in 0..opts.norm_steps {
                    state.step_in_place(&params)?;
                }
                norm_drift.see((state.norm() - 1.0).abs());
            }

            if phi < FRAC_PI_2 {
                let eta = if opts.force_uncorrected_eta {
                    0.0
                } else {
                    phase::corrected_eta(phi, n)?
                };
                matching.see(phase::matching_residual(phi, eta, theta)?.abs());

                // |<w|U'|psi_0>| with eta = -2 phi against sin(sigma)
                let ops = reduced::build_reduced_operators(n, phi, -2.0 * phi)?;
                let overlap = w.inner(&start.apply(&ops.step)).norm();
                sigma.see((overlap - phase::rotation_angle_sigma(phi, n)?.sin()).abs());
            }
        }
    }

    let check = |name, t: Tracker, tolerance| CheckOutcome {
        name,
        max_deviation: t.0,
        tolerance,
    };
    Ok(VerifyReport {
        checks: vec![
            check("unitarity", unitarity, UNITARITY_TOL),
            check("psi-minus-one", eigen, EIGENVECTOR_TOL),
            check("phase-matching", matching, MATCHING_TOL),
            check("sigma-cross-check", sigma, SIGMA_TOL),
            check("symmetry-classes", symmetry, SYMMETRY_TOL),
            check("subspace-residual", residual, EQUIVALENCE_TOL),
            check("full-reduced", equivalence, EQUIVALENCE_TOL),
            check("norm-per-step", norm_step, NORM_STEP_TOL),
            check("norm-drift", norm_drift, NORM_DRIFT_TOL),
        ],
    })
}

fn trajectory_checks(
    params: &WalkParams,
    steps: usize,
    symmetry: &mut Tracker,
    residual: &mut Tracker,
    norm_step: &mut Tracker,
) -> Result<()> {
    let marked = params.marked();
    let mut state: StateVector = walk::initial_state(params);
    for _ in 0..steps {
        let before = state.norm();
        state.step_in_place(params)?;
        norm_step.see((state.norm() - before).abs());
        symmetry.see(state.symmetry_spread(marked)?);
        residual.see(reduced::project(&state, marked)?.1);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick() -> VerifyOptions {
        VerifyOptions {
            n_values: vec![3, 5],
            steps: 30,
            norm_steps: 60,
            ..Default::default()
        }
    }

    #[test]
    fn small_suite_passes() {
        let report = run_verify(&quick()).unwrap();
        assert!(report.passed(), "{:#?}", report.checks);
    }

    #[test]
    fn uncorrected_eta_trips_matching() {
        let report = run_verify(&VerifyOptions {
            force_uncorrected_eta: true,
            ..quick()
        })
        .unwrap();
        let failed: Vec<_> = report.failures().map(|c| c.name).collect();
        assert_eq!(failed, vec!["phase-matching"]);
    }

    #[test]
    fn blocked_phase_is_skipped_for_matching() {
        let opts = VerifyOptions {
            phi_values: vec![FRAC_PI_2],
            ..quick()
        };
        assert!(run_verify(&opts).unwrap().passed());
    }
}
