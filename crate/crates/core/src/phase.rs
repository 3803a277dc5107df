//! Phase matching between the lazy shift and the coin/oracle pair.
//!
//! The lazy shift acts as `-e^{-2i phi}` on `|w>`, the modified coin and
//! oracle as `-e^{-i eta}` on `|s_perp>`. Amplitude amplification rotates
//! `|s>` onto `|w>` exactly when
//!
//! ```text
//! tan(-phi) = tan(eta / 2) (1 - 2 sin^2 theta),   sin theta = 1 / sqrt(2(N-1))
//! ```
//!
//! which gives `eta = -2 atan(tan(phi) (N-1)/(N-2))`.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{Error, Result};

fn check_n(n: usize) -> Result<()> {
    if n < 3 {
        return Err(Error::TooFewVertices(n, 3));
    }
    Ok(())
}

fn check_phi(phi: f64) -> Result<()> {
    if !phi.is_finite() {
        return Err(Error::NonFinite("phi"));
    }
    if !(0.0..=FRAC_PI_2).contains(&phi) {
        return Err(Error::PhaseOutOfRange(phi));
    }
    Ok(())
}

/// Overlap angle between `|s>` and `|w>`.
pub fn overlap_angle(n: usize) -> Result<f64> {
    check_n(n)?;
    Ok((1.0 / (2.0 * (n as f64 - 1.0)).sqrt()).asin())
}

/// Correction phase for the coin and oracle. `phi = pi/2` is the blocked
/// regime and has no correction.
pub fn corrected_eta(phi: f64, n: usize) -> Result<f64> {
    check_n(n)?;
    check_phi(phi)?;
    if phi >= FRAC_PI_2 {
        return Err(Error::Blocked);
    }
    let n = n as f64;
    // atan2 keeps this finite where tan(phi) would overflow
    Ok(-2.0 * (phi.sin() * (n - 1.0)).atan2(phi.cos() * (n - 2.0)))
}

/// `tan(-phi) - tan(eta/2) (1 - 2 sin^2 theta)`; zero when the phases match.
pub fn matching_residual(phi: f64, eta: f64, theta: f64) -> Result<f64> {
    if !(phi.is_finite() && eta.is_finite() && theta.is_finite()) {
        return Err(Error::NonFinite("phase-matching argument"));
    }
    if phi.cos().abs() < 1e-15 {
        return Err(Error::TangentSingularity("tan(-phi)"));
    }
    if (eta / 2.0).cos().abs() < 1e-15 {
        return Err(Error::TangentSingularity("tan(eta/2)"));
    }
    let s = theta.sin();
    Ok((-phi).tan() - (eta / 2.0).tan() * (1.0 - 2.0 * s * s))
}

/// Rotation per step of the corrected walk, `asin(sqrt((1 + cos 2phi)/N))`.
pub fn rotation_angle_sigma(phi: f64, n: usize) -> Result<f64> {
    check_n(n)?;
    check_phi(phi)?;
    let arg = ((1.0 + (2.0 * phi).cos()).max(0.0) / n as f64).sqrt();
    assert!(arg <= 1.0, "sin(sigma) = {arg} exceeds 1");
    Ok(arg.asin())
}

/// Predicted runtime of the corrected walk.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Runtime {
    Steps {
        /// `pi / (2 sigma)` rounded half up.
        steps: u64,
        /// `pi / (2 sigma)`.
        exact: f64,
        /// Large-N form `pi sqrt(N) / (2 sqrt(1 + cos 2phi))`.
        asymptotic: f64,
    },
    /// `phi = pi/2`: the walker never hops and the state never rotates.
    Blocked,
}

impl Runtime {
    pub fn steps(&self) -> Option<u64> {
        match self {
            Runtime::Steps { steps, .. } => Some(*steps),
            Runtime::Blocked => None,
        }
    }

    pub fn exact(&self) -> Option<f64> {
        match self {
            Runtime::Steps { exact, .. } => Some(*exact),
            Runtime::Blocked => None,
        }
    }
}

pub fn runtime_t_star(phi: f64, n: usize) -> Result<Runtime> {
    let sigma = rotation_angle_sigma(phi, n)?;
    if sigma <= 0.0 {
        return Ok(Runtime::Blocked);
    }
    let exact = PI / (2.0 * sigma);
    let asymptotic = PI * (n as f64).sqrt() / (2.0 * (1.0 + (2.0 * phi).cos()).sqrt());
    Ok(Runtime::Steps {
        steps: (exact + 0.5).floor() as u64,
        exact,
        asymptotic,
    })
}

/// Runtime `pi sqrt(N) / (2 sqrt(2) delta)` for `phi = pi/2 - delta`, the
/// small-`delta` form of [`runtime_t_star`].
pub fn blocking_regime_runtime(delta: f64, n: usize) -> Result<f64> {
    check_n(n)?;
    if !delta.is_finite() {
        return Err(Error::NonFinite("delta"));
    }
    if delta == 0.0 {
        return Err(Error::Blocked);
    }
    if !(0.0..=FRAC_PI_2).contains(&delta) {
        return Err(Error::PhaseOutOfRange(delta));
    }
    Ok(PI * (n as f64).sqrt() / (2.0 * 2f64.sqrt() * delta))
}

/// Everything derived from `(N, phi)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhasePlan {
    pub n_vertices: usize,
    pub phi: f64,
    pub theta: f64,
    /// `None` in the blocked regime.
    pub eta: Option<f64>,
    pub sigma: f64,
    pub t_star: Runtime,
    pub delta: f64,
}

impl PhasePlan {
    pub fn new(n_vertices: usize, phi: f64) -> Result<Self> {
        let theta = overlap_angle(n_vertices)?;
        let eta = match corrected_eta(phi, n_vertices) {
            Ok(eta) => Some(eta),
            Err(Error::Blocked) => None,
            Err(e) => return Err(e),
        };
        Ok(Self {
            n_vertices,
            phi,
            theta,
            eta,
            sigma: rotation_angle_sigma(phi, n_vertices)?,
            t_star: runtime_t_star(phi, n_vertices)?,
            delta: FRAC_PI_2 - phi,
        })
    }

    /// Plan for a barrier of magnitude `|beta|`, i.e. `phi = asin(|beta|)`.
    pub fn from_beta(n_vertices: usize, beta: f64) -> Result<Self> {
        Self::new(n_vertices, phi_from_beta(beta)?)
    }

    pub fn matching_residual(&self) -> Option<f64> {
        self.eta
            .and_then(|eta| matching_residual(self.phi, eta, self.theta).ok())
    }
}

/// `phi = asin(|beta|)` for a staying amplitude `beta = i |beta|`.
pub fn phi_from_beta(beta: f64) -> Result<f64> {
    if !beta.is_finite() {
        return Err(Error::NonFinite("beta"));
    }
    if !(0.0..=1.0).contains(&beta) {
        return Err(Error::BarrierOutOfRange(beta));
    }
    Ok(if beta == 1.0 { FRAC_PI_2 } else { beta.asin() })
}
