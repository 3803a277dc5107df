//! Continuous-time walk search on the complete graph.
//!
//! Barriers scale every hop amplitude by `1 - epsilon`:
//!
//! ```text
//! H = -gamma (1 - epsilon) A - |a><a|
//! ```
//!
//! with `A` the adjacency matrix of the simple complete graph. From the uniform
//! start the dynamics stays in `span{|a>, |r>}`, `|r>` being the uniform
//! superposition of the unmarked vertices, so the propagator is a 2x2 matrix
//! exponential evaluated in closed form.

use std::f64::consts::PI;

use nalgebra::Matrix2;
use num_complex::Complex64;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CtqwParams {
    n_vertices: usize,
    epsilon: f64,
    gamma: f64,
    marked: usize,
}

impl CtqwParams {
    pub fn new(n_vertices: usize, epsilon: f64, gamma: f64, marked: usize) -> Result<Self> {
        if n_vertices < 2 {
            return Err(Error::TooFewVertices(n_vertices, 2));
        }
        check_epsilon(epsilon)?;
        if !(gamma.is_finite() && gamma > 0.0) {
            return Err(Error::InvalidRate(gamma));
        }
        if marked >= n_vertices {
            return Err(Error::MarkedOutOfRange {
                marked,
                n: n_vertices,
            });
        }
        Ok(Self {
            n_vertices,
            epsilon,
            gamma,
            marked,
        })
    }

    /// Barrier `epsilon` with the jumping rate that cancels it.
    pub fn corrected(n_vertices: usize, epsilon: f64) -> Result<Self> {
        Self::new(
            n_vertices,
            epsilon,
            corrected_gamma(n_vertices, epsilon)?,
            0,
        )
    }

    /// Barrier `epsilon` with the barrier-free rate `1/N`.
    pub fn uncorrected(n_vertices: usize, epsilon: f64) -> Result<Self> {
        Self::new(n_vertices, epsilon, 1.0 / n_vertices.max(1) as f64, 0)
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn marked(&self) -> usize {
        self.marked
    }

    /// Effective hop coefficient `gamma (1 - epsilon)`.
    pub fn effective_rate(&self) -> f64 {
        self.gamma * (1.0 - self.epsilon)
    }

    /// Hamiltonian on `(|a>, |r>)`.
    pub fn reduced_hamiltonian(&self) -> Matrix2<f64> {
        let k = self.effective_rate();
        let n = self.n_vertices as f64;
        let hop = -k * (n - 1.0).sqrt();
        Matrix2::new(-1.0, hop, hop, -k * (n - 2.0))
    }
}

fn check_epsilon(epsilon: f64) -> Result<()> {
    if !(epsilon.is_finite() && (0.0..1.0).contains(&epsilon)) {
        return Err(Error::EpsilonOutOfRange(epsilon));
    }
    Ok(())
}

/// `1 / (N (1 - epsilon))`.
pub fn corrected_gamma(n_vertices: usize, epsilon: f64) -> Result<f64> {
    if n_vertices < 2 {
        return Err(Error::TooFewVertices(n_vertices, 2));
    }
    check_epsilon(epsilon)?;
    Ok(1.0 / (n_vertices as f64 * (1.0 - epsilon)))
}

/// `pi sqrt(N) / 2`.
pub fn ctqw_runtime(n_vertices: usize) -> Result<f64> {
    if n_vertices < 2 {
        return Err(Error::TooFewVertices(n_vertices, 2));
    }
    Ok(PI * (n_vertices as f64).sqrt() / 2.0)
}

/// `exp(-i H t)` on `(|a>, |r>)`.
pub fn propagator(params: &CtqwParams, t: f64) -> Matrix2<Complex64> {
    let h = params.reduced_hamiltonian();
    let mean = 0.5 * (h[(0, 0)] + h[(1, 1)]);
    let half_gap = 0.5 * (h[(0, 0)] - h[(1, 1)]);
    let omega = half_gap.hypot(h[(0, 1)]);
    // exp(-iHt) = e^{-i m t} (cos(wt) I - i sin(wt)/w (H - m I))
    let sinc = if omega == 0.0 {
        t
    } else {
        (omega * t).sin() / omega
    };
    let traceless = (h - Matrix2::identity() * mean).map(|x| Complex64::new(0.0, -x * sinc));
    let core = Matrix2::identity() * Complex64::new((omega * t).cos(), 0.0) + traceless;
    core * Complex64::from_polar(1.0, -mean * t)
}

/// `|<a| exp(-iHt) |uniform>|^2`.
pub fn ctqw_success_probability(params: &CtqwParams, t: f64) -> Result<f64> {
    if !(t.is_finite() && t >= 0.0) {
        return Err(Error::NonFinite("t"));
    }
    let u = propagator(params, t);
    let n = params.n_vertices as f64;
    let start = (1.0 / n.sqrt(), ((n - 1.0) / n).sqrt());
    let amp = u[(0, 0)] * start.0 + u[(0, 1)] * start.1;
    Ok(amp.norm_sqr())
}

/// Probabilities on the grid `t_k = t_max k / samples`, `k = 0..=samples`.
pub fn ctqw_curve(params: &CtqwParams, t_max: f64, samples: usize) -> Result<Vec<(f64, f64)>> {
    if !(t_max.is_finite() && t_max >= 0.0) {
        return Err(Error::NonFinite("t_max"));
    }
    (0..=samples)
        .map(|k| {
            let t = if samples == 0 {
                0.0
            } else {
                t_max * k as f64 / samples as f64
            };
            ctqw_success_probability(params, t).map(|p| (t, p))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn gamma_formula() {
        assert_eq!(corrected_gamma(1024, 0.0).unwrap(), 1.0 / 1024.0);
        assert_eq!(corrected_gamma(1024, 0.5).unwrap(), 1.0 / 512.0);
        assert!(corrected_gamma(1024, 0.999_999).unwrap() > 900.0);
        assert_eq!(
            corrected_gamma(1024, 1.0),
            Err(Error::EpsilonOutOfRange(1.0))
        );
        assert!(corrected_gamma(1024, -0.1).is_err());
        for eps in [0.0, 0.25, 0.9] {
            let g = corrected_gamma(1000, eps).unwrap();
            assert!((g * 1000.0 * (1.0 - eps) - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn params_validation() {
        assert!(CtqwParams::new(1, 0.0, 1.0, 0).is_err());
        assert!(CtqwParams::new(4, 0.0, 0.0, 0).is_err());
        assert!(CtqwParams::new(4, 0.0, f64::INFINITY, 0).is_err());
        assert!(CtqwParams::new(4, 0.0, 0.25, 4).is_err());
        assert!(CtqwParams::new(2, 0.0, 0.5, 1).is_ok());
    }

    #[test]
    fn runtime_values() {
        assert_abs_diff_eq!(ctqw_runtime(4).unwrap(), PI, epsilon = 1e-15);
        assert_abs_diff_eq!(ctqw_runtime(1024).unwrap(), 16.0 * PI, epsilon = 1e-12);
    }

    #[test]
    fn starts_uniform() {
        let p = CtqwParams::corrected(37, 0.3).unwrap();
        assert_abs_diff_eq!(
            ctqw_success_probability(&p, 0.0).unwrap(),
            1.0 / 37.0,
            epsilon = 1e-15
        );
        assert!(ctqw_success_probability(&p, -1.0).is_err());
    }

    #[test]
    fn propagator_is_unitary() {
        let p = CtqwParams::new(50, 0.4, 0.03, 0).unwrap();
        for t in [0.0, 0.7, 13.0, 250.0] {
            let u = propagator(&p, t);
            let defect = (u.adjoint() * u - Matrix2::identity())
                .iter()
                .map(|z| z.norm())
                .fold(0.0, f64::max);
            assert!(defect < 1e-12);
        }
    }

    // Frozen from scipy.linalg.expm on the full N x N Hamiltonian.
    #[test]
    fn matches_full_space_exponential() {
        let cases = [
            (5, 0.0, 0.2, 1.3, 0.441_275_238_066_092_1),
            (16, 0.25, 1.0 / 16.0, 2.0, 0.224_112_470_593_232_3),
            (64, 0.5, 1.0 / 64.0, 7.5, 0.106_981_719_084_278_09),
            (200, 0.9, 1.0 / 200.0, 11.0, 0.007_308_027_857_360_555),
            (16, 0.25, 1.0 / 12.0, 2.0, 0.277_983_294_124_309_44),
            (64, 0.5, 1.0 / 32.0, 7.5, 0.655_239_147_577_679_3),
            (200, 0.9, 1.0 / 20.0, 11.0, 0.494_957_488_400_013_9),
        ];
        for (n, eps, gamma, t, expected) in cases {
            let p = CtqwParams::new(n, eps, gamma, 0).unwrap();
            assert_abs_diff_eq!(
                ctqw_success_probability(&p, t).unwrap(),
                expected,
                epsilon = 1e-12
            );
        }
    }

    #[test]
    fn barrier_free_search_succeeds() {
        let p = CtqwParams::new(1024, 0.0, 1.0 / 1024.0, 0).unwrap();
        let prob = ctqw_success_probability(&p, ctqw_runtime(1024).unwrap()).unwrap();
        assert!(prob >= 0.99);
    }

    #[test]
    fn miscalibrated_rate_loses_peak() {
        let t_max = 2.0 * ctqw_runtime(1024).unwrap();
        let best = |p: &CtqwParams| {
            ctqw_curve(p, t_max, 4000)
                .unwrap()
                .into_iter()
                .map(|(_, q)| q)
                .fold(0.0, f64::max)
        };
        let corrected = best(&CtqwParams::corrected(1024, 0.5).unwrap());
        let uncorrected = best(&CtqwParams::uncorrected(1024, 0.5).unwrap());
        assert!(uncorrected < corrected);
        assert!(uncorrected < 0.01);
    }

    #[test]
    fn curve_grid() {
        let p = CtqwParams::corrected(8, 0.0).unwrap();
        let c = ctqw_curve(&p, 2.0, 4).unwrap();
        assert_eq!(c.len(), 5);
        assert_eq!(c[2].0, 1.0);
        let single = ctqw_curve(&p, 2.0, 0).unwrap();
        assert_eq!(single.len(), 1);
        assert_abs_diff_eq!(single[0].1, 1.0 / 8.0, epsilon = 1e-15);
    }
}
