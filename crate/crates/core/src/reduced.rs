//! Exact three-dimensional model of the walk.
//!
//! Starting from the uniform state the walk never leaves
//! `span{|ab>, |ba>, |bb>}`, where `|ab>` is the uniform superposition of the
//! marked vertex pointing at unmarked ones, `|ba>` unmarked vertices pointing
//! at the marked one, and `|bb>` unmarked pointing at unmarked. Components are
//! always stored in that order.

use nalgebra::{Matrix3, Vector3};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::walk::{neighbour, StateVector};

type C = Complex64;

fn c(re: f64) -> C {
    C::new(re, 0.0)
}

fn check_n(n: usize) -> Result<()> {
    if n < 3 {
        return Err(Error::TooFewVertices(n, 3));
    }
    Ok(())
}

/// Amplitudes on `(|ab>, |ba>, |bb>)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedState(pub Vector3<C>);

impl ReducedState {
    pub fn new(ab: C, ba: C, bb: C) -> Self {
        Self(Vector3::new(ab, ba, bb))
    }

    pub fn real(ab: f64, ba: f64, bb: f64) -> Self {
        Self::new(c(ab), c(ba), c(bb))
    }

    pub fn ab(&self) -> C {
        self.0[0]
    }

    pub fn ba(&self) -> C {
        self.0[1]
    }

    pub fn bb(&self) -> C {
        self.0[2]
    }

    pub fn norm(&self) -> f64 {
        self.0.norm()
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &ReducedState) -> C {
        self.0.dotc(&other.0)
    }

    /// Probability of the marked vertex, `|ab|^2`.
    pub fn success_probability(&self) -> f64 {
        self.ab().norm_sqr()
    }

    pub fn apply(&self, m: &Matrix3<C>) -> ReducedState {
        ReducedState(m * self.0)
    }

    fn normalized(v: Vector3<C>) -> ReducedState {
        let n = v.norm();
        ReducedState(v / c(n))
    }
}

/// The walk operator's factors restricted to the invariant subspace.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedOperators {
    /// `cos(phi) S + i sin(phi) I`.
    pub shift: Matrix3<C>,
    /// Coin times oracle.
    pub coin_oracle: Matrix3<C>,
    /// `shift * coin_oracle`.
    pub step: Matrix3<C>,
}

/// Flip-flop shift on the reduced basis: swaps `|ab>` and `|ba>`.
pub fn flip_flop() -> Matrix3<C> {
    Matrix3::new(
        c(0.0),
        c(1.0),
        c(0.0),
        c(1.0),
        c(0.0),
        c(0.0),
        c(0.0),
        c(0.0),
        c(1.0),
    )
}

/// `I_N (x) C0` with the unmodified Grover coin.
#[rustfmt::skip]
pub fn grover_coin(n: usize) -> Result<Matrix3<C>> {
    check_n(n)?;
    let nf = n as f64;
    let diag = (nf - 3.0) / (nf - 1.0);
    let off = 2.0 * (nf - 2.0).sqrt() / (nf - 1.0);
    Ok(Matrix3::new(
        c(1.0), c(0.0), c(0.0),
        c(0.0), c(-diag), c(off),
        c(0.0), c(off), c(diag),
    ))
}

/// `R_a (x) I_d` with the plain sign flip.
pub fn sign_flip_oracle() -> Matrix3<C> {
    Matrix3::from_diagonal(&Vector3::new(c(-1.0), c(1.0), c(1.0)))
}

/// `(I_N (x) C0') (R_a' (x) I_d)` for correction phase `eta`.
#[rustfmt::skip]
pub fn coin_oracle(n: usize, eta: f64) -> Result<Matrix3<C>> {
    check_n(n)?;
    let nf = n as f64;
    let e = C::from_polar(1.0, eta);
    let r = (nf - 2.0).sqrt();
    let d = nf - 1.0;
    let off = (e + 1.0) * r / d;
    Ok(Matrix3::new(
        c(-1.0), c(0.0), c(0.0),
        c(0.0), -(c(nf - 2.0) - e) / d, off,
        c(0.0), off, (e * (nf - 2.0) - 1.0) / d,
    ))
}

pub fn build_reduced_operators(n: usize, phi: f64, eta: f64) -> Result<ReducedOperators> {
    check_n(n)?;
    if !phi.is_finite() {
        return Err(Error::NonFinite("phi"));
    }
    if !eta.is_finite() {
        return Err(Error::NonFinite("eta"));
    }
    let shift = flip_flop() * c(phi.cos()) + Matrix3::identity() * C::new(0.0, phi.sin());
    let coin_oracle = coin_oracle(n, eta)?;
    Ok(ReducedOperators {
        shift,
        coin_oracle,
        step: shift * coin_oracle,
    })
}

/// Largest entry of `|M^dagger M - I|`.
pub fn unitarity_defect(m: &Matrix3<C>) -> f64 {
    (m.adjoint() * m - Matrix3::identity())
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max)
}

/// The eigenvector `(-sqrt(N-2), -sqrt(N-2), 1)/sqrt(2N-3)` left fixed (up to
/// phase) by every factor of the walk.
pub fn psi_minus_one(n: usize) -> Result<ReducedState> {
    check_n(n)?;
    let nf = n as f64;
    let r = (nf - 2.0).sqrt();
    let norm = (2.0 * nf - 3.0).sqrt();
    Ok(ReducedState::real(-r / norm, -r / norm, 1.0 / norm))
}

/// `(|s>, |w>)`: the coin/oracle's fixed direction and the target.
pub fn s_and_w_states(n: usize) -> Result<(ReducedState, ReducedState)> {
    check_n(n)?;
    let d = n as f64 - 1.0;
    let s = ReducedState::real(0.0, 1.0 / d.sqrt(), ((d - 1.0) / d).sqrt());
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let w = ReducedState::real(h, -h, 0.0);
    Ok((s, w))
}

/// Unit vector in the plane orthogonal to `|psi_-1>` that is orthogonal to
/// `v`, with a nonnegative `|bb>` component.
fn perp_in_plane(n: usize, v: &ReducedState) -> Result<ReducedState> {
    let psi = psi_minus_one(n)?;
    // cross product of two real vectors gives the third orthogonal direction
    let a = psi.0.map(|z| z.re);
    let b = v.0.map(|z| z.re);
    let mut p = a.cross(&b).map(c);
    if p[2].re < 0.0 {
        p = -p;
    }
    Ok(ReducedState::normalized(p))
}

/// `|w_perp>` inside the plane orthogonal to `|psi_-1>`.
pub fn w_perp(n: usize) -> Result<ReducedState> {
    let (_, w) = s_and_w_states(n)?;
    perp_in_plane(n, &w)
}

/// `|s_perp>` inside the plane orthogonal to `|psi_-1>`.
pub fn s_perp(n: usize) -> Result<ReducedState> {
    let (s, _) = s_and_w_states(n)?;
    perp_in_plane(n, &s)
}

/// Uniform state `(1, 1, sqrt(N-2))/sqrt(N)`.
pub fn reduced_initial_state(n: usize) -> Result<ReducedState> {
    check_n(n)?;
    let nf = n as f64;
    let k = 1.0 / nf.sqrt();
    Ok(ReducedState::real(k, k, (nf - 2.0).sqrt() * k))
}

/// Success probabilities of the reduced model after `0..=steps` steps.
pub fn reduced_evolve(n: usize, phi: f64, eta: f64, steps: usize) -> Result<Vec<f64>> {
    let ops = build_reduced_operators(n, phi, eta)?;
    let mut x = reduced_initial_state(n)?;
    let mut out = Vec::with_capacity(steps + 1);
    out.push(x.success_probability());
    for _ in 0..steps {
        x = x.apply(&ops.step);
        out.push(x.success_probability());
    }
    Ok(out)
}

/// Class of a full-space basis element.
fn class_of(v: usize, w: usize, marked: usize) -> usize {
    if v == marked {
        0
    } else if w == marked {
        1
    } else {
        2
    }
}

fn class_weights(n: usize) -> [f64; 3] {
    let d = n as f64 - 1.0;
    [1.0 / d.sqrt(), 1.0 / d.sqrt(), 1.0 / (d * (d - 1.0)).sqrt()]
}

/// Maps a reduced state into the full space.
pub fn embed(reduced: &ReducedState, n: usize, marked: usize) -> Result<StateVector> {
    check_n(n)?;
    if marked >= n {
        return Err(Error::MarkedOutOfRange { marked, n });
    }
    let weights = class_weights(n);
    let mut amps = Vec::with_capacity(n * (n - 1));
    for v in 0..n {
        for cidx in 0..n - 1 {
            let k = class_of(v, neighbour(v, cidx), marked);
            amps.push(reduced.0[k] * weights[k]);
        }
    }
    StateVector::from_amplitudes(n, amps)
}

/// Component of `full` in the invariant subspace, and the norm of what is
/// left outside it.
pub fn project(full: &StateVector, marked: usize) -> Result<(ReducedState, f64)> {
    let n = full.n_vertices();
    if marked >= n {
        return Err(Error::MarkedOutOfRange { marked, n });
    }
    let weights = class_weights(n);
    let mut sums = [C::new(0.0, 0.0); 3];
    for v in 0..n {
        for (cidx, a) in full.block(v).iter().enumerate() {
            sums[class_of(v, neighbour(v, cidx), marked)] += a;
        }
    }
    let reduced = ReducedState::new(
        sums[0] * weights[0],
        sums[1] * weights[1],
        sums[2] * weights[2],
    );
    let mut outside = 0.0;
    for v in 0..n {
        for (cidx, a) in full.block(v).iter().enumerate() {
            let k = class_of(v, neighbour(v, cidx), marked);
            outside += (a - reduced.0[k] * weights[k]).norm_sqr();
        }
    }
    Ok((reduced, outside.sqrt()))
}
