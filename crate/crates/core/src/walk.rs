//! Statevector engine for the coined walk on the complete graph.
//!
//! The Hilbert space is spanned by `(v, c)` where `v` is a vertex and `c`
//! indexes the `N - 1` neighbours of `v` in ascending vertex order. The
//! neighbour `w` of `v` sits at coin index `w` when `w < v` and `w - 1`
//! otherwise, so the flip-flop partner of `(v, ->w)` is `(w, ->v)` and both
//! can be located in O(1).
//!
//! One step applies, in order, the oracle, the coin and the lazy shift:
//!
//! ```text
//! U = (cos(phi) S + i sin(phi) I) (I_N (x) C(eta)) (R(eta) (x) I_d)
//! ```
//!
//! with `C(eta) = (1 + e^{i eta}) |s_c><s_c| - I` and `R(eta)|a> = -e^{-i eta}|a>`.
//! `eta = 0` gives the plain Grover coin and sign-flip oracle. Every operator is
//! applied structurally; no matrix of size `N(N-1)` squared is ever built.

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::phase;

/// Parameters of one walk: graph size, barrier phase, correction phase and
/// marked vertex.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WalkParams {
    n_vertices: usize,
    phi: f64,
    eta: f64,
    marked: usize,
}

impl WalkParams {
    /// Smallest graph for which the corrected phase is defined.
    pub const MIN_VERTICES: usize = 3;

    pub fn new(n_vertices: usize, phi: f64, eta: f64, marked: usize) -> Result<Self> {
        if n_vertices < Self::MIN_VERTICES {
            return Err(Error::TooFewVertices(n_vertices, Self::MIN_VERTICES));
        }
        if !phi.is_finite() {
            return Err(Error::NonFinite("phi"));
        }
        if !(0.0..=FRAC_PI_2).contains(&phi) {
            return Err(Error::PhaseOutOfRange(phi));
        }
        if !eta.is_finite() {
            return Err(Error::NonFinite("eta"));
        }
        if marked >= n_vertices {
            return Err(Error::MarkedOutOfRange {
                marked,
                n: n_vertices,
            });
        }
        Ok(Self {
            n_vertices,
            phi,
            eta,
            marked,
        })
    }

    /// Original operators (`eta = 0`) with the given barrier, marked vertex 0.
    pub fn uncorrected(n_vertices: usize, phi: f64) -> Result<Self> {
        Self::new(n_vertices, phi, 0.0, 0)
    }

    /// Coin and oracle phases matched to the barrier, marked vertex 0.
    pub fn corrected(n_vertices: usize, phi: f64) -> Result<Self> {
        if n_vertices < Self::MIN_VERTICES {
            return Err(Error::TooFewVertices(n_vertices, Self::MIN_VERTICES));
        }
        let eta = phase::corrected_eta(phi, n_vertices)?;
        Self::new(n_vertices, phi, eta, 0)
    }

    /// Builds parameters from hop/stay amplitudes. Only the family
    /// `alpha = cos(phi)`, `beta = i sin(phi)` with `phi` in `[0, pi/2]` is
    /// accepted.
    pub fn from_amplitudes(
        n_vertices: usize,
        alpha: Complex64,
        beta: Complex64,
        eta: f64,
        marked: usize,
    ) -> Result<Self> {
        const TOL: f64 = 1e-12;
        let unsupported = || Error::UnsupportedAmplitudes {
            alpha: alpha.to_string(),
            beta: beta.to_string(),
        };
        if alpha.im.abs() > TOL
            || beta.re.abs() > TOL
            || alpha.re < -TOL
            || beta.im < -TOL
            || (alpha.norm_sqr() + beta.norm_sqr() - 1.0).abs() > TOL
        {
            return Err(unsupported());
        }
        let phi = beta.im.clamp(0.0, 1.0).atan2(alpha.re.clamp(0.0, 1.0));
        Self::new(n_vertices, phi, eta, marked)
    }

    pub fn with_marked(self, marked: usize) -> Result<Self> {
        Self::new(self.n_vertices, self.phi, self.eta, marked)
    }

    pub fn with_eta(self, eta: f64) -> Result<Self> {
        Self::new(self.n_vertices, self.phi, eta, self.marked)
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    pub fn marked(&self) -> usize {
        self.marked
    }

    /// Hopping amplitude `cos(phi)`.
    pub fn alpha(&self) -> Complex64 {
        Complex64::new(self.phi.cos(), 0.0)
    }

    /// Staying amplitude `i sin(phi)`.
    pub fn beta(&self) -> Complex64 {
        Complex64::new(0.0, self.phi.sin())
    }

    /// Dimension of the full space, `N(N-1)`.
    pub fn dimension(&self) -> usize {
        self.n_vertices * (self.n_vertices - 1)
    }
}

/// Position of `(v, ->w)` in the amplitude array.
#[inline]
pub fn coin_index(n: usize, v: usize, w: usize) -> usize {
    debug_assert!(v != w && v < n && w < n);
    v * (n - 1) + if w < v { w } else { w - 1 }
}

/// Vertex that coin slot `c` of vertex `v` points to.
#[inline]
pub fn neighbour(v: usize, c: usize) -> usize {
    if c < v {
        c
    } else {
        c + 1
    }
}

/// Amplitudes over the `(vertex, coin direction)` basis.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n_vertices: usize,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    /// Equal superposition `|s_v> (x) |s_c>`.
    pub fn uniform(n_vertices: usize) -> Result<Self> {
        if n_vertices < WalkParams::MIN_VERTICES {
            return Err(Error::TooFewVertices(n_vertices, WalkParams::MIN_VERTICES));
        }
        let dim = n_vertices * (n_vertices - 1);
        let amp = Complex64::new(1.0 / (dim as f64).sqrt(), 0.0);
        Ok(Self {
            n_vertices,
            amplitudes: vec![amp; dim],
        })
    }

    pub fn from_amplitudes(n_vertices: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        if n_vertices < WalkParams::MIN_VERTICES {
            return Err(Error::TooFewVertices(n_vertices, WalkParams::MIN_VERTICES));
        }
        let expected = n_vertices * (n_vertices - 1);
        if amplitudes.len() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                got: amplitudes.len(),
            });
        }
        Ok(Self {
            n_vertices,
            amplitudes,
        })
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn dimension(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitude(&self, v: usize, w: usize) -> Complex64 {
        self.amplitudes[coin_index(self.n_vertices, v, w)]
    }

    /// Coin register of vertex `v`.
    pub fn block(&self, v: usize) -> &[Complex64] {
        let d = self.n_vertices - 1;
        &self.amplitudes[v * d..(v + 1) * d]
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes
            .iter()
            .map(|a| a.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// `(cos(phi) S + i sin(phi) I)` in place.
    pub fn lazy_shift_in_place(&mut self, phi: f64) {
        let n = self.n_vertices;
        let hop = phi.cos();
        let stay = Complex64::new(0.0, phi.sin());
        // pairs (v, w), v < w, visited in square tiles so the transposed
        // partner (w, v) stays in cache
        const TILE: usize = 64;
        for v0 in (0..n).step_by(TILE) {
            let v1 = (v0 + TILE).min(n);
            for w0 in (v0..n).step_by(TILE) {
                let w1 = (w0 + TILE).min(n);
                for v in v0..v1 {
                    for w in w0.max(v + 1)..w1 {
                        let i = coin_index(n, v, w);
                        let j = coin_index(n, w, v);
                        let (a, b) = (self.amplitudes[i], self.amplitudes[j]);
                        self.amplitudes[i] = b * hop + stay * a;
                        self.amplitudes[j] = a * hop + stay * b;
                    }
                }
            }
        }
    }

    /// `(1 + e^{i eta}) |s_c><s_c| - I` on every vertex's coin register.
    pub fn coin_in_place(&mut self, eta: f64) {
        let d = self.n_vertices - 1;
        let scale = Complex64::new(1.0 + eta.cos(), eta.sin()) / d as f64;
        for block in self.amplitudes.chunks_exact_mut(d) {
            let reflected = block.iter().sum::<Complex64>() * scale;
            for a in block.iter_mut() {
                *a = reflected - *a;
            }
        }
    }

    /// Multiplies the marked vertex's register by `-e^{-i eta}`.
    pub fn oracle_in_place(&mut self, marked: usize, eta: f64) -> Result<()> {
        if marked >= self.n_vertices {
            return Err(Error::MarkedOutOfRange {
                marked,
                n: self.n_vertices,
            });
        }
        let d = self.n_vertices - 1;
        let factor = -Complex64::from_polar(1.0, -eta);
        for a in &mut self.amplitudes[marked * d..(marked + 1) * d] {
            *a *= factor;
        }
        Ok(())
    }

    /// One application of the walk operator: oracle, then coin, then lazy
    /// shift.
    pub fn step_in_place(&mut self, params: &WalkParams) -> Result<()> {
        self.check_params(params)?;
        self.oracle_in_place(params.marked, params.eta)?;
        self.coin_in_place(params.eta);
        self.lazy_shift_in_place(params.phi);
        Ok(())
    }

    pub fn apply_lazy_shift(&self, phi: f64) -> Self {
        let mut out = self.clone();
        out.lazy_shift_in_place(phi);
        out
    }

    pub fn apply_coin(&self, eta: f64) -> Self {
        let mut out = self.clone();
        out.coin_in_place(eta);
        out
    }

    pub fn apply_oracle(&self, marked: usize, eta: f64) -> Result<Self> {
        let mut out = self.clone();
        out.oracle_in_place(marked, eta)?;
        Ok(out)
    }

    pub fn step(&self, params: &WalkParams) -> Result<Self> {
        let mut out = self.clone();
        out.step_in_place(params)?;
        Ok(out)
    }

    /// Probability of finding the walker at `marked`, summed over directions.
    pub fn success_probability(&self, marked: usize) -> Result<f64> {
        if marked >= self.n_vertices {
            return Err(Error::MarkedOutOfRange {
                marked,
                n: self.n_vertices,
            });
        }
        Ok(self.block(marked).iter().map(|a| a.norm_sqr()).sum())
    }

    /// Largest spread (max pairwise distance) inside each of the three
    /// symmetry classes: marked outgoing, unmarked pointing at the marked
    /// vertex, unmarked pointing elsewhere.
    pub fn symmetry_spread(&self, marked: usize) -> Result<f64> {
        if marked >= self.n_vertices {
            return Err(Error::MarkedOutOfRange {
                marked,
                n: self.n_vertices,
            });
        }
        let n = self.n_vertices;
        let mut classes = [ClassRange::default(); 3];
        for v in 0..n {
            for (c, &a) in self.block(v).iter().enumerate() {
                let class = if v == marked {
                    0
                } else if neighbour(v, c) == marked {
                    1
                } else {
                    2
                };
                classes[class].add(a);
            }
        }
        Ok(classes.iter().map(ClassRange::spread).fold(0.0, f64::max))
    }

    fn check_params(&self, params: &WalkParams) -> Result<()> {
        if params.n_vertices != self.n_vertices {
            return Err(Error::DimensionMismatch {
                expected: params.dimension(),
                got: self.dimension(),
            });
        }
        Ok(())
    }
}

// Bounding box of a set of complex values; its diagonal bounds the spread.
#[derive(Debug, Clone, Copy)]
struct ClassRange {
    min: Complex64,
    max: Complex64,
}

impl Default for ClassRange {
    fn default() -> Self {
        Self {
            min: Complex64::new(f64::INFINITY, f64::INFINITY),
            max: Complex64::new(f64::NEG_INFINITY, f64::NEG_INFINITY),
        }
    }
}

impl ClassRange {
    fn add(&mut self, a: Complex64) {
        self.min.re = self.min.re.min(a.re);
        self.min.im = self.min.im.min(a.im);
        self.max.re = self.max.re.max(a.re);
        self.max.im = self.max.im.max(a.im);
    }

    fn spread(&self) -> f64 {
        if self.min.re > self.max.re {
            return 0.0;
        }
        (self.max - self.min).norm()
    }
}

/// Uniform superposition for the given parameters.
pub fn initial_state(params: &WalkParams) -> StateVector {
    StateVector::uniform(params.n_vertices).expect("validated params")
}

/// Success probabilities after `0..=steps` applications of the walk operator;
/// entry `t` is the probability after `t` steps.
pub fn evolve(params: &WalkParams, steps: usize) -> Vec<f64> {
    let mut state = initial_state(params);
    let mut out = Vec::with_capacity(steps + 1);
    out.push(
        state
            .success_probability(params.marked)
            .expect("validated params"),
    );
    for _ in 0..steps {
        state.step_in_place(params).expect("validated params");
        out.push(
            state
                .success_probability(params.marked)
                .expect("validated params"),
        );
    }
    out
}

/// First index of the largest entry, with its value.
pub fn peak(probabilities: &[f64]) -> Option<(usize, f64)> {
    probabilities
        .iter()
        .copied()
        .enumerate()
        .fold(None, |best, (t, p)| match best {
            Some((_, q)) if q >= p => best,
            _ => Some((t, p)),
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    fn random_state(n: usize, seed: u64) -> StateVector {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let dim = n * (n - 1);
        let mut amps: Vec<Complex64> = (0..dim)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        amps.iter_mut().for_each(|a| *a /= norm);
        StateVector::from_amplitudes(n, amps).unwrap()
    }

    fn max_diff(a: &StateVector, b: &StateVector) -> f64 {
        a.amplitudes()
            .iter()
            .zip(b.amplitudes())
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    }

    #[test]
    fn params_validation() {
        assert_eq!(
            WalkParams::new(2, 0.0, 0.0, 0),
            Err(Error::TooFewVertices(2, 3))
        );
        assert!(matches!(
            WalkParams::new(5, 0.0, 0.0, 5),
            Err(Error::MarkedOutOfRange { .. })
        ));
        assert!(matches!(
            WalkParams::new(5, -0.1, 0.0, 0),
            Err(Error::PhaseOutOfRange(_))
        ));
        assert!(matches!(
            WalkParams::new(5, 1.6, 0.0, 0),
            Err(Error::PhaseOutOfRange(_))
        ));
        assert!(WalkParams::new(5, f64::NAN, 0.0, 0).is_err());
        assert!(WalkParams::new(3, FRAC_PI_2, 0.0, 2).is_ok());
    }

    #[test]
    fn amplitude_family_only() {
        let ok = WalkParams::from_amplitudes(
            8,
            Complex64::new(0.6, 0.0),
            Complex64::new(0.0, 0.8),
            0.0,
            0,
        )
        .unwrap();
        assert_abs_diff_eq!(ok.phi(), 0.8f64.asin(), epsilon = 1e-15);
        assert_abs_diff_eq!(ok.alpha().re, 0.6, epsilon = 1e-15);
        assert_abs_diff_eq!(ok.beta().im, 0.8, epsilon = 1e-15);

        // real beta, complex alpha, non-unit and negative-phase pairs
        for (a, b) in [
            (Complex64::new(0.6, 0.0), Complex64::new(0.8, 0.0)),
            (Complex64::new(0.0, 0.6), Complex64::new(0.0, 0.8)),
            (Complex64::new(0.6, 0.0), Complex64::new(0.0, 0.7)),
            (Complex64::new(0.6, 0.0), Complex64::new(0.0, -0.8)),
        ] {
            assert!(matches!(
                WalkParams::from_amplitudes(8, a, b, 0.0, 0),
                Err(Error::UnsupportedAmplitudes { .. })
            ));
        }
    }

    #[test]
    fn coin_index_round_trip() {
        let n = 7;
        let mut seen = vec![false; n * (n - 1)];
        for v in 0..n {
            for c in 0..n - 1 {
                let w = neighbour(v, c);
                assert_ne!(v, w);
                let i = coin_index(n, v, w);
                assert_eq!(i, v * (n - 1) + c);
                seen[i] = true;
            }
        }
        assert!(seen.into_iter().all(|s| s));
    }

    #[test]
    fn initial_state_is_uniform() {
        let s = StateVector::uniform(3).unwrap();
        assert_eq!(s.dimension(), 6);
        for a in s.amplitudes() {
            assert_abs_diff_eq!(a.re, 0.408_248_290_463_863, epsilon = 1e-12);
            assert_eq!(a.im, 0.0);
        }
        let params = WalkParams::uncorrected(1024, 0.0).unwrap();
        assert_eq!(params.dimension(), 1_047_552);
        for n in [3, 10, 100] {
            let s = StateVector::uniform(n).unwrap();
            assert_abs_diff_eq!(s.norm(), 1.0, epsilon = 1e-12);
            assert_abs_diff_eq!(
                s.success_probability(0).unwrap(),
                1.0 / n as f64,
                epsilon = 1e-14
            );
        }
        assert!(StateVector::uniform(2).is_err());
    }

    #[test]
    fn flip_flop_swaps_partners() {
        let s = random_state(6, 1);
        let t = s.apply_lazy_shift(0.0);
        for v in 0..6 {
            for w in 0..6 {
                if v != w {
                    assert_eq!(t.amplitude(v, w), s.amplitude(w, v));
                }
            }
        }
        assert!(max_diff(&t.apply_lazy_shift(0.0), &s) < 1e-14);
    }

    #[test]
    fn fully_blocked_shift_is_phase_i() {
        let s = random_state(5, 2);
        let t = s.apply_lazy_shift(FRAC_PI_2);
        for (a, b) in s.amplitudes().iter().zip(t.amplitudes()) {
            assert!((a * Complex64::i() - b).norm() < 1e-15);
        }
    }

    #[test]
    fn lazy_shift_matches_pointwise_rule() {
        let phi = 0.3;
        let s = random_state(8, 3);
        let t = s.apply_lazy_shift(phi);
        for v in 0..8 {
            for w in 0..8 {
                if v == w {
                    continue;
                }
                let expected = s.amplitude(w, v) * phi.cos()
                    + Complex64::new(0.0, phi.sin()) * s.amplitude(v, w);
                assert!((t.amplitude(v, w) - expected).norm() < 1e-15);
            }
        }
        assert_abs_diff_eq!(t.norm(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn coin_eigenspaces() {
        let n = 6;
        let eta = 0.7;
        let d = n - 1;
        // all-equal register picks up e^{i eta}; zero-mean register flips sign
        let mut amps = vec![Complex64::new(0.0, 0.0); n * d];
        for c in 0..d {
            amps[c] = Complex64::new(0.3, -0.1);
            amps[d + c] = Complex64::new(c as f64 - 2.0, 0.5 * (c as f64 - 2.0));
        }
        let s = StateVector::from_amplitudes(n, amps).unwrap();
        let t = s.apply_coin(eta);
        let phase = Complex64::from_polar(1.0, eta);
        for c in 0..d {
            assert!((t.block(0)[c] - s.block(0)[c] * phase).norm() < 1e-15);
            assert!((t.block(1)[c] + s.block(1)[c]).norm() < 1e-15);
        }
    }

    #[test]
    fn coin_at_zero_is_grover_diffusion() {
        let s = random_state(5, 4);
        let t = s.apply_coin(0.0);
        for v in 0..5 {
            let mean = s.block(v).iter().sum::<Complex64>() / 4.0;
            for (a, b) in s.block(v).iter().zip(t.block(v)) {
                assert!((mean * 2.0 - a - b).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn oracle_touches_only_marked_block() {
        let s = random_state(8, 5);
        let t = s.apply_oracle(3, 0.5).unwrap();
        let factor = -Complex64::from_polar(1.0, -0.5);
        for v in 0..8 {
            for (a, b) in s.block(v).iter().zip(t.block(v)) {
                let expected = if v == 3 { a * factor } else { *a };
                assert!((expected - b).norm() < 1e-15);
            }
        }
        let before: f64 = s.block(3).iter().map(|a| a.norm_sqr()).sum();
        let after: f64 = t.block(3).iter().map(|a| a.norm_sqr()).sum();
        assert_abs_diff_eq!(before, after, epsilon = 1e-15);

        let flipped = s.apply_oracle(0, 0.0).unwrap();
        assert!((flipped.block(0)[1] + s.block(0)[1]).norm() < 1e-15);
        let identity = s.apply_oracle(0, PI).unwrap();
        assert!(max_diff(&identity, &s) < 1e-15);

        assert!(s.apply_oracle(8, 0.0).is_err());
    }

    #[test]
    fn step_rejects_mismatched_size() {
        let s = StateVector::uniform(5).unwrap();
        let p = WalkParams::uncorrected(6, 0.0).unwrap();
        assert!(matches!(s.step(&p), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn step_is_oracle_coin_shift() {
        let p = WalkParams::corrected(7, 0.3)
            .unwrap()
            .with_marked(2)
            .unwrap();
        let s = random_state(7, 6);
        let manual = s
            .apply_oracle(2, p.eta())
            .unwrap()
            .apply_coin(p.eta())
            .apply_lazy_shift(p.phi());
        assert!(max_diff(&manual, &s.step(&p).unwrap()) < 1e-15);
    }

    // Probabilities frozen from a dense-matrix construction of U (explicit
    // Kronecker products over the same index convention).
    #[test]
    fn matches_dense_reference() {
        let cases = [
            (5, 0.3, true, 0, 7, 0.594_428_397_964_142_5),
            (6, 0.3, false, 2, 9, 0.171_076_543_385_739_08),
            (7, 0.8f64.asin(), true, 4, 12, 0.300_176_751_385_211_9),
        ];
        for (n, phi, corrected, marked, steps, expected) in cases {
            let base = if corrected {
                WalkParams::corrected(n, phi).unwrap()
            } else {
                WalkParams::uncorrected(n, phi).unwrap()
            };
            let p = base.with_marked(marked).unwrap();
            let probs = evolve(&p, steps);
            assert_abs_diff_eq!(probs[steps], expected, epsilon = 1e-12);
        }
    }

    #[test]
    fn evolve_zero_steps() {
        let p = WalkParams::uncorrected(9, 0.2).unwrap();
        let probs = evolve(&p, 0);
        assert_eq!(probs.len(), 1);
        assert_abs_diff_eq!(probs[0], 1.0 / 9.0, epsilon = 1e-15);
    }

    #[test]
    fn norm_and_symmetry_along_trajectory() {
        let p = WalkParams::corrected(64, 0.3)
            .unwrap()
            .with_marked(17)
            .unwrap();
        let mut s = initial_state(&p);
        for _ in 0..200 {
            s.step_in_place(&p).unwrap();
            assert!(s.symmetry_spread(17).unwrap() < 1e-10);
        }
        assert!((s.norm() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn symmetry_spread_detects_broken_state() {
        let s = random_state(6, 7);
        assert!(s.symmetry_spread(0).unwrap() > 1e-3);
        assert_eq!(
            StateVector::uniform(6).unwrap().symmetry_spread(0).unwrap(),
            0.0
        );
    }

    #[test]
    fn peak_picks_first_maximum() {
        assert_eq!(peak(&[]), None);
        assert_eq!(peak(&[0.1, 0.5, 0.2, 0.5]), Some((1, 0.5)));
    }
}
