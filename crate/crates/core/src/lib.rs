//! Quantum walk search on the complete graph with potential-barrier errors.
//!
//! A walker searching the complete graph of `N` vertices for a marked vertex
//! may fail to hop with amplitude `beta = i sin(phi)`. Left alone this destroys
//! the `O(sqrt N)` search; matching the coin and oracle phases to the barrier
//! restores it. The crate provides:
//!
//! - [`walk`]: full statevector simulation over `N(N-1)` amplitudes,
//! - [`reduced`]: the exact three-dimensional model of the same dynamics,
//! - [`phase`]: the correction phase, rotation angle and runtime prediction,
//! - [`ctqw`]: the continuous-time walk with a rescaled jumping rate,
//! - [`experiment`]: runs, sweeps, self-checks and CSV output for the CLI.

pub mod ctqw;
pub mod error;
pub mod experiment;
pub mod phase;
pub mod reduced;
pub mod walk;

pub use error::{Error, Result};
pub use phase::{PhasePlan, Runtime};
pub use reduced::{ReducedOperators, ReducedState};
pub use walk::{StateVector, WalkParams};
