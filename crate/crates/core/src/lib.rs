//! Simulation and analysis of pairwise-exchange pulse sequences on
//! decoherence-free subspaces of trapped-ion qubits.
//!
//! The crate is organised bottom-up:
//!
//! - [`linalg`]: dense complex matrices, Hermitian eigendecomposition,
//!   spectral exponentials and PSD square roots.
//! - [`hamiltonians`]: n-qubit Pauli strings, the σxσx / σyσy / XY pair
//!   Hamiltonians, collective dephasing `S_z`, trap-parameter helpers.
//! - [`codes`]: the qutrit codes `C_I`, `C_II` and the smaller qubit codes,
//!   with projectors and leakage diagnostics.
//! - [`dynamics`]: pulse schedules, closed evolution, the Lindblad integrator,
//!   Uhlmann fidelity and the alternation experiment.
//! - [`analysis`]: closed-form leakage model and power-law fitting.
//! - [`universality`]: Lie-closure of projected exchange generators.
//! - [`cli`]: the command-line front end.
//!
//! Conventions: ħ = 1, time is measured in units of `1/g` where
//! `g = η²Ω²/Δ`, all propagators are `exp(-iHt)`, and qubit 0 is the leftmost
//! character of a ket label (most significant bit of the basis index).

pub mod analysis;
pub mod cli;
pub mod codes;
pub mod dynamics;
mod error;
pub mod hamiltonians;
pub mod linalg;
pub mod universality;

pub use error::{Error, Result};
pub use linalg::ComplexMatrix;
