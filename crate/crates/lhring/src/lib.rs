//! Numerical model of a light-harvesting antenna ring as a closed loop of
//! qubits coupled by exchange interaction.
//!
//! The crate builds the exchange Hamiltonian of the loop, verifies its
//! closed-form Fourier eigenstates against the exciton spectrum of the
//! aggregate, computes the entanglement-entropy cascade of those eigenstates
//! under successive one-qubit bipartitions, and simulates the Jaynes-Cummings
//! coupling of the resulting two-level system to a single field mode.
//!
//! Modules:
//! - [`linalg`]: dense complex matrices and a deterministic Jacobi
//!   eigensolver for Hermitian operators.
//! - [`states`]: computational-basis, single-excitation, and Fourier states.
//! - [`ring`]: exchange operators, the ring Hamiltonian, and closed-form
//!   spectra.
//! - [`entanglement`]: density operators, partial traces, Schmidt
//!   decomposition, and the entropy cascade.
//! - [`jc`]: the Jaynes-Cummings Hamiltonian, dressed states, and Rabi
//!   dynamics.
//! - [`verify`]: the self-check suites behind `lhring verify`.
//! - [`cli`]: configuration and the file-producing commands of the `lhring`
//!   binary.

pub mod cli;
pub mod entanglement;
pub mod error;
pub mod jc;
pub mod linalg;
pub mod ring;
pub mod states;
pub mod verify;

pub use error::{Error, Result};
