//! Exact simulator and circuit compiler for heat exchange in short chains of
//! thermal qubits carrying two-body quantum correlations.
//!
//! The crate splits into five layers:
//!
//! * [`densemat`] — dense complex linear algebra (Kronecker products, partial
//!   traces, Hermitian eigendecomposition, matrix functions).
//! * [`thermostate`] — thermal qubit states, correlated chain assembly, and
//!   information measures (entropy, mutual information, geometric discord).
//! * [`dynamics`] — the Dzyaloshinskii–Moriya exchange Hamiltonian, exact
//!   propagation, and trajectory sweeps with heat/temperature readout.
//! * [`qcircuit`] — gate-level circuits reproducing the exact two- and
//!   three-qubit propagators, with CNOT accounting and layout checks.
//! * [`calibrate`] — named experiment presets, variational state preparation,
//!   and least-squares tuning of preparation parameters.

pub mod calibrate;
pub mod densemat;
pub mod dynamics;
pub mod error;
pub mod qcircuit;
pub mod thermostate;

pub use error::{Error, Result};
pub use num_complex::Complex64;
