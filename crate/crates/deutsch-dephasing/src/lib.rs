//! Pure dephasing in Deutsch's algorithm, modeled two ways: memoryless
//! phase-damping channels on the qubits alone, and joint unitary evolution
//! of qubits together with their environments. The crate provides the
//! closed-form probability expressions for one and two cycles, density-matrix
//! engines that execute the actual circuit under either noise model, an
//! NV-center nuclear-spin-bath environment, and sweep/report helpers behind
//! a small CLI.
//!
//! See the `examples/` directory for one runnable example per capability.

pub mod config;
pub mod dephasing;
pub mod deutsch;
pub mod env;
pub mod error;
pub mod linalg;
pub mod state;
pub mod sweep;
pub mod verify;

pub use error::{Error, Result};
