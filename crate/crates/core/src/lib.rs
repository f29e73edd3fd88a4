//! Provably optimal T-count and T-depth synthesis of multi-qubit unitaries
//! over the Clifford+T gate set, under the global-phase-invariant distance
//! `d(U, W) = sqrt(1 - |Tr(U^dag W)| / N)`.
//!
//! Given a target unitary `W` and a precision `eps`, the engine finds the
//! smallest `m` such that some exactly implementable `U` with T-count (or
//! T-depth) `m` satisfies `d(U, W) <= eps`, and emits a gate-level circuit
//! for `U`:
//!
//! * [`search::min_resource`] drives the exhaustive scan over generator
//!   sequences (`R(P)` rotations for counts, `V_n` blocks for depth),
//! * [`certify`] holds the amplitude and conjugation tests that recognize a
//!   residual within `eps` of a Clifford,
//! * [`reconstruct`] recovers the trailing Clifford, synthesizes its circuit
//!   from the stabilizer tableau and verifies the distance contract,
//! * [`budget`] composes per-block epsilons for targets split into pieces,
//! * [`library`] provides the built-in benchmark unitaries and matrix files.
//!
//! ```
//! use tsynth::prelude::*;
//!
//! let t = tsynth::library::crz(std::f64::consts::FRAC_PI_2);
//! let cfg = SearchConfig::count(2, 1e-2).unwrap();
//! let result = synthesize(&t, &cfg).unwrap();
//! assert!(result.achieved_distance <= 1e-2);
//! assert_eq!(result.circuit.t_count(), result.m);
//! ```

pub mod budget;
pub mod certify;
pub mod circuit;
pub mod error;
pub mod generators;
pub mod library;
pub mod matrix;
pub mod pauli;
pub mod reconstruct;
pub mod search;

pub mod prelude {
    pub use crate::certify::{amplitude_test, check_epsilon_regime, conjugation_test, TestReport};
    pub use crate::circuit::{Circuit, Gate};
    pub use crate::error::{Error, Result};
    pub use crate::generators::{build_vn, r_of_pauli, tcount_generators, Generator};
    pub use crate::matrix::{distance, pauli_spectrum, DenseUnitary, PauliSpectrum};
    pub use crate::pauli::{enumerate_paulis, trace_with_pauli, PauliOp};
    pub use crate::reconstruct::{clifford_to_circuit, recover_clifford, synthesize, SynthesisResult};
    pub use crate::search::{decide, min_resource, Candidate, Mode, SearchConfig};
}
