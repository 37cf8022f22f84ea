//! Exact-dynamics laboratory for a four-qubit isotropic exchange ring with
//! a tunable diagonal coupling alpha.
//!
//! A Bell pair on qubits 1,2 (qubits 3,4 in |00>) evolves under the
//! isotropic Hamiltonian; every diagnostic — fidelity to the initial
//! state, l1 coherence, two-qubit concurrences and entanglement of
//! formation — is a function of the single phase phi = (alpha + 1) t.
//! The crate carries each quantity along two independent routes:
//!
//! * closed forms in phi (the [`analysis`] module), and
//! * a numerical oracle (full 16x16 eigendecomposition, partial traces
//!   and measure kernels) that never touches the closed forms.
//!
//! `alpha = -1` freezes the dynamics entirely; detuning away from it sets
//! the oscillation rate |alpha + 1| of every resource.
//!
//! ```
//! use heisenberg4::analysis::{evaluate_point, predicted_fidelity};
//!
//! let record = evaluate_point(0.0, std::f64::consts::FRAC_PI_2).unwrap();
//! assert!((record.f_analytic - 1.0 / 2.0f64.sqrt()).abs() < 1e-12);
//! assert!((record.f_analytic - record.f_oracle).abs() < 1e-12);
//! assert_eq!(record.f_analytic, predicted_fidelity(record.phi));
//! ```

pub mod analysis;
pub mod dynamics;
pub mod error;
pub mod linalg;
pub mod measures;
pub mod report;
pub mod spin;

pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, EigenDecomposition, StateVector};
