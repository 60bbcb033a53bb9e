//! Coherence measures for finite-dimensional quantum states and tools for
//! finding pairs of states that two measures rank in opposite order.
//!
//! The three measures are the l1-norm of coherence, the relative entropy of
//! coherence, and the coherence of formation. The formation measure is
//! available in closed form for qubits and pure states only.
//!
//! ```
//! use cohorder::ordering::{classify_pair, reference_qubit_pair, Verdict};
//! use cohorder::Measure;
//!
//! let (rho1, rho2) = reference_qubit_pair();
//! let v = classify_pair(&rho1, &rho2, Measure::L1, Measure::RelEnt, 1e-9).unwrap();
//! assert_eq!(v.verdict, Verdict::OrderingDifferent);
//! ```

pub mod error;
pub mod io;
pub mod linalg;
pub mod measures;
pub mod ordering;
pub mod postulates;
pub mod random;
pub mod states;

pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, Spectrum};
pub use measures::{CoherenceValue, Measure};
pub use states::{BlochQubit, DensityMatrix, PureState};
