//! Numerics for selective entanglement breaking of small bipartite states.
//!
//! The crate is organised bottom-up:
//!
//! * [`linalg`]: dense complex matrices and a Jacobi Hermitian eigensolver.
//! * [`state`]: bipartite density matrices, pure states, partial transpose and trace.
//! * [`channels`]: Kraus channels acting on one subsystem, Choi matrices and the
//!   entanglement-breaking test for qubit channels.
//! * [`measures`]: negativity, PPT verdicts, concurrence, entanglement of formation
//!   and the Bell-diagonal hashing bound.
//! * [`scenarios`]: the concrete two-qubit and two-qutrit constructions, critical
//!   value solvers, ordering certificates and the unitary-orbit search.

pub mod channels;
pub mod error;
pub mod linalg;
pub mod measures;
pub mod random;
pub mod scenarios;
pub mod state;
pub mod tolerance;

pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, EigenResult};
pub use num_complex::Complex64;
pub use state::{DensityMatrix, PureState, Subsystem};
