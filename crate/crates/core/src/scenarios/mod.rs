//! Concrete constructions, critical-value solvers, ordering certificates and
//! the unitary-orbit search for ordering-change candidates.

pub mod certify;
pub mod closed_form;
pub mod nogo;
pub mod qutrit;
pub mod search;
pub mod solve;
pub mod states;

pub use certify::{
    certify_selective_breaking, certify_strong_selective_breaking, LoccChain, LoccStep, OrderingCertificate, Piece,
    PieceResult, StrictWindow, StrongCertificate,
};
pub use nogo::{pure_state_nogo_scan, Counterexample, NogoReport};
pub use qutrit::{qutrit_example, QutritReport};
pub use search::{euler_unitary, orbit_search, OrbitGrid, SearchOutcome, SearchRecord};
pub use solve::{solve_lambda_sep, solve_t_threshold, RootReport, SolveOptions};
