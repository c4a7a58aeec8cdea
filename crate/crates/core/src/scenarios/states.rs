//! The named input states of the two-qubit and two-qutrit constructions.

use std::f64::consts::FRAC_1_SQRT_2;

use crate::channels::local_unitary;
use crate::error::{Error, Result};
use crate::linalg::{c, ComplexMatrix};
use crate::state::{DensityMatrix, PureState, Subsystem};

pub fn phi_plus_pure() -> PureState {
    PureState::from_terms(2, 2, &[(0, 0, c(FRAC_1_SQRT_2, 0.0)), (1, 1, c(FRAC_1_SQRT_2, 0.0))]).expect("normalised")
}

pub fn phi_plus() -> DensityMatrix {
    DensityMatrix::from_pure(&phi_plus_pure())
}

pub fn ket00() -> DensityMatrix {
    DensityMatrix::new(2, 2, ComplexMatrix::diag_real(&[1.0, 0.0, 0.0, 0.0])).expect("valid")
}

/// `t |Φ+><Φ+| + (1 - t) |00><00|`; `rho3_in(2/3)` is `rho1_in`.
pub fn rho3_in(t: f64) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::ParameterOutOfRange {
            name: "t",
            value: t,
            range: "[0, 1]",
        });
    }
    ket00().mix(&phi_plus(), t)
}

/// `(2/3) |Φ+><Φ+| + (1/3) |00><00|`.
pub fn rho1_in() -> DensityMatrix {
    rho3_in(2.0 / 3.0).expect("t in range")
}

/// Rotation by π/2 about Y: `(1/√2) [[1, -1], [1, 1]]`.
pub fn u_a() -> ComplexMatrix {
    let s = FRAC_1_SQRT_2;
    ComplexMatrix::from_real(2, 2, &[s, -s, s, s])
}

/// `(U_A ⊗ I) rho1_in (U_A ⊗ I)^dag`.
pub fn rho2_in() -> DensityMatrix {
    local_unitary(&rho1_in(), &u_a(), Subsystem::A).expect("U_A is unitary")
}

/// `(|11> + |22>) / √2` on two qutrits.
pub fn qutrit_psi1() -> PureState {
    PureState::from_terms(3, 3, &[(1, 1, c(FRAC_1_SQRT_2, 0.0)), (2, 2, c(FRAC_1_SQRT_2, 0.0))]).expect("normalised")
}

/// `√q |00> + √(1-q) |11>` on two qutrits, `0 < q < 1`.
pub fn qutrit_psi2(q: f64) -> Result<PureState> {
    if !(q > 0.0 && q < 1.0) {
        return Err(Error::ParameterOutOfRange {
            name: "q",
            value: q,
            range: "(0, 1)",
        });
    }
    PureState::from_terms(3, 3, &[(0, 0, c(q.sqrt(), 0.0)), (1, 1, c((1.0 - q).sqrt(), 0.0))])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::negativity;

    #[test]
    fn rho3_at_two_thirds_is_rho1_exactly() {
        assert_eq!(rho3_in(2.0 / 3.0).unwrap(), rho1_in());
    }

    #[test]
    fn named_states_validate() {
        for rho in [rho1_in(), rho2_in(), rho3_in(0.1).unwrap(), phi_plus()] {
            DensityMatrix::new(2, 2, rho.into_matrix()).unwrap();
        }
        assert!(rho3_in(1.5).is_err());
        assert!(qutrit_psi2(0.0).is_err());
    }

    #[test]
    fn input_negativities() {
        let (n1, _) = negativity(&rho1_in()).unwrap();
        let (n2, _) = negativity(&rho2_in()).unwrap();
        assert!((n1 - 2.0 / 3.0).abs() < 1e-14);
        assert!((n2 - 2.0 / 3.0).abs() < 1e-14);
    }
}
