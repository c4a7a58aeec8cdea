//! Closed-form matrices and negativities of the two-qubit phase-damping
//! construction, used as oracles against the generic numerical pipeline.

use crate::linalg::{c, ComplexMatrix};

/// `λ₁ = -16 + 12√2`, where the rotated state first becomes separable.
pub fn lambda_1() -> f64 {
    -16.0 + 12.0 * std::f64::consts::SQRT_2
}

/// rho2_in as printed on the computational basis.
pub fn rho2_in_matrix() -> ComplexMatrix {
    #[rustfmt::skip]
    let m = [
        2.0, -1.0, 2.0, 1.0,
        -1.0, 1.0, -1.0, -1.0,
        2.0, -1.0, 2.0, 1.0,
        1.0, -1.0, 1.0, 1.0,
    ];
    ComplexMatrix::from_real(4, 4, &m).scale_real(1.0 / 6.0)
}

/// Phase-damped rho1_in.
pub fn rho1_out_matrix(lambda: f64) -> ComplexMatrix {
    let s = (1.0 - lambda).sqrt();
    #[rustfmt::skip]
    let m = [
        2.0, 0.0, 0.0, s,
        0.0, 0.0, 0.0, 0.0,
        0.0, 0.0, 0.0, 0.0,
        s, 0.0, 0.0, 1.0,
    ];
    ComplexMatrix::from_real(4, 4, &m).scale_real(1.0 / 3.0)
}

/// Phase-damped rho2_in.
pub fn rho2_out_matrix(lambda: f64) -> ComplexMatrix {
    let s = (1.0 - lambda).sqrt();
    #[rustfmt::skip]
    let m = [
        2.0, -1.0, 2.0 * s, s,
        -1.0, 1.0, -s, -s,
        2.0 * s, -s, 2.0, 1.0,
        s, -s, 1.0, 1.0,
    ];
    ComplexMatrix::from_real(4, 4, &m).scale_real(1.0 / 6.0)
}

/// `t |Φ+><Φ+| + (1-t) |00><00|` written out.
pub fn rho3_in_matrix(t: f64) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(4, 4);
    m[(0, 0)] = c(1.0 - t / 2.0, 0.0);
    m[(0, 3)] = c(t / 2.0, 0.0);
    m[(3, 0)] = c(t / 2.0, 0.0);
    m[(3, 3)] = c(t / 2.0, 0.0);
    m
}

/// rho2_in in the Bell frame rotated by U_A, ordered (Φ+, Ψ+, Ψ-, Φ-).
pub fn rho2_in_bell_matrix() -> ComplexMatrix {
    #[rustfmt::skip]
    let m = [
        5.0, 0.0, 0.0, 1.0,
        0.0, 0.0, 0.0, 0.0,
        0.0, 0.0, 0.0, 0.0,
        1.0, 0.0, 0.0, 1.0,
    ];
    ComplexMatrix::from_real(4, 4, &m).scale_real(1.0 / 6.0)
}

pub fn negativity_rho1_out(lambda: f64) -> f64 {
    2.0 / 3.0 * (1.0 - lambda).sqrt()
}

/// Clamped at zero past `λ₁`.
pub fn negativity_rho2_out(lambda: f64) -> f64 {
    let s = (1.0 - lambda).sqrt();
    ((-3.0 + 3.0 * s + (10.0 + 6.0 * s - 5.0 * lambda).sqrt()) / 6.0).max(0.0)
}

pub fn negativity_rho3_out(lambda: f64, t: f64) -> f64 {
    t * (1.0 - lambda).sqrt()
}

/// `H[(1 + √(1 - t²)) / 2]`.
pub fn eof_rho3_in(t: f64) -> f64 {
    let p = 0.5 * (1.0 + (1.0 - t * t).sqrt());
    let h = |x: f64| if x <= 0.0 { 0.0 } else { -x * x.log2() };
    h(p) + h(1.0 - p)
}
