//! Bisection solvers for the critical noise value and the strict-window threshold.

use serde::Serialize;

use super::states::{rho2_in, rho3_in, u_a};
use crate::channels::{apply_local, ChannelFamily};
use crate::error::{Error, Result};
use crate::measures::{entanglement_of_formation, g_lower_bound, min_pt_eigenvalue, BellFrame};
use crate::state::{DensityMatrix, Subsystem};
use crate::tolerance;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SolveOptions {
    /// Evenly spaced points used to locate the first bracket.
    pub scan_points: usize,
    /// Stop once the bracket is narrower than this.
    pub tolerance: f64,
    pub max_iter: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            scan_points: 101,
            tolerance: tolerance::BISECTION,
            max_iter: tolerance::BISECTION_MAX_ITER,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RootReport {
    pub value: f64,
    /// Objective at `value` (μ_min for λ_sep, E_f - g for the t threshold).
    pub residual: f64,
    pub iterations: usize,
    /// Final bracket; the objective is negative at the left end and not at the right.
    pub bracket: (f64, f64),
    pub objective_at_bracket: (f64, f64),
}

/// μ_min of `(E_x ⊗ I)(rho)`.
pub fn output_min_pt(family: &ChannelFamily, rho: &DensityMatrix, x: f64) -> Result<f64> {
    min_pt_eigenvalue(&apply_local(&family.at(x)?, rho, Subsystem::A)?)
}

fn bisect(
    mut lo: f64,
    mut hi: f64,
    mut f_lo: f64,
    mut f_hi: f64,
    opts: &SolveOptions,
    f: impl Fn(f64) -> Result<f64>,
) -> Result<RootReport> {
    let mut iterations = 0;
    while hi - lo > opts.tolerance {
        if iterations == opts.max_iter {
            return Err(Error::NotConverged {
                sweeps: iterations,
                off_norm: hi - lo,
            });
        }
        iterations += 1;
        let mid = 0.5 * (lo + hi);
        let f_mid = f(mid)?;
        if f_mid >= 0.0 {
            hi = mid;
            f_hi = f_mid;
        } else {
            lo = mid;
            f_lo = f_mid;
        }
    }
    let value = 0.5 * (lo + hi);
    Ok(RootReport {
        value,
        residual: f(value)?,
        iterations,
        bracket: (lo, hi),
        objective_at_bracket: (f_lo, f_hi),
    })
}

/// Smallest noise parameter at which the locally damped state turns PPT.
///
/// Bisection runs on μ_min, which keeps its sign information past the root
/// (the clamped negativity is flat at zero there). The first grid point
/// with μ_min >= -`tolerance::PSD` closes the initial bracket.
pub fn solve_lambda_sep(family: &ChannelFamily, rho: &DensityMatrix, opts: &SolveOptions) -> Result<RootReport> {
    let (lo, hi) = family.domain();
    let f = |x: f64| output_min_pt(family, rho, x);
    let n = opts.scan_points.max(2);
    let grid = |k: usize| {
        if k == n - 1 {
            hi
        } else {
            lo + (hi - lo) * k as f64 / (n - 1) as f64
        }
    };

    let mut prev = (lo, f(lo)?);
    if prev.1 >= -tolerance::PSD {
        return Err(Error::NoSignChange {
            lo,
            hi,
            mu_lo: prev.1,
            mu_hi: f(hi)?,
        });
    }
    for k in 1..n {
        let x = grid(k);
        let mu = f(x)?;
        if mu >= -tolerance::PSD {
            return bisect(prev.0, x, prev.1, mu, opts, f);
        }
        prev = (x, mu);
    }
    Err(Error::NoSignChange {
        lo,
        hi,
        mu_lo: f(lo)?,
        mu_hi: prev.1,
    })
}

/// `g(rho2_in)` in the Bell frame rotated by U_A, i.e. `1 - H(1/6)`.
pub fn g_rho2_in() -> Result<f64> {
    g_lower_bound(&rho2_in(), &BellFrame::rotated(&u_a())?)
}

/// `t*` solving `E_f(rho3_in(t)) = g(rho2_in)` on (0, 1). Below `t*` the
/// formation bound on rho3_in sits strictly under the hashing bound on rho2_in.
pub fn solve_t_threshold(opts: &SolveOptions) -> Result<RootReport> {
    let target = g_rho2_in()?;
    let f = |t: f64| -> Result<f64> { Ok(entanglement_of_formation(&rho3_in(t)?)? - target) };
    let (f0, f1) = (f(0.0)?, f(1.0)?);
    bisect(0.0, 1.0, f0, f1, opts, f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenarios::closed_form::lambda_1;
    use crate::scenarios::states::{ket00, phi_plus, rho1_in};

    #[test]
    fn rho2_in_separates_at_lambda_1() {
        let r = solve_lambda_sep(&ChannelFamily::phase_damping(), &rho2_in(), &SolveOptions::default()).unwrap();
        assert!((r.value - lambda_1()).abs() < 1e-9, "{}", r.value);
        assert!(r.bracket.1 - r.bracket.0 <= 1e-12);
        assert!(r.objective_at_bracket.0 < 0.0 && r.objective_at_bracket.1 >= 0.0);
        let s = (1.0 - r.value).sqrt();
        assert!((s * s - 6.0 * s + 1.0).abs() < 1e-9);
    }

    #[test]
    fn rho1_and_rho3_separate_only_at_full_damping() {
        let fam = ChannelFamily::phase_damping();
        for rho in [rho1_in(), rho3_in(1.0 / 3.0).unwrap(), phi_plus()] {
            let r = solve_lambda_sep(&fam, &rho, &SolveOptions::default()).unwrap();
            assert!((r.value - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn separable_input_has_no_sign_change() {
        let r = solve_lambda_sep(&ChannelFamily::phase_damping(), &ket00(), &SolveOptions::default());
        assert!(matches!(r, Err(Error::NoSignChange { .. })));
    }

    #[test]
    fn t_threshold_near_0_495() {
        let r = solve_t_threshold(&SolveOptions::default()).unwrap();
        assert!((r.value - 0.495).abs() < 1e-3, "{}", r.value);
        assert_eq!((r.value * 1000.0).floor(), 495.0);
        assert!(r.residual.abs() <= 1e-12);
        assert!(r.bracket.1 - r.bracket.0 <= 1e-12);
        let target = g_rho2_in().unwrap();
        assert!(entanglement_of_formation(&rho3_in(r.value / 2.0).unwrap()).unwrap() < target);
        assert!(entanglement_of_formation(&rho3_in(0.9).unwrap()).unwrap() > target);
    }
}
