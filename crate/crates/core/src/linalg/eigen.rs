use num_complex::Complex64;
use serde::Serialize;

use super::matrix::{c, ComplexMatrix};
use crate::error::{Error, Result};
use crate::tolerance;

/// Spectrum of a Hermitian matrix, ascending, with orthonormal eigenvectors
/// stored as the columns of `eigenvectors`.
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct EigenResult {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

impl EigenResult {
    pub fn min(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn max(&self) -> f64 {
        *self.eigenvalues.last().expect("non-empty spectrum")
    }

    /// V diag(f(λ)) V^dag.
    pub fn map_spectrum(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let v = &self.eigenvectors;
        let n = v.rows();
        let mapped: Vec<f64> = self.eigenvalues.iter().map(|&l| f(l)).collect();
        ComplexMatrix::from_fn(n, n, |i, j| {
            (0..n).map(|k| v[(i, k)] * mapped[k] * v[(j, k)].conj()).sum()
        })
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        self.map_spectrum(|l| l)
    }
}

/// Cyclic complex Jacobi eigensolver for Hermitian matrices.
///
/// Each rotation first removes the phase of the pivot `a_pq` and then applies
/// a real Jacobi rotation, so the matrix stays Hermitian with a real diagonal.
pub fn hermitian_eigen(m: &ComplexMatrix) -> Result<EigenResult> {
    if !m.is_square() {
        return Err(Error::dims("square matrix", format!("{}x{}", m.rows(), m.cols())));
    }
    let n = m.rows();
    if n > 16 {
        return Err(Error::UnsupportedDimension {
            supported: "matrices up to 16x16",
            found: format!("{n}x{n}"),
        });
    }
    let deviation = m.hermitian_deviation();
    if deviation > tolerance::EIGEN_INPUT_HERMITIAN {
        return Err(Error::NotHermitian { deviation });
    }

    let mut a = m.hermitian_part();
    for i in 0..n {
        a[(i, i)] = c(a[(i, i)].re, 0.0);
    }
    let mut v = ComplexMatrix::identity(n);
    let threshold = tolerance::JACOBI_OFF_DIAGONAL * a.frobenius_norm().max(1.0);

    let mut sweeps = 0;
    loop {
        let off = off_diagonal_norm(&a);
        if off <= threshold {
            break;
        }
        if sweeps == tolerance::JACOBI_MAX_SWEEPS {
            return Err(Error::NotConverged { sweeps, off_norm: off });
        }
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let eigenvalues = order.iter().map(|&i| a[(i, i)].re).collect();
    let eigenvectors = ComplexMatrix::from_fn(n, n, |i, k| v[(i, order[k])]);
    Ok(EigenResult {
        eigenvalues,
        eigenvectors,
    })
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let r = apq.norm();
    if r == 0.0 {
        return;
    }
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let phase = apq / r;

    let theta = (aqq - app) / (2.0 * r);
    let t = if theta.is_finite() {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    } else {
        0.0
    };
    if t == 0.0 {
        // pivot negligible against the diagonal gap
        a[(p, q)] = c(0.0, 0.0);
        a[(q, p)] = c(0.0, 0.0);
        return;
    }
    let cs = 1.0 / (t * t + 1.0).sqrt();
    let sn = t * cs;

    // J = diag(1, e^{-iφ}) · [[c, s], [-s, c]]
    let jpp = c(cs, 0.0);
    let jpq = c(sn, 0.0);
    let jqp = -phase.conj() * sn;
    let jqq = phase.conj() * cs;

    let n = a.rows();
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * jpp + akq * jqp;
        a[(k, q)] = akp * jpq + akq * jqq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = jpp.conj() * apk + jqp.conj() * aqk;
        a[(q, k)] = jpq.conj() * apk + jqq.conj() * aqk;
    }
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);
    a[(p, p)] = c(app - t * r, 0.0);
    a[(q, q)] = c(aqq + t * r, 0.0);

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * jpp + vkq * jqp;
        v[(k, q)] = vkp * jpq + vkq * jqq;
    }
}
