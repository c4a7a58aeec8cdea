//! Seeded random matrices, states and channels.
//!
//! Every sampler takes the generator explicitly; callers derive one stream
//! per work item (see [`stream_rng`]) so results never depend on scheduling.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::channels::KrausChannel;
use crate::error::Result;
use crate::linalg::{c, ComplexMatrix};
use crate::state::DensityMatrix;

/// Independent generator for work item `index` under `seed`.
pub fn stream_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Matrix with i.i.d. standard complex Gaussian entries.
pub fn ginibre<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        c(re, im) * std::f64::consts::FRAC_1_SQRT_2
    })
}

/// Gram-Schmidt on the columns. R has a positive real diagonal, which makes
/// the Q of a Ginibre matrix Haar distributed.
fn orthonormalize_columns(m: &ComplexMatrix) -> ComplexMatrix {
    let (rows, cols) = (m.rows(), m.cols());
    let mut q: Vec<Vec<num_complex::Complex64>> = Vec::with_capacity(cols);
    for j in 0..cols {
        let mut v = m.column(j);
        // two passes keep the result orthonormal to machine precision
        for _ in 0..2 {
            for u in &q {
                let proj: num_complex::Complex64 = u.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                for (vi, ui) in v.iter_mut().zip(u) {
                    *vi -= proj * ui;
                }
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        q.push(v.into_iter().map(|z| z / norm).collect());
    }
    ComplexMatrix::from_fn(rows, cols, |i, j| q[j][i])
}

pub fn haar_unitary<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ComplexMatrix {
    orthonormalize_columns(&ginibre(rng, n, n))
}

/// Haar isometry `C^cols -> C^rows`.
pub fn haar_isometry<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> ComplexMatrix {
    orthonormalize_columns(&ginibre(rng, rows, cols))
}

/// Channel on `C^d` with `rank` Kraus operators sliced from a Haar isometry
/// `C^d -> C^(d * rank)`.
pub fn random_channel<R: Rng + ?Sized>(rng: &mut R, d: usize, rank: usize) -> Result<KrausChannel> {
    let v = haar_isometry(rng, d * rank, d);
    let ops = (0..rank)
        .map(|k| ComplexMatrix::from_fn(d, d, |i, j| v[(k * d + i, j)]))
        .collect();
    KrausChannel::new(ops)
}

/// Random Hermitian matrix with entries of magnitude at most one.
pub fn random_hermitian<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ComplexMatrix {
    let g = ginibre(rng, n, n);
    let h = g.hermitian_part();
    let scale = h.max_abs().max(1.0);
    h.scale_real(1.0 / scale)
}

/// `G G^dag / tr(G G^dag)` for a Ginibre `G` (Hilbert-Schmidt measure).
pub fn random_density<R: Rng + ?Sized>(rng: &mut R, dim_a: usize, dim_b: usize) -> DensityMatrix {
    let n = dim_a * dim_b;
    let g = ginibre(rng, n, n);
    let w = g.matmul(&g.adjoint());
    let w = w.hermitian_part();
    let tr = w.trace().re;
    DensityMatrix::from_trusted(dim_a, dim_b, w.scale_real(1.0 / tr))
}

/// Random single-system state of dimension `d`.
pub fn random_local_state<R: Rng + ?Sized>(rng: &mut R, d: usize) -> ComplexMatrix {
    random_density(rng, d, 1).into_matrix()
}
