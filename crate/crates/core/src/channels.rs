//! Kraus channels acting on one side of a bipartite state.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{c, hermitian_eigen, kron, ComplexMatrix};
use crate::state::{DensityMatrix, PureState, Subsystem};
use crate::tolerance;

/// Operator-sum channel `rho -> Σ K rho K^dag` from `C^dim_in` to `C^dim_out`.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct KrausChannel {
    dim_in: usize,
    dim_out: usize,
    ops: Vec<ComplexMatrix>,
    /// max |Σ K^dag K - I| measured at construction.
    completeness_error: f64,
}

impl KrausChannel {
    pub fn new(ops: Vec<ComplexMatrix>) -> Result<Self> {
        let first = ops.first().ok_or(Error::InvariantViolated {
            kind: "Kraus channel",
            invariant: "at least one Kraus operator",
            slack: 0.0,
        })?;
        let (dim_out, dim_in) = (first.rows(), first.cols());
        if let Some(bad) = ops.iter().find(|k| k.rows() != dim_out || k.cols() != dim_in) {
            return Err(Error::dims(
                format!("{dim_out}x{dim_in} Kraus operators"),
                format!("{}x{}", bad.rows(), bad.cols()),
            ));
        }
        let completeness_error = completeness_error(&ops, dim_in);
        if completeness_error > tolerance::COMPLETENESS {
            return Err(Error::InvariantViolated {
                kind: "Kraus channel",
                invariant: "completeness Σ K^dag K = I",
                slack: completeness_error,
            });
        }
        Ok(Self {
            dim_in,
            dim_out,
            ops,
            completeness_error,
        })
    }

    pub fn identity(d: usize) -> Self {
        Self::new(vec![ComplexMatrix::identity(d)]).expect("identity is complete")
    }

    /// Conjugation by a single unitary.
    pub fn unitary(u: &ComplexMatrix) -> Result<Self> {
        check_unitary(u)?;
        Self::new(vec![u.clone()])
    }

    pub fn dim_in(&self) -> usize {
        self.dim_in
    }

    pub fn dim_out(&self) -> usize {
        self.dim_out
    }

    pub fn ops(&self) -> &[ComplexMatrix] {
        &self.ops
    }

    pub fn completeness_error(&self) -> f64 {
        self.completeness_error
    }

    /// Applies the channel to a single-system operator.
    pub fn apply(&self, rho: &ComplexMatrix) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(self.dim_out, self.dim_out);
        for k in &self.ops {
            out = &out + &k.matmul(rho).matmul(&k.adjoint());
        }
        out
    }
}

fn completeness_error(ops: &[ComplexMatrix], dim_in: usize) -> f64 {
    let mut sum = ComplexMatrix::zeros(dim_in, dim_in);
    for k in ops {
        sum = &sum + &k.adjoint().matmul(k);
    }
    sum.max_abs_diff(&ComplexMatrix::identity(dim_in))
}

fn check_unitary(u: &ComplexMatrix) -> Result<()> {
    if !u.is_square() {
        return Err(Error::dims("square unitary", format!("{}x{}", u.rows(), u.cols())));
    }
    let deviation = u.unitarity_deviation();
    if deviation > tolerance::UNITARY {
        return Err(Error::NotUnitary { deviation });
    }
    Ok(())
}

fn check_unit_interval(name: &'static str, value: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&value) {
        return Err(Error::ParameterOutOfRange {
            name,
            value,
            range: "[0, 1]",
        });
    }
    Ok(())
}

/// Lifts a single-system operator to the bipartite space on `side`.
fn lift(op: &ComplexMatrix, side: Subsystem, dim_other: usize) -> ComplexMatrix {
    let id = ComplexMatrix::identity(dim_other);
    match side {
        Subsystem::A => kron(op, &id),
        Subsystem::B => kron(&id, op),
    }
}

/// Phase damping: `E0 = diag(1, √(1-λ))`, `E1 = [[0, 0], [0, √λ]]`.
pub fn phase_damping(lambda: f64) -> Result<KrausChannel> {
    check_unit_interval("lambda", lambda)?;
    let e0 = ComplexMatrix::diag_real(&[1.0, (1.0 - lambda).sqrt()]);
    let e1 = ComplexMatrix::diag_real(&[0.0, lambda.sqrt()]);
    KrausChannel::new(vec![e0, e1])
}

/// Projective dephasing of a qutrit between span{|0>, |1>} and |2>.
pub fn qutrit_dephase() -> KrausChannel {
    KrausChannel::new(vec![
        ComplexMatrix::diag_real(&[1.0, 1.0, 0.0]),
        ComplexMatrix::diag_real(&[0.0, 0.0, 1.0]),
    ])
    .expect("projectors are complete")
}

/// Two-outcome local filter on a qutrit:
/// `A0 = diag(1, √(1-q), √q)`, `A1 = diag(0, √q, √(1-q))`.
pub fn qutrit_filter(q: f64) -> Result<KrausChannel> {
    if !(q > 0.0 && q < 1.0) {
        return Err(Error::ParameterOutOfRange {
            name: "q",
            value: q,
            range: "(0, 1)",
        });
    }
    KrausChannel::new(vec![
        ComplexMatrix::diag_real(&[1.0, (1.0 - q).sqrt(), q.sqrt()]),
        ComplexMatrix::diag_real(&[0.0, q.sqrt(), (1.0 - q).sqrt()]),
    ])
}

/// Qubit channel sending every input to I/2.
pub fn fully_depolarizing() -> KrausChannel {
    let h = 0.5;
    KrausChannel::new(vec![
        ComplexMatrix::identity(2).scale_real(h),
        ComplexMatrix::from_real(2, 2, &[0.0, h, h, 0.0]),
        ComplexMatrix::from_fn(2, 2, |i, j| match (i, j) {
            (0, 1) => c(0.0, -h),
            (1, 0) => c(0.0, h),
            _ => c(0.0, 0.0),
        }),
        ComplexMatrix::diag_real(&[h, -h]),
    ])
    .expect("Pauli channel is complete")
}

/// `(E ⊗ I)(rho)` or `(I ⊗ E)(rho)`.
pub fn apply_local(channel: &KrausChannel, rho: &DensityMatrix, side: Subsystem) -> Result<DensityMatrix> {
    let d = rho.dim(side);
    if channel.dim_in != d {
        return Err(Error::dims(format!("channel input dimension {d}"), channel.dim_in));
    }
    let other = match side {
        Subsystem::A => rho.dim_b(),
        Subsystem::B => rho.dim_a(),
    };
    let n_out = channel.dim_out * other;
    let mut out = ComplexMatrix::zeros(n_out, n_out);
    for k in &channel.ops {
        let big = lift(k, side, other);
        out = &out + &big.matmul(rho.matrix()).matmul(&big.adjoint());
    }
    let (da, db) = match side {
        Subsystem::A => (channel.dim_out, rho.dim_b()),
        Subsystem::B => (rho.dim_a(), channel.dim_out),
    };
    Ok(DensityMatrix::from_trusted(da, db, out))
}

/// Single Kraus branch `K rho K^dag / p` together with its probability `p`.
/// Returns `None` when the branch has zero probability.
pub fn apply_branch(op: &ComplexMatrix, rho: &DensityMatrix, side: Subsystem) -> Result<Option<(f64, DensityMatrix)>> {
    let d = rho.dim(side);
    if op.cols() != d {
        return Err(Error::dims(format!("operator input dimension {d}"), op.cols()));
    }
    let other = match side {
        Subsystem::A => rho.dim_b(),
        Subsystem::B => rho.dim_a(),
    };
    let big = lift(op, side, other);
    let unnorm = big.matmul(rho.matrix()).matmul(&big.adjoint());
    let p = unnorm.trace().re;
    if p <= 0.0 {
        return Ok(None);
    }
    let (da, db) = match side {
        Subsystem::A => (op.rows(), rho.dim_b()),
        Subsystem::B => (rho.dim_a(), op.rows()),
    };
    Ok(Some((
        p,
        DensityMatrix::from_trusted(da, db, unnorm.scale_real(1.0 / p)),
    )))
}

/// Pure-state version of [`apply_branch`]: normalised `(K ⊗ I)|psi>` and its probability.
pub fn apply_branch_pure(op: &ComplexMatrix, psi: &PureState, side: Subsystem) -> Result<Option<(f64, PureState)>> {
    let (da, db) = (psi.dim_a(), psi.dim_b());
    let (d, other) = match side {
        Subsystem::A => (da, db),
        Subsystem::B => (db, da),
    };
    if op.cols() != d || op.rows() != d {
        return Err(Error::dims(
            format!("{d}x{d} operator"),
            format!("{}x{}", op.rows(), op.cols()),
        ));
    }
    let amps = lift(op, side, other).apply(psi.amplitudes());
    let p: f64 = amps.iter().map(|z| z.norm_sqr()).sum();
    if p <= 0.0 {
        return Ok(None);
    }
    let (state, _) = PureState::normalized(da, db, amps)?;
    Ok(Some((p, state)))
}

/// `(U ⊗ I) rho (U ⊗ I)^dag` or the `I ⊗ U` form.
pub fn local_unitary(rho: &DensityMatrix, u: &ComplexMatrix, side: Subsystem) -> Result<DensityMatrix> {
    check_unitary(u)?;
    if u.rows() != rho.dim(side) {
        return Err(Error::dims(
            format!("{0}x{0} unitary", rho.dim(side)),
            format!("{0}x{0}", u.rows()),
        ));
    }
    let other = match side {
        Subsystem::A => rho.dim_b(),
        Subsystem::B => rho.dim_a(),
    };
    let big = lift(u, side, other);
    let out = big.matmul(rho.matrix()).matmul(&big.adjoint());
    Ok(DensityMatrix::from_trusted(rho.dim_a(), rho.dim_b(), out))
}

/// LOCC map `rho -> (1 - ε) rho + ε |00><00|` on two qubits.
///
/// Both parties discard their qubit with shared probability ε and prepare
/// `|0>`, so the map is LOCC even though it is not a one-sided Kraus channel.
pub fn replace_with_00(rho: &DensityMatrix, epsilon: f64) -> Result<DensityMatrix> {
    if !rho.is_two_qubit() {
        return Err(Error::UnsupportedDimension {
            supported: "two-qubit states",
            found: format!("{}x{}", rho.dim_a(), rho.dim_b()),
        });
    }
    check_unit_interval("epsilon", epsilon)?;
    let zero = DensityMatrix::from_trusted(2, 2, ComplexMatrix::diag_real(&[1.0, 0.0, 0.0, 0.0]));
    rho.mix(&zero, epsilon)
}

/// `(E ⊗ I)(|Φ_d><Φ_d|)` with the normalised maximally entangled input.
pub fn choi_matrix(channel: &KrausChannel) -> Result<DensityMatrix> {
    let d = channel.dim_in;
    if channel.dim_out != d || d > 3 {
        return Err(Error::dims(
            "dim_in = dim_out <= 3",
            format!("dim_in = {}, dim_out = {}", channel.dim_in, channel.dim_out),
        ));
    }
    let amp = 1.0 / (d as f64).sqrt();
    let terms: Vec<_> = (0..d).map(|i| (i, i, c(amp, 0.0))).collect();
    let phi = PureState::from_terms(d, d, &terms)?;
    apply_local(channel, &DensityMatrix::from_pure(&phi), Subsystem::A)
}

/// Entanglement-breaking verdict for a qubit channel, with the minimum
/// partial-transpose eigenvalue of its Choi matrix as witness.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct EntanglementBreaking {
    pub breaking: bool,
    pub choi_min_pt_eigenvalue: f64,
}

/// Qubit channels only: the Choi matrix is 2⊗2 where PPT is equivalent to
/// separability. Larger dimensions are refused rather than answered with a
/// PPT-only verdict.
pub fn is_entanglement_breaking(channel: &KrausChannel) -> Result<EntanglementBreaking> {
    if channel.dim_in != 2 || channel.dim_out != 2 {
        return Err(Error::UnsupportedDimension {
            supported: "qubit channels",
            found: format!("{} -> {}", channel.dim_in, channel.dim_out),
        });
    }
    let choi = choi_matrix(channel)?;
    let mu = hermitian_eigen(&choi.partial_transpose(Subsystem::B))?.min();
    Ok(EntanglementBreaking {
        breaking: mu >= -tolerance::PSD,
        choi_min_pt_eigenvalue: mu,
    })
}

/// One-parameter family of channels over a closed interval.
#[derive(Clone)]
pub struct ChannelFamily {
    name: String,
    parameter: String,
    domain: (f64, f64),
    generator: Arc<dyn Fn(f64) -> Result<KrausChannel> + Send + Sync>,
}

impl ChannelFamily {
    pub fn new(
        name: impl Into<String>,
        parameter: impl Into<String>,
        domain: (f64, f64),
        generator: impl Fn(f64) -> Result<KrausChannel> + Send + Sync + 'static,
    ) -> Self {
        Self {
            name: name.into(),
            parameter: parameter.into(),
            domain,
            generator: Arc::new(generator),
        }
    }

    pub fn phase_damping() -> Self {
        Self::new("phase-damping", "lambda", (0.0, 1.0), phase_damping)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn parameter(&self) -> &str {
        &self.parameter
    }

    pub fn domain(&self) -> (f64, f64) {
        self.domain
    }

    pub fn at(&self, value: f64) -> Result<KrausChannel> {
        let (lo, hi) = self.domain;
        if !(lo..=hi).contains(&value) {
            return Err(Error::ParameterOutOfRange {
                name: "family parameter",
                value,
                range: "family domain",
            });
        }
        (self.generator)(value)
    }

    /// Generates the channel at `points` evenly spaced parameters (endpoints
    /// included); each one is validated on construction.
    pub fn validate_grid(&self, points: usize) -> Result<f64> {
        let (lo, hi) = self.domain;
        let mut worst: f64 = 0.0;
        for k in 0..points.max(2) {
            let x = lo + (hi - lo) * k as f64 / (points.max(2) - 1) as f64;
            worst = worst.max(self.at(x)?.completeness_error());
        }
        Ok(worst)
    }
}

impl fmt::Debug for ChannelFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ChannelFamily")
            .field("name", &self.name)
            .field("parameter", &self.parameter)
            .field("domain", &self.domain)
            .finish()
    }
}
