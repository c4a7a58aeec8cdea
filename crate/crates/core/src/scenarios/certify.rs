//! Machine-checkable evidence for state ordering changes.
//!
//! "For every LOCC-monotone measure" cannot be checked by enumeration. The
//! certificates instead check the sufficient structure used by the
//! construction: the input pair is linked by an explicit chain of LOCC
//! primitives, one output is separable, and negativity witnesses the
//! strict inequalities.

use serde::Serialize;

use super::solve::{solve_t_threshold, SolveOptions};
use super::states::rho3_in;
use crate::channels::{apply_branch, apply_local, local_unitary, replace_with_00, KrausChannel};
use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::measures::{entanglement_of_formation, negativity, ppt_separability, SeparabilityVerdict};
use crate::state::{DensityMatrix, Subsystem};
use crate::tolerance;

/// Max-norm slack when comparing the end of an LOCC chain with its target.
pub const CHAIN_MATCH: f64 = 1e-12;

/// E_f of the last sequence member must fall below this.
pub const VANISHING_EOF: f64 = 1e-6;

pub const MEASURE_NOTE: &str = "ordering holds for every LOCC-monotone measure by the explicit LOCC chain \
    and the separable output; negativity witnesses the strict inequalities";

/// Whitelisted LOCC primitives.
#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LoccStep {
    LocalUnitary {
        side: Subsystem,
        unitary: ComplexMatrix,
    },
    /// Both parties replace their qubits by `|0>` with shared probability ε.
    #[serde(rename = "replace_with_00")]
    ReplaceWith00 {
        epsilon: f64,
    },
    /// Local filter on `side`, outcome broadcast, then outcome-dependent
    /// local unitaries `(U_k on A, V_k on B)`.
    FilterWithCorrection {
        side: Subsystem,
        filter: KrausChannel,
        corrections: Vec<(ComplexMatrix, ComplexMatrix)>,
    },
}

impl LoccStep {
    pub fn name(&self) -> &'static str {
        match self {
            LoccStep::LocalUnitary { .. } => "local_unitary",
            LoccStep::ReplaceWith00 { .. } => "replace_with_00",
            LoccStep::FilterWithCorrection { .. } => "filter_with_correction",
        }
    }

    pub fn apply(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        match self {
            LoccStep::LocalUnitary { side, unitary } => local_unitary(rho, unitary, *side),
            LoccStep::ReplaceWith00 { epsilon } => replace_with_00(rho, *epsilon),
            LoccStep::FilterWithCorrection {
                side,
                filter,
                corrections,
            } => {
                if corrections.len() != filter.ops().len() {
                    return Err(Error::dims(
                        format!("{} corrections", filter.ops().len()),
                        corrections.len(),
                    ));
                }
                let mut acc: Option<ComplexMatrix> = None;
                let mut dims = (rho.dim_a(), rho.dim_b());
                for (op, (u, v)) in filter.ops().iter().zip(corrections) {
                    let Some((p, branch)) = apply_branch(op, rho, *side)? else {
                        continue;
                    };
                    let branch = local_unitary(&branch, u, Subsystem::A)?;
                    let branch = local_unitary(&branch, v, Subsystem::B)?;
                    dims = (branch.dim_a(), branch.dim_b());
                    let term = branch.into_matrix().scale_real(p);
                    acc = Some(match acc {
                        Some(sum) => &sum + &term,
                        None => term,
                    });
                }
                let mat = acc.ok_or(Error::InvariantViolated {
                    kind: "filter",
                    invariant: "some outcome has non-zero probability",
                    slack: 0.0,
                })?;
                DensityMatrix::new(dims.0, dims.1, mat)
            }
        }
    }
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct LoccChain {
    pub steps: Vec<LoccStep>,
}

impl LoccChain {
    pub fn new(steps: Vec<LoccStep>) -> Self {
        Self { steps }
    }

    pub fn apply(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        self.steps.iter().try_fold(rho.clone(), |acc, step| step.apply(&acc))
    }

    pub fn step_names(&self) -> Vec<&'static str> {
        self.steps.iter().map(LoccStep::name).collect()
    }

    /// `U^dag` on `side` followed by the replace-with-|00> map: the chain that
    /// takes the rotated state back and adds noise.
    pub fn undo_rotation_then_replace(u: &ComplexMatrix, side: Subsystem, epsilon: f64) -> Self {
        Self::new(vec![
            LoccStep::LocalUnitary {
                side,
                unitary: u.adjoint(),
            },
            LoccStep::ReplaceWith00 { epsilon },
        ])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Piece {
    /// N(ω1) > N(ω2).
    StrictInputInequality,
    /// ω2 is reached from ω1 by the LOCC chain.
    InputOrder,
    /// E(ω1) is separable.
    OutputSeparable,
    /// E(ω2) has μ_min < 0.
    OutputEntangled,
    /// (a) consecutive members linked by LOCC with non-increasing negativity.
    SequenceOrder,
    /// (b) N(ω1) > N(first member) and every member's output stays entangled.
    StrictOrdering,
    /// (c) E_f of the last member below [`VANISHING_EOF`].
    VanishingFormation,
}

impl Piece {
    pub fn as_str(self) -> &'static str {
        match self {
            Piece::StrictInputInequality => "strict_input_inequality",
            Piece::InputOrder => "input_order",
            Piece::OutputSeparable => "output_separable",
            Piece::OutputEntangled => "output_entangled",
            Piece::SequenceOrder => "sequence_order",
            Piece::StrictOrdering => "strict_ordering",
            Piece::VanishingFormation => "vanishing_formation",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PieceResult {
    pub piece: Piece,
    pub passed: bool,
    pub detail: String,
}

impl PieceResult {
    fn new(piece: Piece, passed: bool, detail: String) -> Self {
        Self { piece, passed, detail }
    }
}

fn first_failure(pieces: &[PieceResult]) -> Option<Piece> {
    pieces.iter().find(|p| !p.passed).map(|p| p.piece)
}

fn failure_error(pieces: &[PieceResult]) -> Option<Error> {
    pieces.iter().find(|p| !p.passed).map(|p| Error::CertificateFailure {
        piece: p.piece.as_str().to_string(),
        detail: p.detail.clone(),
    })
}

/// Interval of t for which `E_f(rho3_in(t)) < g(rho2_in)`, reported as
/// `(0, t*]`: open at 0, where both sides degenerate, closed at the solved root.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct StrictWindow {
    pub lo: f64,
    pub hi: f64,
    pub lo_open: bool,
    pub hi_open: bool,
}

impl StrictWindow {
    pub fn for_replace_family() -> Result<Self> {
        Ok(Self {
            lo: 0.0,
            hi: solve_t_threshold(&SolveOptions::default())?.value,
            lo_open: true,
            hi_open: false,
        })
    }

    pub fn contains(&self, t: f64) -> bool {
        let above = if self.lo_open { t > self.lo } else { t >= self.lo };
        let below = if self.hi_open { t < self.hi } else { t <= self.hi };
        above && below
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct OrderingCertificate {
    pub valid: bool,
    pub failed_piece: Option<Piece>,
    pub pieces: Vec<PieceResult>,
    pub input_negativity: (f64, f64),
    pub output_negativity: (f64, f64),
    pub output_min_pt_eigenvalue: (f64, f64),
    pub chain: Vec<&'static str>,
    pub strict_window: Option<StrictWindow>,
    pub note: &'static str,
}

impl OrderingCertificate {
    pub fn into_result(self) -> Result<Self> {
        match failure_error(&self.pieces) {
            Some(err) => Err(err),
            None => Ok(self),
        }
    }

    pub fn with_strict_window(mut self, window: StrictWindow) -> Self {
        self.strict_window = Some(window);
        self
    }
}

/// Certifies that `channel` on side A breaks ω1 selectively against ω2.
///
/// Pieces are evaluated in the order strict input inequality, input order,
/// output separable, output entangled; all are reported and the first
/// failure is named.
pub fn certify_selective_breaking(
    channel: &KrausChannel,
    omega1: &DensityMatrix,
    omega2: &DensityMatrix,
    chain: &LoccChain,
) -> Result<OrderingCertificate> {
    let (n1, _) = negativity(omega1)?;
    let (n2, _) = negativity(omega2)?;
    let out1 = apply_local(channel, omega1, Subsystem::A)?;
    let out2 = apply_local(channel, omega2, Subsystem::A)?;
    let (m1, mu1) = negativity(&out1)?;
    let (m2, mu2) = negativity(&out2)?;

    let mut pieces = Vec::with_capacity(4);
    pieces.push(PieceResult::new(
        Piece::StrictInputInequality,
        n1 - n2 > tolerance::STRICT_MARGIN,
        format!("N(omega1) = {n1:.15}, N(omega2) = {n2:.15}"),
    ));
    pieces.push(match chain.apply(omega1) {
        Ok(reached) => {
            let dev = reached.max_abs_diff(omega2);
            PieceResult::new(
                Piece::InputOrder,
                dev <= CHAIN_MATCH,
                format!("chain {:?} reaches omega2 within {dev:e}", chain.step_names()),
            )
        }
        Err(e) => PieceResult::new(Piece::InputOrder, false, format!("chain cannot be applied: {e}")),
    });
    let sep = ppt_separability(&out1)?;
    pieces.push(PieceResult::new(
        Piece::OutputSeparable,
        sep.verdict == SeparabilityVerdict::Separable,
        format!("E(omega1): mu_min = {mu1:e}, verdict {:?}", sep.verdict),
    ));
    pieces.push(PieceResult::new(
        Piece::OutputEntangled,
        mu2 < -tolerance::PSD,
        format!("E(omega2): mu_min = {mu2:e}, N = {m2:e}"),
    ));

    Ok(OrderingCertificate {
        valid: pieces.iter().all(|p| p.passed),
        failed_piece: first_failure(&pieces),
        pieces,
        input_negativity: (n1, n2),
        output_negativity: (m1, m2),
        output_min_pt_eigenvalue: (mu1, mu2),
        chain: chain.step_names(),
        strict_window: None,
        note: MEASURE_NOTE,
    })
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SequenceSample {
    pub t: f64,
    pub input_negativity: f64,
    pub output_negativity: f64,
    pub output_min_pt_eigenvalue: f64,
    pub entanglement_of_formation: f64,
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct StrongCertificate {
    pub valid: bool,
    pub failed_piece: Option<Piece>,
    pub pieces: Vec<PieceResult>,
    pub omega1_negativity: f64,
    pub omega1_output_min_pt_eigenvalue: f64,
    pub samples: Vec<SequenceSample>,
    pub eof_tail: f64,
    pub note: &'static str,
}

impl StrongCertificate {
    pub fn into_result(self) -> Result<Self> {
        match failure_error(&self.pieces) {
            Some(err) => Err(err),
            None => Ok(self),
        }
    }
}

/// `t_j = t0 * 2^-j` for `j = 0..=last`.
pub fn geometric_sequence(t0: f64, last: usize) -> Vec<f64> {
    (0..=last).map(|j| t0 * 0.5f64.powi(j as i32)).collect()
}

/// Strong selective breaking against the sequence `rho3_in(t_j)`.
///
/// `link` must take ω1 to `rho3_in(t_0)`; consecutive members are linked by
/// the replace-with-|00> map with `ε_j = 1 - t_{j+1} / t_j`. An infinite
/// sequence is represented by its samples, with the limit in (c) checked by
/// threshold at the last one.
pub fn certify_strong_selective_breaking(
    channel: &KrausChannel,
    omega1: &DensityMatrix,
    link: &LoccChain,
    ts: &[f64],
) -> Result<StrongCertificate> {
    if ts.is_empty() {
        return Err(Error::InvariantViolated {
            kind: "sequence",
            invariant: "at least one member",
            slack: 0.0,
        });
    }
    let (n1, _) = negativity(omega1)?;
    let out1 = apply_local(channel, omega1, Subsystem::A)?;
    let (_, mu1) = negativity(&out1)?;

    let members = ts.iter().map(|&t| rho3_in(t)).collect::<Result<Vec<_>>>()?;
    let mut samples = Vec::with_capacity(ts.len());
    for (&t, rho) in ts.iter().zip(&members) {
        let (n_in, _) = negativity(rho)?;
        let (n_out, mu_out) = negativity(&apply_local(channel, rho, Subsystem::A)?)?;
        samples.push(SequenceSample {
            t,
            input_negativity: n_in,
            output_negativity: n_out,
            output_min_pt_eigenvalue: mu_out,
            entanglement_of_formation: entanglement_of_formation(rho)?,
        });
    }

    let mut pieces = Vec::with_capacity(4);

    // (a)
    let mut order_problems = Vec::new();
    match link.apply(omega1) {
        Ok(reached) if reached.max_abs_diff(&members[0]) <= CHAIN_MATCH => {}
        Ok(reached) => order_problems.push(format!(
            "link misses first member by {:e}",
            reached.max_abs_diff(&members[0])
        )),
        Err(e) => order_problems.push(format!("link cannot be applied: {e}")),
    }
    if n1 + tolerance::STRICT_MARGIN < samples[0].input_negativity {
        order_problems.push("N(omega1) below first member".into());
    }
    for j in 1..members.len() {
        let (prev, next) = (ts[j - 1], ts[j]);
        let epsilon = if prev > 0.0 { 1.0 - next / prev } else { f64::NAN };
        match replace_with_00(&members[j - 1], epsilon) {
            Ok(reached) if reached.max_abs_diff(&members[j]) <= CHAIN_MATCH => {}
            _ => order_problems.push(format!("no replace step from t = {prev} to t = {next}")),
        }
        if samples[j].input_negativity > samples[j - 1].input_negativity + tolerance::STRICT_MARGIN {
            order_problems.push(format!("negativity increases at j = {j}"));
        }
    }
    pieces.push(PieceResult::new(
        Piece::SequenceOrder,
        order_problems.is_empty(),
        if order_problems.is_empty() {
            format!("{} members linked by replace_with_00", members.len())
        } else {
            order_problems.join("; ")
        },
    ));

    // (b)
    let strict_input = n1 - samples[0].input_negativity > tolerance::STRICT_MARGIN;
    let worst_output = samples
        .iter()
        .map(|s| s.output_min_pt_eigenvalue)
        .fold(f64::NEG_INFINITY, f64::max);
    pieces.push(PieceResult::new(
        Piece::StrictOrdering,
        strict_input && worst_output < -tolerance::PSD,
        format!(
            "N(omega1) = {n1:.15} vs N(first) = {:.15}; largest output mu_min over members = {worst_output:e}",
            samples[0].input_negativity
        ),
    ));

    // (c)
    let eof_tail = samples.last().map(|s| s.entanglement_of_formation).unwrap_or(f64::NAN);
    pieces.push(PieceResult::new(
        Piece::VanishingFormation,
        eof_tail < VANISHING_EOF,
        format!("E_f(last member) = {eof_tail:e}"),
    ));

    // (d)
    let sep = ppt_separability(&out1)?;
    pieces.push(PieceResult::new(
        Piece::OutputSeparable,
        sep.verdict == SeparabilityVerdict::Separable,
        format!("E(omega1): mu_min = {mu1:e}, verdict {:?}", sep.verdict),
    ));

    Ok(StrongCertificate {
        valid: pieces.iter().all(|p| p.passed),
        failed_piece: first_failure(&pieces),
        pieces,
        omega1_negativity: n1,
        omega1_output_min_pt_eigenvalue: mu1,
        samples,
        eof_tail,
        note: MEASURE_NOTE,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::phase_damping;
    use crate::scenarios::closed_form::lambda_1;
    use crate::scenarios::states::{rho2_in, u_a};

    fn builtin_chain(t: f64) -> LoccChain {
        LoccChain::undo_rotation_then_replace(&u_a(), Subsystem::A, 1.0 - 1.5 * t)
    }

    #[test]
    fn builtin_instance_is_certified() {
        let ch = phase_damping(lambda_1()).unwrap();
        let t = 1.0 / 3.0;
        let cert = certify_selective_breaking(&ch, &rho2_in(), &rho3_in(t).unwrap(), &builtin_chain(t)).unwrap();
        assert!(cert.valid, "{:#?}", cert.pieces);
        assert!(cert.failed_piece.is_none());
        assert_eq!(cert.chain, vec!["local_unitary", "replace_with_00"]);
    }

    #[test]
    fn t_two_thirds_fails_strict_inequality() {
        let ch = phase_damping(lambda_1()).unwrap();
        let t = 2.0 / 3.0;
        let cert = certify_selective_breaking(&ch, &rho2_in(), &rho3_in(t).unwrap(), &builtin_chain(t)).unwrap();
        assert!(!cert.valid);
        assert_eq!(cert.failed_piece, Some(Piece::StrictInputInequality));
        // only that piece fails: the chain with ε = 0 is still exact
        assert_eq!(cert.pieces.iter().filter(|p| !p.passed).count(), 1);
        assert!(matches!(cert.into_result(), Err(Error::CertificateFailure { .. })));
    }

    #[test]
    fn identity_channel_fails_output_separable() {
        let t = 1.0 / 3.0;
        let cert = certify_selective_breaking(
            &KrausChannel::identity(2),
            &rho2_in(),
            &rho3_in(t).unwrap(),
            &builtin_chain(t),
        )
        .unwrap();
        assert_eq!(cert.failed_piece, Some(Piece::OutputSeparable));
    }

    #[test]
    fn wrong_chain_fails_input_order() {
        let ch = phase_damping(lambda_1()).unwrap();
        let chain = LoccChain::new(vec![LoccStep::ReplaceWith00 { epsilon: 0.5 }]);
        let cert = certify_selective_breaking(&ch, &rho2_in(), &rho3_in(1.0 / 3.0).unwrap(), &chain).unwrap();
        assert_eq!(cert.failed_piece, Some(Piece::InputOrder));
    }

    #[test]
    fn strong_builtin_instance() {
        let ch = phase_damping(lambda_1()).unwrap();
        let ts = geometric_sequence(1.0 / 3.0, 20);
        let cert = certify_strong_selective_breaking(&ch, &rho2_in(), &builtin_chain(ts[0]), &ts).unwrap();
        assert!(cert.valid, "{:#?}", cert.pieces);
        assert!(cert.eof_tail < 1e-6);
    }

    #[test]
    fn strong_fixed_sequence_fails_vanishing_formation() {
        let ch = phase_damping(lambda_1()).unwrap();
        let ts = vec![1.0 / 3.0; 21];
        let cert = certify_strong_selective_breaking(&ch, &rho2_in(), &builtin_chain(ts[0]), &ts).unwrap();
        assert_eq!(cert.failed_piece, Some(Piece::VanishingFormation));
    }

    #[test]
    fn strong_full_dephasing_fails_strict_ordering() {
        let ch = phase_damping(1.0).unwrap();
        let ts = geometric_sequence(1.0 / 3.0, 20);
        let cert = certify_strong_selective_breaking(&ch, &rho2_in(), &builtin_chain(ts[0]), &ts).unwrap();
        assert_eq!(cert.failed_piece, Some(Piece::StrictOrdering));
    }

    #[test]
    fn strict_window_contains_sampled_points() {
        let w = StrictWindow::for_replace_family().unwrap();
        assert!(w.contains(0.1) && w.contains(0.3) && w.contains(0.49));
        assert!(!w.contains(0.6) && !w.contains(0.0));
    }
}
