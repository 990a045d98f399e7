//! Entangled strategies and projective packings.
//!
//! Two strategy models are supported. A [`PmeStrategy`] fixes the shared
//! state to the canonical maximally entangled state and stores one projector
//! per question/answer pair; joint outcome probabilities reduce to the trace
//! identity `phi* (A x B) phi = tr(A B^T) / d`. A [`GeneralStrategy`] keeps
//! an arbitrary bipartite state plus POVMs for both players.
//!
//! For synchronous games, perfect general strategies convert to perfect PME
//! strategies whose Bob-side projectors are entrywise transposes of Alice's:
//! the conversion takes supports of Bob's residual states after restricting
//! the shared state to its Schmidt support ([`pme_from_perfect`]). Perfect
//! PME strategies and projective packings of the game graph of value `|Q|`
//! are two views of the same object ([`packing_from_strategy`] and
//! [`strategy_from_packing`]), and any packing certifies the entangled-value
//! lower bound `(gamma / |Q|)^2` ([`entangled_lower_bound`]).

pub mod format;
pub mod known;

use std::fmt;

use num_traits::ToPrimitive;
use thiserror::Error;

use crate::game::{NonlocalGame, SynchronousGame};
use crate::graph::Graph;
use crate::linalg::{cr, CMat};
use crate::reductions::game_graph;
use crate::C64;

/// Numerical tolerances for the quantum modules. All Frobenius-norm based
/// except `supp`, which is an eigenvalue cutoff.
#[derive(Clone, Debug)]
pub struct Tolerances {
    /// Hermiticity / idempotency / completeness slack for projectors.
    pub proj: f64,
    /// Eigenvalue slack below zero for POVM positivity.
    pub psd: f64,
    /// Allowed overlap `|tr(P_u P_v)|` across packing edges.
    pub orth: f64,
    /// Eigenvalue cutoff for support extraction.
    pub supp: f64,
    /// Slack when gating on "perfect" strategies or full-value packings.
    pub perfect: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { proj: 1e-8, psd: 1e-8, orth: 1e-8, supp: 1e-7, perfect: 1e-6 }
    }
}

#[derive(Debug, Error)]
pub enum QuantumError {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("strategy does not fit the game: {0}")]
    LabelMismatch(String),
    #[error("strategy fails validation: {0}")]
    InvalidStrategy(String),
    #[error("strategy value {value} is below the perfect gate 1 - {slack}")]
    NotPerfect { value: f64, slack: f64 },
    #[error("support projectors fail completeness at question {question:?}: residual {residual:.3e}")]
    SupportCompleteness { question: String, residual: f64 },
    #[error("packing fails validation: {0}")]
    InvalidPacking(String),
    #[error("packing value {value} is more than {slack} below the question count {target}")]
    PackingValueTooLow { value: f64, target: usize, slack: f64 },
    #[error("packing completeness fails at question {question:?}: residual {residual:.3e}")]
    CompletenessViolation { question: String, residual: f64 },
    #[error("operation requires a transpose-paired strategy")]
    RequiresTransposePaired,
    #[error("operation requires a symmetric synchronous game")]
    NotSymmetric,
    #[error("operation requires a uniform question distribution")]
    NotUniform,
    #[error("vertex set is not independent: {u:?} and {v:?} are adjacent")]
    NotIndependent { u: String, v: String },
}

/// One failed validity condition of a strategy, reported with its location.
#[derive(Clone, Debug)]
pub enum StrategyViolation {
    NotHermitian { side: &'static str, question: String, answer: String, error: f64 },
    NotIdempotent { side: &'static str, question: String, answer: String, error: f64 },
    NotPositive { side: &'static str, question: String, answer: String, min_eigenvalue: f64 },
    Incomplete { side: &'static str, question: String, residual: f64 },
    StateNotNormalized { norm: f64 },
}

impl fmt::Display for StrategyViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StrategyViolation::NotHermitian { side, question, answer, error } => write!(
                f,
                "{side} operator ({question}, {answer}) is not Hermitian (error {error:.3e})"
            ),
            StrategyViolation::NotIdempotent { side, question, answer, error } => write!(
                f,
                "{side} operator ({question}, {answer}) is not idempotent (error {error:.3e})"
            ),
            StrategyViolation::NotPositive { side, question, answer, min_eigenvalue } => write!(
                f,
                "{side} operator ({question}, {answer}) is not positive (min eigenvalue {min_eigenvalue:.3e})"
            ),
            StrategyViolation::Incomplete { side, question, residual } => write!(
                f,
                "{side} measurement for question {question} does not sum to identity (residual {residual:.3e})"
            ),
            StrategyViolation::StateNotNormalized { norm } => {
                write!(f, "shared state has norm {norm}, expected 1")
            }
        }
    }
}

/// Bob's side of a PME strategy.
#[derive(Clone, Debug)]
pub enum BobProjectors {
    /// Bob measures the entrywise transposes of Alice's projectors; only
    /// meaningful when the players share question and answer sets.
    TransposeOfAlice,
    /// Explicit projectors, indexed `r * |B| + b`.
    Explicit(Vec<CMat>),
}

/// Projective strategy on the canonical maximally entangled state.
#[derive(Clone, Debug)]
pub struct PmeStrategy {
    dim: usize,
    alice_questions: Vec<String>,
    alice_answers: Vec<String>,
    bob_questions: Vec<String>,
    bob_answers: Vec<String>,
    /// Alice's projectors, indexed `q * |A| + a`.
    alice: Vec<CMat>,
    bob: BobProjectors,
}

fn check_matrix_shapes(mats: &[CMat], dim: usize, expected: usize, what: &str) -> Result<(), QuantumError> {
    if mats.len() != expected {
        return Err(QuantumError::ShapeMismatch(format!(
            "{what}: expected {expected} matrices, found {}",
            mats.len()
        )));
    }
    for m in mats {
        if m.nrows() != dim || m.ncols() != dim {
            return Err(QuantumError::ShapeMismatch(format!(
                "{what}: expected {dim}x{dim} matrices, found {}x{}",
                m.nrows(),
                m.ncols()
            )));
        }
    }
    Ok(())
}

impl PmeStrategy {
    /// Strategy for a synchronous game where Bob plays transposes.
    pub fn transpose_paired(
        dim: usize,
        questions: Vec<String>,
        answers: Vec<String>,
        alice: Vec<CMat>,
    ) -> Result<Self, QuantumError> {
        check_matrix_shapes(&alice, dim, questions.len() * answers.len(), "alice projectors")?;
        Ok(PmeStrategy {
            dim,
            alice_questions: questions.clone(),
            alice_answers: answers.clone(),
            bob_questions: questions,
            bob_answers: answers,
            alice,
            bob: BobProjectors::TransposeOfAlice,
        })
    }

    /// Strategy with explicit projectors on both sides.
    #[allow(clippy::too_many_arguments)]
    pub fn with_explicit_bob(
        dim: usize,
        alice_questions: Vec<String>,
        alice_answers: Vec<String>,
        bob_questions: Vec<String>,
        bob_answers: Vec<String>,
        alice: Vec<CMat>,
        bob: Vec<CMat>,
    ) -> Result<Self, QuantumError> {
        check_matrix_shapes(&alice, dim, alice_questions.len() * alice_answers.len(), "alice projectors")?;
        check_matrix_shapes(&bob, dim, bob_questions.len() * bob_answers.len(), "bob projectors")?;
        Ok(PmeStrategy {
            dim,
            alice_questions,
            alice_answers,
            bob_questions,
            bob_answers,
            alice,
            bob: BobProjectors::Explicit(bob),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn alice_questions(&self) -> &[String] {
        &self.alice_questions
    }

    pub fn alice_answers(&self) -> &[String] {
        &self.alice_answers
    }

    pub fn bob_questions(&self) -> &[String] {
        &self.bob_questions
    }

    pub fn bob_answers(&self) -> &[String] {
        &self.bob_answers
    }

    pub fn is_transpose_paired(&self) -> bool {
        matches!(self.bob, BobProjectors::TransposeOfAlice)
    }

    pub fn alice_projector(&self, q: usize, a: usize) -> &CMat {
        &self.alice[q * self.alice_answers.len() + a]
    }

    /// The operator Bob actually measures for `(r, b)`.
    pub fn bob_operator(&self, r: usize, b: usize) -> CMat {
        match &self.bob {
            BobProjectors::TransposeOfAlice => {
                self.alice[r * self.alice_answers.len() + b].transpose()
            }
            BobProjectors::Explicit(bob) => bob[r * self.bob_answers.len() + b].clone(),
        }
    }

    /// `B_{br}^T`, the matrix that multiplies Alice's projector inside the
    /// maximally entangled trace identity.
    fn bob_operator_transposed(&self, r: usize, b: usize) -> CMat {
        match &self.bob {
            BobProjectors::TransposeOfAlice => {
                self.alice[r * self.alice_answers.len() + b].clone()
            }
            BobProjectors::Explicit(bob) => bob[r * self.bob_answers.len() + b].transpose(),
        }
    }

    /// Joint outcome probability `pr(a, b | q, r)` on the maximally
    /// entangled state.
    pub fn joint_probability(&self, q: usize, a: usize, r: usize, b: usize) -> f64 {
        let bt = self.bob_operator_transposed(r, b);
        self.alice_projector(q, a).trace_product(&bt).re / self.dim as f64
    }

    /// Checks Hermiticity, idempotency, and per-question completeness
    /// against `tol.proj`. Violations are data, not errors.
    pub fn validate(&self, tol: &Tolerances) -> Vec<StrategyViolation> {
        let mut out = Vec::new();
        let sides: [(&'static str, &[String], &[String]); 2] = [
            ("alice", &self.alice_questions, &self.alice_answers),
            ("bob", &self.bob_questions, &self.bob_answers),
        ];
        for (side, questions, answers) in sides {
            if side == "bob" && self.is_transpose_paired() {
                // Transposes of valid projectors are valid projectors.
                continue;
            }
            for (qi, q) in questions.iter().enumerate() {
                let mut sum = CMat::zeros(self.dim, self.dim);
                for (ai, a) in answers.iter().enumerate() {
                    let m = if side == "alice" {
                        self.alice_projector(qi, ai).clone()
                    } else {
                        self.bob_operator(qi, ai)
                    };
                    let herm = m.hermiticity_error();
                    if herm > tol.proj {
                        out.push(StrategyViolation::NotHermitian {
                            side,
                            question: q.clone(),
                            answer: a.clone(),
                            error: herm,
                        });
                    }
                    let idem = m.idempotency_error();
                    if idem > tol.proj {
                        out.push(StrategyViolation::NotIdempotent {
                            side,
                            question: q.clone(),
                            answer: a.clone(),
                            error: idem,
                        });
                    }
                    sum = sum.add(&m);
                }
                let residual = sum.sub(&CMat::identity(self.dim)).frobenius_norm();
                if residual > tol.proj {
                    out.push(StrategyViolation::Incomplete {
                        side,
                        question: q.clone(),
                        residual,
                    });
                }
            }
        }
        out
    }

    /// Verifies that the strategy's label sets match the game's.
    pub fn check_compatible(&self, game: &NonlocalGame) -> Result<(), QuantumError> {
        let pairs = [
            ("alice questions", &self.alice_questions, game.alice_questions()),
            ("bob questions", &self.bob_questions, game.bob_questions()),
            ("alice answers", &self.alice_answers, game.alice_answers()),
            ("bob answers", &self.bob_answers, game.bob_answers()),
        ];
        for (what, mine, theirs) in pairs {
            if mine.as_slice() != theirs {
                return Err(QuantumError::LabelMismatch(format!(
                    "{what} differ: strategy has {mine:?}, game has {theirs:?}"
                )));
            }
        }
        Ok(())
    }
}

/// Conditional win/loss masses for one question pair.
#[derive(Clone, Debug)]
pub struct PairBreakdown {
    pub q: usize,
    pub r: usize,
    /// Probability of a winning answer pair given `(q, r)`.
    pub win: f64,
    /// Probability of a losing answer pair given `(q, r)`.
    pub loss: f64,
}

fn prob_as_f64(game: &NonlocalGame, q: usize, r: usize) -> f64 {
    game.prob(q, r).to_f64().expect("question probabilities fit in f64")
}

/// Per-question-pair win/loss breakdown of a PME strategy.
pub fn eval_pme_breakdown(
    game: &NonlocalGame,
    s: &PmeStrategy,
) -> Result<Vec<PairBreakdown>, QuantumError> {
    s.check_compatible(game)?;
    let mut out = Vec::new();
    for q in 0..game.n_alice_questions() {
        for r in 0..game.n_bob_questions() {
            let mut win = 0.0;
            let mut loss = 0.0;
            for a in 0..game.n_alice_answers() {
                for b in 0..game.n_bob_answers() {
                    let p = s.joint_probability(q, a, r, b);
                    if game.wins(a, b, q, r) {
                        win += p;
                    } else {
                        loss += p;
                    }
                }
            }
            out.push(PairBreakdown { q, r, win, loss });
        }
    }
    Ok(out)
}

/// Winning probability of a PME strategy, summed question-major.
pub fn eval_pme(game: &NonlocalGame, s: &PmeStrategy) -> Result<f64, QuantumError> {
    let breakdown = eval_pme_breakdown(game, s)?;
    Ok(breakdown.iter().map(|pb| prob_as_f64(game, pb.q, pb.r) * pb.win).sum())
}

/// POVM strategy on an arbitrary bipartite pure state.
#[derive(Clone, Debug)]
pub struct GeneralStrategy {
    dim_alice: usize,
    dim_bob: usize,
    alice_questions: Vec<String>,
    alice_answers: Vec<String>,
    bob_questions: Vec<String>,
    bob_answers: Vec<String>,
    /// State vector of length `dim_alice * dim_bob`, index `i * dim_bob + j`.
    state: Vec<C64>,
    alice_povms: Vec<CMat>,
    bob_povms: Vec<CMat>,
}

impl GeneralStrategy {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        dim_alice: usize,
        dim_bob: usize,
        alice_questions: Vec<String>,
        alice_answers: Vec<String>,
        bob_questions: Vec<String>,
        bob_answers: Vec<String>,
        state: Vec<C64>,
        alice_povms: Vec<CMat>,
        bob_povms: Vec<CMat>,
    ) -> Result<Self, QuantumError> {
        if state.len() != dim_alice * dim_bob {
            return Err(QuantumError::ShapeMismatch(format!(
                "state has {} amplitudes, expected {}",
                state.len(),
                dim_alice * dim_bob
            )));
        }
        check_matrix_shapes(
            &alice_povms,
            dim_alice,
            alice_questions.len() * alice_answers.len(),
            "alice POVMs",
        )?;
        check_matrix_shapes(
            &bob_povms,
            dim_bob,
            bob_questions.len() * bob_answers.len(),
            "bob POVMs",
        )?;
        Ok(GeneralStrategy {
            dim_alice,
            dim_bob,
            alice_questions,
            alice_answers,
            bob_questions,
            bob_answers,
            state,
            alice_povms,
            bob_povms,
        })
    }

    /// Views a PME strategy as a general strategy on the canonical
    /// maximally entangled state.
    pub fn from_pme(s: &PmeStrategy) -> GeneralStrategy {
        let d = s.dim();
        let amp = cr(1.0 / (d as f64).sqrt());
        let mut state = vec![C64::new(0.0, 0.0); d * d];
        for i in 0..d {
            state[i * d + i] = amp;
        }
        let mut alice_povms = Vec::new();
        for q in 0..s.alice_questions.len() {
            for a in 0..s.alice_answers.len() {
                alice_povms.push(s.alice_projector(q, a).clone());
            }
        }
        let mut bob_povms = Vec::new();
        for r in 0..s.bob_questions.len() {
            for b in 0..s.bob_answers.len() {
                bob_povms.push(s.bob_operator(r, b));
            }
        }
        GeneralStrategy {
            dim_alice: d,
            dim_bob: d,
            alice_questions: s.alice_questions.clone(),
            alice_answers: s.alice_answers.clone(),
            bob_questions: s.bob_questions.clone(),
            bob_answers: s.bob_answers.clone(),
            state,
            alice_povms,
            bob_povms,
        }
    }

    pub fn dim_alice(&self) -> usize {
        self.dim_alice
    }

    pub fn dim_bob(&self) -> usize {
        self.dim_bob
    }

    pub fn alice_questions(&self) -> &[String] {
        &self.alice_questions
    }

    pub fn alice_answers(&self) -> &[String] {
        &self.alice_answers
    }

    pub fn bob_questions(&self) -> &[String] {
        &self.bob_questions
    }

    pub fn bob_answers(&self) -> &[String] {
        &self.bob_answers
    }

    pub fn state(&self) -> &[C64] {
        &self.state
    }

    pub fn alice_povm(&self, q: usize, a: usize) -> &CMat {
        &self.alice_povms[q * self.alice_answers.len() + a]
    }

    pub fn bob_povm(&self, r: usize, b: usize) -> &CMat {
        &self.bob_povms[r * self.bob_answers.len() + b]
    }

    /// The state vector reshaped to a `dim_alice x dim_bob` matrix.
    fn state_matrix(&self) -> CMat {
        CMat::from_fn(self.dim_alice, self.dim_bob, |i, j| self.state[i * self.dim_bob + j])
    }

    pub fn check_compatible(&self, game: &NonlocalGame) -> Result<(), QuantumError> {
        let pairs = [
            ("alice questions", &self.alice_questions, game.alice_questions()),
            ("bob questions", &self.bob_questions, game.bob_questions()),
            ("alice answers", &self.alice_answers, game.alice_answers()),
            ("bob answers", &self.bob_answers, game.bob_answers()),
        ];
        for (what, mine, theirs) in pairs {
            if mine.as_slice() != theirs {
                return Err(QuantumError::LabelMismatch(format!(
                    "{what} differ: strategy has {mine:?}, game has {theirs:?}"
                )));
            }
        }
        Ok(())
    }

    /// Checks positivity, completeness, and state normalization.
    pub fn validate(&self, tol: &Tolerances) -> Vec<StrategyViolation> {
        let mut out = Vec::new();
        let norm = self.state.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > tol.proj {
            out.push(StrategyViolation::StateNotNormalized { norm });
        }
        validate_povm_side(
            "alice",
            &self.alice_questions,
            &self.alice_answers,
            &self.alice_povms,
            self.dim_alice,
            tol,
            &mut out,
        );
        validate_povm_side(
            "bob",
            &self.bob_questions,
            &self.bob_answers,
            &self.bob_povms,
            self.dim_bob,
            tol,
            &mut out,
        );
        out
    }
}

/// Per-question-pair win/loss breakdown of a general strategy.
///
/// Uses `psi*(M x N)psi = tr(Psi* M Psi N^T)`: the middle factor depends
/// only on Alice's cell, so it is computed once and every predicate cell
/// reduces to an entrywise dot with Bob's POVM element.
pub fn eval_general_breakdown(
    game: &NonlocalGame,
    s: &GeneralStrategy,
) -> Result<Vec<PairBreakdown>, QuantumError> {
    s.check_compatible(game)?;
    let psi = s.state_matrix();
    let psi_adj = psi.adjoint();
    let (na, nb) = (game.n_alice_answers(), game.n_bob_answers());
    let compressed: Vec<CMat> = (0..game.n_alice_questions())
        .flat_map(|q| {
            let psi_adj = &psi_adj;
            let psi = &psi;
            (0..na).map(move |a| psi_adj.matmul(s.alice_povm(q, a)).matmul(psi))
        })
        .collect();
    let db = s.dim_bob;
    let mut out = Vec::new();
    for q in 0..game.n_alice_questions() {
        for r in 0..game.n_bob_questions() {
            let mut win = 0.0;
            let mut loss = 0.0;
            for a in 0..na {
                let lhs = &compressed[q * na + a];
                for b in 0..nb {
                    let rhs = s.bob_povm(r, b);
                    let mut p = 0.0;
                    for i in 0..db {
                        for j in 0..db {
                            p += (lhs[(i, j)] * rhs[(i, j)]).re;
                        }
                    }
                    if game.wins(a, b, q, r) {
                        win += p;
                    } else {
                        loss += p;
                    }
                }
            }
            out.push(PairBreakdown { q, r, win, loss });
        }
    }
    Ok(out)
}

fn validate_povm_side(
    side: &'static str,
    questions: &[String],
    answers: &[String],
    povms: &[CMat],
    dim: usize,
    tol: &Tolerances,
    out: &mut Vec<StrategyViolation>,
) {
    for (qi, q) in questions.iter().enumerate() {
        let mut sum = CMat::zeros(dim, dim);
        for (ai, a) in answers.iter().enumerate() {
            let m = &povms[qi * answers.len() + ai];
            let herm = m.hermiticity_error();
            if herm > tol.proj {
                out.push(StrategyViolation::NotHermitian {
                    side,
                    question: q.clone(),
                    answer: a.clone(),
                    error: herm,
                });
            }
            let (vals, _) = m.eigh();
            let min = vals.first().copied().unwrap_or(0.0);
            if min < -tol.psd {
                out.push(StrategyViolation::NotPositive {
                    side,
                    question: q.clone(),
                    answer: a.clone(),
                    min_eigenvalue: min,
                });
            }
            sum = sum.add(m);
        }
        let residual = sum.sub(&CMat::identity(dim)).frobenius_norm();
        if residual > tol.proj {
            out.push(StrategyViolation::Incomplete { side, question: q.clone(), residual });
        }
    }
}

/// Winning probability of a general strategy, summed question-major.
pub fn eval_general(game: &NonlocalGame, s: &GeneralStrategy) -> Result<f64, QuantumError> {
    let breakdown = eval_general_breakdown(game, s)?;
    Ok(breakdown.iter().map(|pb| prob_as_f64(game, pb.q, pb.r) * pb.win).sum())
}

/// Bob's residual states `rho_aq = tr_A((M_aq x I) psi psi*)`, indexed
/// `q * |A| + a`, for a strategy on a synchronous game.
pub fn residual_states(
    game: &SynchronousGame,
    s: &GeneralStrategy,
) -> Result<Vec<CMat>, QuantumError> {
    s.check_compatible(game.game())?;
    let psi = s.state_matrix();
    let psi_conj = psi.conj();
    let mut out = Vec::new();
    for q in 0..game.n_questions() {
        for a in 0..game.n_answers() {
            // tr_A((M x I) psi psi*) = (M Psi)^T conj(Psi)
            let rho = s.alice_povm(q, a).matmul(&psi).transpose().matmul(&psi_conj);
            out.push(rho);
        }
    }
    Ok(out)
}

/// Converts a (near-)perfect general strategy for a synchronous game into a
/// transpose-paired PME strategy.
///
/// The shared state is first restricted to its Schmidt support: eigenvectors
/// of Bob's reduced state with eigenvalue above `tol.supp`. Alice's new
/// projector for `(q, a)` is the support of Bob's residual state in that
/// basis. For exactly perfect inputs the result is perfect; for
/// `eps`-imperfect inputs the achieved value is reported by evaluation, not
/// guaranteed.
pub fn pme_from_perfect(
    game: &SynchronousGame,
    s: &GeneralStrategy,
    tol: &Tolerances,
) -> Result<PmeStrategy, QuantumError> {
    let value = eval_general(game.game(), s)?;
    if value < 1.0 - tol.perfect {
        return Err(QuantumError::NotPerfect { value, slack: tol.perfect });
    }
    let psi = s.state_matrix();
    let psi_conj = psi.conj();
    let rho_bob = psi.transpose().matmul(&psi_conj);
    let (vals, vecs) = rho_bob.eigh();
    let kept: Vec<usize> = (0..vals.len()).filter(|&i| vals[i] > tol.supp).collect();
    if kept.is_empty() {
        return Err(QuantumError::InvalidStrategy(
            "shared state has empty Schmidt support".into(),
        ));
    }
    let basis = vecs.columns(&kept); // dim_bob x k isometry
    let k = kept.len();

    let na = game.n_answers();
    let mut alice = Vec::with_capacity(game.n_questions() * na);
    for q in 0..game.n_questions() {
        let mut sum = CMat::zeros(k, k);
        for a in 0..na {
            let rho = s.alice_povm(q, a).matmul(&psi).transpose().matmul(&psi_conj);
            let restricted = basis.adjoint().matmul(&rho).matmul(&basis);
            let p = restricted.hermitize().support_projector(tol.supp);
            sum = sum.add(&p);
            alice.push(p);
        }
        let residual = sum.sub(&CMat::identity(k)).frobenius_norm();
        let gate = tol.proj.max(tol.perfect.sqrt());
        if residual > gate {
            return Err(QuantumError::SupportCompleteness {
                question: game.questions()[q].clone(),
                residual,
            });
        }
    }
    PmeStrategy::transpose_paired(
        k,
        game.questions().to_vec(),
        game.answers().to_vec(),
        alice,
    )
}

/// Projectors assigned to graph vertices, orthogonal across edges.
#[derive(Clone, Debug)]
pub struct ProjectivePacking {
    dim: usize,
    vertices: Vec<String>,
    projectors: Vec<CMat>,
}

/// One failed packing condition.
#[derive(Clone, Debug)]
pub enum PackingViolation {
    NotHermitian { vertex: String, error: f64 },
    NotIdempotent { vertex: String, error: f64 },
    EdgeOverlap { u: String, v: String, overlap: f64 },
}

impl fmt::Display for PackingViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PackingViolation::NotHermitian { vertex, error } => {
                write!(f, "projector at {vertex} is not Hermitian (error {error:.3e})")
            }
            PackingViolation::NotIdempotent { vertex, error } => {
                write!(f, "projector at {vertex} is not idempotent (error {error:.3e})")
            }
            PackingViolation::EdgeOverlap { u, v, overlap } => {
                write!(f, "projectors at edge ({u}, {v}) overlap: tr(Pu Pv) = {overlap:.3e}")
            }
        }
    }
}

impl ProjectivePacking {
    pub fn new(dim: usize, vertices: Vec<String>, projectors: Vec<CMat>) -> Result<Self, QuantumError> {
        check_matrix_shapes(&projectors, dim, vertices.len(), "packing projectors")?;
        Ok(ProjectivePacking { dim, vertices, projectors })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn projector(&self, u: usize) -> &CMat {
        &self.projectors[u]
    }

    /// Packing value `(1/d) sum_u tr(P_u)`.
    pub fn value(&self) -> f64 {
        let trace: f64 = self.projectors.iter().map(|p| p.trace().re).sum();
        trace / self.dim as f64
    }
}

/// Computes the packing value and every violated condition against the
/// graph. Violations are data, not errors; only mismatched vertex labels
/// fail outright.
pub fn validate_packing(
    x: &Graph,
    p: &ProjectivePacking,
    tol: &Tolerances,
) -> Result<(f64, Vec<PackingViolation>), QuantumError> {
    if p.vertices.as_slice() != x.vertices() {
        return Err(QuantumError::LabelMismatch(
            "packing vertices do not match the graph".into(),
        ));
    }
    let mut violations = Vec::new();
    for (u, proj) in p.projectors.iter().enumerate() {
        let herm = proj.hermiticity_error();
        if herm > tol.proj {
            violations.push(PackingViolation::NotHermitian {
                vertex: p.vertices[u].clone(),
                error: herm,
            });
        }
        let idem = proj.idempotency_error();
        if idem > tol.proj {
            violations.push(PackingViolation::NotIdempotent {
                vertex: p.vertices[u].clone(),
                error: idem,
            });
        }
    }
    for (u, v) in x.edges() {
        let overlap = p.projectors[u].trace_product(&p.projectors[v]).norm();
        if overlap > tol.orth {
            violations.push(PackingViolation::EdgeOverlap {
                u: p.vertices[u].clone(),
                v: p.vertices[v].clone(),
                overlap,
            });
        }
    }
    // A looped vertex is adjacent to itself: tr(P_u P_u) = tr(P_u) must
    // vanish, so its projector must be zero.
    for u in x.looped_vertices() {
        let overlap = p.projectors[u].trace_product(&p.projectors[u]).norm();
        if overlap > tol.orth {
            violations.push(PackingViolation::EdgeOverlap {
                u: p.vertices[u].clone(),
                v: p.vertices[u].clone(),
                overlap,
            });
        }
    }
    Ok((p.value(), violations))
}

/// Reads a perfect transpose-paired strategy as a projective packing of the
/// game graph, of value `|Q|`.
pub fn packing_from_strategy(
    game: &SynchronousGame,
    s: &PmeStrategy,
    tol: &Tolerances,
) -> Result<ProjectivePacking, QuantumError> {
    s.check_compatible(game.game())?;
    if !s.is_transpose_paired() {
        return Err(QuantumError::RequiresTransposePaired);
    }
    let value = eval_pme(game.game(), s)?;
    if value < 1.0 - tol.perfect {
        return Err(QuantumError::NotPerfect { value, slack: tol.perfect });
    }
    let x = game_graph(game);
    let na = game.n_answers();
    let mut projectors = Vec::with_capacity(x.n_vertices());
    for q in 0..game.n_questions() {
        for a in 0..na {
            projectors.push(s.alice_projector(q, a).clone());
        }
    }
    let packing = ProjectivePacking::new(s.dim(), x.vertices().to_vec(), projectors)?;
    let (_, violations) = validate_packing(&x, &packing, tol)?;
    if !violations.is_empty() {
        return Err(QuantumError::InvalidPacking(format!(
            "{} violations, first: {}",
            violations.len(),
            violations[0]
        )));
    }
    Ok(packing)
}

/// Rebuilds a transpose-paired strategy from a packing of the game graph
/// whose value is within `tol.perfect` of `|Q|`.
///
/// The full value forces each question's projectors to sum to the identity;
/// the residual is checked against a bound derived from the value deficit.
pub fn strategy_from_packing(
    game: &SynchronousGame,
    p: &ProjectivePacking,
    tol: &Tolerances,
) -> Result<PmeStrategy, QuantumError> {
    let x = game_graph(game);
    let (value, violations) = validate_packing(&x, p, tol)?;
    if !violations.is_empty() {
        return Err(QuantumError::InvalidPacking(format!(
            "{} violations, first: {}",
            violations.len(),
            violations[0]
        )));
    }
    let nq = game.n_questions();
    if value < nq as f64 - tol.perfect {
        return Err(QuantumError::PackingValueTooLow {
            value,
            target: nq,
            slack: tol.perfect,
        });
    }
    let na = game.n_answers();
    let deficit_gate =
        (p.dim() as f64 * tol.perfect).sqrt() + na as f64 * tol.proj;
    let mut alice = Vec::with_capacity(nq * na);
    for q in 0..nq {
        let mut sum = CMat::zeros(p.dim(), p.dim());
        for a in 0..na {
            let proj = p.projector(q * na + a).clone();
            sum = sum.add(&proj);
            alice.push(proj);
        }
        let residual = sum.sub(&CMat::identity(p.dim())).frobenius_norm();
        if residual > deficit_gate {
            return Err(QuantumError::CompletenessViolation {
                question: game.questions()[q].clone(),
                residual,
            });
        }
    }
    PmeStrategy::transpose_paired(p.dim(), game.questions().to_vec(), game.answers().to_vec(), alice)
}

/// A certified lower bound on the entangled value, with its witness.
#[derive(Clone, Debug)]
pub struct LowerBound {
    /// `(gamma / |Q|)^2`.
    pub bound: f64,
    /// The packing value `gamma`.
    pub packing_value: f64,
    /// Strategy achieving at least the bound: the packing's projectors per
    /// question, with the completion remainder mapped to the first answer.
    pub witness: PmeStrategy,
}

/// Lower-bounds the entangled value of a uniform synchronous game by
/// `(gamma / |Q|)^2` for any valid packing of its game graph, and returns
/// the explicit witness strategy. The witness evaluates to at least the
/// bound: losing cells contribute nothing by orthogonality, and the
/// remaining mass is at least `tr(P^2)/d >= tr(P)^2/d^2` by Cauchy-Schwarz.
pub fn entangled_lower_bound(
    game: &SynchronousGame,
    p: &ProjectivePacking,
    tol: &Tolerances,
) -> Result<LowerBound, QuantumError> {
    if !game.is_uniform() {
        return Err(QuantumError::NotUniform);
    }
    let x = game_graph(game);
    let (value, violations) = validate_packing(&x, p, tol)?;
    if !violations.is_empty() {
        return Err(QuantumError::InvalidPacking(format!(
            "{} violations, first: {}",
            violations.len(),
            violations[0]
        )));
    }
    let nq = game.n_questions();
    let na = game.n_answers();
    let bound = (value / nq as f64).powi(2);
    let mut alice = Vec::with_capacity(nq * na);
    for q in 0..nq {
        let mut sum = CMat::zeros(p.dim(), p.dim());
        for a in 0..na {
            sum = sum.add(p.projector(q * na + a));
        }
        let remainder = CMat::identity(p.dim()).sub(&sum);
        for a in 0..na {
            let proj = p.projector(q * na + a).clone();
            alice.push(if a == 0 { proj.add(&remainder) } else { proj });
        }
    }
    let witness = PmeStrategy::transpose_paired(
        p.dim(),
        game.questions().to_vec(),
        game.answers().to_vec(),
        alice,
    )?;
    Ok(LowerBound { bound, packing_value: value, witness })
}
