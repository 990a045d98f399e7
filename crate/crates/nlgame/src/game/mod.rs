//! Finite two-player nonlocal games with exact-rational distributions.
//!
//! A game couples four ordered label sets (Alice's and Bob's questions and
//! answers), a question distribution that must sum to exactly one, and a
//! total Boolean verification predicate stored as a dense table in row-major
//! `(a, b, q, r)` order. Everything here is exact; floating point only
//! appears in the quantum modules.

mod builders;
pub mod format;

pub use builders::{
    make_chsh, make_homomorphism_game, make_independent_set_game, make_magic_square,
};

use std::fmt;
use std::ops::Deref;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::Rat;

/// Default cap on predicate evaluations for [`classical_value`].
pub const DEFAULT_ENUMERATION_BUDGET: u128 = 100_000_000;

#[derive(Debug, Error)]
pub enum GameError {
    #[error("{0} set must be nonempty")]
    EmptySet(&'static str),
    #[error("label {0:?} is invalid: labels must be nonempty and free of whitespace, '#', and ':'")]
    BadLabel(String),
    #[error("duplicate label {0:?} in {1} set")]
    DuplicateLabel(String, &'static str),
    #[error("distribution table has {got} entries, expected {expected}")]
    DistributionShape { got: usize, expected: usize },
    #[error("distribution entry for ({q}, {r}) is negative: {value}")]
    NegativeProbability { q: String, r: String, value: Rat },
    #[error("distribution sums to {sum}, expected exactly 1")]
    DistributionSum { sum: Rat },
    #[error("predicate table has {got} entries, expected {expected}")]
    PredicateShape { got: usize, expected: usize },
    #[error(
        "enumeration budget exceeded: classical value requires {required} predicate \
         evaluations, budget is {budget}"
    )]
    BudgetExceeded { required: u128, budget: u128 },
    #[error("strategy maps {got} questions, expected {expected}")]
    StrategyShape { got: usize, expected: usize },
    #[error("strategy answer index {answer} out of range for {side}")]
    StrategyRange { side: &'static str, answer: usize },
    #[error("graph must be nonempty")]
    EmptyGraph,
    #[error("independent-set game requires t >= 1")]
    ZeroRounds,
}

fn check_labels(labels: &[String], which: &'static str) -> Result<(), GameError> {
    if labels.is_empty() {
        return Err(GameError::EmptySet(which));
    }
    for l in labels {
        if l.is_empty() || l.chars().any(|c| c.is_whitespace() || c == '#' || c == ':') {
            return Err(GameError::BadLabel(l.clone()));
        }
    }
    for (i, l) in labels.iter().enumerate() {
        if labels[..i].contains(l) {
            return Err(GameError::DuplicateLabel(l.clone(), which));
        }
    }
    Ok(())
}

/// A finite two-player nonlocal game.
#[derive(Clone, PartialEq)]
pub struct NonlocalGame {
    alice_questions: Vec<String>,
    bob_questions: Vec<String>,
    alice_answers: Vec<String>,
    bob_answers: Vec<String>,
    /// Exact probabilities, indexed `q * |R| + r`.
    distribution: Vec<Rat>,
    /// Dense 0/1 table, indexed `((a * |B| + b) * |Q| + q) * |R| + r`.
    predicate: Vec<bool>,
}

impl fmt::Debug for NonlocalGame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("NonlocalGame")
            .field("alice_questions", &self.alice_questions)
            .field("bob_questions", &self.bob_questions)
            .field("alice_answers", &self.alice_answers)
            .field("bob_answers", &self.bob_answers)
            .finish_non_exhaustive()
    }
}

impl NonlocalGame {
    /// Validated constructor from dense tables.
    pub fn from_parts(
        alice_questions: Vec<String>,
        bob_questions: Vec<String>,
        alice_answers: Vec<String>,
        bob_answers: Vec<String>,
        distribution: Vec<Rat>,
        predicate: Vec<bool>,
    ) -> Result<Self, GameError> {
        check_labels(&alice_questions, "alice question")?;
        check_labels(&bob_questions, "bob question")?;
        check_labels(&alice_answers, "alice answer")?;
        check_labels(&bob_answers, "bob answer")?;
        let (nq, nr) = (alice_questions.len(), bob_questions.len());
        let (na, nb) = (alice_answers.len(), bob_answers.len());
        if distribution.len() != nq * nr {
            return Err(GameError::DistributionShape {
                got: distribution.len(),
                expected: nq * nr,
            });
        }
        if predicate.len() != na * nb * nq * nr {
            return Err(GameError::PredicateShape {
                got: predicate.len(),
                expected: na * nb * nq * nr,
            });
        }
        for q in 0..nq {
            for r in 0..nr {
                let p = &distribution[q * nr + r];
                if p.is_negative() {
                    return Err(GameError::NegativeProbability {
                        q: alice_questions[q].clone(),
                        r: bob_questions[r].clone(),
                        value: p.clone(),
                    });
                }
            }
        }
        let sum: Rat = distribution.iter().sum();
        if !sum.is_one() {
            return Err(GameError::DistributionSum { sum });
        }
        Ok(NonlocalGame {
            alice_questions,
            bob_questions,
            alice_answers,
            bob_answers,
            distribution,
            predicate,
        })
    }

    /// Constructor from closures over index space.
    pub fn from_fns(
        alice_questions: Vec<String>,
        bob_questions: Vec<String>,
        alice_answers: Vec<String>,
        bob_answers: Vec<String>,
        mut dist: impl FnMut(usize, usize) -> Rat,
        mut pred: impl FnMut(usize, usize, usize, usize) -> bool,
    ) -> Result<Self, GameError> {
        let (nq, nr) = (alice_questions.len(), bob_questions.len());
        let (na, nb) = (alice_answers.len(), bob_answers.len());
        let mut distribution = Vec::with_capacity(nq * nr);
        for q in 0..nq {
            for r in 0..nr {
                distribution.push(dist(q, r));
            }
        }
        let mut predicate = Vec::with_capacity(na * nb * nq * nr);
        for a in 0..na {
            for b in 0..nb {
                for q in 0..nq {
                    for r in 0..nr {
                        predicate.push(pred(a, b, q, r));
                    }
                }
            }
        }
        NonlocalGame::from_parts(
            alice_questions,
            bob_questions,
            alice_answers,
            bob_answers,
            distribution,
            predicate,
        )
    }

    pub fn alice_questions(&self) -> &[String] {
        &self.alice_questions
    }

    pub fn bob_questions(&self) -> &[String] {
        &self.bob_questions
    }

    pub fn alice_answers(&self) -> &[String] {
        &self.alice_answers
    }

    pub fn bob_answers(&self) -> &[String] {
        &self.bob_answers
    }

    pub fn n_alice_questions(&self) -> usize {
        self.alice_questions.len()
    }

    pub fn n_bob_questions(&self) -> usize {
        self.bob_questions.len()
    }

    pub fn n_alice_answers(&self) -> usize {
        self.alice_answers.len()
    }

    pub fn n_bob_answers(&self) -> usize {
        self.bob_answers.len()
    }

    /// Probability of the question pair `(q, r)`, by index.
    pub fn prob(&self, q: usize, r: usize) -> &Rat {
        &self.distribution[q * self.bob_questions.len() + r]
    }

    /// Predicate value `V(a, b | q, r)`, by index.
    pub fn wins(&self, a: usize, b: usize, q: usize, r: usize) -> bool {
        let (nb, nq, nr) = (
            self.bob_answers.len(),
            self.alice_questions.len(),
            self.bob_questions.len(),
        );
        self.predicate[((a * nb + b) * nq + q) * nr + r]
    }

    /// True when the distribution is uniform over all question pairs.
    pub fn is_uniform(&self) -> bool {
        let n = self.distribution.len();
        let want = Rat::new(BigInt::one(), BigInt::from(n));
        self.distribution.iter().all(|p| *p == want)
    }
}

/// A pair of deterministic answer functions, one per player, stored as
/// answer indices per question index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeterministicStrategy {
    pub alice: Vec<usize>,
    pub bob: Vec<usize>,
}

impl DeterministicStrategy {
    pub fn new(alice: Vec<usize>, bob: Vec<usize>) -> Self {
        DeterministicStrategy { alice, bob }
    }

    /// Same answer function for both players, as in synchronous games.
    pub fn shared(f: Vec<usize>) -> Self {
        DeterministicStrategy { alice: f.clone(), bob: f }
    }

    fn check(&self, game: &NonlocalGame) -> Result<(), GameError> {
        if self.alice.len() != game.n_alice_questions() {
            return Err(GameError::StrategyShape {
                got: self.alice.len(),
                expected: game.n_alice_questions(),
            });
        }
        if self.bob.len() != game.n_bob_questions() {
            return Err(GameError::StrategyShape {
                got: self.bob.len(),
                expected: game.n_bob_questions(),
            });
        }
        if let Some(&a) = self.alice.iter().find(|&&a| a >= game.n_alice_answers()) {
            return Err(GameError::StrategyRange { side: "alice", answer: a });
        }
        if let Some(&b) = self.bob.iter().find(|&&b| b >= game.n_bob_answers()) {
            return Err(GameError::StrategyRange { side: "bob", answer: b });
        }
        Ok(())
    }
}

/// Exact winning probability of a deterministic strategy.
pub fn eval_deterministic(
    game: &NonlocalGame,
    strategy: &DeterministicStrategy,
) -> Result<Rat, GameError> {
    strategy.check(game)?;
    let mut total = Rat::zero();
    for q in 0..game.n_alice_questions() {
        for r in 0..game.n_bob_questions() {
            if game.wins(strategy.alice[q], strategy.bob[r], q, r) {
                total += game.prob(q, r);
            }
        }
    }
    Ok(total)
}

/// Exact classical value with a maximizing witness, default budget.
pub fn classical_value(game: &NonlocalGame) -> Result<(Rat, DeterministicStrategy), GameError> {
    classical_value_with_budget(game, DEFAULT_ENUMERATION_BUDGET)
}

/// Exact classical value with a maximizing witness.
///
/// Enumerates Alice's answer functions in lexicographic order; for each, the
/// value separates over Bob's questions, so Bob's best response is computed
/// coordinatewise. This yields the same maximum as the naive double loop
/// over all strategy pairs, along with the lexicographically smallest
/// maximizing pair `(f_A, f_B)` under the declared set orderings.
///
/// The budget counts predicate evaluations actually performed,
/// `|A|^|Q| * |Q| * |R| * |B|`; exceeding it is an error that reports the
/// required count.
pub fn classical_value_with_budget(
    game: &NonlocalGame,
    budget: u128,
) -> Result<(Rat, DeterministicStrategy), GameError> {
    let nq = game.n_alice_questions();
    let nr = game.n_bob_questions();
    let na = game.n_alice_answers();
    let nb = game.n_bob_answers();

    let alice_count = (na as u128)
        .checked_pow(nq as u32)
        .unwrap_or(u128::MAX);
    let per_strategy = (nq as u128) * (nr as u128) * (nb as u128);
    let required = alice_count.saturating_mul(per_strategy);
    if required > budget {
        return Err(GameError::BudgetExceeded { required, budget });
    }

    // Scale the distribution to integer weights over a common denominator so
    // the inner loop compares integers, not rationals.
    let mut denom = BigUint::one();
    for p in &game.distribution {
        denom = denom.lcm(p.denom().magnitude());
    }
    let weights: Vec<BigUint> = game
        .distribution
        .iter()
        .map(|p| p.numer().magnitude() * (&denom / p.denom().magnitude()))
        .collect();

    let mut best_sum: Option<BigUint> = None;
    let mut best = DeterministicStrategy::new(vec![0; nq], vec![0; nr]);

    let mut f_a = vec![0usize; nq];
    let mut response = vec![BigUint::zero(); nr * nb];
    loop {
        // response[r * nb + b] = total weight won when Bob answers b to r.
        for w in response.iter_mut() {
            w.set_zero();
        }
        for q in 0..nq {
            for r in 0..nr {
                let w = &weights[q * nr + r];
                if w.is_zero() {
                    continue;
                }
                for b in 0..nb {
                    if game.wins(f_a[q], b, q, r) {
                        response[r * nb + b] += w;
                    }
                }
            }
        }
        let mut f_b = vec![0usize; nr];
        let mut sum = BigUint::zero();
        for r in 0..nr {
            let row = &response[r * nb..(r + 1) * nb];
            let mut best_b = 0;
            for b in 1..nb {
                if row[b] > row[best_b] {
                    best_b = b;
                }
            }
            f_b[r] = best_b;
            sum += &row[best_b];
        }
        if best_sum.as_ref().is_none_or(|cur| sum > *cur) {
            best_sum = Some(sum);
            best = DeterministicStrategy::new(f_a.clone(), f_b);
        }

        // Odometer step over Alice's answer function, most significant first.
        let mut pos = nq;
        loop {
            if pos == 0 {
                let value = Rat::new(
                    BigInt::from(best_sum.take().unwrap()),
                    BigInt::from(denom),
                );
                return Ok((value, best));
            }
            pos -= 1;
            f_a[pos] += 1;
            if f_a[pos] < na {
                break;
            }
            f_a[pos] = 0;
        }
    }
}

/// One failed condition of the synchronous-game definition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SyncViolation {
    /// The players' question label sequences are not identical.
    QuestionSetsDiffer,
    /// The players' answer label sequences are not identical.
    AnswerSetsDiffer,
    /// Some diagonal question pair has zero probability.
    ZeroDiagonalProbability { question: String },
    /// `V(a, b | q, q) = 1` for distinct answers `a != b`.
    DiagonalDisagreementAccepted {
        answer_a: String,
        answer_b: String,
        question: String,
    },
}

impl fmt::Display for SyncViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SyncViolation::QuestionSetsDiffer => write!(f, "question sets differ"),
            SyncViolation::AnswerSetsDiffer => write!(f, "answer sets differ"),
            SyncViolation::ZeroDiagonalProbability { question } => {
                write!(f, "pi({question}, {question}) = 0")
            }
            SyncViolation::DiagonalDisagreementAccepted { answer_a, answer_b, question } => {
                write!(f, "V({answer_a}, {answer_b} | {question}, {question}) = 1")
            }
        }
    }
}

/// A nonlocal game that passed synchronous validation: shared question and
/// answer sets, positive diagonal question probabilities, and a predicate
/// that rejects unequal answers to equal questions.
#[derive(Clone, Debug, PartialEq)]
pub struct SynchronousGame {
    game: NonlocalGame,
}

impl Deref for SynchronousGame {
    type Target = NonlocalGame;
    fn deref(&self) -> &NonlocalGame {
        &self.game
    }
}

impl SynchronousGame {
    pub fn game(&self) -> &NonlocalGame {
        &self.game
    }

    pub fn into_game(self) -> NonlocalGame {
        self.game
    }

    /// Shared question labels.
    pub fn questions(&self) -> &[String] {
        self.game.alice_questions()
    }

    /// Shared answer labels.
    pub fn answers(&self) -> &[String] {
        self.game.alice_answers()
    }

    pub fn n_questions(&self) -> usize {
        self.game.n_alice_questions()
    }

    pub fn n_answers(&self) -> usize {
        self.game.n_alice_answers()
    }
}

/// Checks the three synchronous-game conditions exhaustively, returning the
/// tagged game or every violation found. Violations are data, not errors.
pub fn validate_synchronous(game: &NonlocalGame) -> Result<SynchronousGame, Vec<SyncViolation>> {
    let mut violations = Vec::new();
    if game.alice_questions != game.bob_questions {
        violations.push(SyncViolation::QuestionSetsDiffer);
    }
    if game.alice_answers != game.bob_answers {
        violations.push(SyncViolation::AnswerSetsDiffer);
    }
    if !violations.is_empty() {
        // The diagonal conditions are only meaningful over shared sets.
        return Err(violations);
    }
    let nq = game.n_alice_questions();
    let na = game.n_alice_answers();
    for q in 0..nq {
        if game.prob(q, q).is_zero() {
            violations.push(SyncViolation::ZeroDiagonalProbability {
                question: game.alice_questions[q].clone(),
            });
        }
        for a in 0..na {
            for b in 0..na {
                if a != b && game.wins(a, b, q, q) {
                    violations.push(SyncViolation::DiagonalDisagreementAccepted {
                        answer_a: game.alice_answers[a].clone(),
                        answer_b: game.alice_answers[b].clone(),
                        question: game.alice_questions[q].clone(),
                    });
                }
            }
        }
    }
    if violations.is_empty() {
        Ok(SynchronousGame { game: game.clone() })
    } else {
        Err(violations)
    }
}

/// True when the predicate is invariant under swapping both players'
/// questions and answers simultaneously.
pub fn is_symmetric(game: &SynchronousGame) -> bool {
    let nq = game.n_questions();
    let na = game.n_answers();
    for a in 0..na {
        for b in 0..na {
            for q in 0..nq {
                for r in 0..nq {
                    if game.wins(a, b, q, r) != game.wins(b, a, r, q) {
                        return false;
                    }
                }
            }
        }
    }
    true
}
