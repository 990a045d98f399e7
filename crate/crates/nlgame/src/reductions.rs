//! Constructive reductions between games.
//!
//! The chain goes: arbitrary game -> synchronous extension -> game graph ->
//! independent-set game. Each step is explicit and invertible through
//! provenance label maps, and strategies transport along the chain without
//! losing winning probability.

use thiserror::Error;

use crate::game::{validate_synchronous, GameError, NonlocalGame, SynchronousGame};
use crate::graph::Graph;
use crate::linalg::CMat;
use crate::quantum::{PmeStrategy, QuantumError, Tolerances};
use crate::Rat;

#[derive(Debug, Error)]
pub enum ReductionError {
    #[error(transparent)]
    Game(#[from] GameError),
    #[error(transparent)]
    Quantum(#[from] QuantumError),
}

/// Suffix marking labels that came from Alice's side of the original game.
pub const ALICE_TAG: &str = "~0";
/// Suffix marking labels that came from Bob's side of the original game.
pub const BOB_TAG: &str = "~1";

fn tag_labels(labels: &[String], tag: &str) -> Vec<String> {
    labels.iter().map(|l| format!("{l}{tag}")).collect()
}

/// Label maps from the original game into the synchronous extension and its
/// game graph. All maps are injective by construction.
#[derive(Clone, Debug)]
pub struct Provenance {
    /// Original Alice question -> extended question label.
    pub alice_questions: Vec<(String, String)>,
    /// Original Bob question -> extended question label.
    pub bob_questions: Vec<(String, String)>,
    /// Original Alice answer -> extended answer label.
    pub alice_answers: Vec<(String, String)>,
    /// Original Bob answer -> extended answer label.
    pub bob_answers: Vec<(String, String)>,
    /// Extended (answer, question) pair -> game-graph vertex label.
    pub vertices: Vec<((String, String), String)>,
}

/// Output of the full reduction to an independent-set-game instance.
#[derive(Clone, Debug)]
pub struct ReductionArtifact {
    pub extended_game: SynchronousGame,
    pub game_graph: Graph,
    /// The reduced instance asks for an independent set of this size.
    pub target_t: usize,
    pub provenance: Provenance,
}

/// Builds the synchronous extension: either player may receive either
/// side's questions, equal questions demand equal answers, and answers must
/// match the origin of the question.
///
/// Questions and answers are made disjoint by origin tags, the question
/// distribution is uniform over all extended pairs, and the predicate is:
/// original cells keep their original value in both orders; diagonal
/// question pairs accept only equal answers; cross-origin answers are
/// always rejected; everything else is accepted.
pub fn synchronous_extension(game: &NonlocalGame) -> SynchronousGame {
    let nq = game.n_alice_questions();
    let nr = game.n_bob_questions();
    let na = game.n_alice_answers();
    let mut questions = tag_labels(game.alice_questions(), ALICE_TAG);
    questions.extend(tag_labels(game.bob_questions(), BOB_TAG));
    let mut answers = tag_labels(game.alice_answers(), ALICE_TAG);
    answers.extend(tag_labels(game.bob_answers(), BOB_TAG));
    let n_ext_q = nq + nr;

    // Answer index y is Alice-origin iff y < na; question index x is
    // Alice-origin iff x < nq.
    let pred = |y: usize, y2: usize, x: usize, x2: usize| -> bool {
        let roles_match = (y < na) == (x < nq) && (y2 < na) == (x2 < nq);
        if !roles_match {
            return false;
        }
        if x == x2 {
            return y == y2;
        }
        match (x < nq, x2 < nq) {
            // Both questions from Alice's side (distinct): accept.
            (true, true) => true,
            // Both from Bob's side (distinct): accept.
            (false, false) => true,
            // Original orientation: Alice-origin question to player 1.
            (true, false) => game.wins(y, y2 - na, x, x2 - nq),
            // Reversed orientation scores the original cell.
            (false, true) => game.wins(y2, y - na, x2, x - nq),
        }
    };

    let uniform = Rat::new(1.into(), ((n_ext_q * n_ext_q) as i64).into());
    let extended = NonlocalGame::from_fns(
        questions.clone(),
        questions,
        answers.clone(),
        answers,
        |_, _| uniform.clone(),
        pred,
    )
    .expect("synchronous extension is well-formed");
    validate_synchronous(&extended).expect("synchronous extension is synchronous by construction")
}

/// Game-graph vertex label for the answer-question pair `(a, q)`.
pub fn vertex_label(answer: &str, question: &str) -> String {
    format!("{answer}|{question}")
}

/// Builds the game graph of a synchronous game: vertices are answer/question
/// pairs `(a, q)` (question-major order, so block `q` is contiguous), with
/// an edge wherever the predicate rejects the pair in either order. The
/// per-question blocks form the clique partition.
///
/// A pair the predicate rejects against itself (`V(a,a|q,q) = 0`) becomes a
/// looped vertex: it can join no independent set and must carry the zero
/// projector in any packing, which is exactly what perfection demands of a
/// strategy at that cell.
pub fn game_graph(game: &SynchronousGame) -> Graph {
    let nq = game.n_questions();
    let na = game.n_answers();
    let mut vertices = Vec::with_capacity(nq * na);
    let mut looped = Vec::new();
    for q in 0..nq {
        for a in 0..na {
            if !game.wins(a, a, q, q) {
                looped.push(q * na + a);
            }
            vertices.push(vertex_label(&game.answers()[a], &game.questions()[q]));
        }
    }
    let mut edges = Vec::new();
    for v1 in 0..vertices.len() {
        let (q1, a1) = (v1 / na, v1 % na);
        for v2 in (v1 + 1)..vertices.len() {
            let (q2, a2) = (v2 / na, v2 % na);
            if !game.wins(a1, a2, q1, q2) || !game.wins(a2, a1, q2, q1) {
                edges.push((v1, v2));
            }
        }
    }
    let blocks: Vec<Vec<usize>> = (0..nq).map(|q| (q * na..(q + 1) * na).collect()).collect();
    Graph::new(vertices, &edges)
        .expect("game-graph labels are valid")
        .with_loops(&looped)
        .expect("loop indices are in range")
        .with_clique_partition(blocks)
        .expect("per-question blocks are cliques in the game graph")
}

/// Homomorphic product of two graphs: vertices are pairs `(x, y)`, adjacent
/// when the questions coincide but the answers differ, or the questions are
/// adjacent and the answers are not (equal answers included).
///
/// This is exactly the game graph of the homomorphism game, including
/// labels, ordering, and the per-`x` clique partition.
pub fn homomorphic_product(x: &Graph, y: &Graph) -> Graph {
    let nx = x.n_vertices();
    let ny = y.n_vertices();
    let mut vertices = Vec::with_capacity(nx * ny);
    for xi in 0..nx {
        for yi in 0..ny {
            vertices.push(vertex_label(&y.vertices()[yi], &x.vertices()[xi]));
        }
    }
    let mut edges = Vec::new();
    for v1 in 0..vertices.len() {
        let (x1, y1) = (v1 / ny, v1 % ny);
        for v2 in (v1 + 1)..vertices.len() {
            let (x2, y2) = (v2 / ny, v2 % ny);
            let adjacent = if x1 == x2 {
                y1 != y2
            } else {
                x.adjacent(x1, x2) && !y.adjacent(y1, y2)
            };
            if adjacent {
                edges.push((v1, v2));
            }
        }
    }
    let blocks: Vec<Vec<usize>> = (0..nx).map(|xi| (xi * ny..(xi + 1) * ny).collect()).collect();
    Graph::new(vertices, &edges)
        .expect("product labels are valid")
        .with_clique_partition(blocks)
        .expect("per-x blocks are cliques in the homomorphic product")
}

/// Full reduction: synchronous extension followed by the game graph. The
/// original game has a perfect PME strategy exactly when the resulting
/// graph admits a perfect entangled strategy for the independent-set game
/// with `t = |Q| + |R|`.
pub fn reduce_pme_to_qindependence(game: &NonlocalGame) -> ReductionArtifact {
    let extended_game = synchronous_extension(game);
    let graph = game_graph(&extended_game);
    let target_t = game.n_alice_questions() + game.n_bob_questions();

    let pair = |orig: &[String], tag: &str| -> Vec<(String, String)> {
        orig.iter().map(|l| (l.clone(), format!("{l}{tag}"))).collect()
    };
    let mut vertices = Vec::new();
    let na_ext = extended_game.n_answers();
    for (vi, vlabel) in graph.vertices().iter().enumerate() {
        let q = vi / na_ext;
        let a = vi % na_ext;
        vertices.push((
            (extended_game.answers()[a].clone(), extended_game.questions()[q].clone()),
            vlabel.clone(),
        ));
    }
    let provenance = Provenance {
        alice_questions: pair(game.alice_questions(), ALICE_TAG),
        bob_questions: pair(game.bob_questions(), BOB_TAG),
        alice_answers: pair(game.alice_answers(), ALICE_TAG),
        bob_answers: pair(game.bob_answers(), BOB_TAG),
        vertices,
    };
    ReductionArtifact { extended_game, game_graph: graph, target_t, provenance }
}

/// Transports a PME strategy for `game` to its synchronous extension at the
/// same dimension: on an original Alice question she measures her original
/// projectors, on an original Bob question she measures the transposes of
/// Bob's projectors, and Bob mirrors with transposes swapped. Perfect
/// strategies stay perfect.
pub fn lift_pme_strategy(
    game: &NonlocalGame,
    s: &PmeStrategy,
    tol: &Tolerances,
) -> Result<PmeStrategy, QuantumError> {
    s.check_compatible(game)?;
    let violations = s.validate(tol);
    if !violations.is_empty() {
        return Err(QuantumError::InvalidStrategy(format!(
            "{} violations, first: {}",
            violations.len(),
            violations[0]
        )));
    }
    let d = s.dim();
    let nq = game.n_alice_questions();
    let nr = game.n_bob_questions();
    let na = game.n_alice_answers();
    let nb = game.n_bob_answers();
    let n_ext_a = na + nb;

    let mut questions = tag_labels(game.alice_questions(), ALICE_TAG);
    questions.extend(tag_labels(game.bob_questions(), BOB_TAG));
    let mut answers = tag_labels(game.alice_answers(), ALICE_TAG);
    answers.extend(tag_labels(game.bob_answers(), BOB_TAG));

    let zero = CMat::zeros(d, d);
    let mut alice = Vec::with_capacity((nq + nr) * n_ext_a);
    for q in 0..nq {
        for y in 0..n_ext_a {
            if y < na {
                alice.push(s.alice_projector(q, y).clone());
            } else {
                alice.push(zero.clone());
            }
        }
    }
    for r in 0..nr {
        for y in 0..n_ext_a {
            if y < na {
                alice.push(zero.clone());
            } else {
                alice.push(s.bob_operator(r, y - na).transpose());
            }
        }
    }
    PmeStrategy::transpose_paired(d, questions, answers, alice)
}

/// Transports a PME strategy for a symmetric synchronous game to the
/// `(X(G), |Q|)`-independent-set game built by
/// [`crate::game::make_independent_set_game`] on [`game_graph`]`(game)`.
///
/// IS-game question `i` stands for the `i`-th question of `game`; the
/// strategy answers vertex `(a, q_i)` with the original projector for
/// `(q_i, a)`. Any completion remainder is mapped to the first vertex of
/// the question's own block, so imperfect measurements stay complete. The
/// winning probability never decreases.
pub fn strategy_to_is_game(
    game: &SynchronousGame,
    s: &PmeStrategy,
    tol: &Tolerances,
) -> Result<PmeStrategy, QuantumError> {
    if !crate::game::is_symmetric(game) {
        return Err(QuantumError::NotSymmetric);
    }
    s.check_compatible(game.game())?;
    if !s.is_transpose_paired() {
        return Err(QuantumError::RequiresTransposePaired);
    }
    let violations = s.validate(tol);
    if !violations.is_empty() {
        return Err(QuantumError::InvalidStrategy(format!(
            "{} violations, first: {}",
            violations.len(),
            violations[0]
        )));
    }
    let x = game_graph(game);
    let d = s.dim();
    let nq = game.n_questions();
    let na = game.n_answers();
    let n_vertices = x.n_vertices();

    let is_questions: Vec<String> = (1..=nq).map(|i| i.to_string()).collect();
    let zero = CMat::zeros(d, d);
    let mut alice = Vec::with_capacity(nq * n_vertices);
    for i in 0..nq {
        let mut sum = CMat::zeros(d, d);
        for a in 0..na {
            sum = sum.add(s.alice_projector(i, a));
        }
        let remainder = CMat::identity(d).sub(&sum);
        for v in 0..n_vertices {
            let (q, a) = (v / na, v % na);
            if q != i {
                alice.push(zero.clone());
            } else if a == 0 {
                alice.push(s.alice_projector(i, a).add(&remainder));
            } else {
                alice.push(s.alice_projector(i, a).clone());
            }
        }
    }
    PmeStrategy::transpose_paired(d, is_questions, x.vertices().to_vec(), alice)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{make_chsh, make_magic_square, validate_synchronous};

    #[test]
    fn chsh_extension_has_expected_shape() {
        let ext = synchronous_extension(&make_chsh());
        assert_eq!(ext.n_questions(), 4);
        assert_eq!(ext.n_answers(), 4);
        assert!(validate_synchronous(ext.game()).is_ok());
        assert!(crate::game::is_symmetric(&ext));
    }

    #[test]
    fn extension_keeps_original_cells_in_both_orders() {
        let game = make_chsh();
        let ext = synchronous_extension(&game);
        let (nq, na) = (game.n_alice_questions(), game.n_alice_answers());
        for a in 0..na {
            for b in 0..game.n_bob_answers() {
                for q in 0..nq {
                    for r in 0..game.n_bob_questions() {
                        let original = game.wins(a, b, q, r);
                        assert_eq!(ext.wins(a, na + b, q, nq + r), original);
                        assert_eq!(ext.wins(na + b, a, nq + r, q), original);
                    }
                }
            }
        }
    }

    #[test]
    fn extension_rejects_cross_origin_answers() {
        let game = make_chsh();
        let ext = synchronous_extension(&game);
        let (nq, na) = (game.n_alice_questions(), game.n_alice_answers());
        // Bob-origin answer to an Alice-origin question is always rejected.
        for q in 0..nq {
            for y in na..ext.n_answers() {
                for x2 in 0..ext.n_questions() {
                    for y2 in 0..ext.n_answers() {
                        assert!(!ext.wins(y, y2, q, x2));
                    }
                }
            }
        }
    }

    #[test]
    fn chsh_reduction_sizes() {
        let art = reduce_pme_to_qindependence(&make_chsh());
        assert_eq!(art.game_graph.n_vertices(), 16);
        assert_eq!(art.target_t, 4);
        assert_eq!(art.game_graph.clique_partition().unwrap().len(), 4);
    }

    #[test]
    fn magic_square_reduction_sizes() {
        let art = reduce_pme_to_qindependence(&make_magic_square());
        assert_eq!(art.game_graph.n_vertices(), 48);
        assert_eq!(art.target_t, 6);
    }

    #[test]
    fn chsh_game_graph_alpha_is_below_target() {
        let art = reduce_pme_to_qindependence(&make_chsh());
        let (alpha, _) = art.game_graph.independence_number().unwrap();
        assert!(alpha < art.target_t, "alpha = {alpha}");
    }

    #[test]
    fn game_graph_blocks_are_cliques() {
        let ext = synchronous_extension(&make_chsh());
        let x = game_graph(&ext);
        let na = ext.n_answers();
        for block in x.clique_partition().unwrap() {
            assert_eq!(block.len(), na);
            for (i, &u) in block.iter().enumerate() {
                for &v in &block[i + 1..] {
                    assert!(x.adjacent(u, v));
                }
            }
        }
    }

    #[test]
    fn diagonally_rejected_pairs_become_looped_vertices() {
        // V(a1, a1 | q, q) = 0: answering a1 to any question is
        // self-inconsistent, so (a1, q) gets a loop in the game graph.
        let game = crate::game::NonlocalGame::from_fns(
            vec!["q0".into(), "q1".into()],
            vec!["q0".into(), "q1".into()],
            vec!["a0".into(), "a1".into()],
            vec!["a0".into(), "a1".into()],
            |_, _| Rat::new(1.into(), 4.into()),
            |a, b, q, r| if q == r { a == b && a == 0 } else { true },
        )
        .unwrap();
        let sync = validate_synchronous(&game).unwrap();
        let x = game_graph(&sync);
        assert_eq!(x.looped_vertices(), vec![1, 3]);
        let (alpha, witness) = x.independence_number().unwrap();
        assert_eq!(alpha, 2);
        assert!(witness.iter().all(|&v| v % 2 == 0));
    }

    #[test]
    fn all_ones_off_diagonal_gives_disjoint_cliques() {
        // Predicate accepting everything off-diagonal: the game graph is a
        // disjoint union of |Q| cliques.
        let game = crate::game::NonlocalGame::from_fns(
            vec!["q0".into(), "q1".into()],
            vec!["q0".into(), "q1".into()],
            vec!["a0".into(), "a1".into(), "a2".into()],
            vec!["a0".into(), "a1".into(), "a2".into()],
            |_, _| Rat::new(1.into(), 4.into()),
            |a, b, q, r| q != r || a == b,
        )
        .unwrap();
        let sync = validate_synchronous(&game).unwrap();
        let x = game_graph(&sync);
        assert_eq!(x.n_edges(), 2 * 3); // two triangles
        assert_eq!(x.independence_number().unwrap().0, 2);
    }

    #[test]
    fn provenance_maps_are_injective() {
        let art = reduce_pme_to_qindependence(&make_chsh());
        let mut seen: Vec<&String> = art
            .provenance
            .alice_questions
            .iter()
            .chain(&art.provenance.bob_questions)
            .map(|(_, ext)| ext)
            .collect();
        seen.sort();
        seen.dedup();
        assert_eq!(seen.len(), 4);
        assert_eq!(art.provenance.vertices.len(), 16);
    }
}
