//! Constructors for the games used throughout the toolkit.

use num_bigint::BigInt;

use crate::game::{GameError, NonlocalGame, SynchronousGame};
use crate::graph::Graph;
use crate::Rat;

fn uniform(n: usize) -> Rat {
    Rat::new(BigInt::from(1), BigInt::from(n))
}

/// The CHSH game. Alice and Bob receive uniform bits and win when the XOR of
/// their answer bits equals the AND of the question bits. Question and
/// answer labels are disjoint between the players, so the game is not
/// synchronous as constructed.
pub fn make_chsh() -> NonlocalGame {
    NonlocalGame::from_fns(
        vec!["x0".into(), "x1".into()],
        vec!["y0".into(), "y1".into()],
        vec!["a0".into(), "a1".into()],
        vec!["b0".into(), "b1".into()],
        |_, _| uniform(4),
        |a, b, q, r| (a ^ b) == (q & r),
    )
    .expect("CHSH construction is valid")
}

/// Alice's magic-square answers: rows with an even number of ones.
const EVEN_PARITY: [[usize; 3]; 4] = [[0, 0, 0], [0, 1, 1], [1, 0, 1], [1, 1, 0]];
/// Bob's magic-square answers: columns with an odd number of ones.
const ODD_PARITY: [[usize; 3]; 4] = [[0, 0, 1], [0, 1, 0], [1, 0, 0], [1, 1, 1]];

/// The magic-square game. Alice fills row `i` with an even-parity bit
/// triple, Bob fills column `j` with an odd-parity triple, and they win when
/// the two assignments agree on the intersection cell `(i, j)`.
pub fn make_magic_square() -> NonlocalGame {
    let bits = |r: &[usize; 3]| format!("{}{}{}", r[0], r[1], r[2]);
    NonlocalGame::from_fns(
        vec!["row0".into(), "row1".into(), "row2".into()],
        vec!["col0".into(), "col1".into(), "col2".into()],
        EVEN_PARITY.iter().map(bits).collect(),
        ODD_PARITY.iter().map(bits).collect(),
        |_, _| uniform(9),
        |a, b, i, j| EVEN_PARITY[a][j] == ODD_PARITY[b][i],
    )
    .expect("magic-square construction is valid")
}

/// The `(X, t)`-independent-set game: questions are the indices `1..=t`
/// (uniform), answers are vertices of `X`, equal questions demand equal
/// vertices, and distinct questions demand distinct nonadjacent vertices.
pub fn make_independent_set_game(x: &Graph, t: usize) -> Result<SynchronousGame, GameError> {
    if t < 1 {
        return Err(GameError::ZeroRounds);
    }
    if x.n_vertices() == 0 {
        return Err(GameError::EmptyGraph);
    }
    let questions: Vec<String> = (1..=t).map(|i| i.to_string()).collect();
    let answers: Vec<String> = x.vertices().to_vec();
    let game = NonlocalGame::from_fns(
        questions.clone(),
        questions,
        answers.clone(),
        answers,
        |_, _| uniform(t * t),
        |u, v, i, j| {
            if i == j {
                u == v
            } else {
                u != v && !x.adjacent(u, v)
            }
        },
    )?;
    Ok(crate::game::validate_synchronous(&game)
        .expect("independent-set games are synchronous by construction"))
}

/// The `(X, Y)`-homomorphism game: questions are vertices of `X` (uniform),
/// answers are vertices of `Y`, equal questions demand equal answers, and
/// adjacent questions demand adjacent answers. Coloring with `c` colors is
/// the special case `Y = K_c`.
pub fn make_homomorphism_game(x: &Graph, y: &Graph) -> Result<SynchronousGame, GameError> {
    if x.n_vertices() == 0 || y.n_vertices() == 0 {
        return Err(GameError::EmptyGraph);
    }
    let questions: Vec<String> = x.vertices().to_vec();
    let answers: Vec<String> = y.vertices().to_vec();
    let n = x.n_vertices();
    let game = NonlocalGame::from_fns(
        questions.clone(),
        questions,
        answers.clone(),
        answers,
        |_, _| uniform(n * n),
        |yu, yv, xu, xv| {
            if xu == xv {
                yu == yv
            } else if x.adjacent(xu, xv) {
                y.adjacent(yu, yv)
            } else {
                true
            }
        },
    )?;
    Ok(crate::game::validate_synchronous(&game)
        .expect("homomorphism games are synchronous by construction"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{classical_value, is_symmetric, validate_synchronous};
    use crate::rat;
    use num_traits::One;

    #[test]
    fn independent_set_game_is_synchronous_and_symmetric() {
        let g = make_independent_set_game(&Graph::complete(2), 2).unwrap();
        assert!(is_symmetric(&g));
    }

    #[test]
    fn k2_single_round_game_is_winnable() {
        let g = make_independent_set_game(&Graph::complete(2), 1).unwrap();
        let (v, _) = classical_value(&g).unwrap();
        assert!(v.is_one());
    }

    #[test]
    fn k2_two_round_game_is_not_winnable() {
        let g = make_independent_set_game(&Graph::complete(2), 2).unwrap();
        let (v, _) = classical_value(&g).unwrap();
        assert!(v < rat(1, 1));
    }

    #[test]
    fn k3_two_round_game_is_not_winnable() {
        let g = make_independent_set_game(&Graph::complete(3), 2).unwrap();
        let (v, _) = classical_value(&g).unwrap();
        assert!(v < rat(1, 1));
    }

    #[test]
    fn c5_two_round_game_is_winnable() {
        let g = make_independent_set_game(&Graph::cycle(5), 2).unwrap();
        let (v, _) = classical_value(&g).unwrap();
        assert!(v.is_one());
    }

    #[test]
    fn empty_graph_game_has_perfect_strategy() {
        let g = make_independent_set_game(&Graph::empty(3), 3).unwrap();
        let (v, w) = classical_value(&g).unwrap();
        assert!(v.is_one());
        // Distinct vertices for distinct questions.
        assert_eq!(w.alice.len(), 3);
    }

    #[test]
    fn homomorphism_game_values() {
        let k3 = Graph::complete(3);
        let k2 = Graph::complete(2);
        let (identity, _) = classical_value(&make_homomorphism_game(&k3, &k3).unwrap()).unwrap();
        assert!(identity.is_one());
        let (two_color, _) = classical_value(&make_homomorphism_game(&k3, &k2).unwrap()).unwrap();
        assert!(two_color < rat(1, 1));
        let (single, _) =
            classical_value(&make_homomorphism_game(&Graph::empty(1), &k3).unwrap()).unwrap();
        assert!(single.is_one());
    }

    #[test]
    fn builder_games_validate_synchronous() {
        let is_game = make_independent_set_game(&Graph::cycle(5), 2).unwrap();
        assert!(validate_synchronous(is_game.game()).is_ok());
        let hom = make_homomorphism_game(&Graph::complete(3), &Graph::complete(3)).unwrap();
        assert!(validate_synchronous(hom.game()).is_ok());
        assert!(is_symmetric(&hom));
    }

    #[test]
    fn rejects_degenerate_inputs() {
        assert!(make_independent_set_game(&Graph::complete(2), 0).is_err());
        assert!(make_independent_set_game(&Graph::empty(0), 1).is_err());
    }
}
