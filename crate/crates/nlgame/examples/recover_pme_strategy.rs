//! Converting a perfect strategy on a non-maximally-entangled state into a
//! projective strategy on the maximally entangled state, via supports of
//! Bob's residual states.
//!
//! The input is a direct sum of two perfect blocks with unequal weights, so
//! its Schmidt coefficients are unequal and no rescaling makes the state
//! maximally entangled. The conversion restores a perfect strategy at the
//! full Schmidt rank.
//!
//! ```sh
//! cargo run -p nlgame --example recover_pme_strategy
//! ```

use nlgame::game::make_independent_set_game;
use nlgame::graph::Graph;
use nlgame::linalg::{cr, CMat};
use nlgame::quantum::{eval_general, eval_pme, pme_from_perfect, GeneralStrategy, Tolerances};
use nlgame::C64;

fn main() {
    // Two rounds over the empty graph on 4 vertices: any pair of distinct
    // vertices wins, so f(i) = v_i and g(i) = v_{i+2} are both perfect.
    let game = make_independent_set_game(&Graph::empty(4), 2).unwrap();
    let (nq, na) = (game.n_questions(), game.n_answers());
    let blocks: [Vec<usize>; 2] = [vec![0, 1], vec![2, 3]];
    let weights = [0.8, 0.2];

    // State: sqrt(w_k) on the diagonal entry of block k (dimension 2 total,
    // one dimension per block); Schmidt coefficients sqrt(0.8), sqrt(0.2).
    let d = 2;
    let mut state = vec![C64::new(0.0, 0.0); d * d];
    for (k, &w) in weights.iter().enumerate() {
        state[k * d + k] = cr(f64::sqrt(w));
    }
    // POVMs are diagonal: block k answers with its own strategy.
    let povm = |f_of_block: &dyn Fn(usize, usize) -> usize| -> Vec<CMat> {
        let mut out = Vec::new();
        for q in 0..nq {
            for a in 0..na {
                let mut m = CMat::zeros(d, d);
                for k in 0..d {
                    if f_of_block(k, q) == a {
                        m[(k, k)] = cr(1.0);
                    }
                }
                out.push(m);
            }
        }
        out
    };
    let assignments = povm(&|k, q| blocks[k][q]);
    let strategy = GeneralStrategy::new(
        d,
        d,
        game.questions().to_vec(),
        game.answers().to_vec(),
        game.questions().to_vec(),
        game.answers().to_vec(),
        state,
        assignments.clone(),
        assignments,
    )
    .unwrap();

    let input_value = eval_general(game.game(), &strategy).unwrap();
    println!("input strategy value: {input_value:.12}");
    println!("input Schmidt weights: {:?} (not maximally entangled)", weights);

    let tol = Tolerances::default();
    let converted = pme_from_perfect(&game, &strategy, &tol).unwrap();
    println!("converted strategy dimension: {}", converted.dim());
    let output_value = eval_pme(game.game(), &converted).unwrap();
    println!("converted strategy value on the maximally entangled state: {output_value:.12}");
}
