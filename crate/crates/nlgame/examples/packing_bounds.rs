//! Certified lower bounds on game values from independent sets and
//! projective packings of the game graph: a set of size s guarantees
//! classical value (s/|Q|)^2, and a packing of value gamma guarantees
//! entangled value (gamma/|Q|)^2, each with an explicit witness strategy.
//!
//! ```sh
//! cargo run -p nlgame --example packing_bounds
//! ```

use nlgame::game::{eval_deterministic, make_independent_set_game};
use nlgame::graph::{classical_strategy_from_independent_set, Graph};
use nlgame::quantum::{entangled_lower_bound, eval_pme, Tolerances};
use nlgame::reductions::game_graph;
use nlgame::seesaw::packing_from_independent_set;

fn main() {
    let tol = Tolerances::default();
    // Three rounds over C5: no independent set of size 3 exists, so the
    // game is not perfectly winnable, but partial sets still certify value.
    let c5 = Graph::cycle(5);
    let game = make_independent_set_game(&c5, 3).unwrap();
    let x = game_graph(&game);
    println!(
        "(C5, 3)-independent-set game: graph on {} vertices, {} edges",
        x.n_vertices(),
        x.n_edges()
    );

    let (alpha, witness) = x.independence_number().unwrap();
    println!("alpha(game graph) = {alpha} out of |Q| = 3");

    for size in 0..=alpha {
        let s = &witness[..size];
        let (strategy, guarantee) =
            classical_strategy_from_independent_set(&game, &x, s).unwrap();
        let actual = eval_deterministic(game.game(), &strategy).unwrap();
        println!("  independent set of size {size}: guarantee {guarantee}, witness scores {actual}");
    }

    // The same sets as 1-dimensional packings, through the entangled route.
    let s = &witness[..alpha];
    let packing = packing_from_independent_set(&x, s).unwrap();
    let lb = entangled_lower_bound(&game, &packing, &tol).unwrap();
    let witness_value = eval_pme(game.game(), &lb.witness).unwrap();
    println!(
        "scalar packing of value {}: entangled bound {:.6}, witness scores {witness_value:.6}",
        lb.packing_value, lb.bound
    );
}
