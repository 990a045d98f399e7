//! Exact classical values of the bundled games by exhaustive enumeration.
//!
//! ```sh
//! cargo run -p nlgame --example classical_values
//! ```

use nlgame::game::{
    classical_value, make_chsh, make_independent_set_game, make_magic_square,
};
use nlgame::graph::Graph;

fn main() {
    let chsh = make_chsh();
    let (value, witness) = classical_value(&chsh).unwrap();
    println!("CHSH classical value: {value}");
    println!(
        "  witness: Alice answers {:?}, Bob answers {:?}",
        witness.alice, witness.bob
    );

    let ms = make_magic_square();
    let (value, _) = classical_value(&ms).unwrap();
    println!("magic square classical value: {value}");
    println!("  (one of the nine cells must disagree: row parities are even, column parities odd)");

    for (name, graph, t) in [
        ("(K3, 2)-independent-set", Graph::complete(3), 2),
        ("(C5, 2)-independent-set", Graph::cycle(5), 2),
        ("(empty-3, 3)-independent-set", Graph::empty(3), 3),
    ] {
        let game = make_independent_set_game(&graph, t).unwrap();
        let (value, _) = classical_value(game.game()).unwrap();
        println!("{name} game value: {value}");
    }
}
