//! Homomorphism games and the homomorphic product: the game graph of the
//! (X, Y)-homomorphism game is exactly X ⋉ Y, so graph homomorphisms show
//! up as full-size independent sets.
//!
//! ```sh
//! cargo run -p nlgame --example homomorphism_games
//! ```

use nlgame::game::{classical_value, make_homomorphism_game};
use nlgame::graph::Graph;
use nlgame::reductions::{game_graph, homomorphic_product};

fn main() {
    let c5 = Graph::cycle(5);
    let k2 = Graph::complete(2);
    let k3 = Graph::complete(3);

    for (name, x, y) in [
        ("C5 -> K3 (3-coloring of the 5-cycle)", &c5, &k3),
        ("C5 -> K2 (2-coloring, impossible: odd cycle)", &c5, &k2),
        ("K3 -> K3 (identity)", &k3, &k3),
    ] {
        let game = make_homomorphism_game(x, y).unwrap();
        let via_game = game_graph(&game);
        let product = homomorphic_product(x, y);
        assert!(via_game == product, "game graph must equal the homomorphic product");

        let (alpha, witness) = product.independence_number().unwrap();
        let (omega, _) = classical_value(game.game()).unwrap();
        let exists = alpha == x.n_vertices();
        println!("{name}");
        println!(
            "  product on {} vertices, {} edges; alpha = {alpha} (need {})",
            product.n_vertices(),
            product.n_edges(),
            x.n_vertices()
        );
        println!("  homomorphism exists: {exists}; game value {omega}");
        if exists {
            let mapping: Vec<&str> =
                witness.iter().map(|&v| product.vertices()[v].as_str()).collect();
            println!("  witness assignment: {}", mapping.join(" "));
        }
    }
}
