//! Seeded seesaw search for high-value projective packings, including the
//! CHSH negative control: no packing of the CHSH-extension game graph can
//! reach the full value 4, so the search must report strictly less.
//!
//! ```sh
//! cargo run -p nlgame --example seesaw_search
//! ```

use nlgame::game::make_chsh;
use nlgame::graph::Graph;
use nlgame::quantum::{validate_packing, Tolerances};
use nlgame::reductions::reduce_pme_to_qindependence;
use nlgame::seesaw::{seesaw_packing, SearchConfig};

fn main() {
    let tol = Tolerances::default();

    for (name, graph) in [
        ("empty graph on 4 vertices", Graph::empty(4)),
        ("K5", Graph::complete(5)),
        ("C5", Graph::cycle(5)),
        ("C7", Graph::cycle(7)),
    ] {
        let cfg = SearchConfig::new(1).with_seed(0).with_restarts(8);
        let packing = seesaw_packing(&graph, &cfg);
        let (value, violations) = validate_packing(&graph, &packing, &tol).unwrap();
        assert!(violations.is_empty());
        println!("{name}: best value {value:.9} at dimension 1");
    }

    println!();
    println!("CHSH extension game graph (16 vertices, perfect value would be 4):");
    let artifact = reduce_pme_to_qindependence(&make_chsh());
    for d in 1..=4 {
        let cfg = SearchConfig::new(d).with_seed(0).with_restarts(20);
        let packing = seesaw_packing(&artifact.game_graph, &cfg);
        let (value, violations) =
            validate_packing(&artifact.game_graph, &packing, &tol).unwrap();
        assert!(violations.is_empty());
        println!("  dimension {d}: best value {value:.9}");
    }
    println!("the search certifies lower bounds only; a value below 4 proves nothing impossible,");
    println!("but here no strategy wins CHSH perfectly, so no packing of value 4 exists either");
}
