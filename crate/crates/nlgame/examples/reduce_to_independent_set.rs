//! The full reduction of an arbitrary game to an independent-set-game
//! instance: synchronous extension, game graph, and target set size. The
//! original game has a perfect projective strategy on a maximally entangled
//! state exactly when the output instance has a perfect entangled strategy.
//!
//! ```sh
//! cargo run -p nlgame --example reduce_to_independent_set
//! ```

use nlgame::game::{classical_value, make_chsh};
use nlgame::reductions::reduce_pme_to_qindependence;

fn main() {
    let game = make_chsh();
    let artifact = reduce_pme_to_qindependence(&game);

    println!("input: CHSH (2 questions and 2 answers per player)");
    println!(
        "extension: {} shared questions, {} shared answers",
        artifact.extended_game.n_questions(),
        artifact.extended_game.n_answers()
    );
    println!(
        "game graph: {} vertices, {} edges, {} clique blocks",
        artifact.game_graph.n_vertices(),
        artifact.game_graph.n_edges(),
        artifact.game_graph.clique_partition().unwrap().len()
    );
    println!("target independent-set size: t = {}", artifact.target_t);

    for (orig, tagged) in artifact
        .provenance
        .alice_questions
        .iter()
        .chain(artifact.provenance.bob_questions.iter())
    {
        println!("  question {orig} -> {tagged}");
    }

    // The classical side of the same correspondence, exactly.
    let (alpha, _) = artifact.game_graph.independence_number().unwrap();
    let (omega_ext, _) = classical_value(artifact.extended_game.game()).unwrap();
    println!("alpha(game graph) = {alpha} (perfect needs {})", artifact.target_t);
    println!("extension classical value: {omega_ext}");
    println!(
        "CHSH has no perfect classical strategy, and indeed alpha falls short of t: {} < {}",
        alpha, artifact.target_t
    );
}
