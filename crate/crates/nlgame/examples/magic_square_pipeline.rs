//! The magic-square game end to end: the dimension-4 perfect strategy, its
//! lift to the synchronous extension, the projective packing it induces on
//! the 48-vertex game graph, and the conversion back to a strategy.
//!
//! ```sh
//! cargo run -p nlgame --example magic_square_pipeline
//! ```

use nlgame::game::{classical_value, make_magic_square};
use nlgame::quantum::known::magic_square_pme;
use nlgame::quantum::{
    eval_pme, packing_from_strategy, strategy_from_packing, validate_packing, Tolerances,
};
use nlgame::reductions::{game_graph, lift_pme_strategy, synchronous_extension};

fn main() {
    let tol = Tolerances::default();
    let game = make_magic_square();
    let (classical, _) = classical_value(&game).unwrap();
    println!("classical value: {classical}");

    let strategy = magic_square_pme();
    let quantum = eval_pme(&game, &strategy).unwrap();
    println!("dimension-4 entangled strategy value: {quantum:.12}");

    let ext = synchronous_extension(&game);
    let lifted = lift_pme_strategy(&game, &strategy, &tol).unwrap();
    let lifted_value = eval_pme(ext.game(), &lifted).unwrap();
    println!("lifted to the synchronous extension: {lifted_value:.12}");

    let x = game_graph(&ext);
    let packing = packing_from_strategy(&ext, &lifted, &tol).unwrap();
    let (gamma, violations) = validate_packing(&x, &packing, &tol).unwrap();
    println!(
        "induced packing on {} vertices: value {gamma:.12}, {} violations",
        x.n_vertices(),
        violations.len()
    );

    let recovered = strategy_from_packing(&ext, &packing, &tol).unwrap();
    let recovered_value = eval_pme(ext.game(), &recovered).unwrap();
    println!("strategy recovered from the packing: {recovered_value:.12}");
    println!("a perfect entangled strategy exists although the classical value is below one");
}
