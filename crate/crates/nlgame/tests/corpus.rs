//! The bundled corpus files are generated from the library's own builders;
//! this test keeps them byte-identical to what the builders produce.
//! Regenerate after intentional changes with:
//!
//! ```sh
//! REGEN_CORPUS=1 cargo test -p nlgame --test corpus
//! ```

use std::fs;
use std::path::PathBuf;

use nlgame::game::format::write_game;
use nlgame::game::{
    make_chsh, make_homomorphism_game, make_independent_set_game, make_magic_square,
};
use nlgame::graph::format::write_graph;
use nlgame::graph::Graph;
use nlgame::quantum::format::{write_general_strategy, write_pme_strategy};
use nlgame::quantum::known::{chsh_pme, magic_square_pme};
use nlgame::quantum::GeneralStrategy;

fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn corpus_entries() -> Vec<(&'static str, String)> {
    let c5 = Graph::cycle(5);
    let k2 = Graph::complete(2);
    let k3 = Graph::complete(3);
    let empty3 = Graph::empty(3);
    vec![
        ("chsh.game", write_game(&make_chsh())),
        ("magic_square.game", write_game(&make_magic_square())),
        (
            "is_k2_t2.game",
            write_game(make_independent_set_game(&k2, 2).unwrap().game()),
        ),
        (
            "is_k3_t2.game",
            write_game(make_independent_set_game(&k3, 2).unwrap().game()),
        ),
        (
            "is_c5_t2.game",
            write_game(make_independent_set_game(&c5, 2).unwrap().game()),
        ),
        (
            "is_empty3_t3.game",
            write_game(make_independent_set_game(&empty3, 3).unwrap().game()),
        ),
        (
            "hom_k3_k3.game",
            write_game(make_homomorphism_game(&k3, &k3).unwrap().game()),
        ),
        (
            "hom_k3_k2.game",
            write_game(make_homomorphism_game(&k3, &k2).unwrap().game()),
        ),
        (
            "hom_c5_k3.game",
            write_game(make_homomorphism_game(&c5, &k3).unwrap().game()),
        ),
        ("k2.graph", write_graph(&k2)),
        ("k3.graph", write_graph(&k3)),
        ("c5.graph", write_graph(&c5)),
        ("empty3.graph", write_graph(&empty3)),
        ("magic_square_d4.pme", write_pme_strategy(&magic_square_pme())),
        ("chsh_optimal.pme", write_pme_strategy(&chsh_pme())),
        (
            "chsh_optimal.general",
            write_general_strategy(&GeneralStrategy::from_pme(&chsh_pme())),
        ),
    ]
}

#[test]
fn bundled_corpus_matches_builders() {
    let dir = corpus_dir();
    let regen = std::env::var("REGEN_CORPUS").is_ok();
    if regen {
        fs::create_dir_all(&dir).unwrap();
    }
    for (name, want) in corpus_entries() {
        let path = dir.join(name);
        if regen {
            fs::write(&path, &want).unwrap();
            continue;
        }
        let got = fs::read_to_string(&path)
            .unwrap_or_else(|e| panic!("missing corpus file {}: {e}", path.display()));
        assert_eq!(got, want, "corpus file {name} is out of date");
    }
}

#[test]
fn corpus_games_parse_and_validate() {
    let dir = corpus_dir();
    for (name, _) in corpus_entries() {
        let path = dir.join(name);
        let Ok(text) = fs::read_to_string(&path) else {
            continue; // bundled_corpus_matches_builders reports it
        };
        if name.ends_with(".game") {
            nlgame::game::format::parse_game(&text).unwrap();
        } else if name.ends_with(".graph") {
            nlgame::graph::format::parse_graph(&text).unwrap();
        } else if name.ends_with(".pme") {
            nlgame::quantum::format::parse_pme_strategy(&text).unwrap();
        } else if name.ends_with(".general") {
            nlgame::quantum::format::parse_general_strategy(&text).unwrap();
        }
    }
}
