//! File formats and run reports: write a game to its text form, read it
//! back, and produce the same report the CLI prints.
//!
//! ```sh
//! cargo run -p nlgame --example files_and_reports
//! ```

use nlgame::cli::cmd_values;
use nlgame::game::format::{parse_game, write_game};
use nlgame::game::make_chsh;

fn main() {
    let game = make_chsh();
    let text = write_game(&game);
    println!("--- chsh.game ---\n{text}");

    let back = parse_game(&text).unwrap();
    assert!(back == game, "round trip is lossless");

    // The same report the `values` subcommand prints, via the library.
    let dir = std::env::temp_dir().join(format!("nlgame-example-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("chsh.game");
    std::fs::write(&path, &text).unwrap();
    let report = cmd_values(&path, 1 << 20).unwrap();
    println!("--- text report ---\n{}", report.to_text());
    println!("--- structured report ---\n{}", report.to_structured());
    let _ = std::fs::remove_dir_all(&dir);
}
