//! Text format for game files.
//!
//! ```text
//! game
//! alice_questions: x0 x1
//! bob_questions: y0 y1
//! alice_answers: a0 a1
//! bob_answers: b0 b1
//! distribution:
//! x0 y0 1 4
//! ...
//! predicate zeros:
//! a0 b0 x1 y1
//! ...
//! end
//! ```
//!
//! Distribution lines carry exact `numerator denominator` pairs; omitted
//! question pairs have probability zero. The predicate section is either a
//! `zeros` list (default 1), a `ones` list (default 0), or a full `table`
//! with an explicit trailing bit per line. Round-trips are lossless.

use num_traits::Zero;

use crate::game::NonlocalGame;
use crate::textio::{parse_bigint, Cursor, FormatError};
use crate::Rat;

pub fn write_game(game: &NonlocalGame) -> String {
    let mut out = String::from("game\n");
    let join = |labels: &[String]| labels.join(" ");
    out.push_str(&format!("alice_questions: {}\n", join(game.alice_questions())));
    out.push_str(&format!("bob_questions: {}\n", join(game.bob_questions())));
    out.push_str(&format!("alice_answers: {}\n", join(game.alice_answers())));
    out.push_str(&format!("bob_answers: {}\n", join(game.bob_answers())));
    out.push_str("distribution:\n");
    for q in 0..game.n_alice_questions() {
        for r in 0..game.n_bob_questions() {
            let p = game.prob(q, r);
            if !p.is_zero() {
                out.push_str(&format!(
                    "{} {} {} {}\n",
                    game.alice_questions()[q],
                    game.bob_questions()[r],
                    p.numer(),
                    p.denom()
                ));
            }
        }
    }

    let mut zeros = Vec::new();
    let mut ones = Vec::new();
    for a in 0..game.n_alice_answers() {
        for b in 0..game.n_bob_answers() {
            for q in 0..game.n_alice_questions() {
                for r in 0..game.n_bob_questions() {
                    let cell = format!(
                        "{} {} {} {}",
                        game.alice_answers()[a],
                        game.bob_answers()[b],
                        game.alice_questions()[q],
                        game.bob_questions()[r]
                    );
                    if game.wins(a, b, q, r) {
                        ones.push(cell);
                    } else {
                        zeros.push(cell);
                    }
                }
            }
        }
    }
    if zeros.len() <= ones.len() {
        out.push_str("predicate zeros:\n");
        for cell in zeros {
            out.push_str(&cell);
            out.push('\n');
        }
    } else {
        out.push_str("predicate ones:\n");
        for cell in ones {
            out.push_str(&cell);
            out.push('\n');
        }
    }
    out.push_str("end\n");
    out
}

fn label_index(labels: &[String], token: &str, line: usize, kind: &str) -> Result<usize, FormatError> {
    labels
        .iter()
        .position(|l| l == token)
        .ok_or_else(|| FormatError::at(line, format!("unknown {kind} label {token:?}")))
}

pub fn parse_game(text: &str) -> Result<NonlocalGame, FormatError> {
    let mut cur = Cursor::new(text);
    cur.expect_literal("game")?;
    let read_labels = |cur: &mut Cursor, key: &str| -> Result<Vec<String>, FormatError> {
        let (line, tokens) = cur.expect_keyed(key)?;
        if tokens.is_empty() {
            return Err(FormatError::at(line, format!("{key} list is empty")));
        }
        Ok(tokens.into_iter().map(String::from).collect())
    };
    let alice_questions = read_labels(&mut cur, "alice_questions")?;
    let bob_questions = read_labels(&mut cur, "bob_questions")?;
    let alice_answers = read_labels(&mut cur, "alice_answers")?;
    let bob_answers = read_labels(&mut cur, "bob_answers")?;
    let (nq, nr) = (alice_questions.len(), bob_questions.len());
    let (na, nb) = (alice_answers.len(), bob_answers.len());

    let (dist_line, dist_tokens) = cur.expect_keyed("distribution")?;
    if !dist_tokens.is_empty() {
        return Err(FormatError::at(dist_line, "distribution entries belong on their own lines"));
    }
    let mut distribution = vec![Rat::zero(); nq * nr];
    let mut listed = vec![false; nq * nr];
    loop {
        let (line, content) = cur
            .peek()
            .ok_or_else(|| FormatError::at(cur.eof_line(), "unterminated distribution section"))?;
        if content.starts_with("predicate") {
            break;
        }
        cur.next_line();
        let tokens: Vec<&str> = content.split_whitespace().collect();
        if tokens.len() != 4 {
            return Err(FormatError::at(
                line,
                format!("distribution entries need 4 fields (q r numerator denominator), found {}", tokens.len()),
            ));
        }
        let q = label_index(&alice_questions, tokens[0], line, "alice question")?;
        let r = label_index(&bob_questions, tokens[1], line, "bob question")?;
        let numer = parse_bigint(tokens[2], line)?;
        let denom = parse_bigint(tokens[3], line)?;
        if denom.is_zero() {
            return Err(FormatError::at(line, "distribution denominator is zero"));
        }
        if listed[q * nr + r] {
            return Err(FormatError::at(
                line,
                format!("duplicate distribution entry for ({}, {})", tokens[0], tokens[1]),
            ));
        }
        listed[q * nr + r] = true;
        distribution[q * nr + r] = Rat::new(numer, denom);
    }

    let (pred_line, pred_content) = cur.expect_line("predicate section")?;
    let mode = match pred_content {
        "predicate zeros:" => PredicateMode::Zeros,
        "predicate ones:" => PredicateMode::Ones,
        "predicate table:" => PredicateMode::Table,
        other => {
            return Err(FormatError::at(
                pred_line,
                format!("expected \"predicate zeros:|ones:|table:\", found {other:?}"),
            ))
        }
    };
    let default = matches!(mode, PredicateMode::Zeros);
    let mut predicate = vec![default; na * nb * nq * nr];
    let mut cell_seen = vec![false; na * nb * nq * nr];
    loop {
        let (line, content) = cur
            .peek()
            .ok_or_else(|| FormatError::at(cur.eof_line(), "unterminated predicate section"))?;
        if content == "end" {
            cur.next_line();
            break;
        }
        cur.next_line();
        let tokens: Vec<&str> = content.split_whitespace().collect();
        let expected_fields = if matches!(mode, PredicateMode::Table) { 5 } else { 4 };
        if tokens.len() != expected_fields {
            return Err(FormatError::at(
                line,
                format!("predicate entries need {expected_fields} fields here, found {}", tokens.len()),
            ));
        }
        let a = label_index(&alice_answers, tokens[0], line, "alice answer")?;
        let b = label_index(&bob_answers, tokens[1], line, "bob answer")?;
        let q = label_index(&alice_questions, tokens[2], line, "alice question")?;
        let r = label_index(&bob_questions, tokens[3], line, "bob question")?;
        let idx = ((a * nb + b) * nq + q) * nr + r;
        if cell_seen[idx] {
            return Err(FormatError::at(line, format!("duplicate predicate entry {content:?}")));
        }
        cell_seen[idx] = true;
        predicate[idx] = match mode {
            PredicateMode::Zeros => false,
            PredicateMode::Ones => true,
            PredicateMode::Table => match tokens[4] {
                "0" => false,
                "1" => true,
                other => {
                    return Err(FormatError::at(line, format!("predicate bit must be 0 or 1, found {other:?}")))
                }
            },
        };
    }
    if matches!(mode, PredicateMode::Table) {
        if let Some(idx) = cell_seen.iter().position(|&s| !s) {
            let r = idx % nr;
            let q = idx / nr % nq;
            let b = idx / (nr * nq) % nb;
            let a = idx / (nr * nq * nb);
            return Err(FormatError::at(
                pred_line,
                format!(
                    "predicate table is missing cell ({} {} {} {})",
                    alice_answers[a], bob_answers[b], alice_questions[q], bob_questions[r]
                ),
            ));
        }
    }
    cur.done()?;

    NonlocalGame::from_parts(
        alice_questions,
        bob_questions,
        alice_answers,
        bob_answers,
        distribution,
        predicate,
    )
    .map_err(|e| FormatError::at(dist_line, e))
}

enum PredicateMode {
    Zeros,
    Ones,
    Table,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{make_chsh, make_magic_square};

    #[test]
    fn round_trip_is_lossless() {
        for game in [make_chsh(), make_magic_square()] {
            let text = write_game(&game);
            let back = parse_game(&text).unwrap();
            assert!(back == game);
        }
    }

    #[test]
    fn bad_distribution_sum_is_named() {
        let text = "game\nalice_questions: q\nbob_questions: r\nalice_answers: a\n\
                    bob_answers: b\ndistribution:\nq r 1 2\npredicate zeros:\nend\n";
        let err = parse_game(text).unwrap_err();
        assert!(err.message.contains("sums to 1/2"), "{err}");
    }

    #[test]
    fn duplicate_distribution_entry_is_named() {
        let text = "game\nalice_questions: q\nbob_questions: r\nalice_answers: a\n\
                    bob_answers: b\ndistribution:\nq r 1 2\nq r 1 2\npredicate zeros:\nend\n";
        let err = parse_game(text).unwrap_err();
        assert_eq!(err.line, 8);
        assert!(err.message.contains("duplicate"), "{err}");
    }

    #[test]
    fn unknown_label_reports_line() {
        let text = "game\nalice_questions: q\nbob_questions: r\nalice_answers: a\n\
                    bob_answers: b\ndistribution:\nBAD r 1 1\npredicate zeros:\nend\n";
        let err = parse_game(text).unwrap_err();
        assert_eq!(err.line, 7);
        assert!(err.message.contains("BAD"));
    }

    #[test]
    fn table_mode_requires_totality() {
        let text = "game\nalice_questions: q\nbob_questions: r\nalice_answers: a0 a1\n\
                    bob_answers: b\ndistribution:\nq r 1 1\npredicate table:\na0 b q r 1\nend\n";
        let err = parse_game(text).unwrap_err();
        assert!(err.message.contains("missing cell"), "{err}");
    }
}
