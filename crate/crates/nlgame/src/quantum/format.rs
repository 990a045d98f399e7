//! Text formats for strategies and packings.
//!
//! Matrices are written as one row per line with `re,im` entries; `f64`
//! display round-trips exactly, so files are lossless at double precision.

use crate::linalg::CMat;
use crate::quantum::{GeneralStrategy, PmeStrategy, ProjectivePacking};
use crate::textio::{format_complex, parse_complex, parse_usize, Cursor, FormatError};
use crate::C64;

fn write_matrix(out: &mut String, m: &CMat) {
    for i in 0..m.nrows() {
        let row: Vec<String> = (0..m.ncols()).map(|j| format_complex(m[(i, j)])).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
}

fn parse_matrix(cur: &mut Cursor, rows: usize, cols: usize) -> Result<CMat, FormatError> {
    let mut m = CMat::zeros(rows, cols);
    for i in 0..rows {
        let (line, content) = cur.expect_line("matrix row")?;
        let tokens: Vec<&str> = content.split_whitespace().collect();
        if tokens.len() != cols {
            return Err(FormatError::at(
                line,
                format!("matrix row has {} entries, expected {cols}", tokens.len()),
            ));
        }
        for (j, tok) in tokens.iter().enumerate() {
            m[(i, j)] = parse_complex(tok, line)?;
        }
    }
    Ok(m)
}

fn read_labels(cur: &mut Cursor, key: &str) -> Result<Vec<String>, FormatError> {
    let (line, tokens) = cur.expect_keyed(key)?;
    if tokens.is_empty() {
        return Err(FormatError::at(line, format!("{key} list is empty")));
    }
    Ok(tokens.into_iter().map(String::from).collect())
}

fn read_scalar(cur: &mut Cursor, key: &str) -> Result<usize, FormatError> {
    let (line, tokens) = cur.expect_keyed(key)?;
    if tokens.len() != 1 {
        return Err(FormatError::at(line, format!("{key} takes exactly one value")));
    }
    parse_usize(tokens[0], line)
}

pub fn write_pme_strategy(s: &PmeStrategy) -> String {
    let mut out = String::from("pme_strategy\n");
    out.push_str(&format!("dimension: {}\n", s.dim()));
    out.push_str(&format!(
        "bob: {}\n",
        if s.is_transpose_paired() { "transpose" } else { "explicit" }
    ));
    out.push_str(&format!("alice_questions: {}\n", s.alice_questions().join(" ")));
    out.push_str(&format!("alice_answers: {}\n", s.alice_answers().join(" ")));
    if !s.is_transpose_paired() {
        out.push_str(&format!("bob_questions: {}\n", s.bob_questions().join(" ")));
        out.push_str(&format!("bob_answers: {}\n", s.bob_answers().join(" ")));
    }
    for (qi, q) in s.alice_questions().iter().enumerate() {
        for (ai, a) in s.alice_answers().iter().enumerate() {
            out.push_str(&format!("matrix {q} {a}:\n"));
            write_matrix(&mut out, s.alice_projector(qi, ai));
        }
    }
    if !s.is_transpose_paired() {
        for (ri, r) in s.bob_questions().iter().enumerate() {
            for (bi, b) in s.bob_answers().iter().enumerate() {
                out.push_str(&format!("bob_matrix {r} {b}:\n"));
                write_matrix(&mut out, &s.bob_operator(ri, bi));
            }
        }
    }
    out.push_str("end\n");
    out
}

fn find_label(labels: &[String], token: &str, line: usize, kind: &str) -> Result<usize, FormatError> {
    labels
        .iter()
        .position(|l| l == token)
        .ok_or_else(|| FormatError::at(line, format!("unknown {kind} label {token:?}")))
}

fn parse_matrix_section(
    cur: &mut Cursor,
    header: &str,
    questions: &[String],
    answers: &[String],
    dim: usize,
) -> Result<Vec<CMat>, FormatError> {
    let total = questions.len() * answers.len();
    let mut mats: Vec<Option<CMat>> = vec![None; total];
    while let Some((line, content)) = cur.peek() {
        let tokens: Vec<&str> = content.split_whitespace().collect();
        if tokens.first() != Some(&header) {
            break;
        }
        cur.next_line();
        if tokens.len() != 3 || !tokens[2].ends_with(':') {
            return Err(FormatError::at(
                line,
                format!("expected \"{header} <question> <answer>:\", found {content:?}"),
            ));
        }
        let q = find_label(questions, tokens[1], line, "question")?;
        let a = find_label(answers, tokens[2].trim_end_matches(':'), line, "answer")?;
        let idx = q * answers.len() + a;
        if mats[idx].is_some() {
            return Err(FormatError::at(line, format!("duplicate matrix for {content:?}")));
        }
        mats[idx] = Some(parse_matrix(cur, dim, dim)?);
    }
    let missing = mats.iter().position(Option::is_none);
    if let Some(idx) = missing {
        let q = idx / answers.len();
        let a = idx % answers.len();
        return Err(FormatError::at(
            cur.peek().map_or(1, |(l, _)| l),
            format!("missing {header} for ({}, {})", questions[q], answers[a]),
        ));
    }
    Ok(mats.into_iter().map(Option::unwrap).collect())
}

pub fn parse_pme_strategy(text: &str) -> Result<PmeStrategy, FormatError> {
    let mut cur = Cursor::new(text);
    cur.expect_literal("pme_strategy")?;
    let dim = read_scalar(&mut cur, "dimension")?;
    let (bob_line, bob_tokens) = cur.expect_keyed("bob")?;
    let explicit = match bob_tokens.as_slice() {
        ["transpose"] => false,
        ["explicit"] => true,
        other => {
            return Err(FormatError::at(
                bob_line,
                format!("bob must be \"transpose\" or \"explicit\", found {other:?}"),
            ))
        }
    };
    let alice_questions = read_labels(&mut cur, "alice_questions")?;
    let alice_answers = read_labels(&mut cur, "alice_answers")?;
    let (bob_questions, bob_answers) = if explicit {
        (read_labels(&mut cur, "bob_questions")?, read_labels(&mut cur, "bob_answers")?)
    } else {
        (alice_questions.clone(), alice_answers.clone())
    };
    let alice = parse_matrix_section(&mut cur, "matrix", &alice_questions, &alice_answers, dim)?;
    let strategy = if explicit {
        let bob = parse_matrix_section(&mut cur, "bob_matrix", &bob_questions, &bob_answers, dim)?;
        cur.expect_literal("end")?;
        PmeStrategy::with_explicit_bob(
            dim,
            alice_questions,
            alice_answers,
            bob_questions,
            bob_answers,
            alice,
            bob,
        )
    } else {
        cur.expect_literal("end")?;
        PmeStrategy::transpose_paired(dim, alice_questions, alice_answers, alice)
    };
    cur.done()?;
    strategy.map_err(|e| FormatError::at(1, e))
}

pub fn write_general_strategy(s: &GeneralStrategy) -> String {
    let mut out = String::from("general_strategy\n");
    out.push_str(&format!("dim_alice: {}\n", s.dim_alice()));
    out.push_str(&format!("dim_bob: {}\n", s.dim_bob()));
    out.push_str(&format!("alice_questions: {}\n", s.alice_questions().join(" ")));
    out.push_str(&format!("alice_answers: {}\n", s.alice_answers().join(" ")));
    out.push_str(&format!("bob_questions: {}\n", s.bob_questions().join(" ")));
    out.push_str(&format!("bob_answers: {}\n", s.bob_answers().join(" ")));
    out.push_str("state:\n");
    for i in 0..s.dim_alice() {
        let row: Vec<String> = (0..s.dim_bob())
            .map(|j| format_complex(s.state()[i * s.dim_bob() + j]))
            .collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    for (qi, q) in s.alice_questions().iter().enumerate() {
        for (ai, a) in s.alice_answers().iter().enumerate() {
            out.push_str(&format!("povm alice {q} {a}:\n"));
            write_matrix(&mut out, s.alice_povm(qi, ai));
        }
    }
    for (ri, r) in s.bob_questions().iter().enumerate() {
        for (bi, b) in s.bob_answers().iter().enumerate() {
            out.push_str(&format!("povm bob {r} {b}:\n"));
            write_matrix(&mut out, s.bob_povm(ri, bi));
        }
    }
    out.push_str("end\n");
    out
}

pub fn parse_general_strategy(text: &str) -> Result<GeneralStrategy, FormatError> {
    let mut cur = Cursor::new(text);
    cur.expect_literal("general_strategy")?;
    let dim_alice = read_scalar(&mut cur, "dim_alice")?;
    let dim_bob = read_scalar(&mut cur, "dim_bob")?;
    let alice_questions = read_labels(&mut cur, "alice_questions")?;
    let alice_answers = read_labels(&mut cur, "alice_answers")?;
    let bob_questions = read_labels(&mut cur, "bob_questions")?;
    let bob_answers = read_labels(&mut cur, "bob_answers")?;
    cur.expect_literal("state:")?;
    let psi = parse_matrix(&mut cur, dim_alice, dim_bob)?;
    let mut state = Vec::with_capacity(dim_alice * dim_bob);
    for i in 0..dim_alice {
        for j in 0..dim_bob {
            state.push(psi[(i, j)]);
        }
    }

    let parse_povms = |cur: &mut Cursor,
                       side: &str,
                       questions: &[String],
                       answers: &[String],
                       dim: usize|
     -> Result<Vec<CMat>, FormatError> {
        let total = questions.len() * answers.len();
        let mut mats: Vec<Option<CMat>> = vec![None; total];
        while let Some((line, content)) = cur.peek() {
            let tokens: Vec<&str> = content.split_whitespace().collect();
            if tokens.first() != Some(&"povm") || tokens.get(1) != Some(&side) {
                break;
            }
            cur.next_line();
            if tokens.len() != 4 || !tokens[3].ends_with(':') {
                return Err(FormatError::at(
                    line,
                    format!("expected \"povm {side} <question> <answer>:\", found {content:?}"),
                ));
            }
            let q = find_label(questions, tokens[2], line, "question")?;
            let a = find_label(answers, tokens[3].trim_end_matches(':'), line, "answer")?;
            let idx = q * answers.len() + a;
            if mats[idx].is_some() {
                return Err(FormatError::at(line, format!("duplicate POVM for {content:?}")));
            }
            mats[idx] = Some(parse_matrix(cur, dim, dim)?);
        }
        if let Some(idx) = mats.iter().position(Option::is_none) {
            let q = idx / answers.len();
            let a = idx % answers.len();
            return Err(FormatError::at(
                cur.peek().map_or(1, |(l, _)| l),
                format!("missing povm {side} for ({}, {})", questions[q], answers[a]),
            ));
        }
        Ok(mats.into_iter().map(Option::unwrap).collect())
    };
    let alice_povms = parse_povms(&mut cur, "alice", &alice_questions, &alice_answers, dim_alice)?;
    let bob_povms = parse_povms(&mut cur, "bob", &bob_questions, &bob_answers, dim_bob)?;
    cur.expect_literal("end")?;
    cur.done()?;
    GeneralStrategy::new(
        dim_alice,
        dim_bob,
        alice_questions,
        alice_answers,
        bob_questions,
        bob_answers,
        state,
        alice_povms,
        bob_povms,
    )
    .map_err(|e| FormatError::at(1, e))
}

pub fn write_packing(p: &ProjectivePacking) -> String {
    let mut out = String::from("projective_packing\n");
    out.push_str(&format!("dimension: {}\n", p.dim()));
    out.push_str(&format!("vertices: {}\n", p.vertices().join(" ")));
    for (u, label) in p.vertices().iter().enumerate() {
        out.push_str(&format!("matrix {label}:\n"));
        write_matrix(&mut out, p.projector(u));
    }
    out.push_str("end\n");
    out
}

pub fn parse_packing(text: &str) -> Result<ProjectivePacking, FormatError> {
    let mut cur = Cursor::new(text);
    cur.expect_literal("projective_packing")?;
    let dim = read_scalar(&mut cur, "dimension")?;
    let vertices = read_labels(&mut cur, "vertices")?;
    let mut mats: Vec<Option<CMat>> = vec![None; vertices.len()];
    loop {
        let (line, content) = cur.expect_line("matrix block or \"end\"")?;
        if content == "end" {
            break;
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();
        if tokens.len() != 2 || tokens[0] != "matrix" || !tokens[1].ends_with(':') {
            return Err(FormatError::at(
                line,
                format!("expected \"matrix <vertex>:\", found {content:?}"),
            ));
        }
        let u = find_label(&vertices, tokens[1].trim_end_matches(':'), line, "vertex")?;
        if mats[u].is_some() {
            return Err(FormatError::at(line, format!("duplicate matrix for vertex {:?}", vertices[u])));
        }
        mats[u] = Some(parse_matrix(&mut cur, dim, dim)?);
    }
    if let Some(idx) = mats.iter().position(Option::is_none) {
        return Err(FormatError::at(1, format!("missing matrix for vertex {:?}", vertices[idx])));
    }
    cur.done()?;
    ProjectivePacking::new(dim, vertices, mats.into_iter().map(Option::unwrap).collect())
        .map_err(|e| FormatError::at(1, e))
}

/// The canonical maximally entangled state at dimension `d`, as amplitudes.
pub fn maximally_entangled_state(d: usize) -> Vec<C64> {
    let amp = C64::new(1.0 / (d as f64).sqrt(), 0.0);
    let mut state = vec![C64::new(0.0, 0.0); d * d];
    for i in 0..d {
        state[i * d + i] = amp;
    }
    state
}
