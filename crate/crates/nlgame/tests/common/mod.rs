//! Shared generators and independent oracles for the integration suites.
//!
//! Oracles here deliberately re-derive results from definitions (naive
//! double loops, exhaustive subset enumeration) so they cannot share a bug
//! with the library's optimized paths.

#![allow(dead_code)]
#![allow(clippy::needless_range_loop)]

use nlgame::game::{
    make_independent_set_game, validate_synchronous, NonlocalGame, SynchronousGame,
};
use nlgame::graph::Graph;
use nlgame::linalg::{c, cr, CMat};
use nlgame::quantum::{GeneralStrategy, PmeStrategy, ProjectivePacking};
use nlgame::reductions::lift_pme_strategy;
use nlgame::{rat, Rat, C64};
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

// ---------------------------------------------------------------- games --

/// Random synchronous game with uniform questions: diagonal answer pairs on
/// equal questions are rejected, everything else is a coin flip.
pub fn random_synchronous_game(rng: &mut ChaCha8Rng, nq: usize, na: usize) -> SynchronousGame {
    let questions: Vec<String> = (0..nq).map(|q| format!("q{q}")).collect();
    let answers: Vec<String> = (0..na).map(|a| format!("a{a}")).collect();
    let mut pred = vec![false; na * na * nq * nq];
    for a in 0..na {
        for b in 0..na {
            for q in 0..nq {
                for r in 0..nq {
                    let v = if q == r {
                        a == b && rng.random_bool(0.7)
                    } else {
                        rng.random_bool(0.6)
                    };
                    pred[((a * na + b) * nq + q) * nq + r] = v;
                }
            }
        }
    }
    let game = NonlocalGame::from_parts(
        questions.clone(),
        questions,
        answers.clone(),
        answers,
        vec![rat(1, (nq * nq) as i64); nq * nq],
        pred,
    )
    .unwrap();
    validate_synchronous(&game).unwrap()
}

/// Random symmetric synchronous game: the predicate is generated on ordered
/// pairs and mirrored.
pub fn random_symmetric_synchronous_game(
    rng: &mut ChaCha8Rng,
    nq: usize,
    na: usize,
) -> SynchronousGame {
    let questions: Vec<String> = (0..nq).map(|q| format!("q{q}")).collect();
    let answers: Vec<String> = (0..na).map(|a| format!("a{a}")).collect();
    let mut pred = vec![false; na * na * nq * nq];
    let set = |pred: &mut Vec<bool>, a: usize, b: usize, q: usize, r: usize, v: bool| {
        pred[((a * na + b) * nq + q) * nq + r] = v;
    };
    for q in 0..nq {
        for a in 0..na {
            set(&mut pred, a, a, q, q, rng.random_bool(0.7));
        }
    }
    for q in 0..nq {
        for r in (q + 1)..nq {
            for a in 0..na {
                for b in 0..na {
                    let v = rng.random_bool(0.6);
                    set(&mut pred, a, b, q, r, v);
                    set(&mut pred, b, a, r, q, v);
                }
            }
        }
    }
    let game = NonlocalGame::from_parts(
        questions.clone(),
        questions,
        answers.clone(),
        answers,
        vec![rat(1, (nq * nq) as i64); nq * nq],
        pred,
    )
    .unwrap();
    let sync = validate_synchronous(&game).unwrap();
    assert!(nlgame::game::is_symmetric(&sync));
    sync
}

/// Fully random game: independent label sets, random nonuniform exact
/// distribution, random predicate.
pub fn random_general_game(rng: &mut ChaCha8Rng) -> NonlocalGame {
    let nq = rng.random_range(1..=3);
    let nr = rng.random_range(1..=3);
    let na = rng.random_range(1..=3);
    let nb = rng.random_range(1..=3);
    let weights: Vec<i64> = (0..nq * nr).map(|_| rng.random_range(0..5)).collect();
    let total: i64 = weights.iter().sum::<i64>().max(1);
    let mut dist: Vec<Rat> = weights.iter().map(|&w| rat(w, total)).collect();
    if weights.iter().all(|&w| w == 0) {
        dist[0] = rat(1, 1);
    }
    NonlocalGame::from_fns(
        (0..nq).map(|i| format!("x{i}")).collect(),
        (0..nr).map(|i| format!("y{i}")).collect(),
        (0..na).map(|i| format!("a{i}")).collect(),
        (0..nb).map(|i| format!("b{i}")).collect(),
        |q, r| dist[q * nr + r].clone(),
        |_, _, _, _| rng.random_bool(0.5),
    )
    .unwrap()
}

// -------------------------------------------------------------- oracles --

/// Fresh naive classical value: double loop over every strategy pair in
/// lexicographic order, evaluating the definition term by term in exact
/// rationals. Returns the maximum and the first (hence lexicographically
/// smallest) maximizing pair.
pub fn naive_classical_value(game: &NonlocalGame) -> (Rat, Vec<usize>, Vec<usize>) {
    let nq = game.n_alice_questions();
    let nr = game.n_bob_questions();
    let na = game.n_alice_answers();
    let nb = game.n_bob_answers();
    let mut best = None;
    let mut best_pair = (vec![0usize; nq], vec![0usize; nr]);
    let mut f_a = vec![0usize; nq];
    loop {
        let mut f_b = vec![0usize; nr];
        loop {
            let mut value = Rat::zero();
            for q in 0..nq {
                for r in 0..nr {
                    if game.wins(f_a[q], f_b[r], q, r) {
                        value += game.prob(q, r);
                    }
                }
            }
            if best.as_ref().is_none_or(|b| value > *b) {
                best = Some(value);
                best_pair = (f_a.clone(), f_b.clone());
            }
            if !odometer(&mut f_b, nb) {
                break;
            }
        }
        if !odometer(&mut f_a, na) {
            break;
        }
    }
    (best.unwrap(), best_pair.0, best_pair.1)
}

fn odometer(digits: &mut [usize], base: usize) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

/// Exhaustive independence number over all vertex subsets.
pub fn naive_alpha(g: &Graph) -> usize {
    let n = g.n_vertices();
    assert!(n <= 20, "oracle is exponential");
    let mut best = 0;
    for mask in 0u32..(1 << n) {
        let set: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        let ok = set
            .iter()
            .enumerate()
            .all(|(i, &u)| set[i + 1..].iter().all(|&v| !g.adjacent(u, v)));
        if ok {
            best = best.max(set.len());
        }
    }
    best
}

/// All labeled graphs on exactly `n` vertices (2^(n choose 2) of them).
pub fn all_graphs(n: usize) -> Vec<Graph> {
    let vertices: Vec<String> = (1..=n).map(|i| format!("v{i}")).collect();
    let mut pairs = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            pairs.push((u, v));
        }
    }
    let mut out = Vec::new();
    for mask in 0u64..(1 << pairs.len()) {
        let edges: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|&(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        out.push(Graph::new(vertices.clone(), &edges).unwrap());
    }
    out
}

pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let vertices: Vec<String> = (1..=n).map(|i| format!("v{i}")).collect();
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(vertices, &edges).unwrap()
}

/// Brute-force search for a graph homomorphism `X -> Y`.
pub fn homomorphism_exists(x: &Graph, y: &Graph) -> bool {
    let nx = x.n_vertices();
    let ny = y.n_vertices();
    let mut map = vec![0usize; nx];
    loop {
        let ok = (0..nx).all(|u| {
            (u + 1..nx).all(|v| !x.adjacent(u, v) || y.adjacent(map[u], map[v]))
        });
        if ok {
            return true;
        }
        if !odometer(&mut map, ny) {
            return false;
        }
    }
}

// ------------------------------------------------------------- quantum --

pub fn random_hermitian(d: usize, rng: &mut ChaCha8Rng) -> CMat {
    CMat::from_fn(d, d, |_, _| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .hermitize()
}

/// Random unitary as the eigenbasis of a random Hermitian matrix.
pub fn random_unitary(d: usize, rng: &mut ChaCha8Rng) -> CMat {
    let (_, vecs) = random_hermitian(d, rng).eigh();
    vecs
}

/// Random projective measurement: a random orthonormal basis partitioned
/// over the outcomes (some outcomes may get the zero projector).
pub fn random_projective_measurement(
    d: usize,
    outcomes: usize,
    rng: &mut ChaCha8Rng,
) -> Vec<CMat> {
    let u = random_unitary(d, rng);
    let assignment: Vec<usize> = (0..d).map(|_| rng.random_range(0..outcomes)).collect();
    let mut povm = Vec::with_capacity(outcomes);
    for o in 0..outcomes {
        let cols: Vec<usize> = (0..d).filter(|&i| assignment[i] == o).collect();
        povm.push(u.projector_from_columns(&cols));
    }
    povm
}

/// Random transpose-paired PME strategy for a synchronous game.
pub fn random_pme_strategy(game: &SynchronousGame, d: usize, rng: &mut ChaCha8Rng) -> PmeStrategy {
    let mut alice = Vec::new();
    for _q in 0..game.n_questions() {
        alice.extend(random_projective_measurement(d, game.n_answers(), rng));
    }
    PmeStrategy::transpose_paired(d, game.questions().to_vec(), game.answers().to_vec(), alice)
        .unwrap()
}

/// Random valid packing by sequential deflation: every vertex picks a
/// random subspace orthogonal to all earlier neighbors, so every edge
/// constraint holds by construction.
pub fn random_valid_packing(x: &Graph, d: usize, rng: &mut ChaCha8Rng) -> ProjectivePacking {
    let n = x.n_vertices();
    let mut projectors: Vec<CMat> = Vec::with_capacity(n);
    for u in 0..n {
        if x.has_loop(u) {
            projectors.push(CMat::zeros(d, d));
            continue;
        }
        let mut neighbor_sum = CMat::zeros(d, d);
        for v in 0..u {
            if x.adjacent(u, v) {
                neighbor_sum = neighbor_sum.add(&projectors[v]);
            }
        }
        let free = neighbor_sum.kernel_projector(1e-9);
        let free_rank = free.trace().re.round() as usize;
        let target = rng.random_range(0..=free_rank.min(2));
        // Positive-definite random score on the free subspace, zero on the
        // blocked one, so the top eigenvectors always avoid the neighbors.
        let h = random_hermitian(d, rng);
        let tilt = h.scale(cr(0.5 / (h.frobenius_norm() + 1.0)));
        let score = free.matmul(&CMat::identity(d).add(&tilt)).matmul(&free);
        let (vals, vecs) = score.eigh();
        let cols: Vec<usize> = (0..d).rev().filter(|&i| vals[i] > 0.25).take(target).collect();
        projectors.push(vecs.projector_from_columns(&cols));
    }
    ProjectivePacking::new(d, x.vertices().to_vec(), projectors).unwrap()
}

/// Conjugates every projector of a transpose-paired strategy by the same
/// unitary; on the maximally entangled state this leaves all joint
/// probabilities unchanged.
pub fn conjugate_transpose_paired(s: &PmeStrategy, u: &CMat) -> PmeStrategy {
    let mut alice = Vec::new();
    for q in 0..s.alice_questions().len() {
        for a in 0..s.alice_answers().len() {
            alice.push(u.matmul(s.alice_projector(q, a)).matmul(&u.adjoint()));
        }
    }
    PmeStrategy::transpose_paired(
        s.dim(),
        s.alice_questions().to_vec(),
        s.alice_answers().to_vec(),
        alice,
    )
    .unwrap()
}

/// Perfect transpose-paired block of dimension `d` built from `d` perfect
/// shared deterministic strategies expressed in a random orthonormal basis:
/// the projector for `(q, a)` spans the basis vectors of the strategies
/// answering `a` to `q`.
pub fn perfect_block_from_strategies(
    game: &SynchronousGame,
    strategies: &[Vec<usize>],
    basis: &CMat,
) -> PmeStrategy {
    let d = strategies.len();
    let na = game.n_answers();
    let mut alice = Vec::new();
    for q in 0..game.n_questions() {
        for a in 0..na {
            let cols: Vec<usize> = (0..d).filter(|&i| strategies[i][q] == a).collect();
            alice.push(basis.projector_from_columns(&cols));
        }
    }
    PmeStrategy::transpose_paired(d, game.questions().to_vec(), game.answers().to_vec(), alice)
        .unwrap()
}

/// Direct sum of perfect transpose-paired blocks with the given block
/// weights (summing to 1): the state is block-wise maximally entangled with
/// amplitude `sqrt(w_k / d_k)`, Alice's POVMs are block-diagonal, and Bob's
/// are their entrywise transposes. Distinct `w_k / d_k` ratios make the
/// state genuinely non-maximally entangled.
pub fn direct_sum_general(
    game: &SynchronousGame,
    blocks: &[PmeStrategy],
    weights: &[f64],
) -> GeneralStrategy {
    assert_eq!(blocks.len(), weights.len());
    let total_dim: usize = blocks.iter().map(PmeStrategy::dim).sum();
    let mut offsets = Vec::with_capacity(blocks.len());
    let mut acc = 0;
    for b in blocks {
        offsets.push(acc);
        acc += b.dim();
    }
    let mut state = vec![C64::zero(); total_dim * total_dim];
    for (k, block) in blocks.iter().enumerate() {
        let amp = (weights[k] / block.dim() as f64).sqrt();
        for i in 0..block.dim() {
            let idx = offsets[k] + i;
            state[idx * total_dim + idx] = cr(amp);
        }
    }
    let na = game.n_answers();
    let embed = |k: usize, m: &CMat, transpose: bool| -> CMat {
        let mut out = CMat::zeros(total_dim, total_dim);
        for i in 0..m.nrows() {
            for j in 0..m.ncols() {
                let entry = if transpose { m[(j, i)] } else { m[(i, j)] };
                out[(offsets[k] + i, offsets[k] + j)] = entry;
            }
        }
        out
    };
    let mut alice_povms = Vec::new();
    let mut bob_povms = Vec::new();
    for q in 0..game.n_questions() {
        for a in 0..na {
            let mut ma = CMat::zeros(total_dim, total_dim);
            let mut mb = CMat::zeros(total_dim, total_dim);
            for (k, block) in blocks.iter().enumerate() {
                ma = ma.add(&embed(k, block.alice_projector(q, a), false));
                mb = mb.add(&embed(k, block.alice_projector(q, a), true));
            }
            alice_povms.push(ma);
            bob_povms.push(mb);
        }
    }
    GeneralStrategy::new(
        total_dim,
        total_dim,
        game.questions().to_vec(),
        game.answers().to_vec(),
        game.questions().to_vec(),
        game.answers().to_vec(),
        state,
        alice_povms,
        bob_povms,
    )
    .unwrap()
}

/// A perfect dimension-4 transpose-paired strategy for the synchronous
/// extension of the magic-square game.
pub fn lifted_magic_square() -> (SynchronousGame, PmeStrategy) {
    let game = nlgame::game::make_magic_square();
    let ext = nlgame::reductions::synchronous_extension(&game);
    let lifted = lift_pme_strategy(
        &game,
        &nlgame::quantum::known::magic_square_pme(),
        &nlgame::quantum::Tolerances::default(),
    )
    .unwrap();
    (ext, lifted)
}

/// Random perfect shared deterministic strategies for an independent-set
/// game on a graph with enough independent vertices.
pub fn random_perfect_is_strategies(
    x: &Graph,
    t: usize,
    count: usize,
    rng: &mut ChaCha8Rng,
) -> (SynchronousGame, Vec<Vec<usize>>) {
    let game = make_independent_set_game(x, t).unwrap();
    let (alpha, witness) = x.independence_number().unwrap();
    assert!(alpha >= t, "need an independent set of size t");
    let mut strategies = Vec::with_capacity(count);
    for _ in 0..count {
        let mut pick = witness.clone();
        pick.shuffle(rng);
        let f: Vec<usize> = pick.into_iter().take(t).collect();
        strategies.push(f);
    }
    (game, strategies)
}
