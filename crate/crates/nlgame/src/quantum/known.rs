//! Hand-built reference strategies for the bundled games.

use crate::game::{make_chsh, make_magic_square};
use crate::linalg::{cr, CMat};
use crate::quantum::PmeStrategy;

fn pauli_i() -> CMat {
    CMat::identity(2)
}

fn pauli_x() -> CMat {
    CMat::from_rows(&[vec![(0.0, 0.0), (1.0, 0.0)], vec![(1.0, 0.0), (0.0, 0.0)]]).unwrap()
}

fn pauli_y() -> CMat {
    CMat::from_rows(&[vec![(0.0, 0.0), (0.0, -1.0)], vec![(0.0, 1.0), (0.0, 0.0)]]).unwrap()
}

fn pauli_z() -> CMat {
    CMat::from_rows(&[vec![(1.0, 0.0), (0.0, 0.0)], vec![(0.0, 0.0), (-1.0, 0.0)]]).unwrap()
}

/// The nine two-qubit magic-square observables, indexed `[row][column]`.
/// Each row multiplies to `+I` (so row outcomes have even parity) and each
/// column multiplies to `-I` (odd parity), while the members of any single
/// row or column commute pairwise.
fn magic_square_observables() -> [[CMat; 3]; 3] {
    let (i, x, y, z) = (pauli_i(), pauli_x(), pauli_y(), pauli_z());
    let minus = cr(-1.0);
    [
        [i.kron(&z), z.kron(&i), z.kron(&z)],
        [x.kron(&i), i.kron(&x), x.kron(&x)],
        [x.kron(&z).scale(minus), z.kron(&x).scale(minus), y.kron(&y)],
    ]
}

/// Joint eigenprojector of commuting +-1 observables for the outcome bits
/// (bit 0 = eigenvalue +1, bit 1 = eigenvalue -1).
fn joint_eigenprojector(observables: &[&CMat], bits: &[u8]) -> CMat {
    let d = observables[0].nrows();
    let mut p = CMat::identity(d);
    for (obs, &bit) in observables.iter().zip(bits) {
        let sign = if bit == 0 { cr(0.5) } else { cr(-0.5) };
        let factor = CMat::identity(d).scale(cr(0.5)).add(&obs.scale(sign));
        p = p.matmul(&factor);
    }
    p
}

fn label_bits(label: &str) -> Vec<u8> {
    label.bytes().map(|b| b - b'0').collect()
}

/// The perfect dimension-4 strategy for the magic-square game: Alice
/// measures the joint eigenbasis of her row's observables, Bob measures the
/// transposed eigenbasis of his column's, and the shared maximally entangled
/// state correlates the intersection cell exactly.
pub fn magic_square_pme() -> PmeStrategy {
    let game = make_magic_square();
    let obs = magic_square_observables();
    let mut alice = Vec::new();
    for row in 0..3 {
        for a in game.alice_answers() {
            let bits = label_bits(a);
            let refs: Vec<&CMat> = obs[row].iter().collect();
            alice.push(joint_eigenprojector(&refs, &bits));
        }
    }
    let mut bob = Vec::new();
    for col in 0..3 {
        let transposed: Vec<CMat> = (0..3).map(|row| obs[row][col].transpose()).collect();
        for b in game.bob_answers() {
            let bits = label_bits(b);
            let refs: Vec<&CMat> = transposed.iter().collect();
            bob.push(joint_eigenprojector(&refs, &bits));
        }
    }
    PmeStrategy::with_explicit_bob(
        4,
        game.alice_questions().to_vec(),
        game.alice_answers().to_vec(),
        game.bob_questions().to_vec(),
        game.bob_answers().to_vec(),
        alice,
        bob,
    )
    .expect("magic-square strategy is well-formed")
}

/// The optimal CHSH strategy at dimension 2, achieving `cos^2(pi/8)`.
/// Alice measures Z or X; Bob measures `(Z + X)/sqrt(2)` or
/// `(Z - X)/sqrt(2)`.
pub fn chsh_pme() -> PmeStrategy {
    let game = make_chsh();
    let inv = 1.0 / 2.0_f64.sqrt();
    let alice_obs = [pauli_z(), pauli_x()];
    let bob_obs = [
        pauli_z().add(&pauli_x()).scale(cr(inv)),
        pauli_z().sub(&pauli_x()).scale(cr(inv)),
    ];
    let projectors = |obs: &CMat| -> [CMat; 2] {
        let half_i = CMat::identity(2).scale(cr(0.5));
        [half_i.add(&obs.scale(cr(0.5))), half_i.sub(&obs.scale(cr(0.5)))]
    };
    let mut alice = Vec::new();
    for obs in &alice_obs {
        alice.extend(projectors(obs));
    }
    let mut bob = Vec::new();
    for obs in &bob_obs {
        bob.extend(projectors(obs));
    }
    PmeStrategy::with_explicit_bob(
        2,
        game.alice_questions().to_vec(),
        game.alice_answers().to_vec(),
        game.bob_questions().to_vec(),
        game.bob_answers().to_vec(),
        alice,
        bob,
    )
    .expect("CHSH strategy is well-formed")
}

/// One-dimensional PME encoding of a deterministic strategy: the projector
/// for `(q, a)` is the 1x1 identity when `f(q) = a` and zero otherwise.
pub fn pme_from_deterministic(
    game: &crate::game::NonlocalGame,
    s: &crate::game::DeterministicStrategy,
) -> PmeStrategy {
    let one = CMat::identity(1);
    let zero = CMat::zeros(1, 1);
    let mut alice = Vec::new();
    for q in 0..game.n_alice_questions() {
        for a in 0..game.n_alice_answers() {
            alice.push(if s.alice[q] == a { one.clone() } else { zero.clone() });
        }
    }
    let mut bob = Vec::new();
    for r in 0..game.n_bob_questions() {
        for b in 0..game.n_bob_answers() {
            bob.push(if s.bob[r] == b { one.clone() } else { zero.clone() });
        }
    }
    PmeStrategy::with_explicit_bob(
        1,
        game.alice_questions().to_vec(),
        game.alice_answers().to_vec(),
        game.bob_questions().to_vec(),
        game.bob_answers().to_vec(),
        alice,
        bob,
    )
    .expect("deterministic encoding is well-formed")
}

/// Transpose-paired variant of [`pme_from_deterministic`] for synchronous
/// games played with a shared answer function.
pub fn pme_from_shared_deterministic(
    game: &crate::game::SynchronousGame,
    f: &[usize],
) -> PmeStrategy {
    let one = CMat::identity(1);
    let zero = CMat::zeros(1, 1);
    let mut alice = Vec::new();
    for q in 0..game.n_questions() {
        for a in 0..game.n_answers() {
            alice.push(if f[q] == a { one.clone() } else { zero.clone() });
        }
    }
    PmeStrategy::transpose_paired(
        1,
        game.questions().to_vec(),
        game.answers().to_vec(),
        alice,
    )
    .expect("deterministic encoding is well-formed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::{eval_pme, Tolerances};

    #[test]
    fn observables_have_magic_parities() {
        let obs = magic_square_observables();
        let id = CMat::identity(4);
        for row in 0..3 {
            let prod = obs[row][0].matmul(&obs[row][1]).matmul(&obs[row][2]);
            assert!(prod.sub(&id).frobenius_norm() < 1e-12, "row {row}");
        }
        for col in 0..3 {
            let prod = obs[0][col].matmul(&obs[1][col]).matmul(&obs[2][col]);
            assert!(prod.add(&id).frobenius_norm() < 1e-12, "col {col}");
        }
        // Rows and columns commute internally.
        for i in 0..3 {
            for (a, b) in [(0, 1), (0, 2), (1, 2)] {
                let row_comm = obs[i][a].matmul(&obs[i][b]).sub(&obs[i][b].matmul(&obs[i][a]));
                assert!(row_comm.frobenius_norm() < 1e-12);
                let col_comm = obs[a][i].matmul(&obs[b][i]).sub(&obs[b][i].matmul(&obs[a][i]));
                assert!(col_comm.frobenius_norm() < 1e-12);
            }
        }
    }

    #[test]
    fn magic_square_strategy_is_perfect() {
        let game = make_magic_square();
        let s = magic_square_pme();
        assert!(s.validate(&Tolerances::default()).is_empty());
        let v = eval_pme(&game, &s).unwrap();
        assert!((v - 1.0).abs() < 1e-9, "value {v}");
    }

    #[test]
    fn chsh_strategy_hits_tsirelson() {
        let game = make_chsh();
        let s = chsh_pme();
        assert!(s.validate(&Tolerances::default()).is_empty());
        let v = eval_pme(&game, &s).unwrap();
        let expect = (std::f64::consts::FRAC_PI_8).cos().powi(2);
        assert!((v - expect).abs() < 1e-12, "value {v}, expected {expect}");
    }

    #[test]
    fn deterministic_encoding_matches_exact_value() {
        use crate::game::{classical_value, eval_deterministic};
        use num_traits::ToPrimitive;
        let game = make_chsh();
        let (_, witness) = classical_value(&game).unwrap();
        let s = pme_from_deterministic(&game, &witness);
        let exact = eval_deterministic(&game, &witness).unwrap().to_f64().unwrap();
        let v = eval_pme(&game, &s).unwrap();
        assert!((v - exact).abs() < 1e-12);
        assert!((v - 0.75).abs() < 1e-12);
    }

}
