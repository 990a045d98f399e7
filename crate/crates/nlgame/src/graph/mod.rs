//! Simple undirected graphs with exact independence numbers.
//!
//! The solver is a branch-and-bound over candidate sets kept in small
//! bitsets. Game graphs carry a clique partition (one block per question),
//! which doubles as a free upper bound during the search: each block can
//! contribute at most one vertex to an independent set.

pub mod format;

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

use crate::game::{eval_deterministic, DeterministicStrategy, SynchronousGame};
use crate::Rat;

/// Default cap on branch-and-bound nodes for [`Graph::independence_number`].
pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("label {0:?} is invalid: labels must be nonempty and free of whitespace, '#', and ':'")]
    BadLabel(String),
    #[error("duplicate vertex label {0:?}")]
    DuplicateVertex(String),
    #[error("vertex index {index} out of range for a graph on {n} vertices")]
    VertexOutOfRange { index: usize, n: usize },
    #[error("self-loop at vertex {0:?}")]
    SelfLoop(String),
    #[error("invalid clique partition: {0}")]
    InvalidPartition(String),
    #[error("branch-and-bound budget exceeded after exploring {explored} nodes (budget {budget})")]
    BudgetExceeded { explored: u64, budget: u64 },
    #[error("operation requires a uniform question distribution")]
    NotUniform,
    #[error("vertex set is not independent: {u:?} and {v:?} are adjacent")]
    NotIndependent { u: String, v: String },
    #[error("graph is not the game graph of the given game: {0}")]
    InconsistentGameGraph(String),
}

/// Fixed-capacity bitset over vertex indices.
#[derive(Clone, PartialEq, Eq)]
pub(crate) struct BitSet {
    words: Vec<u64>,
    n: usize,
}

impl BitSet {
    pub fn empty(n: usize) -> Self {
        BitSet { words: vec![0; n.div_ceil(64)], n }
    }

    pub fn full(n: usize) -> Self {
        let mut s = BitSet::empty(n);
        for i in 0..n {
            s.insert(i);
        }
        s
    }

    pub fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn remove(&mut self, i: usize) {
        self.words[i / 64] &= !(1 << (i % 64));
    }

    pub fn contains(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn min_element(&self) -> Option<usize> {
        for (k, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(k * 64 + w.trailing_zeros() as usize);
            }
        }
        None
    }

    pub fn intersect(&self, other: &BitSet) -> BitSet {
        let words = self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect();
        BitSet { words, n: self.n }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&i| self.contains(i))
    }
}

impl fmt::Debug for BitSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Undirected graph over ordered, opaque vertex labels, with an optional
/// clique partition (the per-question blocks of a game graph).
///
/// Edges between distinct vertices keep the graph simple; a vertex may
/// additionally carry a self-loop, which excludes it from every independent
/// set and forces its packing projector to zero. Game graphs use loops for
/// answer/question pairs the predicate rejects against themselves
/// (`V(a,a|q,q) = 0`); graphs without loops behave exactly as simple
/// graphs.
#[derive(Clone, PartialEq)]
pub struct Graph {
    vertices: Vec<String>,
    adj: Vec<BitSet>,
    /// Complement adjacency rows (excluding the diagonal), kept for the
    /// branch-and-bound inner loop.
    non_adj: Vec<BitSet>,
    loops: Vec<bool>,
    clique_partition: Option<Vec<Vec<usize>>>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n_vertices", &self.n_vertices())
            .field("n_edges", &self.n_edges())
            .field("n_loops", &self.loops.iter().filter(|&&l| l).count())
            .field("partition_blocks", &self.clique_partition.as_ref().map(Vec::len))
            .finish()
    }
}

fn check_vertex_labels(labels: &[String]) -> Result<(), GraphError> {
    for l in labels {
        if l.is_empty() || l.chars().any(|c| c.is_whitespace() || c == '#' || c == ':') {
            return Err(GraphError::BadLabel(l.clone()));
        }
    }
    for (i, l) in labels.iter().enumerate() {
        if labels[..i].contains(l) {
            return Err(GraphError::DuplicateVertex(l.clone()));
        }
    }
    Ok(())
}

impl Graph {
    /// Builds a graph from vertex labels and index-pair edges.
    pub fn new(vertices: Vec<String>, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        check_vertex_labels(&vertices)?;
        let n = vertices.len();
        let mut adj = vec![BitSet::empty(n); n];
        for &(u, v) in edges {
            if u >= n {
                return Err(GraphError::VertexOutOfRange { index: u, n });
            }
            if v >= n {
                return Err(GraphError::VertexOutOfRange { index: v, n });
            }
            if u == v {
                return Err(GraphError::SelfLoop(vertices[u].clone()));
            }
            adj[u].insert(v);
            adj[v].insert(u);
        }
        let non_adj = Self::complement_rows(&adj, n);
        Ok(Graph { vertices, adj, non_adj, loops: vec![false; n], clique_partition: None })
    }

    /// Marks the given vertices as looped (self-adjacent).
    pub fn with_loops(mut self, looped: &[usize]) -> Result<Self, GraphError> {
        let n = self.n_vertices();
        for &v in looped {
            if v >= n {
                return Err(GraphError::VertexOutOfRange { index: v, n });
            }
            self.loops[v] = true;
        }
        Ok(self)
    }

    pub fn has_loop(&self, u: usize) -> bool {
        self.loops[u]
    }

    pub fn looped_vertices(&self) -> Vec<usize> {
        (0..self.n_vertices()).filter(|&u| self.loops[u]).collect()
    }

    fn complement_rows(adj: &[BitSet], n: usize) -> Vec<BitSet> {
        (0..n)
            .map(|u| {
                let mut row = BitSet::full(n);
                row.remove(u);
                for v in adj[u].iter() {
                    row.remove(v);
                }
                row
            })
            .collect()
    }

    /// Attaches a clique partition: disjoint blocks covering every vertex,
    /// each of which must be a clique.
    pub fn with_clique_partition(mut self, blocks: Vec<Vec<usize>>) -> Result<Self, GraphError> {
        let n = self.n_vertices();
        let mut seen = vec![false; n];
        for block in &blocks {
            for &v in block {
                if v >= n {
                    return Err(GraphError::VertexOutOfRange { index: v, n });
                }
                if seen[v] {
                    return Err(GraphError::InvalidPartition(format!(
                        "vertex {:?} appears in two blocks",
                        self.vertices[v]
                    )));
                }
                seen[v] = true;
            }
            for (i, &u) in block.iter().enumerate() {
                for &v in &block[i + 1..] {
                    if !self.adjacent(u, v) {
                        return Err(GraphError::InvalidPartition(format!(
                            "block members {:?} and {:?} are not adjacent",
                            self.vertices[u], self.vertices[v]
                        )));
                    }
                }
            }
        }
        if !seen.iter().all(|&s| s) {
            return Err(GraphError::InvalidPartition("blocks do not cover the vertex set".into()));
        }
        self.clique_partition = Some(blocks);
        Ok(self)
    }

    /// Complete graph on `n` vertices labeled `v1..vn`.
    pub fn complete(n: usize) -> Graph {
        let vertices: Vec<String> = (1..=n).map(|i| format!("v{i}")).collect();
        let mut edges = Vec::new();
        for u in 0..n {
            for v in (u + 1)..n {
                edges.push((u, v));
            }
        }
        Graph::new(vertices, &edges).expect("complete graph is valid")
    }

    /// Edgeless graph on `n` vertices labeled `v1..vn`.
    pub fn empty(n: usize) -> Graph {
        let vertices: Vec<String> = (1..=n).map(|i| format!("v{i}")).collect();
        Graph::new(vertices, &[]).expect("empty graph is valid")
    }

    /// Cycle on `n >= 3` vertices labeled `v1..vn`.
    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3, "a cycle needs at least 3 vertices");
        let vertices: Vec<String> = (1..=n).map(|i| format!("v{i}")).collect();
        let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::new(vertices, &edges).expect("cycle graph is valid")
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn n_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == label)
    }

    /// Adjacency; `adjacent(u, u)` reports a self-loop.
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        if u == v {
            self.loops[u]
        } else {
            self.adj[u].contains(v)
        }
    }

    /// Edge list with endpoints ordered `u < v`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n_vertices() {
            for v in self.adj[u].iter() {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn n_edges(&self) -> usize {
        self.adj.iter().map(|row| row.iter().count()).sum::<usize>() / 2
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].iter().count()
    }

    pub fn clique_partition(&self) -> Option<&[Vec<usize>]> {
        self.clique_partition.as_deref()
    }

    /// True when no two vertices of `set` are adjacent; a looped vertex is
    /// adjacent to itself and can never belong to an independent set.
    pub fn is_independent_set(&self, set: &[usize]) -> Result<bool, GraphError> {
        let n = self.n_vertices();
        for &v in set {
            if v >= n {
                return Err(GraphError::VertexOutOfRange { index: v, n });
            }
        }
        if set.iter().any(|&v| self.loops[v]) {
            return Ok(false);
        }
        for (i, &u) in set.iter().enumerate() {
            for &v in &set[i + 1..] {
                if u != v && self.adjacent(u, v) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Graph complement over distinct vertex pairs; loops and any clique
    /// partition are dropped.
    pub fn complement(&self) -> Graph {
        let n = self.n_vertices();
        let mut edges = Vec::new();
        for u in 0..n {
            for v in (u + 1)..n {
                if !self.adjacent(u, v) {
                    edges.push((u, v));
                }
            }
        }
        Graph::new(self.vertices.clone(), &edges).expect("complement of a valid graph is valid")
    }

    /// Exact independence number with a maximum witness, default budget.
    pub fn independence_number(&self) -> Result<(usize, Vec<usize>), GraphError> {
        self.independence_number_with_budget(DEFAULT_NODE_BUDGET)
    }

    /// Exact independence number by branch and bound.
    ///
    /// Returns the size and the lexicographically smallest maximum
    /// independent set under the vertex ordering. The bound uses the clique
    /// partition when present (each block contributes at most one vertex)
    /// and a greedy clique cover of the candidate set otherwise.
    pub fn independence_number_with_budget(
        &self,
        budget: u64,
    ) -> Result<(usize, Vec<usize>), GraphError> {
        let n = self.n_vertices();
        let block_of: Option<Vec<usize>> = self.clique_partition.as_ref().map(|blocks| {
            let mut map = vec![0usize; n];
            for (b, block) in blocks.iter().enumerate() {
                for &v in block {
                    map[v] = b;
                }
            }
            map
        });
        let mut search = Search {
            graph: self,
            block_of,
            n_blocks: self.clique_partition.as_ref().map_or(0, Vec::len),
            budget,
            explored: 0,
            best_size: 0,
            best: Vec::new(),
        };
        let mut candidates = BitSet::full(n);
        for (v, &looped) in self.loops.iter().enumerate() {
            if looped {
                candidates.remove(v);
            }
        }
        let mut current = Vec::new();
        search.dfs(&mut current, candidates)?;
        Ok((search.best_size, search.best))
    }
}

struct Search<'a> {
    graph: &'a Graph,
    block_of: Option<Vec<usize>>,
    n_blocks: usize,
    budget: u64,
    explored: u64,
    best_size: usize,
    best: Vec<usize>,
}

impl Search<'_> {
    fn bound(&self, cand: &BitSet) -> usize {
        if let Some(block_of) = &self.block_of {
            let mut hit = vec![false; self.n_blocks];
            let mut count = 0;
            for v in cand.iter() {
                let b = block_of[v];
                if !hit[b] {
                    hit[b] = true;
                    count += 1;
                }
            }
            count
        } else {
            // Greedy clique cover of the candidate set.
            let mut cliques: Vec<Vec<usize>> = Vec::new();
            'next: for v in cand.iter() {
                for clique in cliques.iter_mut() {
                    if clique.iter().all(|&u| self.graph.adjacent(u, v)) {
                        clique.push(v);
                        continue 'next;
                    }
                }
                cliques.push(vec![v]);
            }
            cliques.len()
        }
    }

    fn dfs(&mut self, current: &mut Vec<usize>, cand: BitSet) -> Result<(), GraphError> {
        self.explored += 1;
        if self.explored > self.budget {
            return Err(GraphError::BudgetExceeded {
                explored: self.explored,
                budget: self.budget,
            });
        }
        if current.len() > self.best_size {
            self.best_size = current.len();
            self.best = current.clone();
        }
        let Some(v) = cand.min_element() else {
            return Ok(());
        };
        if current.len() + self.bound(&cand) <= self.best_size {
            return Ok(());
        }
        // Include v first so equal-size witnesses are found in
        // lexicographic order; only strict improvements replace the best.
        let mut with_v = cand.intersect(&self.graph.non_adj[v]);
        with_v.remove(v);
        current.push(v);
        self.dfs(current, with_v)?;
        current.pop();
        let mut without_v = cand;
        without_v.remove(v);
        self.dfs(current, without_v)
    }
}

fn check_game_graph_layout(game: &SynchronousGame, x: &Graph) -> Result<(), GraphError> {
    let nq = game.n_questions();
    let na = game.n_answers();
    if x.n_vertices() != na * nq {
        return Err(GraphError::InconsistentGameGraph(format!(
            "expected {} vertices, found {}",
            na * nq,
            x.n_vertices()
        )));
    }
    let Some(blocks) = x.clique_partition() else {
        return Err(GraphError::InconsistentGameGraph("missing clique partition".into()));
    };
    if blocks.len() != nq {
        return Err(GraphError::InconsistentGameGraph(format!(
            "expected {} partition blocks, found {}",
            nq,
            blocks.len()
        )));
    }
    for (q, block) in blocks.iter().enumerate() {
        let expected: Vec<usize> = (q * na..(q + 1) * na).collect();
        if *block != expected {
            return Err(GraphError::InconsistentGameGraph(format!(
                "block {q} does not match the answer-major vertex layout"
            )));
        }
    }
    Ok(())
}

/// Extracts a perfect deterministic strategy from a maximum independent set
/// of the game graph, when one of full size exists.
///
/// `x` must be the game graph of `game` (vertex `q * |A| + a` stands for the
/// answer-question pair `(a, q)`, with one partition block per question).
/// Returns `None` when the independence number falls short of `|Q|`.
pub fn perfect_classical_strategy(
    game: &SynchronousGame,
    x: &Graph,
) -> Result<Option<DeterministicStrategy>, GraphError> {
    check_game_graph_layout(game, x)?;
    let nq = game.n_questions();
    let na = game.n_answers();
    let (alpha, witness) = x.independence_number()?;
    debug_assert!(alpha <= nq, "clique partition bounds alpha by |Q|");
    if alpha < nq {
        return Ok(None);
    }
    let mut f = vec![usize::MAX; nq];
    for &v in &witness {
        f[v / na] = v % na;
    }
    debug_assert!(f.iter().all(|&a| a != usize::MAX));
    let strategy = DeterministicStrategy::shared(f);
    let value = eval_deterministic(game.game(), &strategy)
        .map_err(|e| GraphError::InconsistentGameGraph(e.to_string()))?;
    if !value.is_one() {
        return Err(GraphError::InconsistentGameGraph(
            "full-size independent set does not induce a perfect strategy".into(),
        ));
    }
    Ok(Some(strategy))
}

/// Builds the deterministic strategy that answers along an independent set
/// `s` of the game graph and arbitrarily (first answer) elsewhere, together
/// with its guaranteed value `(|S| / |Q|)^2`.
///
/// Requires a uniform question distribution. The actual value of the
/// returned strategy is at least the guarantee.
pub fn classical_strategy_from_independent_set(
    game: &SynchronousGame,
    x: &Graph,
    s: &[usize],
) -> Result<(DeterministicStrategy, Rat), GraphError> {
    check_game_graph_layout(game, x)?;
    if !game.is_uniform() {
        return Err(GraphError::NotUniform);
    }
    let nq = game.n_questions();
    let na = game.n_answers();
    for &u in s {
        if u >= x.n_vertices() {
            return Err(GraphError::VertexOutOfRange { index: u, n: x.n_vertices() });
        }
        if x.has_loop(u) {
            return Err(GraphError::NotIndependent {
                u: x.vertices[u].clone(),
                v: x.vertices[u].clone(),
            });
        }
    }
    for (i, &u) in s.iter().enumerate() {
        for &v in &s[i + 1..] {
            if u == v || x.adjacent(u, v) {
                return Err(GraphError::NotIndependent {
                    u: x.vertices[u].clone(),
                    v: x.vertices[v].clone(),
                });
            }
        }
    }
    let mut f = vec![0usize; nq];
    for &v in s {
        f[v / na] = v % na;
    }
    let guarantee = Rat::new(
        BigInt::from(s.len() * s.len()),
        BigInt::from(nq * nq),
    );
    Ok((DeterministicStrategy::shared(f), guarantee))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Exhaustive subset oracle, independent of the branch-and-bound path.
    fn alpha_by_enumeration(g: &Graph) -> (usize, Vec<usize>) {
        let n = g.n_vertices();
        assert!(n <= 20);
        let mut best = 0;
        let mut witness = Vec::new();
        for mask in 0u32..(1 << n) {
            let set: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            let ok = set
                .iter()
                .enumerate()
                .all(|(i, &u)| set[i + 1..].iter().all(|&v| !g.adjacent(u, v)));
            if ok && set.len() > best {
                best = set.len();
                witness = set;
            }
        }
        (best, witness)
    }

    #[test]
    fn alpha_of_basic_families() {
        assert_eq!(Graph::empty(5).independence_number().unwrap().0, 5);
        assert_eq!(Graph::complete(6).independence_number().unwrap().0, 1);
        assert_eq!(Graph::cycle(5).independence_number().unwrap().0, 2);
        assert_eq!(Graph::cycle(7).independence_number().unwrap().0, 3);
    }

    #[test]
    fn c5_has_independent_pair() {
        let c5 = Graph::cycle(5);
        assert!(c5.is_independent_set(&[0, 2]).unwrap());
        assert!(!c5.is_independent_set(&[0, 1]).unwrap());
        assert!(Graph::complete(3).is_independent_set(&[0]).unwrap());
        assert!(!Graph::complete(3).is_independent_set(&[0, 1]).unwrap());
    }

    #[test]
    fn unknown_vertex_is_an_error() {
        let err = Graph::complete(3).is_independent_set(&[5]).unwrap_err();
        assert!(matches!(err, GraphError::VertexOutOfRange { index: 5, .. }));
    }

    #[test]
    fn complement_involution_and_families() {
        let c5 = Graph::cycle(5);
        assert_eq!(c5.complement().complement(), c5);
        assert_eq!(Graph::complete(4).complement(), Graph::empty(4));
        // C5 is self-complementary up to relabeling: same counts and alpha.
        let co = c5.complement();
        assert_eq!(co.n_edges(), 5);
        assert_eq!(co.independence_number().unwrap().0, 2);
    }

    #[test]
    fn alpha_matches_enumeration_on_random_graphs() {
        use rand::Rng;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        for trial in 0..40 {
            let n = rng.random_range(1..=10);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in (u + 1)..n {
                    if rng.random_bool(0.4) {
                        edges.push((u, v));
                    }
                }
            }
            let labels = (0..n).map(|i| format!("u{i}")).collect();
            let g = Graph::new(labels, &edges).unwrap();
            let (alpha, witness) = g.independence_number().unwrap();
            let (expect, _) = alpha_by_enumeration(&g);
            assert_eq!(alpha, expect, "trial {trial}");
            assert_eq!(witness.len(), alpha);
            assert!(g.is_independent_set(&witness).unwrap());
        }
    }

    #[test]
    fn witness_is_lexicographically_smallest() {
        // Two maximum independent sets {0,2} and {1,3} in C4; expect {0,2}.
        let c4 = Graph::cycle(4);
        let (alpha, witness) = c4.independence_number().unwrap();
        assert_eq!(alpha, 2);
        assert_eq!(witness, vec![0, 2]);
    }

    #[test]
    fn budget_exceeded_reports_explored_nodes() {
        let g = Graph::empty(30);
        let err = g.independence_number_with_budget(5).unwrap_err();
        assert!(matches!(err, GraphError::BudgetExceeded { explored: 6, budget: 5 }));
    }

    #[test]
    fn partition_validation() {
        let g = Graph::complete(4);
        assert!(g
            .clone()
            .with_clique_partition(vec![vec![0, 1], vec![2, 3]])
            .is_ok());
        let g2 = Graph::empty(2);
        let err = g2.with_clique_partition(vec![vec![0, 1]]).unwrap_err();
        assert!(matches!(err, GraphError::InvalidPartition(_)));
    }

    #[test]
    fn looped_vertices_never_join_independent_sets() {
        let g = Graph::empty(3).with_loops(&[1]).unwrap();
        assert!(g.adjacent(1, 1));
        assert!(!g.adjacent(0, 0));
        assert!(!g.is_independent_set(&[1]).unwrap());
        assert!(g.is_independent_set(&[0, 2]).unwrap());
        let (alpha, witness) = g.independence_number().unwrap();
        assert_eq!(alpha, 2);
        assert_eq!(witness, vec![0, 2]);
    }

    #[test]
    fn partition_bound_prunes_like_greedy() {
        // Same alpha with and without the partition annotation.
        let g = Graph::complete(3);
        let with = g
            .clone()
            .with_clique_partition(vec![vec![0, 1, 2]])
            .unwrap();
        assert_eq!(
            g.independence_number().unwrap(),
            with.independence_number().unwrap()
        );
    }
}
