//! Immutable simple graphs and tournaments backed by bitset adjacency rows.
//!
//! Vertices are `0..n`. They double as the atom set of the spin planar
//! algebra, so a graph is at the same time the weight matrix `C_P` of the
//! generator and, through [`Graph::complement`], the weight matrix of `Q`.

mod generators;
mod graph6;
mod tournament;

pub use generators::{
    circulant_tournament, clebsch, complete, cycle, empty, paley, path, petersen, union_complete,
    GeneratorError, GeneratorSpec, Generated,
};
pub use graph6::{parse_graph6, write_graph6, Graph6Error, MAX_GRAPH6_ORDER};
pub use tournament::{Tournament, TournamentError};

use crate::bitset;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("a graph needs at least one vertex")]
    NoVertices,
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("loop at vertex {0}")]
    Loop(usize),
}

/// How an ordered pair of vertices relates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PairType {
    Equal,
    Adjacent,
    NonAdjacent,
}

/// Induced subgraph on three vertices, named by how many of the three pairs
/// are edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TripleType {
    /// Three edges.
    Triangle,
    /// Two edges.
    Lambda,
    /// One edge.
    AntiLambda,
    /// No edges.
    AntiTriangle,
    /// The three vertices are not distinct.
    Degenerate,
}

impl TripleType {
    /// The four types of distinct triples, in order of decreasing edge count.
    pub const DISTINCT: [TripleType; 4] = [
        TripleType::Triangle,
        TripleType::Lambda,
        TripleType::AntiLambda,
        TripleType::AntiTriangle,
    ];

    pub fn from_edge_count(edges: usize) -> TripleType {
        match edges {
            3 => TripleType::Triangle,
            2 => TripleType::Lambda,
            1 => TripleType::AntiLambda,
            0 => TripleType::AntiTriangle,
            _ => unreachable!("a triple has at most three pairs"),
        }
    }

    /// Number of induced edges; `None` for degenerate triples.
    pub fn edge_count(self) -> Option<usize> {
        match self {
            TripleType::Triangle => Some(3),
            TripleType::Lambda => Some(2),
            TripleType::AntiLambda => Some(1),
            TripleType::AntiTriangle => Some(0),
            TripleType::Degenerate => None,
        }
    }

    /// The type of the same triple in the complement graph.
    pub fn complemented(self) -> TripleType {
        match self {
            TripleType::Degenerate => TripleType::Degenerate,
            t => TripleType::from_edge_count(3 - t.edge_count().unwrap()),
        }
    }
}

/// An undirected simple graph on at least one vertex.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn edgeless(n: usize) -> Result<Graph, GraphError> {
        if n == 0 {
            return Err(GraphError::NoVertices);
        }
        let words = bitset::words_for(n);
        Ok(Graph {
            n,
            words,
            bits: vec![0; n * words],
        })
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Graph, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::edgeless(n)?;
        for (a, b) in edges {
            for v in [a, b] {
                if v >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: v, n });
                }
            }
            if a == b {
                return Err(GraphError::Loop(a));
            }
            g.insert_edge(a, b);
        }
        Ok(g)
    }

    /// Builds a graph from a predicate queried once for every pair `a < b`.
    pub fn from_fn(n: usize, mut adjacent: impl FnMut(usize, usize) -> bool) -> Result<Graph, GraphError> {
        let mut g = Graph::edgeless(n)?;
        for b in 1..n {
            for a in 0..b {
                if adjacent(a, b) {
                    g.insert_edge(a, b);
                }
            }
        }
        Ok(g)
    }

    fn insert_edge(&mut self, a: usize, b: usize) {
        let w = self.words;
        bitset::set(&mut self.bits[a * w..(a + 1) * w], b);
        bitset::set(&mut self.bits[b * w..(b + 1) * w], a);
    }

    /// Number of vertices.
    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    /// Neighbourhood of `a` as a bitset row.
    #[inline]
    pub fn row(&self, a: usize) -> &[u64] {
        &self.bits[a * self.words..(a + 1) * self.words]
    }

    #[inline]
    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        bitset::get(self.row(a), b)
    }

    pub fn degree(&self, a: usize) -> usize {
        bitset::count(self.row(a))
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|a| self.degree(a)).sum::<usize>() / 2
    }

    pub fn neighbors(&self, a: usize) -> impl Iterator<Item = usize> + '_ {
        bitset::ones(self.row(a))
    }

    /// Edges `(a, b)` with `a < b`, ordered by `a` then `b`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |a| self.neighbors(a).filter(move |&b| b > a).map(move |b| (a, b)))
    }

    #[inline]
    pub fn common_neighbors(&self, a: usize, b: usize) -> usize {
        bitset::count_and(self.row(a), self.row(b))
    }

    #[inline]
    pub fn common_neighbors3(&self, a: usize, b: usize, c: usize) -> usize {
        bitset::count_and3(self.row(a), self.row(b), self.row(c))
    }

    pub fn complement(&self) -> Graph {
        let mut bits = Vec::with_capacity(self.bits.len());
        let full = bitset::full(self.n);
        for a in 0..self.n {
            let start = bits.len();
            bits.extend(self.row(a).iter().zip(&full).map(|(x, m)| !x & m));
            bits[start + (a >> 6)] &= !(1u64 << (a & 63));
        }
        Graph {
            n: self.n,
            words: self.words,
            bits,
        }
    }

    /// Every vertex is adjacent to every other.
    pub fn is_complete(&self) -> bool {
        (0..self.n).all(|a| self.degree(a) == self.n - 1)
    }

    pub fn pair_type(&self, a: usize, b: usize) -> PairType {
        if a == b {
            PairType::Equal
        } else if self.adjacent(a, b) {
            PairType::Adjacent
        } else {
            PairType::NonAdjacent
        }
    }

    pub fn triple_type(&self, a: usize, b: usize, c: usize) -> TripleType {
        if a == b || b == c || a == c {
            return TripleType::Degenerate;
        }
        let edges = self.adjacent(a, b) as usize + self.adjacent(b, c) as usize + self.adjacent(a, c) as usize;
        TripleType::from_edge_count(edges)
    }

    /// Breadth-first reachability from vertex 0.
    pub fn is_connected(&self) -> bool {
        let mut seen = vec![0u64; self.words];
        let mut frontier = vec![0usize];
        bitset::set(&mut seen, 0);
        while let Some(v) = frontier.pop() {
            for u in self.neighbors(v) {
                if !bitset::get(&seen, u) {
                    bitset::set(&mut seen, u);
                    frontier.push(u);
                }
            }
        }
        bitset::count(&seen) == self.n
    }

    /// Connected components as sorted vertex lists, ordered by least vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut label = vec![usize::MAX; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if label[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut comp = vec![s];
            label[s] = id;
            let mut i = 0;
            while i < comp.len() {
                let v = comp[i];
                i += 1;
                for u in self.neighbors(v) {
                    if label[u] == usize::MAX {
                        label[u] = id;
                        comp.push(u);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// `Some((m, s))` when the graph is `m` disjoint copies of `K_s`.
    pub fn as_union_of_completes(&self) -> Option<(usize, usize)> {
        let comps = self.components();
        let size = comps[0].len();
        let cliques = comps
            .iter()
            .all(|c| c.len() == size && c.iter().all(|&v| self.degree(v) == size - 1));
        cliques.then_some((comps.len(), size))
    }

    /// The 5-cycle, up to relabelling.
    pub fn is_pentagon(&self) -> bool {
        self.n == 5 && (0..5).all(|a| self.degree(a) == 2) && self.is_connected()
    }

    /// Relabels vertices so that old vertex `v` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n, "permutation length must match order");
        Graph::from_edges(self.n, self.edges().map(|(a, b)| (perm[a], perm[b]))).expect("relabelling preserves simplicity")
    }

    pub fn to_graph6(&self) -> String {
        write_graph6(self)
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph({})", write_graph6(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn isomorphic_small(g: &Graph, h: &Graph) -> bool {
        // brute force over all permutations; fine for n <= 8
        fn rec(g: &Graph, h: &Graph, perm: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
            let k = perm.len();
            if k == g.order() {
                return true;
            }
            for v in 0..g.order() {
                if used[v] {
                    continue;
                }
                if (0..k).all(|u| g.adjacent(u, k) == h.adjacent(perm[u], v)) {
                    perm.push(v);
                    used[v] = true;
                    if rec(g, h, perm, used) {
                        return true;
                    }
                    perm.pop();
                    used[v] = false;
                }
            }
            false
        }
        g.order() == h.order() && g.edge_count() == h.edge_count() && rec(g, h, &mut vec![], &mut vec![false; g.order()])
    }

    #[test]
    fn zero_vertices_rejected() {
        assert_eq!(Graph::edgeless(0), Err(GraphError::NoVertices));
        assert_eq!(Graph::from_edges(2, [(1, 1)]), Err(GraphError::Loop(1)));
        assert!(matches!(Graph::from_edges(2, [(0, 2)]), Err(GraphError::VertexOutOfRange { .. })));
    }

    #[test]
    fn complement_of_complete_is_edgeless() {
        let k5 = complete(5).unwrap();
        let c = k5.complement();
        assert_eq!(c.edge_count(), 0);
        assert_eq!(c, Graph::edgeless(5).unwrap());
    }

    #[test]
    fn pentagon_is_self_complementary() {
        let c5 = cycle(5).unwrap();
        assert!(isomorphic_small(&c5, &c5.complement()));
        assert!(!isomorphic_small(&cycle(6).unwrap(), &cycle(6).unwrap().complement()));
    }

    #[test]
    fn complement_of_two_k2_is_square() {
        let g = union_complete(2, 2).unwrap().complement();
        let edges: Vec<_> = g.edges().collect();
        assert_eq!(edges, vec![(0, 2), (0, 3), (1, 2), (1, 3)]);
        assert!(isomorphic_small(&g, &cycle(4).unwrap()));
    }

    #[test]
    fn complement_spans_word_boundaries() {
        let g = Graph::edgeless(70).unwrap().complement();
        assert!(g.is_complete());
        assert_eq!(g.complement(), Graph::edgeless(70).unwrap());
    }

    #[test]
    fn triple_types() {
        let k3 = complete(3).unwrap();
        assert_eq!(k3.triple_type(0, 1, 2), TripleType::Triangle);
        let c5 = cycle(5).unwrap();
        assert_eq!(c5.triple_type(0, 1, 2), TripleType::Lambda);
        assert_eq!(c5.triple_type(0, 1, 3), TripleType::AntiLambda);
        let e = Graph::edgeless(4).unwrap();
        assert_eq!(e.triple_type(3, 0, 2), TripleType::AntiTriangle);
        assert_eq!(e.triple_type(1, 1, 2), TripleType::Degenerate);
        assert_eq!(c5.pair_type(2, 2), PairType::Equal);
        assert_eq!(c5.pair_type(2, 3), PairType::Adjacent);
        assert_eq!(c5.pair_type(2, 4), PairType::NonAdjacent);
    }

    #[test]
    fn connectivity() {
        assert!(complete(4).unwrap().is_connected());
        assert!(!union_complete(2, 3).unwrap().is_connected());
        assert!(cycle(5).unwrap().is_connected());
        assert!(Graph::edgeless(1).unwrap().is_connected());
    }

    #[test]
    fn union_of_completes_detection() {
        assert_eq!(union_complete(3, 4).unwrap().as_union_of_completes(), Some((3, 4)));
        assert_eq!(Graph::edgeless(4).unwrap().as_union_of_completes(), Some((4, 1)));
        assert_eq!(cycle(4).unwrap().as_union_of_completes(), None);
        let uneven = Graph::from_edges(5, [(0, 1), (2, 3), (3, 4), (2, 4)]).unwrap();
        assert_eq!(uneven.as_union_of_completes(), None);
    }
}
