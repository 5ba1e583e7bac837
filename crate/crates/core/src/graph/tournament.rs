use super::graph6::{self, Graph6Error};
use super::GraphError;
use crate::bitset;

/// A complete asymmetric digraph: for distinct `a`, `b` exactly one of the
/// arcs `a -> b`, `b -> a` is present.
///
/// Tournaments travel as graph6 lines under the convention used by nauty's
/// `gentourng`: for `i < j` a set bit means `i -> j`, a clear bit `j -> i`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Tournament {
    n: usize,
    words: usize,
    out: Vec<u64>,
    inn: Vec<u64>,
}

impl Tournament {
    /// Builds a tournament from an orientation predicate queried for every
    /// pair `i < j`; `true` means `i -> j`.
    pub fn from_orientation(n: usize, mut forward: impl FnMut(usize, usize) -> bool) -> Result<Tournament, GraphError> {
        if n == 0 {
            return Err(GraphError::NoVertices);
        }
        let words = bitset::words_for(n);
        let mut t = Tournament {
            n,
            words,
            out: vec![0; n * words],
            inn: vec![0; n * words],
        };
        for j in 1..n {
            for i in 0..j {
                if forward(i, j) {
                    t.insert_arc(i, j);
                } else {
                    t.insert_arc(j, i);
                }
            }
        }
        Ok(t)
    }

    /// Validates an explicit arc matrix.
    pub fn from_arc_matrix(rows: &[Vec<bool>]) -> Result<Tournament, TournamentError> {
        let n = rows.len();
        for (a, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(TournamentError::NotSquare);
            }
            if row[a] {
                return Err(TournamentError::Loop(a));
            }
            for b in (a + 1)..n {
                if row[b] == rows[b][a] {
                    return Err(TournamentError::PairNotOriented(a, b));
                }
            }
        }
        Ok(Tournament::from_orientation(n, |i, j| rows[i][j])?)
    }

    fn insert_arc(&mut self, a: usize, b: usize) {
        let w = self.words;
        bitset::set(&mut self.out[a * w..(a + 1) * w], b);
        bitset::set(&mut self.inn[b * w..(b + 1) * w], a);
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    /// Is there an arc `a -> b`?
    #[inline]
    pub fn arc(&self, a: usize, b: usize) -> bool {
        bitset::get(self.out_row(a), b)
    }

    #[inline]
    pub fn out_row(&self, a: usize) -> &[u64] {
        &self.out[a * self.words..(a + 1) * self.words]
    }

    #[inline]
    pub fn in_row(&self, a: usize) -> &[u64] {
        &self.inn[a * self.words..(a + 1) * self.words]
    }

    pub fn out_degree(&self, a: usize) -> usize {
        bitset::count(self.out_row(a))
    }

    pub fn in_degree(&self, a: usize) -> usize {
        bitset::count(self.in_row(a))
    }

    /// The tournament with every arc reversed.
    pub fn reversed(&self) -> Tournament {
        Tournament {
            n: self.n,
            words: self.words,
            out: self.inn.clone(),
            inn: self.out.clone(),
        }
    }

    pub fn parse_graph6(text: &[u8]) -> Result<Tournament, Graph6Error> {
        let (n, bits) = graph6::decode(text)?;
        let mut k = 0;
        Ok(Tournament::from_orientation(n, |_, _| {
            k += 1;
            bits[k - 1]
        })?)
    }

    pub fn to_graph6(&self) -> String {
        graph6::encode(self.n, |i, j| self.arc(i, j))
    }
}

impl std::fmt::Debug for Tournament {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Tournament({})", self.to_graph6())
    }
}

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum TournamentError {
    #[error("arc matrix is not square")]
    NotSquare,
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("vertices {0} and {1} do not carry exactly one arc")]
    PairNotOriented(usize, usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
}
