//! State-sum functions on ordered pairs and triples of vertices.

use super::linalg::System;
use super::WeightMatrix;
use crate::bitset;
use rayon::prelude::*;
use std::fmt;

/// A 2-box read as a function on ordered pairs of vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PairFunction {
    One,
    Delta,
    P,
    /// `J - I - P` for graphs, `Pᵀ` for tournaments.
    Q,
}

impl PairFunction {
    pub const ALL: [PairFunction; 4] = [PairFunction::One, PairFunction::Delta, PairFunction::P, PairFunction::Q];

    /// `{One, Delta, P}` for graphs (Q is their combination), all four for
    /// tournaments.
    pub fn alphabet(directed: bool) -> &'static [PairFunction] {
        if directed {
            &Self::ALL
        } else {
            &Self::ALL[..3]
        }
    }

    pub fn eval(self, w: &WeightMatrix, u: usize, v: usize) -> i64 {
        bitset::get(w.row(self, u), v) as i64
    }

    pub fn symbol(self) -> &'static str {
        match self {
            PairFunction::One => "One",
            PairFunction::Delta => "Delta",
            PairFunction::P => "P",
            PairFunction::Q => "Q",
        }
    }
}

impl fmt::Display for PairFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// Which region of the 3-box carries the internal sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Shape {
    /// `D[g](a,b,c) = g1(a,b) g2(b,c) g3(c,a)`.
    ShadedMiddle,
    /// `S[g](a,b,c) = Σ_x g1(a,x) g2(b,x) g3(c,x)`.
    UnshadedMiddle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TripleFunction {
    pub shape: Shape,
    pub word: [PairFunction; 3],
}

impl TripleFunction {
    pub fn d(word: [PairFunction; 3]) -> TripleFunction {
        TripleFunction {
            shape: Shape::ShadedMiddle,
            word,
        }
    }

    pub fn s(word: [PairFunction; 3]) -> TripleFunction {
        TripleFunction {
            shape: Shape::UnshadedMiddle,
            word,
        }
    }

    /// All words over the alphabet, `g1` varying slowest.
    pub fn family(shape: Shape, directed: bool) -> Vec<TripleFunction> {
        let alph = PairFunction::alphabet(directed);
        let mut out = Vec::with_capacity(alph.len().pow(3));
        for &g1 in alph {
            for &g2 in alph {
                for &g3 in alph {
                    out.push(TripleFunction { shape, word: [g1, g2, g3] });
                }
            }
        }
        out
    }

    pub fn eval(&self, w: &WeightMatrix, a: usize, b: usize, c: usize) -> i64 {
        let [g1, g2, g3] = self.word;
        match self.shape {
            Shape::ShadedMiddle => g1.eval(w, a, b) * g2.eval(w, b, c) * g3.eval(w, c, a),
            Shape::UnshadedMiddle => bitset::count_and3(w.row(g1, a), w.row(g2, b), w.row(g3, c)) as i64,
        }
    }

    /// Values on all ordered triples, index `(a*n + b)*n + c`.
    pub fn values(&self, w: &WeightMatrix) -> Vec<i64> {
        let n = w.order();
        let mut out = Vec::with_capacity(n * n * n);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    out.push(self.eval(w, a, b, c));
                }
            }
        }
        out
    }
}

impl fmt::Display for TripleFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.shape {
            Shape::ShadedMiddle => 'D',
            Shape::UnshadedMiddle => 'S',
        };
        let [g1, g2, g3] = self.word;
        write!(f, "{tag}[{g1},{g2},{g3}]")
    }
}

/// Both families evaluated on every ordered triple: columns are the
/// shaded-middle words followed by the unshaded-middle words.
pub(crate) struct TripleTable {
    pub system: System,
    pub functions: Vec<TripleFunction>,
}

impl TripleTable {
    pub fn build(w: &WeightMatrix) -> TripleTable {
        let directed = w.is_directed();
        let mut functions = TripleFunction::family(Shape::ShadedMiddle, directed);
        functions.extend(TripleFunction::family(Shape::UnshadedMiddle, directed));
        let n = w.order();
        let system = if n >= 48 {
            let parts: Vec<System> = (0..n).into_par_iter().map(|a| slab(w, a)).collect();
            let mut sys = System::new(functions.len());
            for part in parts {
                sys.absorb(part);
            }
            sys
        } else {
            let mut sys = System::new(functions.len());
            for a in 0..n {
                sys.absorb(slab(w, a));
            }
            sys
        };
        TripleTable { system, functions }
    }

    pub fn column(&self, f: TripleFunction) -> usize {
        self.functions.iter().position(|&g| g == f).expect("word over the alphabet")
    }

    pub fn columns(&self, shape: Shape) -> Vec<usize> {
        (0..self.functions.len()).filter(|&i| self.functions[i].shape == shape).collect()
    }
}

/// Rows for all triples with first vertex `a`.
fn slab(w: &WeightMatrix, a: usize) -> System {
    let alph = PairFunction::alphabet(w.is_directed());
    let m = alph.len();
    let n = w.order();
    let words = bitset::words_for(n);
    let mut sys = System::new(2 * m * m * m);
    let mut ab_rows = vec![0u64; m * m * words];
    for b in 0..n {
        for (i, &g1) in alph.iter().enumerate() {
            for (j, &g2) in alph.iter().enumerate() {
                let dst = &mut ab_rows[(i * m + j) * words..(i * m + j + 1) * words];
                for ((d, x), y) in dst.iter_mut().zip(w.row(g1, a)).zip(w.row(g2, b)) {
                    *d = x & y;
                }
            }
        }
        let ab: Vec<i64> = alph.iter().map(|g| g.eval(w, a, b)).collect();
        for c in 0..n {
            let bc: Vec<i64> = alph.iter().map(|g| g.eval(w, b, c)).collect();
            let ca: Vec<i64> = alph.iter().map(|g| g.eval(w, c, a)).collect();
            let mut row = Vec::with_capacity(2 * m * m * m);
            for i in 0..m {
                for j in 0..m {
                    for k in 0..m {
                        row.push(ab[i] * bc[j] * ca[k]);
                    }
                }
            }
            for ij in 0..m * m {
                let pair = &ab_rows[ij * words..(ij + 1) * words];
                for &g3 in alph {
                    row.push(bitset::count_and(pair, w.row(g3, c)) as i64);
                }
            }
            sys.push(&[a, b, c], row);
        }
    }
    sys
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{circulant_tournament, cycle, petersen};

    #[test]
    fn one_is_delta_plus_p_plus_q() {
        let graphs = [WeightMatrix::from_graph(&petersen()), WeightMatrix::from_graph(&cycle(7).unwrap())];
        let t = WeightMatrix::from_tournament(&circulant_tournament(5, &[1, 2]).unwrap());
        for w in graphs.iter().chain([&t]) {
            for u in 0..w.order() {
                for v in 0..w.order() {
                    let sum: i64 = [PairFunction::Delta, PairFunction::P, PairFunction::Q]
                        .iter()
                        .map(|g| g.eval(w, u, v))
                        .sum();
                    assert_eq!(PairFunction::One.eval(w, u, v), sum);
                }
            }
        }
    }

    #[test]
    fn directed_q_is_transpose() {
        let t = circulant_tournament(5, &[1, 2]).unwrap();
        let w = WeightMatrix::from_tournament(&t);
        for u in 0..5 {
            for v in 0..5 {
                assert_eq!(PairFunction::Q.eval(&w, u, v), PairFunction::P.eval(&w, v, u));
            }
        }
    }

    #[test]
    fn table_matches_direct_evaluation() {
        let w = WeightMatrix::from_graph(&cycle(5).unwrap());
        let table = TripleTable::build(&w);
        let sys = &table.system;
        for (row, point) in sys.rows_with_points() {
            let [a, b, c] = [point[0], point[1], point[2]];
            for (col, f) in table.functions.iter().enumerate() {
                assert_eq!(row[col], f.eval(&w, a, b, c), "{f} at {point:?}");
            }
        }
    }

    #[test]
    fn shaded_ppp_is_triangle_indicator() {
        let g = cycle(3).unwrap();
        let w = WeightMatrix::from_graph(&g);
        let f = TripleFunction::d([PairFunction::P; 3]);
        assert_eq!(f.eval(&w, 0, 1, 2), 1);
        assert_eq!(f.eval(&w, 0, 1, 1), 0);
        assert_eq!(f.to_string(), "D[P,P,P]");
        assert!(TripleFunction::d([PairFunction::P; 3]).values(&WeightMatrix::from_graph(&petersen())).iter().all(|&v| v == 0));
    }
}
