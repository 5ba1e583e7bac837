//! Brute-force state-sum oracle.
//!
//! Each relation is decided as exact span membership of one state-sum
//! function among others, evaluated on every ordered pair or triple of
//! vertices:
//!
//! | relation | target                     | spanning family          |
//! |----------|----------------------------|--------------------------|
//! | 1b       | out-degree (and in-degree) | constants                |
//! | 2b       | `Σ_x P(a,x) P(b,x)`        | `Delta`, `P`, `Q`        |
//! | 3a       | `S[P,P,P]`                 | all `D[g1,g2,g3]`        |
//! | 3b       | `D[P,P,P]`                 | all `S[g1,g2,g3]`        |
//!
//! `dim V3` is the rank of both triple families together.

mod functions;
mod linalg;

pub use functions::{PairFunction, Shape, TripleFunction};
pub use linalg::Certificate;

use crate::bitset;
use crate::graph::{Graph, Tournament};
use functions::TripleTable;
use linalg::{Membership, System};
use num_rational::BigRational;
use num_traits::Zero;
use serde_json::{json, Value};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("the generator is zero (no edges), so the 3-box rank is not dim V3")]
    ZeroGenerator,
    #[error("weight matrix must be square and non-empty")]
    NotSquare,
}

/// The 0/1 matrix `C_P` together with the bit rows of `One`, `Delta`, `P`
/// and `Q`.
#[derive(Clone, PartialEq, Eq)]
pub struct WeightMatrix {
    n: usize,
    words: usize,
    directed: bool,
    rows: [Vec<u64>; 4],
}

impl WeightMatrix {
    fn assemble(n: usize, directed: bool, p: Vec<u64>, q: Vec<u64>) -> WeightMatrix {
        let words = bitset::words_for(n);
        let full = bitset::full(n);
        let mut one = Vec::with_capacity(n * words);
        let mut delta = vec![0u64; n * words];
        for a in 0..n {
            one.extend_from_slice(&full);
            bitset::set(&mut delta[a * words..(a + 1) * words], a);
        }
        WeightMatrix {
            n,
            words,
            directed,
            rows: [one, delta, p, q],
        }
    }

    pub fn from_graph(g: &Graph) -> WeightMatrix {
        let n = g.order();
        let p: Vec<u64> = (0..n).flat_map(|a| g.row(a).iter().copied()).collect();
        let c = g.complement();
        let q: Vec<u64> = (0..n).flat_map(|a| c.row(a).iter().copied()).collect();
        WeightMatrix::assemble(n, false, p, q)
    }

    pub fn from_tournament(t: &Tournament) -> WeightMatrix {
        let n = t.order();
        let p = (0..n).flat_map(|a| t.out_row(a).iter().copied()).collect();
        let q = (0..n).flat_map(|a| t.in_row(a).iter().copied()).collect();
        WeightMatrix::assemble(n, true, p, q)
    }

    /// An arbitrary 0/1 matrix. `Q` is `Pᵀ` when `directed`, otherwise the
    /// off-diagonal zero pattern of `P`; validity is checked separately.
    pub fn from_rows(rows: &[Vec<bool>], directed: bool) -> Result<WeightMatrix, OracleError> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(OracleError::NotSquare);
        }
        let words = bitset::words_for(n);
        let mut p = vec![0u64; n * words];
        let mut q = vec![0u64; n * words];
        for a in 0..n {
            for b in 0..n {
                let hit = if directed { rows[b][a] } else { a != b && !rows[a][b] };
                if rows[a][b] {
                    bitset::set(&mut p[a * words..(a + 1) * words], b);
                }
                if hit {
                    bitset::set(&mut q[a * words..(a + 1) * words], b);
                }
            }
        }
        Ok(WeightMatrix::assemble(n, directed, p, q))
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    /// `C_P(a, b)`.
    pub fn entry(&self, a: usize, b: usize) -> bool {
        bitset::get(self.row(PairFunction::P, a), b)
    }

    pub(crate) fn row(&self, g: PairFunction, a: usize) -> &[u64] {
        let rows = &self.rows[g as usize];
        &rows[a * self.words..(a + 1) * self.words]
    }

    pub fn is_zero(&self) -> bool {
        self.rows[PairFunction::P as usize].iter().all(|&w| w == 0)
    }

    /// `Ok` iff `C_P` is the adjacency matrix of a graph (undirected) or
    /// of a tournament on at least two vertices (directed).
    pub fn validity(&self) -> Result<(), String> {
        let n = self.n;
        for a in 0..n {
            if self.entry(a, a) {
                return Err(format!("loop at vertex {a}"));
            }
            for b in (a + 1)..n {
                let (x, y) = (self.entry(a, b), self.entry(b, a));
                if !self.directed && x != y {
                    return Err(format!("entries ({a},{b}) and ({b},{a}) differ"));
                }
                if self.directed && x == y {
                    return Err(format!("vertices {a} and {b} do not carry exactly one arc"));
                }
            }
        }
        if self.directed && n < 2 {
            return Err("a one-vertex tournament has a symmetric matrix".into());
        }
        Ok(())
    }
}

impl fmt::Debug for WeightMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = if self.directed { "directed" } else { "undirected" };
        write!(f, "WeightMatrix({kind}, n = {})", self.n)
    }
}

/// Result of one relation check.
#[derive(Debug, Clone, PartialEq)]
pub enum Outcome {
    /// Named coefficients of a solution (free unknowns set to zero).
    Holds(Vec<(String, BigRational)>),
    /// `target` names the function that escaped the span.
    Fails { target: String, certificate: Certificate },
}

impl Outcome {
    pub fn holds(&self) -> bool {
        matches!(self, Outcome::Holds(_))
    }

    pub fn coefficient(&self, name: &str) -> Option<&BigRational> {
        match self {
            Outcome::Holds(c) => c.iter().find(|(n, _)| n == name).map(|(_, v)| v),
            Outcome::Fails { .. } => None,
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Outcome::Holds(c) => json!({
                "holds": true,
                "coefficients": c
                    .iter()
                    .filter(|(n, v)| !v.is_zero() || !n.contains('['))
                    .map(|(n, v)| (n.clone(), Value::String(v.to_string())))
                    .collect::<serde_json::Map<_, _>>(),
            }),
            Outcome::Fails { target, certificate } => json!({
                "holds": false,
                "target": target,
                "witness": certificate.terms.iter().map(|(p, y, v)| json!({
                    "point": p,
                    "multiplier": y.to_string(),
                    "target_value": v,
                })).collect::<Vec<_>>(),
                "residual": certificate.residual.to_string(),
            }),
        }
    }
}

fn solve(sys: &System, span: &[usize], target: usize, names: &[String], target_name: &str) -> Outcome {
    match linalg::membership(sys, span, target) {
        Membership::Holds(x) => Outcome::Holds(names.iter().cloned().zip(x).collect()),
        Membership::Fails(certificate) => Outcome::Fails {
            target: target_name.to_string(),
            certificate,
        },
    }
}

/// Points are vertices; columns `[One, out-degree, in-degree]`.
fn degree_system(w: &WeightMatrix) -> System {
    let mut sys = System::new(3);
    for a in 0..w.n {
        let out = bitset::count(w.row(PairFunction::P, a)) as i64;
        let inn = (0..w.n).filter(|&x| w.entry(x, a)).count() as i64;
        sys.push(&[a], vec![1, out, inn]);
    }
    sys
}

/// Points are ordered pairs; columns `[Delta, P, Q, Σ_x P(a,x)P(b,x)]`.
fn pair_system(w: &WeightMatrix) -> System {
    let mut sys = System::new(4);
    for a in 0..w.n {
        for b in 0..w.n {
            let t = bitset::count_and(w.row(PairFunction::P, a), w.row(PairFunction::P, b)) as i64;
            let g = |f: PairFunction| f.eval(w, a, b);
            sys.push(&[a, b], vec![g(PairFunction::Delta), g(PairFunction::P), g(PairFunction::Q), t]);
        }
    }
    sys
}

/// Constant out-degree `k` (and, for tournaments, constant in-degree).
pub fn check_1b(w: &WeightMatrix) -> Outcome {
    let sys = degree_system(w);
    let out = solve(&sys, &[0], 1, &["k".into()], "out-degree");
    if !w.directed || !out.holds() {
        return out;
    }
    match solve(&sys, &[0], 2, &["k_in".into()], "in-degree") {
        Outcome::Holds(mut k_in) => {
            let Outcome::Holds(mut k) = out else { unreachable!() };
            k.append(&mut k_in);
            Outcome::Holds(k)
        }
        fail => fail,
    }
}

/// `Σ_x P(a,x)P(b,x) = k' Delta + λ P + μ Q`; coefficients named
/// `k`, `lambda`, `mu`.
pub fn check_2b(w: &WeightMatrix) -> Outcome {
    let names = ["k".to_string(), "lambda".to_string(), "mu".to_string()];
    solve(&pair_system(w), &[0, 1, 2], 3, &names, "PP^T")
}

fn check_triples(table: &TripleTable, span_shape: Shape, target: TripleFunction) -> Outcome {
    let span = table.columns(span_shape);
    let t = table.column(target);
    let cols: Vec<usize> = span.iter().copied().chain([t]).collect();
    let sys = table.system.project(&cols);
    let names: Vec<String> = span.iter().map(|&c| table.functions[c].to_string()).collect();
    let idx: Vec<usize> = (0..span.len()).collect();
    solve(&sys, &idx, span.len(), &names, &target.to_string())
}

fn check_triples_fast(table: &TripleTable, span_shape: Shape, target: TripleFunction) -> bool {
    let span = table.columns(span_shape);
    linalg::in_span(&table.system, &span, table.column(target))
}

const PPP: [PairFunction; 3] = [PairFunction::P; 3];

/// `S[P,P,P]` in the span of the shaded-middle family.
pub fn check_3a(w: &WeightMatrix) -> Outcome {
    check_triples(&TripleTable::build(w), Shape::ShadedMiddle, TripleFunction::s(PPP))
}

/// `D[P,P,P]` in the span of the unshaded-middle family.
pub fn check_3b(w: &WeightMatrix) -> Outcome {
    check_triples(&TripleTable::build(w), Shape::UnshadedMiddle, TripleFunction::d(PPP))
}

/// Rank of both triple families, whatever `C_P` is.
pub fn spanning_rank(w: &WeightMatrix) -> usize {
    let table = TripleTable::build(w);
    let cols: Vec<usize> = (0..table.functions.len()).collect();
    linalg::rank(&table.system, &cols)
}

/// `dim V3`, defined when the generator is non-zero.
pub fn dim_v3(w: &WeightMatrix) -> Result<usize, OracleError> {
    if w.is_zero() {
        return Err(OracleError::ZeroGenerator);
    }
    Ok(spanning_rank(w))
}

/// All four checks plus validity and `dim V3`.
#[derive(Debug, Clone, PartialEq)]
pub struct RelationReport {
    pub n: usize,
    pub directed: bool,
    /// Why `C_P` is not a graph or tournament matrix, if it is not.
    pub invalid: Option<String>,
    pub r1b: Outcome,
    pub r2b: Outcome,
    pub r3a: Outcome,
    pub r3b: Outcome,
    /// `None` for the zero generator.
    pub dim_v3: Option<usize>,
}

impl RelationReport {
    pub fn flags(&self) -> [bool; 4] {
        [self.r1b.holds(), self.r2b.holds(), self.r3a.holds(), self.r3b.holds()]
    }

    pub fn is_spin_model(&self) -> bool {
        self.invalid.is_none() && self.flags().iter().all(|&f| f)
    }

    /// `(k', λ, μ)` from a solved 2b relation.
    pub fn srg_coefficients(&self) -> Option<(BigRational, BigRational, BigRational)> {
        let c = |name| self.r2b.coefficient(name).cloned();
        Some((c("k")?, c("lambda")?, c("mu")?))
    }

    /// One line: `1b✓ 2b✓(k=4,λ=1,μ=2) 3a✓ 3b✓`.
    pub fn summary(&self) -> String {
        let mark = |o: &Outcome| if o.holds() { '✓' } else { '✗' };
        let mut s = format!("1b{}", mark(&self.r1b));
        if let Some(k) = self.r1b.coefficient("k") {
            s += &format!("(k={k})");
        }
        s += &format!(" 2b{}", mark(&self.r2b));
        if let Some((k, l, m)) = self.srg_coefficients() {
            s += &format!("(k={k},λ={l},μ={m})");
        }
        s += &format!(" 3a{} 3b{}", mark(&self.r3a), mark(&self.r3b));
        if let Some(why) = &self.invalid {
            s += &format!(" [invalid: {why}]");
        }
        s
    }

    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "directed": self.directed,
            "valid": self.invalid.is_none(),
            "invalid_reason": self.invalid,
            "1b": self.r1b.to_json(),
            "2b": self.r2b.to_json(),
            "3a": self.r3a.to_json(),
            "3b": self.r3b.to_json(),
            "dim_v3": self.dim_v3,
            "spin_model": self.is_spin_model(),
        })
    }
}

pub fn full_report(w: &WeightMatrix) -> RelationReport {
    let table = TripleTable::build(w);
    let all: Vec<usize> = (0..table.functions.len()).collect();
    RelationReport {
        n: w.n,
        directed: w.directed,
        invalid: w.validity().err(),
        r1b: check_1b(w),
        r2b: check_2b(w),
        r3a: check_triples(&table, Shape::ShadedMiddle, TripleFunction::s(PPP)),
        r3b: check_triples(&table, Shape::UnshadedMiddle, TripleFunction::d(PPP)),
        dim_v3: (!w.is_zero()).then(|| linalg::rank(&table.system, &all)),
    }
}

/// The four relation booleans without coefficients or witnesses.
pub fn relation_flags(w: &WeightMatrix) -> [bool; 4] {
    let deg = degree_system(w);
    let f1 = linalg::in_span(&deg, &[0], 1) && (!w.directed || linalg::in_span(&deg, &[0], 2));
    let f2 = linalg::in_span(&pair_system(w), &[0, 1, 2], 3);
    let table = TripleTable::build(w);
    [
        f1,
        f2,
        check_triples_fast(&table, Shape::ShadedMiddle, TripleFunction::s(PPP)),
        check_triples_fast(&table, Shape::UnshadedMiddle, TripleFunction::d(PPP)),
    ]
}

/// Oracle verdict, stopping at the first failing relation.
pub fn is_spin_model(w: &WeightMatrix) -> bool {
    if w.validity().is_err() {
        return false;
    }
    let deg = degree_system(w);
    if !linalg::in_span(&deg, &[0], 1) || (w.directed && !linalg::in_span(&deg, &[0], 2)) {
        return false;
    }
    if !linalg::in_span(&pair_system(w), &[0, 1, 2], 3) {
        return false;
    }
    let table = TripleTable::build(w);
    check_triples_fast(&table, Shape::ShadedMiddle, TripleFunction::s(PPP))
        && check_triples_fast(&table, Shape::UnshadedMiddle, TripleFunction::d(PPP))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{circulant_tournament, complete, cycle, paley, path, petersen, union_complete};
    use crate::regularity::three_point_params;

    fn int(v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }

    fn graph(g: &Graph) -> WeightMatrix {
        WeightMatrix::from_graph(g)
    }

    #[test]
    fn one_b_examples() {
        assert_eq!(check_1b(&graph(&cycle(5).unwrap())).coefficient("k"), Some(&int(2)));
        let Outcome::Fails { certificate, .. } = check_1b(&graph(&path(3).unwrap())) else {
            panic!("path is not regular");
        };
        let mut degrees: Vec<i64> = certificate.terms.iter().map(|t| t.2).collect();
        degrees.sort();
        assert_eq!(degrees, vec![1, 2]);
        let t = WeightMatrix::from_tournament(&circulant_tournament(3, &[1]).unwrap());
        let k = check_1b(&t);
        assert_eq!(k.coefficient("k"), Some(&int(1)));
        assert_eq!(k.coefficient("k_in"), Some(&int(1)));
    }

    #[test]
    fn two_b_examples() {
        let r = check_2b(&graph(&paley(9).unwrap()));
        assert_eq!(
            (r.coefficient("k"), r.coefficient("lambda"), r.coefficient("mu")),
            (Some(&int(4)), Some(&int(1)), Some(&int(2)))
        );
        let Outcome::Fails { certificate, .. } = check_2b(&graph(&cycle(6).unwrap())) else {
            panic!("C6 is not strongly regular");
        };
        // Two pairs of the same kind with different common-neighbour counts.
        assert_eq!(certificate.terms.len(), 2);
        assert_ne!(certificate.terms[0].2, certificate.terms[1].2);
    }

    #[test]
    fn two_b_three_cycle() {
        let t = WeightMatrix::from_tournament(&circulant_tournament(3, &[1]).unwrap());
        let r = check_2b(&t);
        assert!(r.holds());
        assert_eq!(r.coefficient("k"), Some(&int(1)));
        assert_eq!(r.coefficient("lambda"), r.coefficient("mu"));
    }

    #[test]
    fn three_a_reproduces_clebsch_parameters() {
        let g = crate::graph::clebsch();
        let w = graph(&g);
        let Outcome::Holds(coeffs) = check_3a(&w) else {
            panic!("Clebsch is 3-point regular");
        };
        let p = three_point_params(&g).unwrap();
        assert_eq!(p.q0(), 1);
        // Evaluate the solved combination on one triple of each type.
        for (a, b, c) in [(0, 1, 2), (0, 1, 3), (0, 3, 5), (0, 3, 12)] {
            let e = g.triple_type(a, b, c).edge_count().unwrap();
            let value: BigRational = TripleFunction::family(Shape::ShadedMiddle, false)
                .iter()
                .zip(&coeffs)
                .map(|(f, (name, x))| {
                    assert_eq!(&f.to_string(), name);
                    x * int(f.eval(&w, a, b, c))
                })
                .sum();
            if !p.vacuous[e] {
                assert_eq!(value, int(p.q[e] as i64), "triple ({a},{b},{c})");
            }
        }
    }

    #[test]
    fn petersen_and_small_cases() {
        let r = full_report(&graph(&petersen()));
        assert_eq!(r.flags(), [true, true, false, true]);
        assert!(!r.is_spin_model());
        assert_eq!(relation_flags(&graph(&petersen())), [true, true, false, true]);
        let c5 = full_report(&graph(&cycle(5).unwrap()));
        assert!(c5.is_spin_model());
        assert_eq!(c5.dim_v3, Some(13));
    }

    #[test]
    fn three_b_lambda_free() {
        let r = check_3b(&graph(&union_complete(2, 3).unwrap()));
        assert!(r.holds());
        let t = WeightMatrix::from_tournament(&circulant_tournament(5, &[1, 2]).unwrap());
        assert!(!check_3b(&t).holds());
    }

    #[test]
    fn dims() {
        let d = |g: Graph| dim_v3(&graph(&g)).unwrap();
        assert_eq!(d(complete(4).unwrap()), 5);
        assert_eq!(d(union_complete(2, 2).unwrap()), 10);
        assert_eq!(d(union_complete(2, 3).unwrap()), 11);
        assert_eq!(d(union_complete(3, 3).unwrap()), 12);
        let t = WeightMatrix::from_tournament(&circulant_tournament(3, &[1]).unwrap());
        assert_eq!(dim_v3(&t), Ok(9));
        assert_eq!(dim_v3(&graph(&Graph::edgeless(3).unwrap())), Err(OracleError::ZeroGenerator));
    }

    #[test]
    fn validity() {
        let sym = WeightMatrix::from_rows(&[vec![false, true], vec![true, false]], false).unwrap();
        assert!(sym.validity().is_ok());
        let looped = WeightMatrix::from_rows(&[vec![true, true], vec![true, false]], false).unwrap();
        assert!(looped.validity().is_err());
        assert!(!full_report(&looped).is_spin_model());
        let skew = WeightMatrix::from_rows(&[vec![false, true], vec![false, false]], false).unwrap();
        assert!(skew.validity().is_err());
        let arc = WeightMatrix::from_rows(&[vec![false, true], vec![false, false]], true).unwrap();
        assert!(arc.validity().is_ok());
        assert_eq!(WeightMatrix::from_rows(&[], false), Err(OracleError::NotSquare));
        let single = WeightMatrix::from_rows(&[vec![false]], true).unwrap();
        assert!(single.validity().is_err());
    }
}
