//! Named graph and tournament constructions.

use super::{Graph, GraphError, Tournament};
use crate::fixtures::{self, FixtureError};
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GeneratorError {
    #[error("bad order: {0}")]
    BadOrder(String),
    #[error("unknown generator `{0}`")]
    Unknown(String),
    #[error("malformed generator arguments in `{0}`: expected name:int,int,...")]
    BadArguments(String),
    #[error(transparent)]
    Fixture(#[from] FixtureError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn bad(msg: impl Into<String>) -> GeneratorError {
    GeneratorError::BadOrder(msg.into())
}

pub fn complete(n: usize) -> Result<Graph, GeneratorError> {
    Ok(Graph::from_fn(n, |_, _| true)?)
}

pub fn empty(n: usize) -> Result<Graph, GeneratorError> {
    Ok(Graph::edgeless(n)?)
}

/// `m` disjoint copies of `K_size`; vertex `v` lies in block `v / size`.
pub fn union_complete(m: usize, size: usize) -> Result<Graph, GeneratorError> {
    if m == 0 || size == 0 {
        return Err(bad("union_complete needs m >= 1 and size >= 1"));
    }
    Ok(Graph::from_fn(m * size, |a, b| a / size == b / size)?)
}

pub fn cycle(n: usize) -> Result<Graph, GeneratorError> {
    if n < 3 {
        return Err(bad(format!("cycle needs n >= 3, got {n}")));
    }
    Ok(Graph::from_fn(n, |a, b| b - a == 1 || (a == 0 && b == n - 1))?)
}

pub fn path(n: usize) -> Result<Graph, GeneratorError> {
    Ok(Graph::from_fn(n, |a, b| b - a == 1)?)
}

fn is_prime(q: usize) -> bool {
    q >= 2 && (2..).take_while(|d| d * d <= q).all(|d| q % d != 0)
}

/// Paley graph of order `q`: primes `q ≡ 1 (mod 4)`, plus `q = 9` realised as
/// the 3×3 rook's graph.
pub fn paley(q: usize) -> Result<Graph, GeneratorError> {
    if q == 9 {
        return Ok(Graph::from_fn(9, |a, b| (a / 3 == b / 3) != (a % 3 == b % 3))?);
    }
    if !is_prime(q) || q % 4 != 1 {
        return Err(bad(format!("paley needs a prime q ≡ 1 (mod 4) or q = 9, got {q}")));
    }
    let mut square = vec![false; q];
    for x in 1..q {
        square[x * x % q] = true;
    }
    Ok(Graph::from_fn(q, |a, b| square[b - a])?)
}

/// Vertices are `F_2^4`; `x ~ y` iff `x ⊕ y` has Hamming weight 1 or 4.
pub fn clebsch() -> Graph {
    Graph::from_fn(16, |a, b| matches!((a ^ b).count_ones(), 1 | 4)).expect("16 vertices")
}

/// Kneser graph `K(5,2)`: 2-subsets of `{0..4}` in lexicographic order,
/// adjacent when disjoint.
pub fn petersen() -> Graph {
    let subsets: Vec<u8> = (0..5)
        .flat_map(|i| ((i + 1)..5).map(move |j| (1u8 << i) | (1u8 << j)))
        .collect();
    Graph::from_fn(10, |a, b| subsets[a] & subsets[b] == 0).expect("10 vertices")
}

/// Arc `a -> b` iff `(b - a) mod n` lies in `outset`.
///
/// `n` must be odd and `outset` must contain exactly one of `d`, `n - d` for
/// every `1 <= d < n`.
pub fn circulant_tournament(n: usize, outset: &[usize]) -> Result<Tournament, GeneratorError> {
    if n % 2 == 0 {
        return Err(bad(format!("circulant tournament needs odd n, got {n}")));
    }
    let mut mark = vec![false; n];
    for &d in outset {
        if d == 0 || d >= n {
            return Err(bad(format!("offset {d} outside 1..{n}")));
        }
        if mark[d] {
            return Err(bad(format!("offset {d} repeated")));
        }
        mark[d] = true;
    }
    for d in 1..n {
        if mark[d] == mark[n - d] {
            return Err(bad(format!("outset must contain exactly one of {d} and {}", n - d)));
        }
    }
    Ok(Tournament::from_orientation(n, |a, b| mark[b - a])?)
}

/// A parsed `name[:a,b,...]` generator reference.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSpec {
    pub name: String,
    pub args: Vec<usize>,
}

#[derive(Debug, Clone)]
pub enum Generated {
    Graph(Graph),
    Tournament(Tournament),
}

impl GeneratorSpec {
    pub fn parse(text: &str) -> Result<GeneratorSpec, GeneratorError> {
        let (name, rest) = match text.split_once(':') {
            Some((name, rest)) => (name, Some(rest)),
            None => (text, None),
        };
        let args = match rest {
            None => Vec::new(),
            Some(rest) => rest
                .split(',')
                .map(|s| s.trim().parse::<usize>())
                .collect::<Result<_, _>>()
                .map_err(|_| GeneratorError::BadArguments(text.to_string()))?,
        };
        if name.is_empty() {
            return Err(GeneratorError::BadArguments(text.to_string()));
        }
        Ok(GeneratorSpec {
            name: name.to_string(),
            args,
        })
    }

    fn arity(&self, k: usize) -> Result<&[usize], GeneratorError> {
        if self.args.len() == k {
            Ok(&self.args)
        } else {
            Err(GeneratorError::BadArguments(format!(
                "{} takes {k} argument(s), got {}",
                self.name,
                self.args.len()
            )))
        }
    }

    /// Builds the object; fixture-backed names are read from `fixtures_dir`.
    pub fn build(&self, fixtures_dir: &Path) -> Result<Generated, GeneratorError> {
        let g = match self.name.as_str() {
            "complete" => complete(self.arity(1)?[0])?,
            "empty" => empty(self.arity(1)?[0])?,
            "union_complete" => {
                let a = self.arity(2)?;
                union_complete(a[0], a[1])?
            }
            "cycle" => cycle(self.arity(1)?[0])?,
            "path" => path(self.arity(1)?[0])?,
            "paley" => paley(self.arity(1)?[0])?,
            "clebsch" => {
                self.arity(0)?;
                clebsch()
            }
            "petersen" => {
                self.arity(0)?;
                petersen()
            }
            "circulant_tournament" => {
                let (n, outset) = self
                    .args
                    .split_first()
                    .ok_or_else(|| GeneratorError::BadArguments("circulant_tournament needs n".into()))?;
                return Ok(Generated::Tournament(circulant_tournament(*n, outset)?));
            }
            name if fixtures::NAMES.contains(&name) => {
                self.arity(0)?;
                fixtures::load(fixtures_dir, name)?
            }
            other => return Err(GeneratorError::Unknown(other.to_string())),
        };
        Ok(Generated::Graph(g))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn paley5_is_pentagon() {
        let g = paley(5).unwrap();
        assert!(g.is_pentagon());
        let edges: Vec<_> = g.edges().collect();
        assert_eq!(edges, vec![(0, 1), (0, 4), (1, 2), (2, 3), (3, 4)]);
    }

    #[test]
    fn paley_13_degree() {
        let g = paley(13).unwrap();
        assert!((0..13).all(|v| g.degree(v) == 6));
    }

    #[test]
    fn paley_rejects_bad_orders() {
        for q in [3, 7, 15, 25, 1, 0] {
            assert!(matches!(paley(q), Err(GeneratorError::BadOrder(_))), "q = {q}");
        }
    }

    #[test]
    fn clebsch_and_petersen_shape() {
        let c = clebsch();
        assert_eq!(c.order(), 16);
        assert!((0..16).all(|v| c.degree(v) == 5));
        let p = petersen();
        assert_eq!(p.order(), 10);
        assert!((0..10).all(|v| p.degree(v) == 3));
        assert_eq!(p.edge_count(), 15);
    }

    #[test]
    fn three_cycle() {
        let t = circulant_tournament(3, &[1]).unwrap();
        assert!(t.arc(0, 1) && t.arc(1, 2) && t.arc(2, 0));
        assert!(!t.arc(1, 0));
    }

    #[test]
    fn circulant_rejects_malformed() {
        assert!(circulant_tournament(4, &[1]).is_err());
        assert!(circulant_tournament(5, &[1, 4]).is_err());
        assert!(circulant_tournament(5, &[1]).is_err());
        assert!(circulant_tournament(5, &[1, 1]).is_err());
        assert!(circulant_tournament(5, &[0, 1, 2]).is_err());
        assert!(circulant_tournament(1, &[]).is_ok());
    }

    #[test]
    fn generator_spec_parsing() {
        assert_eq!(
            GeneratorSpec::parse("union_complete:2,3").unwrap(),
            GeneratorSpec { name: "union_complete".into(), args: vec![2, 3] }
        );
        assert_eq!(GeneratorSpec::parse("petersen").unwrap().args, Vec::<usize>::new());
        assert!(GeneratorSpec::parse("cycle:x").is_err());
        let dir = Path::new(".");
        assert!(matches!(GeneratorSpec::parse("cycle:5,6").unwrap().build(dir), Err(GeneratorError::BadArguments(_))));
        assert!(matches!(GeneratorSpec::parse("nope").unwrap().build(dir), Err(GeneratorError::Unknown(_))));
        match GeneratorSpec::parse("circulant_tournament:5,1,2").unwrap().build(dir).unwrap() {
            Generated::Tournament(t) => assert_eq!(t.order(), 5),
            Generated::Graph(_) => panic!("expected a tournament"),
        }
    }
}
