//! Regularity, strong regularity, 3-point regularity and freeness.
//!
//! A parameter whose pair or triple type never occurs is *vacuous*: it is
//! reported as `0` with its flag set, so the triangle reads `srg(3,2,1,0)`
//! while the absent non-adjacent class stays detectable.

use crate::graph::{Graph, TripleType};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RegularityError {
    #[error("q{0} is vacuous: no distinct triple with {0} induced edges")]
    VacuousParameter(usize),
}

/// `srg(n, k, λ, μ)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SrgParams {
    pub n: usize,
    pub k: usize,
    pub lambda: usize,
    pub mu: usize,
    pub lambda_vacuous: bool,
    pub mu_vacuous: bool,
}

impl SrgParams {
    pub fn tuple(&self) -> (usize, usize, usize, usize) {
        (self.n, self.k, self.lambda, self.mu)
    }
}

/// Common-neighbour counts of distinct triples, indexed by induced edge
/// count: `q[3]` triangles, `q[2]` Λ, `q[1]` anti-Λ, `q[0]` anti-triangles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ThreePointParams {
    pub srg: SrgParams,
    pub q: [usize; 4],
    pub vacuous: [bool; 4],
}

impl ThreePointParams {
    pub fn q3(&self) -> usize {
        self.q[3]
    }
    pub fn q2(&self) -> usize {
        self.q[2]
    }
    pub fn q1(&self) -> usize {
        self.q[1]
    }
    pub fn q0(&self) -> usize {
        self.q[0]
    }

    /// `(q3, q2, q1, q0)`.
    pub fn tuple(&self) -> (usize, usize, usize, usize) {
        (self.q[3], self.q[2], self.q[1], self.q[0])
    }

    pub fn q_for(&self, t: TripleType) -> Option<usize> {
        let e = t.edge_count()?;
        (!self.vacuous[e]).then_some(self.q[e])
    }
}

/// Which induced 3-vertex subgraphs are absent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Freeness {
    pub triangle_free: bool,
    pub lambda_free: bool,
    pub anti_lambda_free: bool,
    pub anti_triangle_free: bool,
}

impl Freeness {
    pub fn any(&self) -> bool {
        self.triangle_free || self.lambda_free || self.anti_lambda_free || self.anti_triangle_free
    }

    /// The flags of the complement graph.
    pub fn complemented(&self) -> Freeness {
        Freeness {
            triangle_free: self.anti_triangle_free,
            lambda_free: self.anti_lambda_free,
            anti_lambda_free: self.lambda_free,
            anti_triangle_free: self.triangle_free,
        }
    }
}

/// Common degree, if every vertex has the same valence.
pub fn regularity(g: &Graph) -> Option<usize> {
    let k = g.degree(0);
    (1..g.order()).all(|v| g.degree(v) == k).then_some(k)
}

pub fn srg_params(g: &Graph) -> Option<SrgParams> {
    let k = regularity(g)?;
    let mut lambda = None;
    let mut mu = None;
    for b in 1..g.order() {
        for a in 0..b {
            let c = g.common_neighbors(a, b);
            let slot = if g.adjacent(a, b) { &mut lambda } else { &mut mu };
            match *slot {
                None => *slot = Some(c),
                Some(v) if v != c => return None,
                Some(_) => {}
            }
        }
    }
    Some(SrgParams {
        n: g.order(),
        k,
        lambda: lambda.unwrap_or(0),
        mu: mu.unwrap_or(0),
        lambda_vacuous: lambda.is_none(),
        mu_vacuous: mu.is_none(),
    })
}

/// 3-point regularity over unordered distinct triples.
pub fn three_point_params(g: &Graph) -> Option<ThreePointParams> {
    let srg = srg_params(g)?;
    let n = g.order();
    let mut seen: [Option<usize>; 4] = [None; 4];
    for c in 2..n {
        for b in 1..c {
            let ab_c = g.adjacent(b, c) as usize;
            for a in 0..b {
                let e = ab_c + g.adjacent(a, b) as usize + g.adjacent(a, c) as usize;
                let count = g.common_neighbors3(a, b, c);
                match seen[e] {
                    None => seen[e] = Some(count),
                    Some(v) if v != count => return None,
                    Some(_) => {}
                }
            }
        }
    }
    Some(ThreePointParams {
        srg,
        q: seen.map(|s| s.unwrap_or(0)),
        vacuous: seen.map(|s| s.is_none()),
    })
}

pub fn freeness(g: &Graph) -> Freeness {
    let mut present = [false; 4];
    let n = g.order();
    'scan: for c in 2..n {
        for b in 1..c {
            for a in 0..b {
                let e = g.adjacent(a, b) as usize + g.adjacent(b, c) as usize + g.adjacent(a, c) as usize;
                present[e] = true;
                if present.iter().all(|&p| p) {
                    break 'scan;
                }
            }
        }
    }
    Freeness {
        triangle_free: !present[3],
        lambda_free: !present[2],
        anti_lambda_free: !present[1],
        anti_triangle_free: !present[0],
    }
}

/// `q3 - 3 q2 + 3 q1 - q0`, defined only when all four triple types occur.
pub fn q_condition(p: &ThreePointParams) -> Result<i64, RegularityError> {
    if let Some(e) = (0..4).rev().find(|&e| p.vacuous[e]) {
        return Err(RegularityError::VacuousParameter(e));
    }
    Ok(q_value(p))
}

/// `q3 - 3 q2 + 3 q1 - q0` with vacuous parameters read as 0.
pub fn q_value(p: &ThreePointParams) -> i64 {
    let [q0, q1, q2, q3] = p.q.map(|v| v as i64);
    q3 - 3 * q2 + 3 * q1 - q0
}
