//! Closed-form spin-model criteria.
//!
//! A graph gives a symmetric spin model iff, up to complementation, it is the
//! pentagon, a disjoint union of equal-size complete graphs, or a 3-point
//! regular graph with `q3 - 3 q2 + 3 q1 - q0 != 0`. A tournament gives one
//! iff it is the 3-cycle.

use crate::graph::{Graph, Tournament};
use crate::oracle::{self, WeightMatrix};
use crate::regularity::{freeness, q_condition, q_value, regularity, srg_params, three_point_params};
use serde::Serialize;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("not a spin model: {0}")]
    NotASpinModel(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Case {
    Pentagon,
    UnionOfCompletes,
    QConditionHolds { value: i64 },
    ThreeCycle,
    NotSpinModel,
}

impl Case {
    /// Stable lower-case tag for records and counts.
    pub fn tag(&self) -> &'static str {
        match self {
            Case::Pentagon => "pentagon",
            Case::UnionOfCompletes => "union_of_completes",
            Case::QConditionHolds { .. } => "q_condition",
            Case::ThreeCycle => "three_cycle",
            Case::NotSpinModel => "not_spin_model",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Side {
    Graph,
    Complement,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum FamilyKind {
    #[serde(rename = "TLJ")]
    Tlj,
    BischJones,
    Kauffman,
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FamilyKind::Tlj => "TLJ",
            FamilyKind::BischJones => "Bisch-Jones",
            FamilyKind::Kauffman => "Kauffman",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub enum DimPrediction {
    Exact(usize),
    /// The classification alone leaves the value open.
    OneOf(Vec<usize>),
    /// Not in the closed-form table; computed by the oracle rank.
    Computed(usize),
}

impl fmt::Display for DimPrediction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DimPrediction::Exact(d) => write!(f, "{d}"),
            DimPrediction::OneOf(ds) => {
                let parts: Vec<String> = ds.iter().map(|d| d.to_string()).collect();
                write!(f, "{{{}}}", parts.join(","))
            }
            DimPrediction::Computed(d) => write!(f, "{d} (computed)"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Family {
    pub kind: FamilyKind,
    pub dim: DimPrediction,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub is_spin_model: bool,
    pub case: Case,
    /// Which of Γ, Γᶜ matched; `None` when nothing did.
    pub applied_to: Option<Side>,
    pub family: Option<Family>,
    pub reason: String,
}

impl Verdict {
    fn no(reason: impl Into<String>) -> Verdict {
        Verdict {
            is_spin_model: false,
            case: Case::NotSpinModel,
            applied_to: None,
            family: None,
            reason: reason.into(),
        }
    }

    /// `spin model: pentagon case; family Kauffman; dim V3 = 13`.
    pub fn summary(&self) -> String {
        if !self.is_spin_model {
            return format!("not a spin model: {}", self.reason);
        }
        let case = match self.case {
            Case::Pentagon => "pentagon case".to_string(),
            Case::UnionOfCompletes => "union of completes".to_string(),
            Case::QConditionHolds { value } => format!("q-condition case (q3-3q2+3q1-q0 = {value})"),
            Case::ThreeCycle => "3-cycle".to_string(),
            Case::NotSpinModel => unreachable!("spin models have a positive case"),
        };
        let side = match self.applied_to {
            Some(Side::Complement) => " (complement)",
            _ => "",
        };
        match &self.family {
            Some(f) => format!("spin model: {case}{side}; family {}; dim V3 = {}", f.kind, f.dim),
            None => format!("spin model: {case}{side}"),
        }
    }
}

fn sides(g: &Graph) -> [(Side, Graph); 2] {
    [(Side::Graph, g.clone()), (Side::Complement, g.complement())]
}

/// `mK_s` with `m = 1` or `s >= 2`; the edgeless graph is left to its
/// complement.
fn equal_completes(h: &Graph) -> Option<(usize, usize)> {
    h.as_union_of_completes().filter(|&(m, s)| m == 1 || s >= 2)
}

pub fn classify_symmetric(g: &Graph) -> Verdict {
    // Every positive case is a regular graph.
    if regularity(g).is_none() {
        return Verdict::no("not regular");
    }
    let both = sides(g);
    let mut v = match_structural(&both);
    if v.is_none() {
        v = match_three_point(&both);
    }
    let mut v = match v {
        Some(v) => v,
        None => return not_spin_reason(g),
    };
    v.family = family_from(&both, v.case);
    v
}

fn match_structural(both: &[(Side, Graph); 2]) -> Option<Verdict> {
    for (side, h) in both {
        if h.is_pentagon() {
            return Some(Verdict {
                is_spin_model: true,
                case: Case::Pentagon,
                applied_to: Some(*side),
                family: None,
                reason: "the pentagon".into(),
            });
        }
    }
    for (side, h) in both {
        if let Some((m, s)) = equal_completes(h) {
            return Some(Verdict {
                is_spin_model: true,
                case: Case::UnionOfCompletes,
                applied_to: Some(*side),
                family: None,
                reason: format!("{m} disjoint copies of K{s}"),
            });
        }
    }
    None
}

fn match_three_point(both: &[(Side, Graph); 2]) -> Option<Verdict> {
    three_point_params(&both[0].1)?;
    for (side, h) in both {
        let p = three_point_params(h).expect("complement of a 3-point regular graph is 3-point regular");
        let fr = freeness(h);
        let value = if !fr.any() {
            q_condition(&p).expect("all four triple types occur")
        } else if fr.triangle_free && !fr.lambda_free && p.srg.k >= 3 {
            assert!(p.q0() > 0, "triangle-free 3-point regular graph with k >= 3 must have q0 > 0");
            q_value(&p)
        } else {
            continue;
        };
        if value != 0 {
            return Some(Verdict {
                is_spin_model: true,
                case: Case::QConditionHolds { value },
                applied_to: Some(*side),
                family: None,
                reason: format!("3-point regular with q = {:?}", p.tuple()),
            });
        }
    }
    None
}

fn not_spin_reason(g: &Graph) -> Verdict {
    if srg_params(g).is_none() {
        return Verdict::no("not strongly regular");
    }
    match three_point_params(g) {
        None => Verdict::no("not 3-point regular"),
        Some(p) if q_value(&p) == 0 => {
            Verdict::no(format!("q3-3q2+3q1-q0 = 0 (Smith graph, q = {:?})", p.tuple()))
        }
        Some(p) => Verdict::no(format!("3-point regular with q = {:?} but no criterion applies", p.tuple())),
    }
}

fn family_from(both: &[(Side, Graph); 2], case: Case) -> Option<Family> {
    let g = &both[0].1;
    if both.iter().any(|(_, h)| h.is_complete()) {
        let n = g.order();
        let dim = if n >= 3 {
            DimPrediction::Exact(5)
        } else {
            let complete = if g.is_complete() { g } else { &both[1].1 };
            DimPrediction::Computed(oracle::spanning_rank(&WeightMatrix::from_graph(complete)))
        };
        return Some(Family { kind: FamilyKind::Tlj, dim });
    }
    for (_, h) in both {
        if let Some((m, s)) = h.as_union_of_completes().filter(|&(m, s)| m >= 2 && s >= 2) {
            let dim = match (m, s) {
                (2, 2) => DimPrediction::Exact(10),
                (2, _) => DimPrediction::Exact(11),
                (_, 2) => DimPrediction::Computed(oracle::spanning_rank(&WeightMatrix::from_graph(h))),
                _ => DimPrediction::Exact(12),
            };
            return Some(Family {
                kind: FamilyKind::BischJones,
                dim,
            });
        }
    }
    let dim = match case {
        Case::Pentagon => DimPrediction::Exact(13),
        _ => DimPrediction::OneOf(vec![14, 15]),
    };
    Some(Family {
        kind: FamilyKind::Kauffman,
        dim,
    })
}

/// The family of a symmetric spin model.
pub fn family_of(g: &Graph) -> Result<Family, ClassifyError> {
    let v = classify_symmetric(g);
    match v.family {
        Some(f) if v.is_spin_model => Ok(f),
        _ => Err(ClassifyError::NotASpinModel(v.reason)),
    }
}

/// `Some(k)` with `k = (n-1)/2` iff every in- and out-degree is equal.
pub fn is_regular_tournament(t: &Tournament) -> Option<usize> {
    let k = t.out_degree(0);
    (0..t.order())
        .all(|v| t.out_degree(v) == k && t.in_degree(v) == k)
        .then_some(k)
}

pub fn classify_tournament(t: &Tournament) -> Verdict {
    match is_regular_tournament(t) {
        None => Verdict::no("not a regular tournament"),
        Some(1) => Verdict {
            is_spin_model: true,
            case: Case::ThreeCycle,
            applied_to: Some(Side::Graph),
            family: Some(Family {
                kind: FamilyKind::BischJones,
                dim: DimPrediction::Exact(9),
            }),
            reason: "the 3-cycle".into(),
        },
        Some(k) => Verdict::no(format!("regular tournament with k = {k} != 1, so the 3b system is inconsistent")),
    }
}
