//! Spin models for singly-generated Yang-Baxter planar algebras.
//!
//! A spin model assigns the generator `P` a 0/1 weight matrix `C_P`. In the
//! symmetric case `C_P` is the adjacency matrix of a graph, in the
//! non-symmetric case that of a tournament. This crate decides which matrices
//! work in two independent ways:
//!
//! * [`classifier`] applies closed-form graph-theoretic criteria
//!   (pentagon, unions of complete graphs, 3-point regular graphs with a
//!   non-vanishing `q3 - 3 q2 + 3 q1 - q0`, and the 3-cycle tournament).
//! * [`oracle`] evaluates the state sums of the Yang-Baxter relations on
//!   ordered pairs and triples of vertices and decides every relation by exact
//!   rational span membership.
//!
//! [`census`] runs both over exhaustive enumerations or graph6 streams and
//! asserts that they agree.

pub mod bitset;
pub mod census;
pub mod classifier;
pub mod fixtures;
pub mod graph;
pub mod oracle;
pub mod regularity;

pub use classifier::{classify_symmetric, classify_tournament, family_of, Case, Family, FamilyKind, Verdict};
pub use graph::{Graph, GraphError, PairType, Tournament, TripleType};
pub use oracle::{full_report, RelationReport, WeightMatrix};
pub use regularity::{freeness, srg_params, three_point_params, Freeness, SrgParams, ThreePointParams};
