//! Bond percolation on Cayley graphs and repetitive subgraphs.
//!
//! The crate builds finite windows of the configuration space `2^E` of a
//! Cayley graph, extracts and compares rooted clusters under the
//! `exp(-agreement radius)` ultrametric, generates repetitive subgraphs of
//! `Z^2` with their finite-stage pattern libraries, and estimates how often
//! a Bernoulli cluster looks locally like such a subgraph.

pub mod cluster;
pub mod config;
pub mod error;
pub mod experiments;
pub mod group;
pub mod io;
pub mod percolation;
pub mod repetitive;
pub mod scalar;

pub use num_rational::BigRational;

pub use cluster::{
    boundary_reach, boundary_reach_within, cluster_of, gh_distance, identity_cluster_ball, reroot, GhDistance,
    RootedGraph,
};
pub use config::{canonical_edge, window_edges, Configuration, EdgeId, Window};
pub use error::{Error, Result};
pub use group::{GroupElement, GroupKind, GroupSpec};
pub use percolation::{
    brute_force_probability, cylinder_probability, in_insertion_image, match_probabilities, match_probability,
    sample, saturation_member, saturation_radius, saturation_rows, BernoulliLaw, EstimateRow, MatchOptions, SampleSpec,
};
pub use repetitive::{
    factor_count, in_closure, is_proper, is_repetitive, local_ball, patterns, sturmian_word, ModelKind,
    PatternLibrary, QuadraticIrrational, SubgraphModel,
};
pub use scalar::{Probability, Real};

/// Bernoulli law with a floating-point survival parameter.
pub type Law = BernoulliLaw<f64>;
/// Single-precision Bernoulli law.
pub type Law32 = BernoulliLaw<f32>;
/// Bernoulli law with an exact rational survival parameter.
pub type ExactLaw = BernoulliLaw<BigRational>;
/// Ultrametric distance in double precision.
pub type Distance = GhDistance<f64>;
