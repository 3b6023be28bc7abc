//! Exact optimization, counting and uniform sampling of connected,
//! weight-balanced k-partitions of planar graphs.
//!
//! The solver runs a dynamic program over a branch decomposition of the
//! embedded graph. Each cluster table is indexed by a pair of boundary
//! partitions plus a weight/cost vector, and values live in one of three
//! semirings (feasibility, exact counts, minimum cost). Counting tables
//! support unranking, which gives an exactly uniform sampler.

pub mod decomp;
pub mod dp;
pub mod error;
pub mod gadgets;
pub mod graph;
pub mod ncp;
pub mod oracle;
pub mod plan;
pub mod problem;
pub mod solve;

pub use decomp::{Cluster, SphereCutDecomposition};
pub use error::{Error, Result};
pub use graph::{build_graph, EmbeddedGraph, GraphFile, RadialGraph};
pub use ncp::BoundaryPartition;
pub use plan::{validate_plan, Plan};
pub use problem::ProblemSpec;
pub use solve::{count_plans, optimize, sample_uniform, Builder, CostFilter, Prepared, Tables};
