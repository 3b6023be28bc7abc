//! Cluster tables and their bottom-up computation.

mod combine;
mod convolve;
mod junction;
mod leaf;
mod run;
mod semiring;
mod table;

use std::fmt;
use std::str::FromStr;

pub use combine::{combine, outside_partitions, uses_noncrossing};
pub use convolve::{
    convolve_direct, convolve_transform, SparseArray, TRANSFORM_MAX_LEN, TRANSFORM_MAX_MASS,
};
pub use junction::{Frame, Junction};
pub use leaf::{assign_homes, leaf_entries, leaf_table, HomeAssignment, LeafEntry};
pub use run::{run_dp, DpRun, MAX_BOUNDARY};
pub use semiring::{Count, Feasibility, MinCost, Semiring, SemiringKind};
pub use table::{ClusterTable, Entries, TopoKey, WeightKey};

use crate::error::Error;

/// Which boundary partitions a cluster enumerates.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Mode {
    /// Noncrossing partitions only; every cluster must have a cyclic order.
    Noncrossing,
    /// All set partitions.
    General,
    /// Noncrossing where a cyclic order is certified, general elsewhere.
    #[default]
    Auto,
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "noncrossing" => Ok(Mode::Noncrossing),
            "general" => Ok(Mode::General),
            "auto" => Ok(Mode::Auto),
            other => Err(Error::Format(format!("unknown mode {other:?}"))),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Noncrossing => "noncrossing",
            Mode::General => "general",
            Mode::Auto => "auto",
        })
    }
}

/// How child entries are convolved during combine. Both give identical
/// tables.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum CombineStrategy {
    #[default]
    Direct,
    /// Aligned arrays convolved by FFT where the semiring supports it.
    Transform,
}
