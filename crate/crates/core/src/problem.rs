use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::EmbeddedGraph;

/// Number of districts, the half-open part-weight window `[lower, upper)` and
/// the exclusive cost bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProblemSpec {
    pub k: usize,
    pub lower: u64,
    pub upper: u64,
    pub max_cost: u64,
}

impl ProblemSpec {
    pub fn new(k: usize, lower: u64, upper: u64, max_cost: u64) -> Result<Self> {
        let spec = ProblemSpec {
            k,
            lower,
            upper,
            max_cost,
        };
        spec.check_shape()?;
        Ok(spec)
    }

    /// Uses `max_cost = total edge cost + 1`, so every plan is admitted.
    pub fn with_auto_cost(g: &EmbeddedGraph, k: usize, lower: u64, upper: u64) -> Result<Self> {
        Self::new(k, lower, upper, g.total_cost() + 1)
    }

    fn check_shape(&self) -> Result<()> {
        if self.k == 0 {
            return Err(Error::InvalidSpec("k must be at least 1".into()));
        }
        if self.lower >= self.upper {
            return Err(Error::InvalidSpec(format!(
                "empty weight interval [{}, {})",
                self.lower, self.upper
            )));
        }
        if self.max_cost == 0 {
            return Err(Error::InvalidSpec("cost bound must be positive".into()));
        }
        Ok(())
    }

    /// Rejects specs that no plan can satisfy by weight counting alone.
    pub fn check_against(&self, total_weight: u64) -> Result<()> {
        self.check_shape()?;
        let k = self.k as u128;
        let total = total_weight as u128;
        if k * self.lower as u128 > total || total >= k * self.upper as u128 {
            return Err(Error::Infeasible(format!(
                "total weight {total_weight} outside [{}, {}) for k = {}",
                k * self.lower as u128,
                k * self.upper as u128,
                self.k
            )));
        }
        Ok(())
    }

    pub fn admits_weight(&self, w: u64) -> bool {
        self.lower <= w && w < self.upper
    }
}
