use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::convolve::{convolve_transform, SparseArray};
use crate::problem::ProblemSpec;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SemiringKind {
    Feasibility,
    Count,
    MinCost,
}

impl fmt::Display for SemiringKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SemiringKind::Feasibility => "feasibility",
            SemiringKind::Count => "count",
            SemiringKind::MinCost => "min-cost",
        })
    }
}

/// Value algebra of the cluster tables.
pub trait Semiring: Send + Sync + 'static {
    type Value: Clone + fmt::Debug + fmt::Display + PartialEq + Send + Sync;

    const KIND: SemiringKind;

    /// Whether the cut cost is part of the table key. When it is not, the
    /// value itself carries the cost.
    const COST_IN_KEY: bool;

    /// Value of a single leaf configuration whose cut cost is `cost`.
    fn unit(cost: u64) -> Self::Value;

    fn times(a: &Self::Value, b: &Self::Value) -> Self::Value;

    fn add_assign(acc: &mut Self::Value, v: Self::Value);

    fn is_zero(v: &Self::Value) -> bool;

    /// Entries whose value breaks the cost bound are dropped.
    fn admissible(_v: &Self::Value, _spec: &ProblemSpec) -> bool {
        true
    }

    /// Whether child values `a` and `b` can account for `target` during
    /// solution extraction.
    fn realizes(target: &Self::Value, a: &Self::Value, b: &Self::Value) -> bool;

    /// Cut cost carried by the value rather than the key.
    fn value_cost(_v: &Self::Value) -> u64 {
        0
    }

    /// Optional transform-based convolution; `None` falls back to direct
    /// summation.
    fn convolve_fast(
        _a: &SparseArray<Self::Value>,
        _b: &SparseArray<Self::Value>,
        _caps: &[u64],
    ) -> Option<SparseArray<Self::Value>> {
        None
    }
}

pub struct Feasibility;

impl Semiring for Feasibility {
    type Value = bool;
    const KIND: SemiringKind = SemiringKind::Feasibility;
    const COST_IN_KEY: bool = true;

    fn unit(_cost: u64) -> bool {
        true
    }

    fn times(a: &bool, b: &bool) -> bool {
        *a && *b
    }

    fn add_assign(acc: &mut bool, v: bool) {
        *acc |= v;
    }

    fn is_zero(v: &bool) -> bool {
        !*v
    }

    fn realizes(target: &bool, a: &bool, b: &bool) -> bool {
        *target && *a && *b
    }
}

pub struct Count;

impl Semiring for Count {
    type Value = BigUint;
    const KIND: SemiringKind = SemiringKind::Count;
    const COST_IN_KEY: bool = true;

    fn unit(_cost: u64) -> BigUint {
        BigUint::one()
    }

    fn times(a: &BigUint, b: &BigUint) -> BigUint {
        a * b
    }

    fn add_assign(acc: &mut BigUint, v: BigUint) {
        *acc += v;
    }

    fn is_zero(v: &BigUint) -> bool {
        v.is_zero()
    }

    fn realizes(_target: &BigUint, a: &BigUint, b: &BigUint) -> bool {
        !a.is_zero() && !b.is_zero()
    }

    fn convolve_fast(
        a: &SparseArray<BigUint>,
        b: &SparseArray<BigUint>,
        caps: &[u64],
    ) -> Option<SparseArray<BigUint>> {
        convolve_transform(a, b, caps)
    }
}

/// Minimum cut cost per configuration; the cost leaves the key.
pub struct MinCost;

impl Semiring for MinCost {
    type Value = u64;
    const KIND: SemiringKind = SemiringKind::MinCost;
    const COST_IN_KEY: bool = false;

    fn unit(cost: u64) -> u64 {
        cost
    }

    fn times(a: &u64, b: &u64) -> u64 {
        a.saturating_add(*b)
    }

    fn add_assign(acc: &mut u64, v: u64) {
        *acc = (*acc).min(v);
    }

    fn is_zero(_v: &u64) -> bool {
        false
    }

    fn admissible(v: &u64, spec: &ProblemSpec) -> bool {
        *v < spec.max_cost
    }

    fn realizes(target: &u64, a: &u64, b: &u64) -> bool {
        a.checked_add(*b) == Some(*target)
    }

    fn value_cost(v: &u64) -> u64 {
        *v
    }
}
