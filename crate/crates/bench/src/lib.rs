//! Shared fixtures for the benchmarks.

use redistrict::gadgets::grid;
use redistrict::{EmbeddedGraph, ProblemSpec};

/// Unit grids split into `k` districts of equal weight (one unit of slack
/// above), with every cut cost admitted.
pub fn balanced_grids() -> Vec<(String, EmbeddedGraph, ProblemSpec)> {
    [(3, 4, 2), (4, 4, 2), (4, 6, 2), (4, 6, 3), (4, 8, 2)]
        .into_iter()
        .map(|(r, c, k)| {
            let g = grid(r, c);
            let n = (r * c) as u64;
            let part = n / k as u64;
            let spec = ProblemSpec::with_auto_cost(&g, k, part, part + 1).unwrap();
            (format!("{r}x{c}/k{k}"), g, spec)
        })
        .collect()
}

/// Cyclic orders for the noncrossing enumerator.
pub fn boundary_orders() -> Vec<Vec<usize>> {
    (4..=12).step_by(2).map(|m| (0..m).collect()).collect()
}
