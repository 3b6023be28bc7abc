use crate::decomp::{validate, SphereCutDecomposition};
use crate::error::{Error, Result};
use crate::graph::EmbeddedGraph;
use crate::problem::ProblemSpec;

use super::combine::{combine, uses_noncrossing};
use super::leaf::{assign_homes, leaf_table, HomeAssignment};
use super::semiring::Semiring;
use super::table::{ClusterTable, Entries, WeightKey};
use super::{CombineStrategy, Mode};

/// Widest boundary the tables accept; partitions are stored as byte labels.
pub const MAX_BOUNDARY: usize = 64;

/// All cluster tables of one run, indexed by cluster id.
pub struct DpRun<S: Semiring> {
    pub tables: Vec<ClusterTable<S::Value>>,
    pub spec: ProblemSpec,
    pub homes: HomeAssignment,
    pub mode: Mode,
    pub root: usize,
}

impl<S: Semiring> DpRun<S> {
    pub fn root_table(&self) -> &ClusterTable<S::Value> {
        &self.tables[self.root]
    }

    /// Root entries describing complete plans (all `k` districts finished),
    /// in key order: cost first, then the sorted district weights.
    pub fn root_entries(&self) -> impl Iterator<Item = (&WeightKey, &S::Value)> {
        let k = self.spec.k;
        self.root_table()
            .entries
            .get(&(Vec::new(), Vec::new()))
            .into_iter()
            .flat_map(|e: &Entries<S::Value>| e.iter())
            .filter(move |(w, _)| w.active.is_empty() && w.finished.len() == k)
    }
}

pub fn run_dp<S: Semiring>(
    d: &SphereCutDecomposition,
    g: &EmbeddedGraph,
    spec: &ProblemSpec,
    mode: Mode,
    strategy: CombineStrategy,
) -> Result<DpRun<S>> {
    spec.check_against(g.total_weight())?;
    let violations = validate(d, g);
    if !violations.is_empty() {
        return Err(Error::Decomposition(violations[0].to_string()));
    }
    for c in &d.clusters {
        if c.boundary.len() > MAX_BOUNDARY {
            return Err(Error::TooLarge {
                what: "cluster boundary",
                size: c.boundary.len(),
                limit: MAX_BOUNDARY,
            });
        }
        if !c.is_leaf() {
            uses_noncrossing(c, mode)?;
        }
    }
    let homes = assign_homes(g);
    let ctx = Ctx {
        d,
        g,
        spec,
        homes: &homes,
        mode,
        strategy,
    };
    let mut built = build::<S>(&ctx, d.root)?;
    built.sort_by_key(|t| t.cluster);
    Ok(DpRun {
        tables: built,
        spec: *spec,
        homes,
        mode,
        root: d.root,
    })
}

struct Ctx<'a> {
    d: &'a SphereCutDecomposition,
    g: &'a EmbeddedGraph,
    spec: &'a ProblemSpec,
    homes: &'a HomeAssignment,
    mode: Mode,
    strategy: CombineStrategy,
}

// Tables of the subtree under `c`, with the table of `c` itself last.
fn build<S: Semiring>(ctx: &Ctx<'_>, c: usize) -> Result<Vec<ClusterTable<S::Value>>> {
    let cluster = ctx.d.cluster(c);
    let Some([a, b]) = cluster.children else {
        return Ok(vec![leaf_table::<S>(ctx.g, cluster, ctx.spec, ctx.homes)]);
    };
    let (left, right) = rayon::join(|| build::<S>(ctx, a), || build::<S>(ctx, b));
    let mut left = left?;
    let right = right?;
    let table = combine::<S>(
        cluster,
        left.last().unwrap(),
        right.last().unwrap(),
        ctx.spec,
        ctx.mode,
        ctx.strategy,
    )?;
    left.extend(right);
    left.push(table);
    Ok(left)
}
