//! Root queries over finished tables: optimization, counting, unranking and
//! uniform sampling.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigUint, RandBigInt};
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

use crate::decomp::{radial_bfs_decomposition_from_outer, sweep_decomposition};
use crate::decomp::{Cluster, SphereCutDecomposition};
use crate::dp::{
    leaf_entries, run_dp, CombineStrategy, Count, DpRun, Frame, Junction, MinCost, Mode, Semiring,
    TopoKey, WeightKey,
};
use crate::error::{Error, Result};
use crate::graph::{contract_pendants, EmbeddedGraph, Preprocessed};
use crate::plan::Plan;
use crate::problem::ProblemSpec;

/// Which decomposition heuristic [`Prepared::new`] runs.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Builder {
    #[default]
    Sweep,
    Radial,
}

impl FromStr for Builder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sweep" => Ok(Builder::Sweep),
            "radial" => Ok(Builder::Radial),
            other => Err(Error::Format(format!("unknown builder {other:?}"))),
        }
    }
}

impl fmt::Display for Builder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Builder::Sweep => "sweep",
            Builder::Radial => "radial",
        })
    }
}

/// Which plan costs a count or sample ranges over.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum CostFilter {
    Exact(u64),
    /// `lo <= cost < hi`.
    Range(u64, u64),
    #[default]
    Any,
}

impl CostFilter {
    pub fn admits(&self, cost: u64) -> bool {
        match *self {
            CostFilter::Exact(c) => cost == c,
            CostFilter::Range(lo, hi) => lo <= cost && cost < hi,
            CostFilter::Any => true,
        }
    }
}

/// A graph made ready for the dynamic program: pendant vertices that can
/// never stand alone are merged away, and the remainder is decomposed.
#[derive(Clone, Debug)]
pub struct Prepared {
    pub original: EmbeddedGraph,
    pub reduced: Preprocessed,
    /// `None` when the reduced graph is a single vertex.
    pub decomposition: Option<SphereCutDecomposition>,
    /// Pendants lighter than this were merged; specs need `L` at least this.
    pub merge_bound: u64,
}

impl Prepared {
    pub fn new(g: &EmbeddedGraph, spec: &ProblemSpec, builder: Builder) -> Result<Prepared> {
        let reduced = contract_pendants(g, spec.lower);
        let decomposition = if reduced.graph.num_edges() == 0 {
            None
        } else {
            Some(match builder {
                Builder::Sweep => sweep_decomposition(&reduced.graph)?,
                Builder::Radial => radial_bfs_decomposition_from_outer(&reduced.graph)?,
            })
        };
        Ok(Prepared {
            original: g.clone(),
            reduced,
            decomposition,
            merge_bound: spec.lower,
        })
    }

    /// Uses a given decomposition of `g` itself, without contraction.
    pub fn with_decomposition(g: &EmbeddedGraph, d: SphereCutDecomposition) -> Prepared {
        Prepared {
            original: g.clone(),
            reduced: Preprocessed::identity(g),
            decomposition: Some(d),
            merge_bound: 0,
        }
    }

    pub fn graph(&self) -> &EmbeddedGraph {
        &self.reduced.graph
    }

    /// Plan on the original graph whose districts are the components of the
    /// reduced graph after deleting `cut` (indexed by reduced edge index).
    pub fn lift(&self, cut: &[bool]) -> Plan {
        let reduced = Plan::from_cut_edges(&self.reduced.graph, cut);
        let g = &self.original;
        let labels: Vec<usize> = g
            .vertices()
            .iter()
            .map(|v| reduced.assignment[&self.reduced.representative[&v.id]])
            .collect();
        Plan::from_labels(g, &labels)
    }

    pub fn solve<S: Semiring>(
        &self,
        spec: &ProblemSpec,
        mode: Mode,
        strategy: CombineStrategy,
    ) -> Result<Tables<'_, S>> {
        if spec.lower < self.merge_bound {
            return Err(Error::InvalidSpec(format!(
                "lower bound {} is below the contraction bound {}",
                spec.lower, self.merge_bound
            )));
        }
        let root = match &self.decomposition {
            _ if spec.check_against(self.original.total_weight()).is_err() => Root::Empty,
            None => Root::Trivial(spec.k == 1 && spec.admits_weight(self.original.total_weight())),
            Some(d) => Root::Dp(run_dp::<S>(d, self.graph(), spec, mode, strategy)?),
        };
        Ok(Tables {
            prepared: self,
            spec: *spec,
            root,
        })
    }
}

enum Root<S: Semiring> {
    /// The spec fails the weight-counting check.
    Empty,
    /// One vertex remains; whether the single-district plan is valid.
    Trivial(bool),
    Dp(DpRun<S>),
}

/// Tables of one run, kept for repeated root queries and descents.
pub struct Tables<'a, S: Semiring> {
    pub prepared: &'a Prepared,
    pub spec: ProblemSpec,
    root: Root<S>,
}

/// One complete-plan entry of the root table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootEntry<V> {
    pub cost: u64,
    /// Sorted district weights.
    pub weights: Vec<u64>,
    pub value: V,
}

impl<'a, S: Semiring> Tables<'a, S> {
    pub fn run(&self) -> Option<&DpRun<S>> {
        match &self.root {
            Root::Dp(run) => Some(run),
            _ => None,
        }
    }

    /// Complete-plan entries in (cost, weights) order.
    pub fn root_entries(&self) -> Vec<RootEntry<S::Value>> {
        match &self.root {
            Root::Empty | Root::Trivial(false) => Vec::new(),
            Root::Trivial(true) => vec![RootEntry {
                cost: 0,
                weights: vec![self.prepared.original.total_weight()],
                value: S::unit(0),
            }],
            Root::Dp(run) => {
                let mut out: Vec<RootEntry<S::Value>> = run
                    .root_entries()
                    .filter(|(_, v)| !S::is_zero(v))
                    .map(|(w, v)| RootEntry {
                        cost: w.cost + S::value_cost(v),
                        weights: w.finished.clone(),
                        value: v.clone(),
                    })
                    .collect();
                out.sort_by(|a, b| (a.cost, &a.weights).cmp(&(b.cost, &b.weights)));
                out
            }
        }
    }

    pub fn is_feasible(&self) -> bool {
        !self.root_entries().is_empty()
    }

    /// Minimum cost and one plan attaining it.
    pub fn optimize(&self) -> Result<(u64, Plan)> {
        let Some(best) = self.root_entries().into_iter().next() else {
            return Err(Error::Infeasible(
                "no plan satisfies the constraints".into(),
            ));
        };
        let plan = match &self.root {
            Root::Dp(run) => {
                let key = self.root_key(&best);
                let mut cut = vec![false; self.prepared.graph().num_edges()];
                self.descend_opt(
                    run,
                    run.root,
                    &(Vec::new(), Vec::new()),
                    &key,
                    &best.value,
                    &mut cut,
                );
                self.prepared.lift(&cut)
            }
            _ => self.single_district(),
        };
        debug_assert_eq!(plan.cost, best.cost);
        Ok((best.cost, plan))
    }

    fn single_district(&self) -> Plan {
        let g = &self.prepared.original;
        Plan::from_labels(g, &vec![0; g.num_vertices()])
    }

    fn root_key(&self, e: &RootEntry<S::Value>) -> WeightKey {
        WeightKey {
            cost: if S::COST_IN_KEY { e.cost } else { 0 },
            active: Vec::new(),
            finished: e.weights.clone(),
        }
    }

    /// Marks in `cut` the edges cut by one solution compatible with the
    /// configuration `(topo, key)` of `cluster` whose value is `value`.
    pub fn descend_opt(
        &self,
        run: &DpRun<S>,
        cluster: usize,
        topo: &TopoKey,
        key: &WeightKey,
        value: &S::Value,
        cut: &mut [bool],
    ) {
        let d = self.prepared.decomposition.as_ref().unwrap();
        let c = d.cluster(cluster);
        let Some([a, b]) = c.children else {
            let e = self.leaf_match(run, c, topo, key, value);
            cut[c.edges[0]] = e;
            return;
        };
        let (t1, t2) = (&run.tables[a], &run.tables[b]);
        let frame = Frame::new(&c.boundary, &t1.ground, &t2.ground);
        for in1 in t1.pi_in_keys() {
            for in2 in t2.pi_in_keys() {
                let Some(j) = self.junction(&frame, topo, &in1, &in2) else {
                    continue;
                };
                let (Some(e1), Some(e2)) = (
                    t1.entries.get(&(in1.clone(), j.pi_out1.clone())),
                    t2.entries.get(&(in2.clone(), j.pi_out2.clone())),
                ) else {
                    continue;
                };
                for (w1, v1) in e1 {
                    for (w2, v2) in e2 {
                        if j.merge(w1, w2, &self.spec, S::COST_IN_KEY).as_ref() != Some(key)
                            || !S::admissible(&S::times(v1, v2), &self.spec)
                            || !S::realizes(value, v1, v2)
                        {
                            continue;
                        }
                        self.descend_opt(run, a, &(in1.clone(), j.pi_out1.clone()), w1, v1, cut);
                        self.descend_opt(run, b, &(in2.clone(), j.pi_out2.clone()), w2, v2, cut);
                        return;
                    }
                }
            }
        }
        panic!("descend: cluster {cluster} has no child configurations realizing its entry");
    }

    fn junction(&self, frame: &Frame, topo: &TopoKey, in1: &[u8], in2: &[u8]) -> Option<Junction> {
        Junction::new(frame, &topo.1, in1, in2, self.spec.k).filter(|j| j.pi_in0 == topo.0)
    }

    // Whether the leaf's edge is cut in the configuration `(topo, key)`.
    fn leaf_match(
        &self,
        run: &DpRun<S>,
        c: &Cluster,
        topo: &TopoKey,
        key: &WeightKey,
        value: &S::Value,
    ) -> bool {
        leaf_entries(self.prepared.graph(), c, &self.spec, &run.homes)
            .into_iter()
            .find(|entry| {
                let stored = if S::COST_IN_KEY { entry.key.cost } else { 0 };
                &entry.topo == topo
                    && entry.key.active == key.active
                    && entry.key.finished == key.finished
                    && stored == key.cost
                    && S::unit(entry.key.cost) == *value
            })
            .map(|entry| entry.cut)
            .expect("descend: leaf configuration not in table")
    }
}

impl<'a> Tables<'a, MinCost> {
    pub fn min_cost(&self) -> Option<u64> {
        self.root_entries().first().map(|e| e.cost)
    }
}

impl<'a> Tables<'a, Count> {
    /// Number of plans whose cost passes `filter`.
    pub fn count(&self, filter: CostFilter) -> BigUint {
        self.root_entries()
            .into_iter()
            .filter(|e| filter.admits(e.cost))
            .map(|e| e.value)
            .sum()
    }

    /// (sorted weights, cost) -> number of plans.
    pub fn histogram(&self, filter: CostFilter) -> BTreeMap<(Vec<u64>, u64), BigUint> {
        self.root_entries()
            .into_iter()
            .filter(|e| filter.admits(e.cost))
            .map(|e| ((e.weights, e.cost), e.value))
            .collect()
    }

    /// The `rank`-th plan (1-based) among those passing `filter`, in root
    /// order (cost, then weights) and then the fixed child iteration order.
    /// Distinct ranks give distinct plans.
    pub fn unrank(&self, rank: &BigUint, filter: CostFilter) -> Result<Plan> {
        let total = self.count(filter);
        if rank.is_zero() || *rank > total {
            return Err(Error::RankOutOfRange {
                rank: rank.to_string(),
                total: total.to_string(),
            });
        }
        let mut p = rank.clone();
        let mut plan = None;
        for e in self
            .root_entries()
            .into_iter()
            .filter(|e| filter.admits(e.cost))
        {
            if p > e.value {
                p -= &e.value;
                continue;
            }
            plan = Some(match &self.root {
                Root::Dp(run) => {
                    let key = self.root_key(&e);
                    let mut cut = vec![false; self.prepared.graph().num_edges()];
                    self.descend_unrank(
                        run,
                        run.root,
                        &(Vec::new(), Vec::new()),
                        &key,
                        p,
                        &mut cut,
                    );
                    self.prepared.lift(&cut)
                }
                _ => self.single_district(),
            });
            break;
        }
        let mut plan = plan.expect("rank within total");
        plan.rank_p = Some(rank.to_string());
        Ok(plan)
    }

    /// Marks in `cut` the `p`-th solution compatible with `(topo, key)`.
    pub fn descend_unrank(
        &self,
        run: &DpRun<Count>,
        cluster: usize,
        topo: &TopoKey,
        key: &WeightKey,
        mut p: BigUint,
        cut: &mut [bool],
    ) {
        let d = self.prepared.decomposition.as_ref().unwrap();
        let c = d.cluster(cluster);
        let Some([a, b]) = c.children else {
            assert!(p.is_one(), "descend: leaf rank {p} out of range");
            cut[c.edges[0]] = self.leaf_match(run, c, topo, key, &BigUint::one());
            return;
        };
        let (t1, t2) = (&run.tables[a], &run.tables[b]);
        let frame = Frame::new(&c.boundary, &t1.ground, &t2.ground);
        for in1 in t1.pi_in_keys() {
            for in2 in t2.pi_in_keys() {
                let Some(j) = self.junction(&frame, topo, &in1, &in2) else {
                    continue;
                };
                let (Some(e1), Some(e2)) = (
                    t1.entries.get(&(in1.clone(), j.pi_out1.clone())),
                    t2.entries.get(&(in2.clone(), j.pi_out2.clone())),
                ) else {
                    continue;
                };
                for (w1, v1) in e1 {
                    for (w2, v2) in e2 {
                        if j.merge(w1, w2, &self.spec, true).as_ref() != Some(key) {
                            continue;
                        }
                        let delta = v1 * v2;
                        if p > delta {
                            p -= delta;
                            continue;
                        }
                        let q = (&p + v2 - 1u32) / v2;
                        let r = (&p - 1u32) % v2 + 1u32;
                        self.descend_unrank(run, a, &(in1.clone(), j.pi_out1.clone()), w1, q, cut);
                        self.descend_unrank(run, b, &(in2.clone(), j.pi_out2.clone()), w2, r, cut);
                        return;
                    }
                }
            }
        }
        panic!("descend: rank exceeds the entry of cluster {cluster}");
    }

    /// A plan drawn uniformly from those passing `filter`, reproducible for
    /// a given seed.
    pub fn sample(&self, seed: u64, filter: CostFilter) -> Result<Plan> {
        let total = self.count(filter);
        if total.is_zero() {
            return Err(Error::Infeasible("no plan has the requested cost".into()));
        }
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        let p = rng.gen_biguint_range(&BigUint::one(), &(total + 1u32));
        let mut plan = self.unrank(&p, filter)?;
        plan.seed = Some(seed);
        Ok(plan)
    }
}

/// Minimum cost and a witness, using the default decomposition and mode.
pub fn optimize(g: &EmbeddedGraph, spec: &ProblemSpec) -> Result<(u64, Plan)> {
    let prepared = Prepared::new(g, spec, Builder::Sweep)?;
    let tables = prepared.solve::<MinCost>(spec, Mode::Auto, CombineStrategy::Direct)?;
    tables.optimize()
}

/// Number of plans passing `filter`, using the default decomposition and mode.
pub fn count_plans(g: &EmbeddedGraph, spec: &ProblemSpec, filter: CostFilter) -> Result<BigUint> {
    let prepared = Prepared::new(g, spec, Builder::Sweep)?;
    let tables = prepared.solve::<Count>(spec, Mode::Auto, CombineStrategy::Direct)?;
    Ok(tables.count(filter))
}

/// One uniformly drawn plan passing `filter`.
pub fn sample_uniform(
    g: &EmbeddedGraph,
    spec: &ProblemSpec,
    filter: CostFilter,
    seed: u64,
) -> Result<Plan> {
    let prepared = Prepared::new(g, spec, Builder::Sweep)?;
    let tables = prepared.solve::<Count>(spec, Mode::Auto, CombineStrategy::Direct)?;
    tables.sample(seed, filter)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gadgets::grid;
    use crate::plan::validate_plan;

    fn spec(k: usize, lo: u64, hi: u64, s: u64) -> ProblemSpec {
        ProblemSpec::new(k, lo, hi, s).unwrap()
    }

    #[test]
    fn grid_2x2_optimum_and_count() {
        let g = grid(2, 2);
        let s = spec(2, 2, 3, 5);
        let (cost, plan) = optimize(&g, &s).unwrap();
        assert_eq!(cost, 2);
        validate_plan(&g, &s, &plan).unwrap();
        assert_eq!(
            count_plans(&g, &s, CostFilter::Exact(2)).unwrap(),
            2u32.into()
        );
        assert_eq!(
            count_plans(&g, &s, CostFilter::Exact(0)).unwrap(),
            0u32.into()
        );
    }

    #[test]
    fn single_district() {
        let g = grid(2, 3);
        let s = spec(1, 6, 7, 10);
        let (cost, plan) = optimize(&g, &s).unwrap();
        assert_eq!(cost, 0);
        assert!(plan.assignment.values().all(|&d| d == 1));
        assert_eq!(count_plans(&g, &s, CostFilter::Any).unwrap(), 1u32.into());
    }

    #[test]
    fn unrank_two_plans() {
        let g = grid(2, 2);
        let s = spec(2, 2, 3, 5);
        let prepared = Prepared::new(&g, &s, Builder::Sweep).unwrap();
        let t = prepared
            .solve::<Count>(&s, Mode::Auto, CombineStrategy::Direct)
            .unwrap();
        let a = t.unrank(&1u32.into(), CostFilter::Any).unwrap();
        let b = t.unrank(&2u32.into(), CostFilter::Any).unwrap();
        assert_ne!(a.assignment, b.assignment);
        assert!(t.unrank(&3u32.into(), CostFilter::Any).is_err());
        assert!(t.unrank(&0u32.into(), CostFilter::Any).is_err());
    }

    #[test]
    fn sampling_is_reproducible() {
        let g = grid(3, 3);
        let s = spec(3, 3, 4, 13);
        let a = sample_uniform(&g, &s, CostFilter::Any, 7).unwrap();
        let b = sample_uniform(&g, &s, CostFilter::Any, 7).unwrap();
        assert_eq!(a, b);
        validate_plan(&g, &s, &a).unwrap();
    }

    #[test]
    fn infeasible_weight_window() {
        let g = grid(2, 2);
        let s = spec(2, 3, 4, 5);
        assert!(matches!(optimize(&g, &s), Err(Error::Infeasible(_))));
        assert_eq!(count_plans(&g, &s, CostFilter::Any).unwrap(), 0u32.into());
    }

    #[test]
    fn pendant_path_collapses() {
        // path 0-1-2 with weights 1: k = 1 collapses to a single vertex
        let g = grid(1, 3);
        let s = spec(1, 2, 4, 5);
        let p = Prepared::new(&g, &s, Builder::Sweep).unwrap();
        assert!(p.decomposition.is_none());
        let t = p
            .solve::<Count>(&s, Mode::Auto, CombineStrategy::Direct)
            .unwrap();
        assert_eq!(t.count(CostFilter::Any), 1u32.into());
        let s2 = spec(2, 2, 3, 5);
        assert!(p
            .solve::<Count>(&s2, Mode::Auto, CombineStrategy::Direct)
            .unwrap()
            .count(CostFilter::Any)
            .is_zero());
    }
}
