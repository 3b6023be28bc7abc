mod common;

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;
use proptest::prelude::*;
use redistrict::decomp::{export_decomposition, import_decomposition, sweep_decomposition};
use redistrict::dp::{CombineStrategy, Count, MinCost, Mode};
use redistrict::gadgets::{expand_unit_weights, grid, grid_with};
use redistrict::graph::{EmbeddedGraph, VertexId};
use redistrict::oracle::enumerate_all;
use redistrict::{validate_plan, Builder, CostFilter, Error, Prepared, ProblemSpec};

use common::{edge_subgraph, family, to_big};

fn count_tables<'a>(p: &'a Prepared, spec: &ProblemSpec) -> redistrict::Tables<'a, Count> {
    p.solve::<Count>(spec, Mode::Auto, CombineStrategy::Direct)
        .unwrap()
}

fn all_ranks(
    g: &EmbeddedGraph,
    spec: &ProblemSpec,
    builder: Builder,
) -> Vec<BTreeMap<VertexId, usize>> {
    let p = Prepared::new(g, spec, builder).unwrap();
    let t = count_tables(&p, spec);
    let n: u64 = t.count(CostFilter::Any).try_into().unwrap();
    (1..=n)
        .map(|rank| {
            let plan = t.unrank(&BigUint::from(rank), CostFilter::Any).unwrap();
            validate_plan(g, spec, &plan).unwrap();
            plan.assignment
        })
        .collect()
}

fn oracle_set(g: &EmbeddedGraph, spec: &ProblemSpec) -> BTreeSet<BTreeMap<VertexId, usize>> {
    enumerate_all(g, spec)
        .unwrap()
        .plans
        .into_iter()
        .map(|p| p.assignment)
        .collect()
}

#[test]
fn optimize_matches_oracle_on_family() {
    for (name, g, spec) in family() {
        let expected = enumerate_all(&g, &spec).unwrap().min_cost();
        for builder in [Builder::Sweep, Builder::Radial] {
            let p = Prepared::new(&g, &spec, builder).unwrap();
            let t = p
                .solve::<MinCost>(&spec, Mode::Auto, CombineStrategy::Direct)
                .unwrap();
            let (cost, plan) = t.optimize().unwrap();
            assert_eq!(Some(cost), expected, "{name} {builder}");
            validate_plan(&g, &spec, &plan).unwrap();
            assert_eq!(plan.cost, cost);
        }
    }
}

#[test]
fn known_optima() {
    let g = grid(2, 2);
    let spec = ProblemSpec::new(2, 2, 3, 5).unwrap();
    assert_eq!(redistrict::optimize(&g, &spec).unwrap().0, 2);
    let g = grid(3, 3);
    let spec = ProblemSpec::with_auto_cost(&g, 3, 3, 4).unwrap();
    let (cost, plan) = redistrict::optimize(&g, &spec).unwrap();
    assert_eq!(cost, 6);
    validate_plan(&g, &spec, &plan).unwrap();
}

#[test]
fn counts_match_oracle_histograms() {
    for (name, g, spec) in family() {
        let oracle = enumerate_all(&g, &spec).unwrap();
        for builder in [Builder::Sweep, Builder::Radial] {
            let p = Prepared::new(&g, &spec, builder).unwrap();
            let t = count_tables(&p, &spec);
            assert_eq!(
                t.histogram(CostFilter::Any),
                to_big(&oracle.histogram),
                "{name} {builder}"
            );
        }
    }
}

#[test]
fn three_by_three_into_thirds() {
    // frozen from the brute-force enumerator
    let g = grid(3, 3);
    let spec = ProblemSpec::with_auto_cost(&g, 3, 3, 4).unwrap();
    assert_eq!(
        redistrict::count_plans(&g, &spec, CostFilter::Any).unwrap(),
        10u32.into()
    );
    assert_eq!(enumerate_all(&g, &spec).unwrap().total(), 10);
    let ranks = all_ranks(&g, &spec, Builder::Sweep);
    let set: BTreeSet<_> = ranks.iter().cloned().collect();
    assert_eq!(set.len(), 10);
    assert_eq!(set, oracle_set(&g, &spec));
}

#[test]
fn cost_filters() {
    let g = grid(3, 3);
    let spec = ProblemSpec::with_auto_cost(&g, 2, 4, 6).unwrap();
    let p = Prepared::new(&g, &spec, Builder::Sweep).unwrap();
    let t = count_tables(&p, &spec);
    let oracle = enumerate_all(&g, &spec).unwrap();
    for c in 0..8 {
        let expected = oracle.plans.iter().filter(|p| p.cost == c).count();
        assert_eq!(t.count(CostFilter::Exact(c)), BigUint::from(expected));
    }
    let in_range = oracle
        .plans
        .iter()
        .filter(|p| (3..5).contains(&p.cost))
        .count();
    assert_eq!(t.count(CostFilter::Range(3, 5)), BigUint::from(in_range));
    assert_eq!(t.count(CostFilter::Any), BigUint::from(oracle.total()));
    // ranks restricted to one cost stay inside it
    let n: u64 = t.count(CostFilter::Exact(4)).try_into().unwrap();
    for rank in 1..=n {
        let plan = t.unrank(&rank.into(), CostFilter::Exact(4)).unwrap();
        assert_eq!(plan.cost, 4);
    }
}

#[test]
fn unranking_2x2() {
    let g = grid(2, 2);
    let spec = ProblemSpec::new(2, 2, 3, 5).unwrap();
    let ranks = all_ranks(&g, &spec, Builder::Sweep);
    assert_eq!(ranks.len(), 2);
    assert_ne!(ranks[0], ranks[1]);
    let p = Prepared::new(&g, &spec, Builder::Sweep).unwrap();
    let t = count_tables(&p, &spec);
    assert!(matches!(
        t.unrank(&3u32.into(), CostFilter::Any),
        Err(Error::RankOutOfRange { .. })
    ));
}

#[test]
fn sampling() {
    let g = grid(2, 2);
    let spec = ProblemSpec::new(2, 2, 3, 5).unwrap();
    let p = Prepared::new(&g, &spec, Builder::Sweep).unwrap();
    let t = count_tables(&p, &spec);
    let seen: BTreeSet<_> = (0..32)
        .map(|seed| t.sample(seed, CostFilter::Exact(2)).unwrap().assignment)
        .collect();
    assert_eq!(seen.len(), 2);
    let a = t.sample(7, CostFilter::Exact(2)).unwrap();
    assert_eq!(a, t.sample(7, CostFilter::Exact(2)).unwrap());
    assert_eq!(a.seed, Some(7));
    assert!(matches!(
        t.sample(1, CostFilter::Exact(3)),
        Err(Error::Infeasible(_))
    ));

    // a single plan comes back whatever the seed
    let g = grid(1, 4);
    let spec = ProblemSpec::new(2, 2, 3, 5).unwrap();
    let p = Prepared::new(&g, &spec, Builder::Sweep).unwrap();
    let t = count_tables(&p, &spec);
    assert_eq!(t.count(CostFilter::Any), 1u32.into());
    let first = t.sample(0, CostFilter::Any).unwrap().assignment;
    for seed in 1..10 {
        assert_eq!(t.sample(seed, CostFilter::Any).unwrap().assignment, first);
    }
}

#[test]
fn imported_decomposition_gives_the_same_counts() {
    let g = grid(3, 3);
    let spec = ProblemSpec::with_auto_cost(&g, 3, 3, 4).unwrap();
    let file = export_decomposition(&sweep_decomposition(&g).unwrap(), &g);
    let text = file.to_json().unwrap();
    let back = redistrict::decomp::DecompositionFile::from_json(&text).unwrap();
    let d = import_decomposition(&back, &g).unwrap();
    let p = Prepared::with_decomposition(&g, d);
    let t = count_tables(&p, &spec);
    assert_eq!(t.count(CostFilter::Any), 10u32.into());
}

#[test]
fn expanded_weights_count_like_the_weighted_graph() {
    // unit-weight expansion adds pendants that the solver merges back
    let g = grid_with(2, 3, |i, j| 1 + ((i + 2 * j) % 3) as u64, |_| 1);
    let e = expand_unit_weights(&g, 32).unwrap();
    let total = g.total_weight();
    for k in [2usize, 3] {
        let kk = k as u64;
        let spec = ProblemSpec::with_auto_cost(&g, k, total / kk, total.div_ceil(kk) + 1).unwrap();
        let a = redistrict::count_plans(&g, &spec, CostFilter::Any).unwrap();
        let b = redistrict::count_plans(&e.graph, &spec, CostFilter::Any).unwrap();
        assert_eq!(a, BigUint::from(enumerate_all(&g, &spec).unwrap().total()));
        // every expanded plan keeps the dummies with their hosts
        assert_eq!(a, b, "k = {k}");
    }
}

fn random_instance(
    r: usize,
    c: usize,
    keep: &[bool],
    weights: &[u64],
    costs: &[u64],
) -> Option<EmbeddedGraph> {
    let full = grid_with(r, c, |i, j| weights[i * c + j], |e| costs[e as usize]);
    edge_subgraph(&full, &keep[..full.num_edges()])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    // Graphs with at most 12 vertices and k <= 3: the image of the ranks
    // is exactly the oracle's plan set.
    #[test]
    fn unranking_is_a_bijection_onto_oracle_plans(
        (r, c) in prop_oneof![Just((2usize, 3usize)), Just((3, 3)), Just((3, 4)), Just((2, 5))],
        keep in proptest::collection::vec(prop::bool::weighted(0.8), 17),
        weights in proptest::collection::vec(1u64..=3, 12),
        costs in proptest::collection::vec(1u64..=2, 17),
        k in 1usize..=3,
        slack in 0u64..3,
    ) {
        let Some(g) = random_instance(r, c, &keep, &weights, &costs) else {
            return Ok(());
        };
        let total = g.total_weight();
        let kk = k as u64;
        let lo = (total / kk).saturating_sub(slack).max(1);
        let spec = ProblemSpec::with_auto_cost(&g, k, lo, total.div_ceil(kk) + 1 + slack).unwrap();
        let oracle = enumerate_all(&g, &spec).unwrap();
        let p = Prepared::new(&g, &spec, Builder::Sweep).unwrap();
        let t = count_tables(&p, &spec);
        prop_assert_eq!(t.histogram(CostFilter::Any), to_big(&oracle.histogram));
        if oracle.total() > 3000 {
            return Ok(());
        }
        let ranks = all_ranks(&g, &spec, Builder::Sweep);
        let set: BTreeSet<_> = ranks.iter().cloned().collect();
        prop_assert_eq!(set.len(), ranks.len());
        prop_assert_eq!(set, oracle_set(&g, &spec));
        if oracle.total() > 0 {
            let mt = p.solve::<MinCost>(&spec, Mode::Auto, CombineStrategy::Direct).unwrap();
            let (cost, plan) = mt.optimize().unwrap();
            prop_assert_eq!(Some(cost), oracle.min_cost());
            validate_plan(&g, &spec, &plan).unwrap();
        }
    }

    // Pendant vertices lighter than L are merged before the tables are
    // built; the plan set must not change.
    #[test]
    fn pendant_contraction_preserves_plans(
        c in 3usize..=5,
        weights in proptest::collection::vec(1u64..=3, 12),
        k in 1usize..=3,
    ) {
        // a 2 x c ladder whose top row carries a pendant path
        let base = grid_with(2, c, |i, j| weights[i * c + j], |_| 1);
        let mut file = base.to_file();
        let top = 0u32;
        let mut prev = top;
        for (step, w) in weights[2 * c..].iter().take(2).enumerate() {
            let id = 100 + step as u32;
            let eid = 200 + step as u32;
            file.vertices.push(redistrict::graph::VertexRecord { id, weight: *w });
            file.edges.push(redistrict::graph::EdgeRecord { id: eid, u: prev, v: id, cost: 1 });
            file.rotation.get_mut(&prev).unwrap().push(eid);
            file.rotation.insert(id, vec![eid]);
            prev = id;
        }
        let g = redistrict::build_graph(&file).unwrap();
        let total = g.total_weight();
        let kk = k as u64;
        let spec = ProblemSpec::with_auto_cost(&g, k, total / kk, total.div_ceil(kk) + 2).unwrap();
        let oracle = enumerate_all(&g, &spec).unwrap();
        let p = Prepared::new(&g, &spec, Builder::Sweep).unwrap();
        let t = count_tables(&p, &spec);
        prop_assert_eq!(t.histogram(CostFilter::Any), to_big(&oracle.histogram));
        let n: u64 = t.count(CostFilter::Any).try_into().unwrap();
        let plans: BTreeSet<_> = (1..=n)
            .map(|rank| t.unrank(&rank.into(), CostFilter::Any).unwrap().assignment)
            .collect();
        prop_assert_eq!(plans, oracle_set(&g, &spec));
    }
}
