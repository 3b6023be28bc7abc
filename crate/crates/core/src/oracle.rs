//! Brute-force ground truth for small instances.
//!
//! Nothing here reuses the dynamic program: plans are enumerated as
//! restricted-growth strings over the vertices and checked directly, and
//! cluster tables are recomputed from their definition.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::EmbeddedGraph;
use crate::plan::Plan;
use crate::problem::ProblemSpec;

pub const ORACLE_MAX_VERTICES: usize = 14;
pub const CLUSTER_ORACLE_MAX_EDGES: usize = 10;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OracleResult {
    /// Plans in lexicographic order of their restricted-growth strings.
    pub plans: Vec<Plan>,
    /// (sorted district weights, cost) -> number of plans.
    pub histogram: BTreeMap<(Vec<u64>, u64), u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HistogramRow {
    pub weights: Vec<u64>,
    pub cost: u64,
    pub count: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HistogramFile {
    pub total: u64,
    pub histogram: Vec<HistogramRow>,
}

impl OracleResult {
    pub fn total(&self) -> u64 {
        self.plans.len() as u64
    }

    pub fn min_cost(&self) -> Option<u64> {
        self.plans.iter().map(|p| p.cost).min()
    }

    pub fn histogram_file(&self) -> HistogramFile {
        HistogramFile {
            total: self.total(),
            histogram: self
                .histogram
                .iter()
                .map(|((weights, cost), &count)| HistogramRow {
                    weights: weights.clone(),
                    cost: *cost,
                    count,
                })
                .collect(),
        }
    }
}

fn adjacency(g: &EmbeddedGraph) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); g.num_vertices()];
    for e in g.edges() {
        adj[e.u].push(e.v);
        adj[e.v].push(e.u);
    }
    adj
}

fn blocks_connected(adj: &[Vec<usize>], labels: &[usize], blocks: usize) -> bool {
    let mut seen = vec![false; labels.len()];
    let mut started = vec![false; blocks];
    for s in 0..labels.len() {
        let b = labels[s];
        if started[b] {
            if !seen[s] {
                return false;
            }
            continue;
        }
        started[b] = true;
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            for &y in &adj[x] {
                if labels[y] == b && !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
    }
    true
}

/// Calls `f` on every restricted-growth string of length `n` that extends
/// `prefix` and uses exactly `k` labels.
fn for_each_rgs(prefix: &[usize], n: usize, k: usize, f: &mut dyn FnMut(&[usize])) {
    fn rec(labels: &mut Vec<usize>, used: usize, n: usize, k: usize, f: &mut dyn FnMut(&[usize])) {
        let i = labels.len();
        if i == n {
            if used == k {
                f(labels);
            }
            return;
        }
        // labels still to introduce must fit in the remaining positions
        if k - used > n - i {
            return;
        }
        let top = used.min(k - 1);
        for l in 0..=top {
            labels.push(l);
            rec(labels, used.max(l + 1), n, k, f);
            labels.pop();
        }
    }
    let used = prefix.iter().map(|&l| l + 1).max().unwrap_or(0);
    if used > k {
        return;
    }
    let mut labels = prefix.to_vec();
    rec(&mut labels, used, n, k, f);
}

/// Every plan of `g` under `spec`: `k` nonempty connected districts with
/// weights in `[L, U)` and cut cost below `S`.
pub fn enumerate_all(g: &EmbeddedGraph, spec: &ProblemSpec) -> Result<OracleResult> {
    let n = g.num_vertices();
    if n > ORACLE_MAX_VERTICES {
        return Err(Error::TooLarge {
            what: "oracle",
            size: n,
            limit: ORACLE_MAX_VERTICES,
        });
    }
    let k = spec.k;
    if k == 0 || k > n {
        return Ok(OracleResult::default());
    }
    let adj = adjacency(g);
    // split the search on the labels of the first few vertices
    let depth = n.min(5);
    let mut prefixes = Vec::new();
    fn grow(p: &mut Vec<usize>, depth: usize, out: &mut Vec<Vec<usize>>) {
        if p.len() == depth {
            out.push(p.clone());
            return;
        }
        let top = p.iter().map(|&l| l + 1).max().unwrap_or(0);
        for l in 0..=top {
            p.push(l);
            grow(p, depth, out);
            p.pop();
        }
    }
    grow(&mut Vec::new(), depth, &mut prefixes);
    prefixes.retain(|p| p[0] == 0);

    let found: Vec<Vec<Plan>> = prefixes
        .par_iter()
        .map(|prefix| {
            let mut plans = Vec::new();
            for_each_rgs(prefix, n, k, &mut |labels| {
                let mut weights = vec![0u64; k];
                for (x, &l) in labels.iter().enumerate() {
                    weights[l] += g.weight(x);
                }
                if weights.iter().any(|&w| w < spec.lower || w >= spec.upper) {
                    return;
                }
                let mut cost = 0u64;
                let mut cut_edges = Vec::new();
                for e in g.edges() {
                    if labels[e.u] != labels[e.v] {
                        cost += e.cost;
                        cut_edges.push(e.id);
                    }
                }
                if cost >= spec.max_cost || !blocks_connected(&adj, labels, k) {
                    return;
                }
                plans.push(Plan {
                    assignment: g
                        .vertices()
                        .iter()
                        .zip(labels)
                        .map(|(v, &l)| (v.id, l + 1))
                        .collect(),
                    weights,
                    cost,
                    cut_edges,
                    seed: None,
                    rank_p: None,
                });
            });
            plans
        })
        .collect();

    let plans: Vec<Plan> = found.into_iter().flatten().collect();
    let mut histogram = BTreeMap::new();
    for p in &plans {
        let mut w = p.weights.clone();
        w.sort_unstable();
        *histogram.entry((w, p.cost)).or_insert(0) += 1;
    }
    Ok(OracleResult { plans, histogram })
}

/// Key of a brute-force cluster table entry:
/// `(pi_in, pi_out, active weights, sorted finished weights, cost)`.
pub type ClusterKey = (Vec<u8>, Vec<u8>, Vec<u64>, Vec<u64>, u64);

fn rgs_canonical(labels: &[usize]) -> Vec<u8> {
    let mut map: BTreeMap<usize, u8> = BTreeMap::new();
    labels
        .iter()
        .map(|&l| {
            let next = map.len() as u8;
            *map.entry(l).or_insert(next)
        })
        .collect()
}

fn all_rgs(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    fn rec(cur: &mut Vec<usize>, n: usize, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        let top = cur.iter().map(|&l| l + 1).max().unwrap_or(0);
        for l in 0..=top {
            cur.push(l);
            rec(cur, n, out);
            cur.pop();
        }
    }
    rec(&mut Vec::new(), n, &mut out);
    out
}

/// Brute-force table of the cluster with edge set `edges` (edge indices),
/// counting inside partitions for every configuration.
///
/// An inside partition splits the vertices touched by the cluster into
/// parts connected through cluster edges. Together with an outside
/// partition of the boundary it fixes the districts seen from the cluster;
/// it is counted when every cluster edge between different parts joins
/// different districts. Weights count vertex `x` only if `homes[x]` is a
/// cluster edge. `pi_out` ranges over every partition of the boundary.
pub fn cluster_table_oracle(
    g: &EmbeddedGraph,
    edges: &[usize],
    spec: &ProblemSpec,
    homes: &[Option<usize>],
) -> Result<BTreeMap<ClusterKey, BigUint>> {
    if edges.len() > CLUSTER_ORACLE_MAX_EDGES {
        return Err(Error::TooLarge {
            what: "cluster oracle",
            size: edges.len(),
            limit: CLUSTER_ORACLE_MAX_EDGES,
        });
    }
    let in_cluster: BTreeSet<usize> = edges.iter().copied().collect();
    let mut verts = BTreeSet::new();
    for &e in edges {
        verts.insert(g.edge(e).u);
        verts.insert(g.edge(e).v);
    }
    let verts: Vec<usize> = verts.into_iter().collect();
    let local = |x: usize| verts.binary_search(&x).unwrap();
    let theta: Vec<usize> = verts
        .iter()
        .copied()
        .filter(|&x| g.rotation(x).iter().any(|e| !in_cluster.contains(e)))
        .collect();
    let theta_local: Vec<usize> = theta.iter().map(|&x| local(x)).collect();
    let h: Vec<u64> = verts
        .iter()
        .map(|&x| match homes[x] {
            Some(e) if in_cluster.contains(&e) => g.weight(x),
            _ => 0,
        })
        .collect();
    let mut adj = vec![Vec::new(); verts.len()];
    for &e in edges {
        let (a, b) = (local(g.edge(e).u), local(g.edge(e).v));
        adj[a].push(b);
        adj[b].push(a);
    }
    let outs = all_rgs(theta.len());

    let mut table: BTreeMap<ClusterKey, BigUint> = BTreeMap::new();
    for rho in all_rgs(verts.len()) {
        let parts = rho.iter().max().map_or(0, |&m| m + 1);
        if !blocks_connected(&adj, &rho, parts) {
            continue;
        }
        let pi_in = rgs_canonical(&theta_local.iter().map(|&p| rho[p]).collect::<Vec<_>>());
        let cost: u64 = edges
            .iter()
            .filter(|&&e| rho[local(g.edge(e).u)] != rho[local(g.edge(e).v)])
            .map(|&e| g.edge(e).cost)
            .sum();
        if cost >= spec.max_cost {
            continue;
        }
        for out in &outs {
            // districts: parts of rho merged along the outside partition
            let mut district: Vec<usize> = (0..parts).collect();
            fn root(d: &mut [usize], mut x: usize) -> usize {
                while d[x] != x {
                    x = d[x];
                }
                x
            }
            for i in 0..theta.len() {
                for j in 0..i {
                    if out[i] == out[j] {
                        let a = root(&mut district, rho[theta_local[i]]);
                        let b = root(&mut district, rho[theta_local[j]]);
                        district[a.max(b)] = a.min(b);
                    }
                }
            }
            let dist_of = |d: &mut Vec<usize>, x: usize| root(d, rho[x]);
            let consistent = edges.iter().all(|&e| {
                let (a, b) = (local(g.edge(e).u), local(g.edge(e).v));
                rho[a] == rho[b] || dist_of(&mut district, a) != dist_of(&mut district, b)
            });
            if !consistent {
                continue;
            }
            let mut weight: BTreeMap<usize, u64> = BTreeMap::new();
            for x in 0..verts.len() {
                *weight.entry(dist_of(&mut district, x)).or_insert(0) += h[x];
            }
            let mut first_on_boundary: BTreeMap<usize, usize> = BTreeMap::new();
            for (i, &p) in theta_local.iter().enumerate() {
                first_on_boundary
                    .entry(dist_of(&mut district, p))
                    .or_insert(i);
            }
            let mut active: Vec<(usize, u64)> = Vec::new();
            let mut finished = Vec::new();
            for (&d, &w) in &weight {
                match first_on_boundary.get(&d) {
                    Some(&i) => active.push((i, w)),
                    None => finished.push(w),
                }
            }
            if active.iter().any(|&(_, w)| w >= spec.upper)
                || finished.iter().any(|&w| w < spec.lower || w >= spec.upper)
                || active.len() + finished.len() > spec.k
            {
                continue;
            }
            active.sort_unstable();
            finished.sort_unstable();
            let key = (
                pi_in.clone(),
                out.iter().map(|&l| l as u8).collect(),
                active.into_iter().map(|(_, w)| w).collect(),
                finished,
                cost,
            );
            *table.entry(key).or_default() += 1u32;
        }
    }
    Ok(table)
}

/// count(Ψ) for one configuration, by brute force.
pub fn cluster_count_oracle(
    g: &EmbeddedGraph,
    edges: &[usize],
    key: &ClusterKey,
    spec: &ProblemSpec,
    homes: &[Option<usize>],
) -> Result<BigUint> {
    Ok(cluster_table_oracle(g, edges, spec, homes)?
        .remove(key)
        .unwrap_or_default())
}
