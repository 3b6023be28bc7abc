use std::collections::BTreeMap;

use crate::decomp::Cluster;
use crate::graph::{EdgeId, EmbeddedGraph, VertexId};
use crate::ncp::{canonical_labels, enumerate_all};
use crate::problem::ProblemSpec;

use super::semiring::Semiring;
use super::table::{ClusterTable, TopoKey, WeightKey};

/// One designated incident edge per vertex; a vertex's weight is counted in
/// exactly the clusters holding its home edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomeAssignment {
    home: Vec<Option<usize>>,
}

/// Smallest incident edge id for every vertex.
pub fn assign_homes(g: &EmbeddedGraph) -> HomeAssignment {
    let home = (0..g.num_vertices())
        .map(|x| g.rotation(x).iter().copied().min())
        .collect();
    HomeAssignment { home }
}

impl HomeAssignment {
    pub fn home(&self, x: usize) -> Option<usize> {
        self.home[x]
    }

    /// Weight vertex `x` contributes at edge `e`.
    pub fn weight_at(&self, g: &EmbeddedGraph, x: usize, e: usize) -> u64 {
        if self.home[x] == Some(e) {
            g.weight(x)
        } else {
            0
        }
    }

    pub fn to_ids(&self, g: &EmbeddedGraph) -> BTreeMap<VertexId, EdgeId> {
        self.home
            .iter()
            .enumerate()
            .filter_map(|(x, h)| h.map(|e| (g.vertex(x).id, g.edge(e).id)))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeafEntry {
    pub topo: TopoKey,
    /// Always carries the cut cost, whatever the semiring.
    pub key: WeightKey,
    pub cut: bool,
}

/// Every configuration of a single-edge cluster. Leaving the edge uncut
/// keeps both endpoints together; cutting it needs the endpoints in
/// different districts, so a cut is only paired with a `pi_out` that keeps
/// them apart. Endpoints off the boundary (degree one) close their
/// district immediately.
pub fn leaf_entries(
    g: &EmbeddedGraph,
    cluster: &Cluster,
    spec: &ProblemSpec,
    homes: &HomeAssignment,
) -> Vec<LeafEntry> {
    let e = cluster.edges[0];
    let edge = g.edge(e);
    let ends = [edge.u, edge.v];
    let h = [homes.weight_at(g, edge.u, e), homes.weight_at(g, edge.v, e)];
    let theta = &cluster.boundary;
    let on_boundary = |x: usize| theta.binary_search(&x).ok();

    let mut out = Vec::new();
    for cut in [false, true] {
        let cost = if cut { edge.cost } else { 0 };
        if cost >= spec.max_cost {
            continue;
        }
        // component of each endpoint inside the leaf
        let comp = if cut { [0usize, 1] } else { [0, 0] };
        let mut in_labels = vec![0u8; theta.len()];
        for i in 0..2 {
            if let Some(p) = on_boundary(ends[i]) {
                in_labels[p] = comp[i] as u8;
            }
        }
        let pi_in = canonical_labels(&in_labels);
        for out_part in enumerate_all(theta) {
            let pi_out = out_part.labels();
            // global block of each endpoint: merge components joined outside
            let mut block = comp;
            if let (Some(pu), Some(pv)) = (on_boundary(ends[0]), on_boundary(ends[1])) {
                if pi_out[pu] == pi_out[pv] {
                    block = [0, 0];
                }
            }
            if cut && block[0] == block[1] {
                continue;
            }
            let mut weight = [0u64; 2];
            let mut touches = [false; 2];
            for i in 0..2 {
                weight[block[i]] += h[i];
                touches[block[i]] |= on_boundary(ends[i]).is_some();
            }
            let nblocks = if block[0] == block[1] { 1 } else { 2 };
            let mut active: Vec<(usize, u64)> = Vec::new();
            let mut finished = Vec::new();
            for b in 0..nblocks {
                if touches[b] {
                    let rep = (0..2)
                        .filter(|&i| block[i] == b)
                        .filter_map(|i| on_boundary(ends[i]))
                        .min()
                        .unwrap();
                    active.push((rep, weight[b]));
                } else {
                    finished.push(weight[b]);
                }
            }
            if active.iter().any(|&(_, w)| w >= spec.upper)
                || finished.iter().any(|&w| !spec.admits_weight(w))
                || active.len() + finished.len() > spec.k
            {
                continue;
            }
            active.sort_unstable();
            finished.sort_unstable();
            out.push(LeafEntry {
                topo: (pi_in.clone(), pi_out.to_vec()),
                key: WeightKey {
                    cost,
                    active: active.into_iter().map(|(_, w)| w).collect(),
                    finished,
                },
                cut,
            });
        }
    }
    out
}

pub fn leaf_table<S: Semiring>(
    g: &EmbeddedGraph,
    cluster: &Cluster,
    spec: &ProblemSpec,
    homes: &HomeAssignment,
) -> ClusterTable<S::Value> {
    let mut table = ClusterTable::new(cluster.id, cluster.boundary.clone());
    for entry in leaf_entries(g, cluster, spec, homes) {
        let value = S::unit(entry.key.cost);
        let mut key = entry.key;
        if !S::COST_IN_KEY {
            key.cost = 0;
        }
        table
            .entries
            .entry(entry.topo)
            .or_default()
            .insert(key, value);
    }
    table
}
