use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EdgeId, EmbeddedGraph, VertexId};
use crate::problem::ProblemSpec;

/// A districting plan. Districts are numbered `1..=k` in order of their
/// smallest vertex id, so two plans with the same blocks compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Plan {
    pub assignment: BTreeMap<VertexId, usize>,
    pub weights: Vec<u64>,
    pub cost: u64,
    pub cut_edges: Vec<EdgeId>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank_p: Option<String>,
}

impl Plan {
    /// Builds a plan from arbitrary per-vertex labels (indexed by vertex
    /// index), renumbering districts canonically.
    pub fn from_labels(g: &EmbeddedGraph, labels: &[usize]) -> Plan {
        let mut rename: BTreeMap<usize, usize> = BTreeMap::new();
        let mut district = Vec::with_capacity(labels.len());
        for &l in labels {
            let next = rename.len() + 1;
            district.push(*rename.entry(l).or_insert(next));
        }
        let mut weights = vec![0; rename.len()];
        for (x, &d) in district.iter().enumerate() {
            weights[d - 1] += g.weight(x);
        }
        let mut cost = 0;
        let mut cut_edges = Vec::new();
        for e in g.edges() {
            if district[e.u] != district[e.v] {
                cost += e.cost;
                cut_edges.push(e.id);
            }
        }
        Plan {
            assignment: g
                .vertices()
                .iter()
                .zip(&district)
                .map(|(v, &d)| (v.id, d))
                .collect(),
            weights,
            cost,
            cut_edges,
            seed: None,
            rank_p: None,
        }
    }

    /// Districts are the components left after deleting the marked edges.
    pub fn from_cut_edges(g: &EmbeddedGraph, cut: &[bool]) -> Plan {
        let n = g.num_vertices();
        let mut label = vec![usize::MAX; n];
        for s in 0..n {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = s;
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                for &e in g.rotation(x) {
                    let y = g.edge(e).other(x);
                    if !cut[e] && label[y] == usize::MAX {
                        label[y] = s;
                        queue.push_back(y);
                    }
                }
            }
        }
        Plan::from_labels(g, &label)
    }

    pub fn num_districts(&self) -> usize {
        self.weights.len()
    }

    /// Vertex ids of each district, districts in index order.
    pub fn districts(&self) -> Vec<Vec<VertexId>> {
        let mut out = vec![Vec::new(); self.weights.len()];
        for (&v, &d) in &self.assignment {
            if d >= 1 && d <= out.len() {
                out[d - 1].push(v);
            }
        }
        out
    }

    /// Sorted district weights.
    pub fn weight_multiset(&self) -> Vec<u64> {
        let mut w = self.weights.clone();
        w.sort_unstable();
        w
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Plan> {
        Ok(serde_json::from_str(text)?)
    }
}

/// Recomputes everything about `plan` from scratch: coverage, district
/// numbering, connectivity, weights, the weight window, cut edges and cost.
pub fn validate_plan(g: &EmbeddedGraph, spec: &ProblemSpec, plan: &Plan) -> Result<()> {
    let bad = |msg: String| Err(Error::InvalidPlan(msg));
    let k = spec.k;
    if plan.weights.len() != k {
        return bad(format!(
            "{} district weights for k = {k}",
            plan.weights.len()
        ));
    }
    let ids: BTreeSet<VertexId> = g.vertices().iter().map(|v| v.id).collect();
    let assigned: BTreeSet<VertexId> = plan.assignment.keys().copied().collect();
    if ids != assigned {
        return bad("assignment does not cover exactly the vertex set".into());
    }
    let district: Vec<usize> = g
        .vertices()
        .iter()
        .map(|v| plan.assignment[&v.id])
        .collect();
    if let Some(&d) = district.iter().find(|&&d| d == 0 || d > k) {
        return bad(format!("district index {d} outside 1..={k}"));
    }

    let mut weights = vec![0u64; k];
    let mut seen = vec![false; k];
    for (x, &d) in district.iter().enumerate() {
        weights[d - 1] += g.weight(x);
    }
    for start in 0..g.num_vertices() {
        let d = district[start];
        if seen[d - 1] {
            continue;
        }
        seen[d - 1] = true;
        let mut reached = vec![false; g.num_vertices()];
        reached[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for &e in g.rotation(x) {
                let y = g.edge(e).other(x);
                if district[y] == d && !reached[y] {
                    reached[y] = true;
                    queue.push_back(y);
                }
            }
        }
        if (0..g.num_vertices()).any(|y| district[y] == d && !reached[y]) {
            return bad(format!("district {d} is not connected"));
        }
    }
    if let Some(d) = seen.iter().position(|s| !s) {
        return bad(format!("district {} is empty", d + 1));
    }
    if weights != plan.weights {
        return bad(format!(
            "weights {:?}, recomputed {:?}",
            plan.weights, weights
        ));
    }
    if let Some(w) = weights.iter().find(|&&w| !spec.admits_weight(w)) {
        return bad(format!(
            "district weight {w} outside [{}, {})",
            spec.lower, spec.upper
        ));
    }
    let mut cost = 0;
    let mut cut = Vec::new();
    for e in g.edges() {
        if district[e.u] != district[e.v] {
            cost += e.cost;
            cut.push(e.id);
        }
    }
    let mut listed = plan.cut_edges.clone();
    listed.sort_unstable();
    if listed != cut {
        return bad("cut edge list does not match the assignment".into());
    }
    if cost != plan.cost {
        return bad(format!("cost {}, recomputed {cost}", plan.cost));
    }
    if cost >= spec.max_cost {
        return bad(format!("cost {cost} not below bound {}", spec.max_cost));
    }
    Ok(())
}
