#![allow(dead_code)]

use std::collections::BTreeMap;

use num_bigint::BigUint;
use redistrict::gadgets::grid;
use redistrict::graph::{build_graph, EmbeddedGraph};
use redistrict::ProblemSpec;

/// Grids 2x2, 2x3, 3x3, 3x4 with k in {2, 3} and the tight window
/// [floor(n/k), ceil(n/k) + 1), unit costs, and S above the total cost.
pub fn family() -> Vec<(String, EmbeddedGraph, ProblemSpec)> {
    let mut out = Vec::new();
    for (r, c) in [(2, 2), (2, 3), (3, 3), (3, 4)] {
        for k in [2usize, 3] {
            let g = grid(r, c);
            let n = (r * c) as u64;
            let kk = k as u64;
            let spec = ProblemSpec::with_auto_cost(&g, k, n / kk, n.div_ceil(kk) + 1).unwrap();
            out.push((format!("{r}x{c} k={k}"), g, spec));
        }
    }
    out
}

pub fn to_big(h: &BTreeMap<(Vec<u64>, u64), u64>) -> BTreeMap<(Vec<u64>, u64), BigUint> {
    h.iter()
        .map(|(k, &v)| (k.clone(), BigUint::from(v)))
        .collect()
}

/// Home edge per vertex index: the smallest incident edge index.
pub fn smallest_incident_edge(g: &EmbeddedGraph) -> Vec<Option<usize>> {
    let mut home = vec![None; g.num_vertices()];
    for (e, edge) in g.edges().iter().enumerate() {
        for x in [edge.u, edge.v] {
            if home[x].is_none() {
                home[x] = Some(e);
            }
        }
    }
    home
}

/// `g` without the edges whose flag is false, or `None` if that
/// disconnects it. Deleting edges from a plane embedding keeps it plane.
pub fn edge_subgraph(g: &EmbeddedGraph, keep: &[bool]) -> Option<EmbeddedGraph> {
    let mut file = g.to_file();
    let dropped: Vec<u32> = g
        .edges()
        .iter()
        .enumerate()
        .filter(|&(e, _)| !keep[e])
        .map(|(_, edge)| edge.id)
        .collect();
    file.edges.retain(|e| !dropped.contains(&e.id));
    for rot in file.rotation.values_mut() {
        rot.retain(|e| !dropped.contains(e));
    }
    build_graph(&file).ok()
}
