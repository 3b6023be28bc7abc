use std::collections::BTreeMap;

use super::SphereCutDecomposition;
use crate::graph::{edge_of, EmbeddedGraph};

/// Corners separating the cluster from its complement. Corner `d` sits at
/// `tail(d)` between dart `d` and `sigma(d)`, inside face `corner_face(d)`;
/// it lies on the cluster's boundary when exactly one of the two edges is in
/// the cluster.
pub fn boundary_corners(g: &EmbeddedGraph, in_cluster: &[bool]) -> Vec<usize> {
    (0..g.num_darts())
        .filter(|&d| in_cluster[edge_of(d)] != in_cluster[edge_of(g.sigma(d))])
        .collect()
}

/// Orders the boundary vertices of a cluster along its separating curve.
///
/// The boundary corners are edges of the radial graph. When they form one
/// simple cycle, the vertex nodes met along it are the cyclic order. Small
/// boundaries (at most three vertices) admit every partition as noncrossing,
/// so they are certified by id order when no cycle is found.
fn cyclic_boundary(g: &EmbeddedGraph, edges: &[usize], boundary: &[usize]) -> Option<Vec<usize>> {
    if boundary.is_empty() {
        return Some(Vec::new());
    }
    let mut in_cluster = vec![false; g.num_edges()];
    for &e in edges {
        in_cluster[e] = true;
    }
    let corners = boundary_corners(g, &in_cluster);
    let n = g.num_vertices();
    // radial node: vertex x -> x, face f -> n + f
    let mut incident: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &d in &corners {
        incident.entry(g.tail(d)).or_default().push(d);
        incident.entry(n + g.corner_face(d)).or_default().push(d);
    }
    let simple = incident.values().all(|cs| cs.len() == 2);
    let order = simple
        .then(|| walk_cycle(g, &incident, boundary[0]))
        .flatten();
    match order {
        Some(cycle) if cycle.len() == corners.len() / 2 && sorted(&cycle) == boundary => {
            Some(cycle)
        }
        _ if boundary.len() <= 3 => Some(boundary.to_vec()),
        _ => None,
    }
}

fn sorted(xs: &[usize]) -> Vec<usize> {
    let mut v = xs.to_vec();
    v.sort_unstable();
    v
}

// Walks the degree-2 corner graph from vertex node `start`, returning the
// vertex nodes in order, or None if the walk does not close up at `start`.
fn walk_cycle(
    g: &EmbeddedGraph,
    incident: &BTreeMap<usize, Vec<usize>>,
    start: usize,
) -> Option<Vec<usize>> {
    let n = g.num_vertices();
    let other = |node: usize, d: usize| {
        if node < n {
            n + g.corner_face(d)
        } else {
            g.tail(d)
        }
    };
    let mut cycle = vec![start];
    let first = *incident.get(&start)?.iter().min()?;
    let mut corner = first;
    let mut node = other(start, corner);
    loop {
        let cs = incident.get(&node)?;
        let next = if cs[0] == corner { cs[1] } else { cs[0] };
        let after = other(node, next);
        if node < n {
            cycle.push(node);
        }
        corner = next;
        node = after;
        if node == start {
            return (corner != first || cycle.len() == 1).then_some(cycle);
        }
        if cycle.len() > incident.len() {
            return None;
        }
    }
}

/// Returns a copy of `d` with `theta` set on every cluster whose boundary
/// could be ordered; edge sets, children and boundaries are untouched.
pub fn certify_theta(d: &SphereCutDecomposition, g: &EmbeddedGraph) -> SphereCutDecomposition {
    let mut out = d.clone();
    for c in &mut out.clusters {
        c.theta = cyclic_boundary(g, &c.edges, &c.boundary);
    }
    out
}
