use std::collections::VecDeque;

use super::{certify_theta, Assembler, SphereCutDecomposition};
use crate::error::{Error, Result};
use crate::graph::{edge_of, EmbeddedGraph};

/// Decomposition from a breadth-first tree of the radial graph rooted at
/// `root` (vertex nodes `0..n`, face nodes `n..n+F`).
///
/// Radial edges are the corners of the embedding. The corners left out of
/// the BFS tree form a spanning tree on the edges of the graph (two edges are
/// adjacent when a corner separates them); every subtree of it is enclosed by
/// the fundamental cycle of the corner above it, which has at most
/// `2·depth + 1` nodes. Rooting that tree at edge 0 and attaching subtrees one
/// at a time gives width at most twice the eccentricity of `root`.
pub fn radial_bfs_decomposition(g: &EmbeddedGraph, root: usize) -> Result<SphereCutDecomposition> {
    let n = g.num_vertices();
    let m = g.num_edges();
    if root >= n + g.num_faces() {
        return Err(Error::Decomposition(format!(
            "radial node {root} does not exist"
        )));
    }
    if m == 0 {
        return Err(Error::Decomposition("graph has no edges".into()));
    }
    let darts = g.num_darts();
    let mut at_node: Vec<Vec<usize>> = vec![Vec::new(); n + g.num_faces()];
    for d in 0..darts {
        at_node[g.tail(d)].push(d);
        at_node[n + g.corner_face(d)].push(d);
    }
    let far_end = |node: usize, d: usize| {
        if node < n {
            n + g.corner_face(d)
        } else {
            g.tail(d)
        }
    };

    let mut in_tree = vec![false; darts];
    let mut seen = vec![false; at_node.len()];
    seen[root] = true;
    let mut queue = VecDeque::from([root]);
    while let Some(x) = queue.pop_front() {
        for &d in &at_node[x] {
            let y = far_end(x, d);
            if !seen[y] {
                seen[y] = true;
                in_tree[d] = true;
                queue.push_back(y);
            }
        }
    }

    let mut dual_adj: Vec<Vec<usize>> = vec![Vec::new(); m];
    for d in (0..darts).filter(|&d| !in_tree[d]) {
        let (a, b) = (edge_of(d), edge_of(g.sigma(d)));
        debug_assert_ne!(
            a, b,
            "a corner at a degree-one vertex is always a tree corner"
        );
        dual_adj[a].push(b);
        dual_adj[b].push(a);
    }
    for adj in &mut dual_adj {
        adj.sort_unstable();
    }

    let mut parent = vec![usize::MAX; m];
    let mut bfs = vec![0];
    parent[0] = 0;
    let mut head = 0;
    while head < bfs.len() {
        let e = bfs[head];
        head += 1;
        for &f in &dual_adj[e] {
            if parent[f] == usize::MAX {
                parent[f] = e;
                bfs.push(f);
            }
        }
    }
    if bfs.len() != m {
        return Err(Error::Decomposition(
            "co-tree of the radial BFS tree does not span the edges".into(),
        ));
    }

    let mut children: Vec<Vec<usize>> = vec![Vec::new(); m];
    for &e in &bfs[1..] {
        children[parent[e]].push(e);
    }
    let mut asm = Assembler::new(g);
    let mut subtree = vec![usize::MAX; m];
    for &e in bfs.iter().rev() {
        let mut acc = asm.leaf(e);
        for &c in &children[e] {
            acc = asm.join(acc, subtree[c]);
        }
        subtree[e] = acc;
    }
    let d = asm.finish(subtree[0]);
    Ok(certify_theta(&d, g))
}

/// [`radial_bfs_decomposition`] rooted at the largest face.
pub fn radial_bfs_decomposition_from_outer(g: &EmbeddedGraph) -> Result<SphereCutDecomposition> {
    radial_bfs_decomposition(g, g.num_vertices() + g.largest_face())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomp::tests::cycle;
    use crate::decomp::validate;
    use crate::graph::radial_graph;

    #[test]
    fn cycles_have_width_two() {
        for n in 3..8 {
            let g = cycle(n);
            let d = radial_bfs_decomposition_from_outer(&g).unwrap();
            assert!(validate(&d, &g).is_empty());
            assert_eq!(d.width(), 2);
        }
    }

    #[test]
    fn width_within_twice_eccentricity_from_every_root() {
        let g = cycle(5);
        let r = radial_graph(&g);
        for root in 0..r.num_nodes() {
            let d = radial_bfs_decomposition(&g, root).unwrap();
            assert!(validate(&d, &g).is_empty());
            assert!(d.width() <= 2 * r.eccentricity(root));
        }
    }
}
