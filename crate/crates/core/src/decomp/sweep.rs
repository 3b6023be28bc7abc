use std::collections::BTreeSet;

use super::{caterpillar, SphereCutDecomposition};
use crate::error::Result;
use crate::graph::{edge_of, EmbeddedGraph};

/// Caterpillar decomposition over [`sweep_order`].
pub fn sweep_decomposition(g: &EmbeddedGraph) -> Result<SphereCutDecomposition> {
    caterpillar(g, &sweep_order(g))
}

struct Frontier<'g> {
    g: &'g EmbeddedGraph,
    inside: Vec<usize>,
    emitted: Vec<bool>,
    order: Vec<usize>,
}

impl Frontier<'_> {
    fn is_boundary(&self, x: usize, count: usize) -> bool {
        count > 0 && count < self.g.degree(x)
    }

    /// Change in boundary size if `e` were added.
    fn delta(&self, e: usize) -> i64 {
        let edge = self.g.edge(e);
        let mut d = 0;
        for x in [edge.u, edge.v] {
            let c = self.inside[x];
            d += self.is_boundary(x, c + 1) as i64 - self.is_boundary(x, c) as i64;
        }
        d
    }

    fn emit(&mut self, e: usize) {
        let edge = self.g.edge(e);
        self.inside[edge.u] += 1;
        self.inside[edge.v] += 1;
        self.emitted[e] = true;
        self.order.push(e);
    }

    /// Emits `candidates` one at a time, always the one that keeps the
    /// boundary smallest (ties to the smallest index).
    fn emit_greedily(&mut self, mut candidates: BTreeSet<usize>) {
        candidates.retain(|&e| !self.emitted[e]);
        while !candidates.is_empty() {
            let best = *candidates
                .iter()
                .min_by_key(|&&e| (self.delta(e), e))
                .unwrap();
            candidates.remove(&best);
            self.emit(best);
        }
    }

    /// Emits edges from `pool` that touch the current region until none do.
    fn attach_touching(&mut self, pool: &BTreeSet<usize>) {
        loop {
            let best = pool
                .iter()
                .filter(|&&e| !self.emitted[e])
                .filter(|&&e| {
                    let edge = self.g.edge(e);
                    self.inside[edge.u] > 0 || self.inside[edge.v] > 0
                })
                .min_by_key(|&&e| (self.delta(e), e));
            match best {
                Some(&e) => self.emit(e),
                None => break,
            }
        }
    }

    fn touches_region(&self, walk: &[usize]) -> bool {
        walk.iter().any(|&d| self.inside[self.g.tail(d)] > 0)
    }
}

/// Edge order from a depth-first traversal of the dual graph that skips the
/// largest face, emitting each face's edges when the face is first entered.
/// Every prefix stays face-connected; ties go to the smallest edge index.
pub fn sweep_order(g: &EmbeddedGraph) -> Vec<usize> {
    let m = g.num_edges();
    let nf = g.num_faces();
    let outer = g.largest_face();
    let mut st = Frontier {
        g,
        inside: vec![0; g.num_vertices()],
        emitted: vec![false; m],
        order: Vec::with_capacity(m),
    };
    let face_edges: Vec<BTreeSet<usize>> = g
        .faces()
        .iter()
        .map(|walk| walk.iter().map(|&d| edge_of(d)).collect())
        .collect();
    let mut visited = vec![false; nf];
    visited[outer] = true;
    let mut remaining = nf - 1;

    let start = if m == 0 {
        None
    } else {
        let (a, b) = g.dual_edge(0);
        [a, b].into_iter().find(|&f| f != outer)
    };
    // Edges seen only by the outer face (bridges and the like).
    let outer_only: BTreeSet<usize> = (0..m)
        .filter(|&e| g.dual_edge(e) == (outer, outer))
        .collect();
    let mut next_start = start;
    while remaining > 0 {
        if next_start.is_none() {
            st.attach_touching(&outer_only);
        }
        let root = match next_start.take() {
            Some(f) => f,
            None => (0..nf)
                .filter(|&f| !visited[f])
                .find(|&f| st.touches_region(&g.faces()[f]))
                .or_else(|| (0..nf).find(|&f| !visited[f]))
                .unwrap(),
        };
        visited[root] = true;
        remaining -= 1;
        st.emit_greedily(face_edges[root].clone());
        let mut stack = vec![root];
        while let Some(&f) = stack.last() {
            let step = face_edges[f].iter().find_map(|&e| {
                let (a, b) = g.dual_edge(e);
                let other = if a == f { b } else { a };
                (!visited[other]).then_some(other)
            });
            match step {
                Some(h) => {
                    visited[h] = true;
                    remaining -= 1;
                    st.emit_greedily(face_edges[h].clone());
                    stack.push(h);
                }
                None => {
                    stack.pop();
                }
            }
        }
    }
    let leftover: BTreeSet<usize> = (0..m).filter(|&e| !st.emitted[e]).collect();
    st.emit_greedily(leftover);
    st.order
}
