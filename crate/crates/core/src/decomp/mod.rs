//! Branch decompositions whose clusters carry boundary cyclic orders.
//!
//! Clusters refer to edges and vertices by internal index (see
//! [`EmbeddedGraph`]); the interchange format in [`io`] translates to ids.

mod io;
mod radial;
mod sweep;
mod theta;
mod validate;

use std::collections::BTreeMap;

pub use io::{export_decomposition, import_decomposition, DecompositionFile, NodeRecord};
pub use radial::{radial_bfs_decomposition, radial_bfs_decomposition_from_outer};
pub use sweep::{sweep_decomposition, sweep_order};
pub use theta::{boundary_corners, certify_theta};
pub use validate::{validate, Violation, ViolationKind};

use crate::error::{Error, Result};
use crate::graph::EmbeddedGraph;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cluster {
    pub id: usize,
    /// Edge indices, sorted.
    pub edges: Vec<usize>,
    pub children: Option<[usize; 2]>,
    /// Boundary vertex indices, sorted.
    pub boundary: Vec<usize>,
    /// Boundary vertices in cyclic order, when certified.
    pub theta: Option<Vec<usize>>,
}

impl Cluster {
    pub fn is_leaf(&self) -> bool {
        self.children.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SphereCutDecomposition {
    pub clusters: Vec<Cluster>,
    pub root: usize,
}

impl SphereCutDecomposition {
    pub fn width(&self) -> usize {
        self.clusters
            .iter()
            .map(|c| c.boundary.len())
            .max()
            .unwrap_or(0)
    }

    pub fn cluster(&self, id: usize) -> &Cluster {
        &self.clusters[id]
    }

    pub fn num_certified(&self) -> usize {
        self.clusters.iter().filter(|c| c.theta.is_some()).count()
    }

    /// Cluster ids with every child before its parent; the root comes last.
    pub fn post_order(&self) -> Vec<usize> {
        let mut order = Vec::with_capacity(self.clusters.len());
        let mut stack = vec![(self.root, false)];
        while let Some((c, expanded)) = stack.pop() {
            if expanded {
                order.push(c);
                continue;
            }
            stack.push((c, true));
            if let Some([a, b]) = self.clusters[c].children {
                stack.push((b, false));
                stack.push((a, false));
            }
        }
        order
    }

    /// Leaf cluster id for each edge index.
    pub fn leaf_of_edge(&self, num_edges: usize) -> Vec<usize> {
        let mut leaf = vec![usize::MAX; num_edges];
        for c in &self.clusters {
            if c.is_leaf() {
                for &e in &c.edges {
                    leaf[e] = c.id;
                }
            }
        }
        leaf
    }
}

/// Vertices with at least one incident edge in `edges` and one outside.
pub fn boundary_of(g: &EmbeddedGraph, edges: &[usize]) -> Vec<usize> {
    let mut inside: BTreeMap<usize, usize> = BTreeMap::new();
    for &e in edges {
        let edge = g.edge(e);
        *inside.entry(edge.u).or_default() += 1;
        *inside.entry(edge.v).or_default() += 1;
    }
    inside
        .into_iter()
        .filter(|&(x, cnt)| cnt < g.degree(x))
        .map(|(x, _)| x)
        .collect()
}

/// Assembles clusters bottom-up, computing edge sets and boundaries from the
/// children. `leaves[i]` is the edge of leaf `i`; `internal` lists
/// `(left, right)` pairs over earlier cluster ids, in creation order.
pub(crate) struct Assembler<'g> {
    g: &'g EmbeddedGraph,
    clusters: Vec<Cluster>,
    // inside-edge count of each boundary vertex, parallel to `boundary`
    counts: Vec<Vec<usize>>,
}

impl<'g> Assembler<'g> {
    pub(crate) fn new(g: &'g EmbeddedGraph) -> Self {
        Assembler {
            g,
            clusters: Vec::new(),
            counts: Vec::new(),
        }
    }

    pub(crate) fn leaf(&mut self, e: usize) -> usize {
        let edge = self.g.edge(e);
        let mut ends = vec![edge.u, edge.v];
        ends.sort_unstable();
        let mut boundary = Vec::new();
        let mut counts = Vec::new();
        for x in ends {
            if self.g.degree(x) > 1 {
                boundary.push(x);
                counts.push(1);
            }
        }
        self.push(vec![e], None, boundary, counts)
    }

    pub(crate) fn join(&mut self, a: usize, b: usize) -> usize {
        let (ca, cb) = (&self.clusters[a], &self.clusters[b]);
        let mut edges = Vec::with_capacity(ca.edges.len() + cb.edges.len());
        edges.extend_from_slice(&ca.edges);
        edges.extend_from_slice(&cb.edges);
        edges.sort_unstable();
        let mut merged: BTreeMap<usize, usize> = BTreeMap::new();
        for (c, counts) in [(ca, &self.counts[a]), (cb, &self.counts[b])] {
            for (&x, &n) in c.boundary.iter().zip(counts) {
                *merged.entry(x).or_default() += n;
            }
        }
        let mut boundary = Vec::new();
        let mut counts = Vec::new();
        for (x, n) in merged {
            if n < self.g.degree(x) {
                boundary.push(x);
                counts.push(n);
            }
        }
        self.push(edges, Some([a, b]), boundary, counts)
    }

    fn push(
        &mut self,
        edges: Vec<usize>,
        children: Option<[usize; 2]>,
        boundary: Vec<usize>,
        counts: Vec<usize>,
    ) -> usize {
        let id = self.clusters.len();
        self.clusters.push(Cluster {
            id,
            edges,
            children,
            boundary,
            theta: None,
        });
        self.counts.push(counts);
        id
    }

    pub(crate) fn finish(self, root: usize) -> SphereCutDecomposition {
        SphereCutDecomposition {
            clusters: self.clusters,
            root,
        }
    }
}

/// Left-deep tree over `order`: each prefix of the order is a cluster.
pub fn caterpillar(g: &EmbeddedGraph, order: &[usize]) -> Result<SphereCutDecomposition> {
    let Some((&first, rest)) = order.split_first() else {
        return Err(Error::Decomposition("graph has no edges".into()));
    };
    let mut asm = Assembler::new(g);
    let mut acc = asm.leaf(first);
    for &e in rest {
        let leaf = asm.leaf(e);
        acc = asm.join(acc, leaf);
    }
    let d = asm.finish(acc);
    Ok(certify_theta(&d, g))
}
