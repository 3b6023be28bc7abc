use std::fmt;

use super::{boundary_of, SphereCutDecomposition};
use crate::graph::EmbeddedGraph;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ViolationKind {
    Structure,
    LeafSize,
    LeafBijection,
    DisjointUnion,
    BoundaryMismatch,
    ThetaMismatch,
}

impl ViolationKind {
    pub fn label(self) -> &'static str {
        match self {
            ViolationKind::Structure => "tree structure",
            ViolationKind::LeafSize => "leaf size",
            ViolationKind::LeafBijection => "leaf bijection",
            ViolationKind::DisjointUnion => "disjoint union",
            ViolationKind::BoundaryMismatch => "boundary mismatch",
            ViolationKind::ThetaMismatch => "theta mismatch",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub cluster: Option<usize>,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.cluster {
            Some(c) => write!(f, "{} (cluster {c}): {}", self.kind.label(), self.detail),
            None => write!(f, "{}: {}", self.kind.label(), self.detail),
        }
    }
}

/// Checks every structural invariant of `d` against `g` from scratch and
/// lists what fails. An empty list means the decomposition is valid.
pub fn validate(d: &SphereCutDecomposition, g: &EmbeddedGraph) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut push = |kind, cluster, detail: String| {
        out.push(Violation {
            kind,
            cluster,
            detail,
        })
    };
    let nc = d.clusters.len();
    if d.root >= nc {
        push(
            ViolationKind::Structure,
            None,
            format!("root {} does not exist", d.root),
        );
        return out;
    }
    for (i, c) in d.clusters.iter().enumerate() {
        if c.id != i {
            push(
                ViolationKind::Structure,
                Some(i),
                format!("stored id {}", c.id),
            );
        }
    }

    // every cluster reached exactly once from the root
    let mut reached = vec![0usize; nc];
    let mut stack = vec![d.root];
    let mut broken = false;
    while let Some(c) = stack.pop() {
        reached[c] += 1;
        if reached[c] > 1 {
            push(ViolationKind::Structure, Some(c), "reached twice".into());
            broken = true;
            continue;
        }
        if let Some(ch) = d.clusters[c].children {
            for x in ch {
                if x >= nc {
                    push(
                        ViolationKind::Structure,
                        Some(c),
                        format!("child {x} does not exist"),
                    );
                    broken = true;
                } else {
                    stack.push(x);
                }
            }
        }
    }
    for (c, &r) in reached.iter().enumerate() {
        if r == 0 {
            push(
                ViolationKind::Structure,
                Some(c),
                "unreachable from the root".into(),
            );
        }
    }
    if broken {
        return out;
    }

    let m = g.num_edges();
    let mut leaves_of_edge = vec![0usize; m];
    for c in &d.clusters {
        if c.edges.iter().any(|&e| e >= m) {
            push(
                ViolationKind::LeafBijection,
                Some(c.id),
                "edge index out of range".into(),
            );
            continue;
        }
        match c.children {
            None => {
                if c.edges.len() != 1 {
                    push(
                        ViolationKind::LeafSize,
                        Some(c.id),
                        format!("leaf holds {} edges", c.edges.len()),
                    );
                }
                for &e in &c.edges {
                    leaves_of_edge[e] += 1;
                }
            }
            Some([a, b]) => {
                let mut union: Vec<usize> = d.clusters[a]
                    .edges
                    .iter()
                    .chain(&d.clusters[b].edges)
                    .copied()
                    .collect();
                union.sort_unstable();
                let disjoint = union.windows(2).all(|w| w[0] != w[1]);
                if !disjoint || union != c.edges {
                    push(
                        ViolationKind::DisjointUnion,
                        Some(c.id),
                        "edge set is not the disjoint union of its children".into(),
                    );
                }
            }
        }
    }
    for (e, &count) in leaves_of_edge.iter().enumerate() {
        if count != 1 {
            push(
                ViolationKind::LeafBijection,
                None,
                format!("edge {} appears in {count} leaves", g.edge(e).id),
            );
        }
    }
    let root_edges = &d.clusters[d.root].edges;
    if root_edges.len() != m || root_edges.iter().enumerate().any(|(i, &e)| i != e) {
        push(
            ViolationKind::LeafBijection,
            Some(d.root),
            "root does not hold every edge".into(),
        );
    }

    for c in &d.clusters {
        if c.edges.iter().any(|&e| e >= m) {
            continue;
        }
        let expected = boundary_of(g, &c.edges);
        if expected != c.boundary {
            push(
                ViolationKind::BoundaryMismatch,
                Some(c.id),
                format!("stored {:?}, expected {:?}", c.boundary, expected),
            );
        }
        if let Some(theta) = &c.theta {
            let mut t = theta.clone();
            t.sort_unstable();
            if t != c.boundary {
                push(
                    ViolationKind::ThetaMismatch,
                    Some(c.id),
                    "theta is not an ordering of the boundary".into(),
                );
            }
        }
    }
    out
}
