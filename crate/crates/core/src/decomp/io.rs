use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{boundary_of, certify_theta, validate, Cluster, SphereCutDecomposition};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, EmbeddedGraph, VertexId};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeRecord {
    pub id: u32,
    #[serde(default)]
    pub children: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edges: Option<Vec<EdgeId>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta: Option<Vec<VertexId>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionFile {
    pub nodes: Vec<NodeRecord>,
    pub root: u32,
}

impl DecompositionFile {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

pub fn export_decomposition(d: &SphereCutDecomposition, g: &EmbeddedGraph) -> DecompositionFile {
    let nodes = d
        .clusters
        .iter()
        .map(|c| NodeRecord {
            id: c.id as u32,
            children: c.children.map(|[a, b]| vec![a as u32, b as u32]),
            edges: c
                .is_leaf()
                .then(|| c.edges.iter().map(|&e| g.edge(e).id).collect()),
            theta: c
                .theta
                .as_ref()
                .map(|t| t.iter().map(|&x| g.vertex(x).id).collect()),
        })
        .collect();
    DecompositionFile {
        nodes,
        root: d.root as u32,
    }
}

/// Parses and validates a decomposition of `g`. Boundaries are recomputed
/// from the edge sets and cyclic orders are re-certified, so a `theta`
/// stored in the file is not trusted.
pub fn import_decomposition(
    file: &DecompositionFile,
    g: &EmbeddedGraph,
) -> Result<SphereCutDecomposition> {
    let bad = |msg: String| Error::Decomposition(msg);
    let mut index: BTreeMap<u32, usize> = BTreeMap::new();
    for (i, node) in file.nodes.iter().enumerate() {
        if index.insert(node.id, i).is_some() {
            return Err(bad(format!("duplicate node id {}", node.id)));
        }
    }
    let lookup = |id: u32| {
        index
            .get(&id)
            .copied()
            .ok_or_else(|| bad(format!("unknown node {id}")))
    };
    let root = lookup(file.root)?;

    let mut children = Vec::with_capacity(file.nodes.len());
    let mut leaf_edges = Vec::with_capacity(file.nodes.len());
    for node in &file.nodes {
        match (&node.children, &node.edges) {
            (Some(ch), _) => {
                if ch.len() != 2 {
                    return Err(bad(format!(
                        "node {} has {} children; nodes must be binary",
                        node.id,
                        ch.len()
                    )));
                }
                children.push(Some([lookup(ch[0])?, lookup(ch[1])?]));
                leaf_edges.push(Vec::new());
            }
            (None, Some(edges)) => {
                let mut idx = Vec::with_capacity(edges.len());
                for &eid in edges {
                    idx.push(g.edge_index(eid).ok_or_else(|| {
                        bad(format!("node {} lists unknown edge {eid}", node.id))
                    })?);
                }
                idx.sort_unstable();
                children.push(None);
                leaf_edges.push(idx);
            }
            (None, None) => {
                return Err(bad(format!("leaf node {} lists no edges", node.id)));
            }
        }
    }

    // edge sets bottom-up; reject cycles and shared subtrees
    let n = file.nodes.len();
    let mut edges: Vec<Option<Vec<usize>>> = vec![None; n];
    let mut state = vec![0u8; n];
    let mut stack = vec![(root, false)];
    while let Some((c, expanded)) = stack.pop() {
        if expanded {
            let set = match children[c] {
                None => leaf_edges[c].clone(),
                Some([a, b]) => {
                    let mut u: Vec<usize> = edges[a]
                        .iter()
                        .chain(&edges[b])
                        .flatten()
                        .copied()
                        .collect();
                    u.sort_unstable();
                    u
                }
            };
            edges[c] = Some(set);
            state[c] = 2;
            continue;
        }
        if state[c] != 0 {
            return Err(bad(format!("node {} is reached twice", file.nodes[c].id)));
        }
        state[c] = 1;
        stack.push((c, true));
        if let Some([a, b]) = children[c] {
            stack.push((b, false));
            stack.push((a, false));
        }
    }

    let clusters: Vec<Cluster> = (0..n)
        .map(|i| {
            let e = edges[i].clone().unwrap_or_default();
            Cluster {
                id: i,
                boundary: boundary_of(g, &e),
                edges: e,
                children: children[i],
                theta: None,
            }
        })
        .collect();
    let d = SphereCutDecomposition { clusters, root };
    let violations = validate(&d, g);
    if !violations.is_empty() {
        let text: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
        return Err(bad(text.join("; ")));
    }
    Ok(certify_theta(&d, g))
}
