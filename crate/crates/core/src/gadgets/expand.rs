use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{EdgeRecord, EmbeddedGraph, VertexId, VertexRecord};

#[derive(Clone, Debug)]
pub struct Expanded {
    pub graph: EmbeddedGraph,
    /// Dummy vertex id -> id of the vertex it hangs from.
    pub origin: BTreeMap<VertexId, VertexId>,
}

/// Replaces each vertex of weight `w` by a unit-weight vertex with `w − 1`
/// unit-weight pendants. Pendants are inserted at the front of the
/// vertex's rotation, which keeps the embedding planar. Fails on weight 0
/// or when the total weight exceeds `max_vertices`.
pub fn expand_unit_weights(g: &EmbeddedGraph, max_vertices: usize) -> Result<Expanded> {
    if let Some(v) = g.vertices().iter().find(|v| v.weight == 0) {
        return Err(Error::InvalidSpec(format!(
            "vertex {} has weight 0 and cannot be expanded",
            v.id
        )));
    }
    let total = g.total_weight();
    if total > max_vertices as u64 {
        return Err(Error::TooLarge {
            what: "unit-weight expansion",
            size: total.min(usize::MAX as u64) as usize,
            limit: max_vertices,
        });
    }
    let mut raw = g.to_file();
    let mut next_vertex = raw.vertices.iter().map(|v| v.id).max().unwrap() + 1;
    let mut next_edge = raw.edges.iter().map(|e| e.id + 1).max().unwrap_or(0);
    let mut origin = BTreeMap::new();
    let originals: Vec<(VertexId, u64)> = raw.vertices.iter().map(|v| (v.id, v.weight)).collect();
    for (id, weight) in originals {
        let mut front = Vec::new();
        for _ in 1..weight {
            raw.vertices.push(VertexRecord {
                id: next_vertex,
                weight: 1,
            });
            raw.edges.push(EdgeRecord {
                id: next_edge,
                u: id,
                v: next_vertex,
                cost: 1,
            });
            raw.rotation.insert(next_vertex, vec![next_edge]);
            origin.insert(next_vertex, id);
            front.push(next_edge);
            next_vertex += 1;
            next_edge += 1;
        }
        let rot = raw.rotation.entry(id).or_default();
        front.append(rot);
        *rot = front;
    }
    for v in &mut raw.vertices {
        v.weight = 1;
    }
    Ok(Expanded {
        graph: EmbeddedGraph::from_file(&raw)?,
        origin,
    })
}
