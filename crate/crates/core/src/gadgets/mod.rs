//! Instance generators.

mod binpacking;
mod expand;

use std::collections::BTreeMap;

pub use binpacking::{
    binpacking_gadget, bins_to_plan, plan_to_bins, BinPackingInstance, GadgetInstance,
};
pub use expand::{expand_unit_weights, Expanded};

use crate::graph::{EdgeId, EdgeRecord, EmbeddedGraph, GraphFile, VertexId, VertexRecord};

/// A vertex with planar coordinates.
#[derive(Clone, Copy, Debug)]
pub struct Point {
    pub id: VertexId,
    pub weight: u64,
    pub x: f64,
    pub y: f64,
}

/// Graph file for a straight-line drawing. Each rotation lists incident
/// edges counter-clockwise by angle, which is a valid embedding whenever the
/// drawing has no crossings.
pub fn from_straight_line(points: &[Point], edges: &[EdgeRecord]) -> GraphFile {
    let pos: BTreeMap<VertexId, (f64, f64)> = points.iter().map(|p| (p.id, (p.x, p.y))).collect();
    let mut around: BTreeMap<VertexId, Vec<(f64, EdgeId)>> =
        points.iter().map(|p| (p.id, Vec::new())).collect();
    for e in edges {
        for (a, b) in [(e.u, e.v), (e.v, e.u)] {
            let (ax, ay) = pos[&a];
            let (bx, by) = pos[&b];
            around
                .get_mut(&a)
                .unwrap()
                .push(((by - ay).atan2(bx - ax), e.id));
        }
    }
    let rotation = around
        .into_iter()
        .map(|(v, mut list)| {
            list.sort_by(|p, q| p.0.total_cmp(&q.0).then(p.1.cmp(&q.1)));
            (v, list.into_iter().map(|(_, e)| e).collect())
        })
        .collect();
    GraphFile {
        vertices: points
            .iter()
            .map(|p| VertexRecord {
                id: p.id,
                weight: p.weight,
            })
            .collect(),
        edges: edges.to_vec(),
        rotation,
        meta: None,
    }
}

/// `r × c` grid with unit weights and costs.
pub fn grid(r: usize, c: usize) -> EmbeddedGraph {
    grid_with(r, c, |_, _| 1, |_| 1)
}

/// `r × c` grid; vertex `(i, j)` has id `i·c + j`. Horizontal edges are
/// numbered before vertical ones when `r <= c` and after them otherwise, so
/// the edge numbering runs along the long side.
pub fn grid_with(
    r: usize,
    c: usize,
    weight: impl Fn(usize, usize) -> u64,
    cost: impl Fn(EdgeId) -> u64,
) -> EmbeddedGraph {
    assert!(
        r >= 1 && c >= 1 && r * c >= 2,
        "grid needs at least two vertices"
    );
    let id = |i: usize, j: usize| (i * c + j) as VertexId;
    let points: Vec<Point> = (0..r)
        .flat_map(|i| (0..c).map(move |j| (i, j)))
        .map(|(i, j)| Point {
            id: id(i, j),
            weight: weight(i, j),
            x: j as f64,
            y: -(i as f64),
        })
        .collect();
    let mut horizontal = Vec::new();
    let mut vertical = Vec::new();
    for i in 0..r {
        for j in 0..c {
            if j + 1 < c {
                horizontal.push((id(i, j), id(i, j + 1)));
            }
            if i + 1 < r {
                vertical.push((id(i, j), id(i + 1, j)));
            }
        }
    }
    let pairs: Vec<(VertexId, VertexId)> = if r <= c {
        horizontal.into_iter().chain(vertical).collect()
    } else {
        vertical.into_iter().chain(horizontal).collect()
    };
    let edges: Vec<EdgeRecord> = pairs
        .into_iter()
        .enumerate()
        .map(|(n, (u, v))| EdgeRecord {
            id: n as EdgeId,
            u,
            v,
            cost: cost(n as EdgeId),
        })
        .collect();
    let raw = from_straight_line(&points, &edges);
    let mut g = EmbeddedGraph::from_file(&raw).expect("grid drawing is planar");
    g.set_meta(Some(
        serde_json::json!({ "generator": "grid", "rows": r, "cols": c }),
    ));
    g
}
