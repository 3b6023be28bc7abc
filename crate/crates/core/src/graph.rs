//! Planar embedded graphs given by a rotation system.
//!
//! Vertices and edges are stored sorted by their external ids, so internal
//! indices preserve id order: "smallest id" and "smallest index" coincide.
//!
//! Every edge `e = (u, v)` owns two darts: `2e` runs `u -> v` and `2e + 1`
//! runs `v -> u`. The rotation successor `sigma(d)` is the next dart leaving
//! `tail(d)` in cyclic order, and faces are the orbits of
//! `d -> sigma(rev(d))`.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type VertexId = u32;
pub type EdgeId = u32;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexRecord {
    pub id: VertexId,
    pub weight: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeRecord {
    pub id: EdgeId,
    pub u: VertexId,
    pub v: VertexId,
    pub cost: u64,
}

/// On-disk graph interchange document.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GraphFile {
    pub vertices: Vec<VertexRecord>,
    pub edges: Vec<EdgeRecord>,
    pub rotation: BTreeMap<VertexId, Vec<EdgeId>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub meta: Option<serde_json::Value>,
}

impl GraphFile {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub id: VertexId,
    pub weight: u64,
}

/// An edge with endpoints given as internal vertex indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub id: EdgeId,
    pub u: usize,
    pub v: usize,
    pub cost: u64,
}

impl Edge {
    pub fn other(&self, x: usize) -> usize {
        if x == self.u {
            self.v
        } else {
            self.u
        }
    }
}

#[derive(Clone, Debug)]
pub struct EmbeddedGraph {
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    rotation: Vec<Vec<usize>>,
    sigma: Vec<usize>,
    sigma_inv: Vec<usize>,
    face_of_dart: Vec<usize>,
    faces: Vec<Vec<usize>>,
    meta: Option<serde_json::Value>,
}

#[inline]
pub fn rev(dart: usize) -> usize {
    dart ^ 1
}

#[inline]
pub fn edge_of(dart: usize) -> usize {
    dart >> 1
}

/// Validates a raw description and derives the face structure.
pub fn build_graph(raw: &GraphFile) -> Result<EmbeddedGraph> {
    EmbeddedGraph::from_file(raw)
}

impl EmbeddedGraph {
    pub fn from_file(raw: &GraphFile) -> Result<Self> {
        if raw.vertices.is_empty() {
            return Err(Error::Empty);
        }
        let mut vertices: Vec<Vertex> = raw
            .vertices
            .iter()
            .map(|r| Vertex {
                id: r.id,
                weight: r.weight,
            })
            .collect();
        vertices.sort_by_key(|v| v.id);
        for w in vertices.windows(2) {
            if w[0].id == w[1].id {
                return Err(Error::DuplicateVertex(w[0].id));
            }
        }
        let index_of = |id: VertexId| vertices.binary_search_by_key(&id, |v| v.id).ok();

        let mut records: Vec<&EdgeRecord> = raw.edges.iter().collect();
        records.sort_by_key(|e| e.id);
        for w in records.windows(2) {
            if w[0].id == w[1].id {
                return Err(Error::DuplicateEdge(w[0].id));
            }
        }
        let mut edges = Vec::with_capacity(records.len());
        for r in &records {
            let u = index_of(r.u).ok_or(Error::UnknownEndpoint {
                edge: r.id,
                vertex: r.u,
            })?;
            let v = index_of(r.v).ok_or(Error::UnknownEndpoint {
                edge: r.id,
                vertex: r.v,
            })?;
            if u == v {
                return Err(Error::SelfLoop(r.id));
            }
            edges.push(Edge {
                id: r.id,
                u,
                v,
                cost: r.cost,
            });
        }
        let edge_index = |id: EdgeId| edges.binary_search_by_key(&id, |e| e.id).ok();

        let mut incident: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); vertices.len()];
        for (i, e) in edges.iter().enumerate() {
            incident[e.u].insert(i);
            incident[e.v].insert(i);
        }
        for id in raw.rotation.keys() {
            if index_of(*id).is_none() {
                return Err(Error::Rotation {
                    vertex: *id,
                    reason: "unknown vertex".into(),
                });
            }
        }
        let mut rotation = vec![Vec::new(); vertices.len()];
        for (x, vertex) in vertices.iter().enumerate() {
            let listed = raw
                .rotation
                .get(&vertex.id)
                .map(Vec::as_slice)
                .unwrap_or(&[]);
            let mut seen = BTreeSet::new();
            for eid in listed {
                let e = edge_index(*eid).ok_or_else(|| Error::Rotation {
                    vertex: vertex.id,
                    reason: format!("unknown edge {eid}"),
                })?;
                if !incident[x].contains(&e) {
                    return Err(Error::Rotation {
                        vertex: vertex.id,
                        reason: format!("edge {eid} is not incident"),
                    });
                }
                if !seen.insert(e) {
                    return Err(Error::Rotation {
                        vertex: vertex.id,
                        reason: format!("edge {eid} listed twice"),
                    });
                }
                rotation[x].push(e);
            }
            if seen.len() != incident[x].len() {
                return Err(Error::Rotation {
                    vertex: vertex.id,
                    reason: "rotation omits incident edges".into(),
                });
            }
        }

        let mut g = EmbeddedGraph {
            vertices,
            edges,
            rotation,
            sigma: Vec::new(),
            sigma_inv: Vec::new(),
            face_of_dart: Vec::new(),
            faces: Vec::new(),
            meta: raw.meta.clone(),
        };
        if !g.is_connected() {
            return Err(Error::Disconnected);
        }
        g.trace_faces();
        let euler = g.num_vertices() as i64 - g.num_edges() as i64 + g.num_faces() as i64;
        if euler != 2 {
            return Err(Error::NonPlanar { euler });
        }
        Ok(g)
    }

    pub fn to_file(&self) -> GraphFile {
        GraphFile {
            vertices: self
                .vertices
                .iter()
                .map(|v| VertexRecord {
                    id: v.id,
                    weight: v.weight,
                })
                .collect(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeRecord {
                    id: e.id,
                    u: self.vertices[e.u].id,
                    v: self.vertices[e.v].id,
                    cost: e.cost,
                })
                .collect(),
            rotation: self
                .rotation
                .iter()
                .enumerate()
                .map(|(x, rot)| {
                    (
                        self.vertices[x].id,
                        rot.iter().map(|&e| self.edges[e].id).collect(),
                    )
                })
                .collect(),
            meta: self.meta.clone(),
        }
    }

    fn is_connected(&self) -> bool {
        let n = self.vertices.len();
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut count = 1;
        while let Some(x) = queue.pop_front() {
            for &e in &self.rotation[x] {
                let y = self.edges[e].other(x);
                if !seen[y] {
                    seen[y] = true;
                    count += 1;
                    queue.push_back(y);
                }
            }
        }
        count == n
    }

    fn trace_faces(&mut self) {
        let darts = 2 * self.edges.len();
        self.sigma = vec![0; darts];
        self.sigma_inv = vec![0; darts];
        for (x, rot) in self.rotation.iter().enumerate() {
            let deg = rot.len();
            for (p, &e) in rot.iter().enumerate() {
                let d = self.dart_from(e, x);
                let next = self.dart_from(rot[(p + 1) % deg], x);
                self.sigma[d] = next;
                self.sigma_inv[next] = d;
            }
        }
        self.face_of_dart = vec![usize::MAX; darts];
        self.faces.clear();
        for start in 0..darts {
            if self.face_of_dart[start] != usize::MAX {
                continue;
            }
            let f = self.faces.len();
            let mut walk = Vec::new();
            let mut d = start;
            loop {
                self.face_of_dart[d] = f;
                walk.push(d);
                d = self.sigma[rev(d)];
                if d == start {
                    break;
                }
            }
            self.faces.push(walk);
        }
        if self.edges.is_empty() {
            // A lone vertex sits on a single face.
            self.faces.push(Vec::new());
        }
    }

    /// The dart of edge `e` leaving vertex `x`.
    #[inline]
    pub fn dart_from(&self, e: usize, x: usize) -> usize {
        if self.edges[e].u == x {
            2 * e
        } else {
            2 * e + 1
        }
    }

    #[inline]
    pub fn tail(&self, dart: usize) -> usize {
        let e = &self.edges[edge_of(dart)];
        if dart & 1 == 0 {
            e.u
        } else {
            e.v
        }
    }

    #[inline]
    pub fn head(&self, dart: usize) -> usize {
        self.tail(rev(dart))
    }

    #[inline]
    pub fn sigma(&self, dart: usize) -> usize {
        self.sigma[dart]
    }

    #[inline]
    pub fn sigma_inv(&self, dart: usize) -> usize {
        self.sigma_inv[dart]
    }

    #[inline]
    pub fn face_of_dart(&self, dart: usize) -> usize {
        self.face_of_dart[dart]
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn num_faces(&self) -> usize {
        self.faces.len()
    }

    pub fn num_darts(&self) -> usize {
        2 * self.edges.len()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex(&self, x: usize) -> &Vertex {
        &self.vertices[x]
    }

    pub fn edge(&self, e: usize) -> &Edge {
        &self.edges[e]
    }

    pub fn meta(&self) -> Option<&serde_json::Value> {
        self.meta.as_ref()
    }

    pub fn set_meta(&mut self, meta: Option<serde_json::Value>) {
        self.meta = meta;
    }

    pub fn vertex_index(&self, id: VertexId) -> Option<usize> {
        self.vertices.binary_search_by_key(&id, |v| v.id).ok()
    }

    pub fn edge_index(&self, id: EdgeId) -> Option<usize> {
        self.edges.binary_search_by_key(&id, |e| e.id).ok()
    }

    /// Incident edges of `x` in rotation order.
    pub fn rotation(&self, x: usize) -> &[usize] {
        &self.rotation[x]
    }

    pub fn degree(&self, x: usize) -> usize {
        self.rotation[x].len()
    }

    pub fn weight(&self, x: usize) -> u64 {
        self.vertices[x].weight
    }

    pub fn total_weight(&self) -> u64 {
        self.vertices.iter().map(|v| v.weight).sum()
    }

    pub fn total_cost(&self) -> u64 {
        self.edges.iter().map(|e| e.cost).sum()
    }

    /// Face boundary walks as dart sequences.
    pub fn faces(&self) -> &[Vec<usize>] {
        &self.faces
    }

    /// Vertices met along the boundary walk of face `f`, with repetition.
    pub fn face_vertices(&self, f: usize) -> Vec<usize> {
        self.faces[f].iter().map(|&d| self.tail(d)).collect()
    }

    /// The two faces on either side of edge `e`.
    pub fn dual_edge(&self, e: usize) -> (usize, usize) {
        (self.face_of_dart[2 * e], self.face_of_dart[2 * e + 1])
    }

    /// The corner following dart `d` around its tail lies in this face.
    #[inline]
    pub fn corner_face(&self, d: usize) -> usize {
        self.face_of_dart[rev(d)]
    }

    /// Index of the face with the longest boundary walk (lowest index on ties).
    pub fn largest_face(&self) -> usize {
        let mut best = 0;
        for (f, walk) in self.faces.iter().enumerate() {
            if walk.len() > self.faces[best].len() {
                best = f;
            }
        }
        best
    }

    /// Builds the dual rotation system: dart `d` leaves face `face_of_dart(d)`
    /// and the successor of `d` around its face is the next dart of the walk.
    /// Returns `(tail, sigma)` arrays over the same dart indices.
    pub fn dual_rotation(&self) -> (Vec<usize>, Vec<usize>) {
        let tail = self.face_of_dart.clone();
        let sigma = (0..self.num_darts()).map(|d| self.sigma[rev(d)]).collect();
        (tail, sigma)
    }

    pub fn with_weights(&self, weights: impl Fn(usize, u64) -> u64) -> EmbeddedGraph {
        let mut g = self.clone();
        for (x, v) in g.vertices.iter_mut().enumerate() {
            v.weight = weights(x, v.weight);
        }
        g
    }
}

/// Orbits of `d -> sigma(rev(d))` for an arbitrary rotation system on darts
/// `0..sigma.len()` with `rev(d) = d ^ 1`.
pub fn trace_rotation_faces(sigma: &[usize]) -> Vec<Vec<usize>> {
    let mut face = vec![usize::MAX; sigma.len()];
    let mut faces = Vec::new();
    for start in 0..sigma.len() {
        if face[start] != usize::MAX {
            continue;
        }
        let mut walk = Vec::new();
        let mut d = start;
        loop {
            face[d] = faces.len();
            walk.push(d);
            d = sigma[rev(d)];
            if d == start {
                break;
            }
        }
        faces.push(walk);
    }
    faces
}

/// Vertex/face incidence graph. Nodes `0..num_vertices` are vertex-nodes and
/// `num_vertices..num_vertices + num_faces` are face-nodes.
#[derive(Clone, Debug)]
pub struct RadialGraph {
    pub num_vertices: usize,
    pub num_faces: usize,
    pub edges: Vec<(usize, usize)>,
    pub adjacency: Vec<Vec<usize>>,
}

impl RadialGraph {
    pub fn num_nodes(&self) -> usize {
        self.num_vertices + self.num_faces
    }

    pub fn face_node(&self, f: usize) -> usize {
        self.num_vertices + f
    }

    pub fn is_face_node(&self, node: usize) -> bool {
        node >= self.num_vertices
    }

    pub fn bfs(&self, root: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.num_nodes()];
        dist[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(x) = queue.pop_front() {
            for &y in &self.adjacency[x] {
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        dist
    }

    pub fn eccentricity(&self, root: usize) -> usize {
        self.bfs(root).into_iter().max().unwrap_or(0)
    }
}

pub fn radial_graph(g: &EmbeddedGraph) -> RadialGraph {
    let n = g.num_vertices();
    let mut pairs = BTreeSet::new();
    for (f, walk) in g.faces().iter().enumerate() {
        for &d in walk {
            pairs.insert((g.tail(d), n + f));
        }
    }
    if g.num_edges() == 0 {
        pairs.insert((0, n));
    }
    let mut adjacency = vec![Vec::new(); n + g.num_faces()];
    for &(a, b) in &pairs {
        adjacency[a].push(b);
        adjacency[b].push(a);
    }
    RadialGraph {
        num_vertices: n,
        num_faces: g.num_faces(),
        edges: pairs.into_iter().collect(),
        adjacency,
    }
}

/// Result of contracting degree-one vertices.
#[derive(Clone, Debug)]
pub struct Preprocessed {
    pub graph: EmbeddedGraph,
    /// Original vertex id -> id of the surviving vertex it was merged into.
    pub representative: BTreeMap<VertexId, VertexId>,
    /// Edges removed by contraction; they are never cut.
    pub forced_uncut: Vec<EdgeId>,
}

impl Preprocessed {
    pub fn identity(g: &EmbeddedGraph) -> Self {
        Preprocessed {
            graph: g.clone(),
            representative: g.vertices().iter().map(|v| (v.id, v.id)).collect(),
            forced_uncut: Vec::new(),
        }
    }
}

/// Repeatedly merges every degree-one vertex into its neighbour.
///
/// Fails with [`Error::TrivialInstance`] when the whole graph collapses into
/// one vertex.
pub fn preprocess(g: &EmbeddedGraph) -> Result<Preprocessed> {
    let p = contract_pendants(g, u64::MAX);
    if p.graph.num_vertices() == 1 {
        return Err(Error::TrivialInstance {
            weight: p.graph.total_weight(),
        });
    }
    Ok(p)
}

/// Like [`preprocess`], but only merges a pendant vertex whose accumulated
/// weight is below `weight_bound`. With `weight_bound = L` such a vertex can
/// never be a district on its own, so merging keeps the solution set intact.
pub fn contract_pendants(g: &EmbeddedGraph, weight_bound: u64) -> Preprocessed {
    let n = g.num_vertices();
    let mut weight: Vec<u64> = g.vertices().iter().map(|v| v.weight).collect();
    let mut rotation: Vec<Vec<usize>> = (0..n).map(|x| g.rotation(x).to_vec()).collect();
    let mut merged_into: Vec<Option<usize>> = vec![None; n];
    let mut forced = Vec::new();
    let mut alive = n;
    let mut queue: VecDeque<usize> = (0..n).filter(|&x| rotation[x].len() == 1).collect();
    while let Some(x) = queue.pop_front() {
        if alive <= 1 || merged_into[x].is_some() || rotation[x].len() != 1 {
            continue;
        }
        if weight[x] >= weight_bound {
            continue;
        }
        let e = rotation[x][0];
        let y = g.edge(e).other(x);
        weight[y] += weight[x];
        weight[x] = 0;
        rotation[x].clear();
        rotation[y].retain(|&f| f != e);
        merged_into[x] = Some(y);
        forced.push(g.edge(e).id);
        alive -= 1;
        if rotation[y].len() == 1 {
            queue.push_back(y);
        }
    }
    let find = |mut x: usize| {
        while let Some(y) = merged_into[x] {
            x = y;
        }
        x
    };
    let removed: BTreeSet<EdgeId> = forced.iter().copied().collect();
    let raw = GraphFile {
        vertices: (0..n)
            .filter(|&x| merged_into[x].is_none())
            .map(|x| VertexRecord {
                id: g.vertex(x).id,
                weight: weight[x],
            })
            .collect(),
        edges: g
            .edges()
            .iter()
            .filter(|e| !removed.contains(&e.id))
            .map(|e| EdgeRecord {
                id: e.id,
                u: g.vertex(e.u).id,
                v: g.vertex(e.v).id,
                cost: e.cost,
            })
            .collect(),
        rotation: (0..n)
            .filter(|&x| merged_into[x].is_none())
            .map(|x| {
                (
                    g.vertex(x).id,
                    rotation[x].iter().map(|&e| g.edge(e).id).collect(),
                )
            })
            .collect(),
        meta: g.meta().cloned(),
    };
    let graph = EmbeddedGraph::from_file(&raw)
        .expect("removing pendant edges keeps a connected planar embedding");
    Preprocessed {
        graph,
        representative: (0..n)
            .map(|x| (g.vertex(x).id, g.vertex(find(x)).id))
            .collect(),
        forced_uncut: forced,
    }
}

/// Replaces every weight `p` by `ceil(p / divisor)`.
pub fn coarsen_weights(g: &EmbeddedGraph, divisor: u64) -> EmbeddedGraph {
    assert!(divisor >= 1, "divisor must be positive");
    g.with_weights(|_, p| p.div_ceil(divisor))
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn triangle() -> GraphFile {
        GraphFile {
            vertices: (0..3).map(|id| VertexRecord { id, weight: 1 }).collect(),
            edges: vec![
                EdgeRecord {
                    id: 0,
                    u: 0,
                    v: 1,
                    cost: 1,
                },
                EdgeRecord {
                    id: 1,
                    u: 1,
                    v: 2,
                    cost: 1,
                },
                EdgeRecord {
                    id: 2,
                    u: 0,
                    v: 2,
                    cost: 1,
                },
            ],
            rotation: BTreeMap::from([(0, vec![0, 2]), (1, vec![0, 1]), (2, vec![1, 2])]),
            meta: None,
        }
    }

    fn square() -> GraphFile {
        // 0 - 1
        // |   |
        // 2 - 3
        GraphFile {
            vertices: (0..4).map(|id| VertexRecord { id, weight: 1 }).collect(),
            edges: vec![
                EdgeRecord {
                    id: 0,
                    u: 0,
                    v: 1,
                    cost: 1,
                },
                EdgeRecord {
                    id: 1,
                    u: 2,
                    v: 3,
                    cost: 1,
                },
                EdgeRecord {
                    id: 2,
                    u: 0,
                    v: 2,
                    cost: 1,
                },
                EdgeRecord {
                    id: 3,
                    u: 1,
                    v: 3,
                    cost: 1,
                },
            ],
            rotation: BTreeMap::from([
                (0, vec![0, 2]),
                (1, vec![3, 0]),
                (2, vec![2, 1]),
                (3, vec![1, 3]),
            ]),
            meta: None,
        }
    }

    #[test]
    fn square_and_triangle_have_two_faces() {
        let g = build_graph(&square()).unwrap();
        assert_eq!(g.num_faces(), 2);
        assert!(g.faces().iter().all(|f| f.len() == 4));
        let t = build_graph(&triangle()).unwrap();
        assert_eq!(t.num_faces(), 2);
    }

    #[test]
    fn k5_is_rejected_as_non_planar() {
        let mut edges = Vec::new();
        let mut rotation: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
        for a in 0..5u32 {
            for b in a + 1..5 {
                let id = edges.len() as u32;
                edges.push(EdgeRecord {
                    id,
                    u: a,
                    v: b,
                    cost: 1,
                });
                rotation.entry(a).or_default().push(id);
                rotation.entry(b).or_default().push(id);
            }
        }
        let raw = GraphFile {
            vertices: (0..5).map(|id| VertexRecord { id, weight: 1 }).collect(),
            edges,
            rotation,
            meta: None,
        };
        match build_graph(&raw) {
            Err(Error::NonPlanar { euler }) => assert!(euler < 2),
            other => panic!("expected non-planar, got {other:?}"),
        }
    }

    #[test]
    fn structural_errors() {
        let mut raw = triangle();
        raw.vertices.push(VertexRecord { id: 1, weight: 1 });
        assert!(matches!(build_graph(&raw), Err(Error::DuplicateVertex(1))));

        let mut raw = triangle();
        raw.edges[0].v = 0;
        assert!(matches!(build_graph(&raw), Err(Error::SelfLoop(0))));

        let mut raw = triangle();
        raw.vertices.push(VertexRecord { id: 9, weight: 1 });
        assert!(matches!(build_graph(&raw), Err(Error::Disconnected)));

        let mut raw = triangle();
        raw.rotation.insert(0, vec![0]);
        assert!(matches!(build_graph(&raw), Err(Error::Rotation { .. })));
    }

    #[test]
    fn face_walks_cover_every_dart_once() {
        let g = build_graph(&square()).unwrap();
        let total: usize = g.faces().iter().map(Vec::len).sum();
        assert_eq!(total, 2 * g.num_edges());
    }

    #[test]
    fn radial_graph_counts() {
        let t = build_graph(&triangle()).unwrap();
        let r = radial_graph(&t);
        assert_eq!(r.num_nodes(), 5);
        assert_eq!(r.edges.len(), 6);
        let s = build_graph(&square()).unwrap();
        let r = radial_graph(&s);
        assert_eq!(r.num_nodes(), 6);
        assert_eq!(r.edges.len(), 8);
    }

    #[test]
    fn pendant_is_merged_into_its_neighbour() {
        let mut raw = triangle();
        raw.vertices.push(VertexRecord { id: 3, weight: 3 });
        raw.edges.push(EdgeRecord {
            id: 3,
            u: 0,
            v: 3,
            cost: 1,
        });
        raw.rotation.insert(0, vec![0, 3, 2]);
        raw.rotation.insert(3, vec![3]);
        let g = build_graph(&raw).unwrap();
        let p = preprocess(&g).unwrap();
        assert_eq!(p.graph.num_vertices(), 3);
        assert_eq!(p.graph.vertex(0).weight, 4);
        assert_eq!(p.representative[&3], 0);
        assert_eq!(p.forced_uncut, vec![3]);
        assert_eq!(p.graph.total_weight(), g.total_weight());
    }

    #[test]
    fn preprocess_is_identity_on_min_degree_two() {
        let g = build_graph(&square()).unwrap();
        let p = preprocess(&g).unwrap();
        assert_eq!(p.graph.to_file(), g.to_file());
        assert!(p.forced_uncut.is_empty());
    }

    #[test]
    fn star_collapses_to_trivial_instance() {
        let raw = GraphFile {
            vertices: (0..4).map(|id| VertexRecord { id, weight: 1 }).collect(),
            edges: (1..4)
                .map(|v| EdgeRecord {
                    id: v - 1,
                    u: 0,
                    v,
                    cost: 1,
                })
                .collect(),
            rotation: BTreeMap::from([
                (0, vec![0, 1, 2]),
                (1, vec![0]),
                (2, vec![1]),
                (3, vec![2]),
            ]),
            meta: None,
        };
        let g = build_graph(&raw).unwrap();
        assert!(matches!(
            preprocess(&g),
            Err(Error::TrivialInstance { weight: 4 })
        ));
    }

    #[test]
    fn bounded_contraction_keeps_heavy_pendants() {
        let mut raw = triangle();
        raw.vertices.push(VertexRecord { id: 3, weight: 5 });
        raw.edges.push(EdgeRecord {
            id: 3,
            u: 0,
            v: 3,
            cost: 1,
        });
        raw.rotation.insert(0, vec![0, 3, 2]);
        raw.rotation.insert(3, vec![3]);
        let g = build_graph(&raw).unwrap();
        assert_eq!(contract_pendants(&g, 5).graph.num_vertices(), 4);
        assert_eq!(contract_pendants(&g, 6).graph.num_vertices(), 3);
    }

    #[test]
    fn coarsening_rounds_up() {
        let mut raw = triangle();
        raw.vertices[0].weight = 250;
        raw.vertices[1].weight = 0;
        let g = build_graph(&raw).unwrap();
        let c = coarsen_weights(&g, 100);
        assert_eq!(c.weight(0), 3);
        assert_eq!(c.weight(1), 0);
        assert_eq!(coarsen_weights(&g, 1).to_file(), g.to_file());
    }

    #[test]
    fn dual_faces_are_primal_vertices() {
        let g = build_graph(&square()).unwrap();
        let (_, sigma) = g.dual_rotation();
        let dual_faces = trace_rotation_faces(&sigma);
        assert_eq!(dual_faces.len(), g.num_vertices());
    }
}
