//! Hop-count shortest paths: BFS trees, canonical paths and the
//! on-some-feasible-path predicate.

use crate::error::HopError;
use crate::model::{NodeId, TopologyGraph, SINK};

/// Distance value for nodes that cannot be reached.
pub const UNREACHABLE: u32 = u32::MAX;

/// BFS tree rooted at `root`, restricted to an allowed node set.
///
/// Each reached node's parent is its lowest-id neighbor on the previous
/// BFS layer, so the tree depends only on the graph and the node set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpTree {
    root: NodeId,
    parent: Vec<Option<NodeId>>,
    depth: Vec<u32>,
    allowed: Vec<bool>,
}

impl SpTree {
    pub fn root(&self) -> NodeId {
        self.root
    }

    pub fn depth(&self, v: NodeId) -> u32 {
        self.depth[v]
    }

    pub fn depths(&self) -> &[u32] {
        &self.depth
    }

    pub fn parent(&self, v: NodeId) -> Option<NodeId> {
        self.parent[v]
    }

    pub fn parents(&self) -> &[Option<NodeId>] {
        &self.parent
    }

    pub fn is_allowed(&self, v: NodeId) -> bool {
        self.allowed[v]
    }

    pub fn reaches(&self, v: NodeId) -> bool {
        self.depth[v] != UNREACHABLE
    }

    /// Tree edges as `(parent, child)` pairs, ordered by child id.
    pub fn edges(&self) -> Vec<(NodeId, NodeId)> {
        self.parent
            .iter()
            .enumerate()
            .filter_map(|(child, p)| p.map(|p| (p, child)))
            .collect()
    }

    /// Nodes on the tree paths from each of `targets` up to the root.
    pub fn path_nodes<I>(&self, targets: I) -> Vec<bool>
    where
        I: IntoIterator<Item = NodeId>,
    {
        let mut on = vec![false; self.parent.len()];
        for t in targets {
            if !self.reaches(t) {
                continue;
            }
            let mut v = t;
            while !on[v] {
                on[v] = true;
                match self.parent[v] {
                    Some(p) => v = p,
                    None => break,
                }
            }
        }
        on
    }
}

/// BFS from `source` over the subgraph induced by `allowed`
/// (`None` means every node).
pub fn bfs_from(graph: &TopologyGraph, source: NodeId, allowed: Option<&[bool]>) -> SpTree {
    let n = graph.node_count();
    let allowed = match allowed {
        Some(mask) => {
            assert_eq!(mask.len(), n, "allowed mask must cover every node");
            mask.to_vec()
        }
        None => vec![true; n],
    };
    assert!(allowed[source], "BFS source {source} is not in the allowed set");

    let mut depth = vec![UNREACHABLE; n];
    let mut parent = vec![None; n];
    depth[source] = 0;
    let mut layer = vec![source];
    let mut d = 0;
    while !layer.is_empty() {
        // expanding the layer in id order makes first discovery come
        // from the lowest-id parent
        layer.sort_unstable();
        let mut next = Vec::new();
        for &u in &layer {
            for &v in graph.neighbors(u) {
                if allowed[v] && depth[v] == UNREACHABLE {
                    depth[v] = d + 1;
                    parent[v] = Some(u);
                    next.push(v);
                }
            }
        }
        layer = next;
        d += 1;
    }
    SpTree {
        root: source,
        parent,
        depth,
        allowed,
    }
}

/// Full-graph hop distances from the sink and from every sensor.
#[derive(Debug, Clone)]
pub struct HopTable {
    sink: SpTree,
    sensors: Vec<SpTree>,
}

impl HopTable {
    pub fn build(graph: &TopologyGraph) -> Self {
        let sink = bfs_from(graph, SINK, None);
        let sensors = graph.sensors().map(|s| bfs_from(graph, s, None)).collect();
        Self { sink, sensors }
    }

    pub fn sink_tree(&self) -> &SpTree {
        &self.sink
    }

    pub fn sensor_tree(&self, sensor: NodeId) -> &SpTree {
        &self.sensors[sensor - 1]
    }

    pub fn to_sink(&self, v: NodeId) -> u32 {
        self.sink.depth(v)
    }

    pub fn to_sensor(&self, sensor: NodeId, v: NodeId) -> u32 {
        self.sensors[sensor - 1].depth(v)
    }
}

/// True iff a node at the given distances lies on some sensor-to-sink
/// walk of at most `delta` hops.
pub fn feasible_node(dist_to_sensor: u32, dist_to_sink: u32, delta: u32) -> bool {
    match dist_to_sensor.checked_add(dist_to_sink) {
        Some(total) => dist_to_sensor != UNREACHABLE && dist_to_sink != UNREACHABLE && total <= delta,
        None => false,
    }
}

/// Node mask for sink, all sensors and the given relays.
pub fn induced_mask(graph: &TopologyGraph, relays: &[NodeId]) -> Vec<bool> {
    let mut mask = vec![false; graph.node_count()];
    mask[SINK] = true;
    for s in graph.sensors() {
        mask[s] = true;
    }
    for &c in relays {
        mask[c] = true;
    }
    mask
}

/// BFS from the sink over sensors, `relays` and the sink; feasible when
/// every sensor sits within `delta` hops.
pub fn induced_feasibility(graph: &TopologyGraph, relays: &[NodeId], delta: u32) -> (bool, SpTree) {
    let mask = induced_mask(graph, relays);
    let tree = bfs_from(graph, SINK, Some(&mask));
    let ok = graph.sensors().all(|s| tree.depth(s) <= delta);
    (ok, tree)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalPath {
    nodes: Vec<NodeId>,
}

impl CanonicalPath {
    pub fn nodes(&self) -> &[NodeId] {
        &self.nodes
    }

    pub fn hops(&self) -> usize {
        self.nodes.len() - 1
    }

    /// Candidate-kind nodes on the path, endpoints included.
    pub fn candidates<'a>(&'a self, graph: &'a TopologyGraph) -> impl Iterator<Item = NodeId> + 'a {
        self.nodes.iter().copied().filter(|&v| graph.is_candidate(v))
    }
}

/// Path from `from` to the tree root along parent pointers.
pub fn canonical_path(tree: &SpTree, from: NodeId) -> Result<CanonicalPath, HopError> {
    if !tree.reaches(from) {
        return Err(HopError::Unreachable(from));
    }
    let mut nodes = Vec::with_capacity(tree.depth(from) as usize + 1);
    let mut v = from;
    nodes.push(v);
    while let Some(p) = tree.parent(v) {
        nodes.push(p);
        v = p;
    }
    Ok(CanonicalPath { nodes })
}
