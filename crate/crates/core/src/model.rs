//! Problem instances and the hop graph built from them.
//!
//! Node ids are fixed: the sink is `0`, sensors follow in input order
//! (`1..=n`) and candidate locations come last (`n+1..=n+m`). Every
//! tie-break downstream is expressed in terms of these ids.

use serde::Deserialize;
use sha2::{Digest, Sha256};
use std::collections::HashSet;
use std::fmt::Write as _;

use crate::error::ModelError;

pub type NodeId = usize;

/// The sink always has id 0.
pub const SINK: NodeId = 0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn dist_sq(&self, other: &Point) -> f64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        dx * dx + dy * dy
    }

    pub fn dist(&self, other: &Point) -> f64 {
        self.dist_sq(other).sqrt()
    }

    fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NodeKind {
    Sink,
    Sensor,
    Candidate,
}

/// Immutable problem input.
///
/// Construct through [`Instance::new`], which enforces every invariant;
/// the fields are public for reading only in spirit.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    pub sensors: Vec<Point>,
    pub candidates: Vec<Point>,
    pub sink: Point,
    /// Sensor communication radius.
    pub r: f64,
    /// Relay communication radius, never smaller than `r`.
    pub big_r: f64,
    /// Hop budget for every sensor-to-sink path.
    pub delta: u32,
}

impl Instance {
    pub fn new(
        sink: Point,
        sensors: Vec<Point>,
        candidates: Vec<Point>,
        r: f64,
        big_r: f64,
        delta: u32,
    ) -> Result<Self, ModelError> {
        let inst = Self {
            sensors,
            candidates,
            sink,
            r,
            big_r,
            delta,
        };
        inst.validate()?;
        Ok(inst)
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        if !(self.r.is_finite() && self.r > 0.0) {
            return Err(ModelError::BadRadius("r", self.r));
        }
        if !(self.big_r.is_finite() && self.big_r > 0.0) {
            return Err(ModelError::BadRadius("R", self.big_r));
        }
        if self.r > self.big_r {
            return Err(ModelError::RadiusOrder {
                r: self.r,
                big_r: self.big_r,
            });
        }
        if self.delta < 1 {
            return Err(ModelError::ZeroDelta);
        }
        if self.sensors.is_empty() {
            return Err(ModelError::NoSensors);
        }
        let mut seen = HashSet::with_capacity(self.node_count());
        for (id, p) in self.points().enumerate() {
            if !p.is_finite() {
                return Err(ModelError::NonFinite { node: id });
            }
            // +0.0 normalizes negative zero so that -0.0 and 0.0 collide
            let key = ((p.x + 0.0).to_bits(), (p.y + 0.0).to_bits());
            if !seen.insert(key) {
                return Err(ModelError::DuplicatePoint {
                    node: id,
                    x: p.x,
                    y: p.y,
                });
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.sensors.len()
    }

    pub fn m(&self) -> usize {
        self.candidates.len()
    }

    /// `N = n + m + 1`.
    pub fn node_count(&self) -> usize {
        self.n() + self.m() + 1
    }

    /// All points in node-id order.
    pub fn points(&self) -> impl Iterator<Item = &Point> + '_ {
        std::iter::once(&self.sink)
            .chain(self.sensors.iter())
            .chain(self.candidates.iter())
    }

    /// Short content hash of the canonical serialization.
    pub fn fingerprint(&self) -> String {
        let digest = Sha256::digest(serialize_instance(self).as_bytes());
        digest[..8].iter().fold(String::with_capacity(16), |mut s, b| {
            let _ = write!(s, "{b:02x}");
            s
        })
    }
}

/// Undirected hop graph over sink, sensors and candidates.
#[derive(Debug, Clone, PartialEq)]
pub struct TopologyGraph {
    n_sensors: usize,
    n_candidates: usize,
    positions: Option<Vec<Point>>,
    adj: Vec<Vec<NodeId>>,
}

impl TopologyGraph {
    /// Builds a graph from an explicit edge list, without geometry.
    ///
    /// Ids follow the usual layout for `n_sensors` sensors and
    /// `n_candidates` candidates. Duplicate edges are merged.
    pub fn from_edges(n_sensors: usize, n_candidates: usize, edges: &[(NodeId, NodeId)]) -> Result<Self, ModelError> {
        let total = n_sensors + n_candidates + 1;
        let mut adj = vec![Vec::new(); total];
        for &(u, v) in edges {
            if u >= total || v >= total {
                return Err(ModelError::EdgeOutOfRange { u, v, nodes: total });
            }
            if u == v {
                return Err(ModelError::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Self {
            n_sensors,
            n_candidates,
            positions: None,
            adj,
        })
    }

    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    pub fn n_sensors(&self) -> usize {
        self.n_sensors
    }

    pub fn n_candidates(&self) -> usize {
        self.n_candidates
    }

    pub fn kind(&self, id: NodeId) -> NodeKind {
        if id == SINK {
            NodeKind::Sink
        } else if id <= self.n_sensors {
            NodeKind::Sensor
        } else {
            NodeKind::Candidate
        }
    }

    pub fn is_sensor(&self, id: NodeId) -> bool {
        id >= 1 && id <= self.n_sensors
    }

    pub fn is_candidate(&self, id: NodeId) -> bool {
        id > self.n_sensors && id < self.adj.len()
    }

    pub fn sensors(&self) -> std::ops::RangeInclusive<NodeId> {
        1..=self.n_sensors
    }

    pub fn candidates(&self) -> std::ops::Range<NodeId> {
        self.n_sensors + 1..self.adj.len()
    }

    pub fn position(&self, id: NodeId) -> Option<Point> {
        self.positions.as_ref().map(|p| p[id])
    }

    /// Neighbors in ascending id order.
    pub fn neighbors(&self, id: NodeId) -> &[NodeId] {
        &self.adj[id]
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }
}

/// Applies the dual-radius link rule: a sensor endpoint limits the link
/// to `r`, otherwise `R` applies. Comparison is exact on squared lengths.
pub fn link_allowed(a: &Point, a_sensor: bool, b: &Point, b_sensor: bool, r: f64, big_r: f64) -> bool {
    let limit = if a_sensor || b_sensor { r } else { big_r };
    a.dist_sq(b) <= limit * limit
}

pub fn build_graph(instance: &Instance) -> Result<TopologyGraph, ModelError> {
    instance.validate()?;
    let points: Vec<Point> = instance.points().copied().collect();
    let n = instance.n();
    let total = points.len();
    let is_sensor = |id: NodeId| id >= 1 && id <= n;
    let mut adj = vec![Vec::new(); total];
    for u in 0..total {
        for v in u + 1..total {
            if link_allowed(
                &points[u],
                is_sensor(u),
                &points[v],
                is_sensor(v),
                instance.r,
                instance.big_r,
            ) {
                adj[u].push(v);
                adj[v].push(u);
            }
        }
    }
    // pushes happen in ascending order for both endpoints already
    Ok(TopologyGraph {
        n_sensors: n,
        n_candidates: instance.m(),
        positions: Some(points),
        adj,
    })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInstance {
    r: f64,
    #[serde(rename = "R")]
    big_r: f64,
    delta: u32,
    sink: [f64; 2],
    sensors: Vec<[f64; 2]>,
    candidates: Vec<[f64; 2]>,
}

/// Parses the instance file format (a JSON object with keys `r`, `R`,
/// `delta`, `sink`, `sensors`, `candidates`, in any order).
pub fn parse_instance(text: &str) -> Result<Instance, ModelError> {
    let raw: RawInstance = serde_json::from_str(text).map_err(|e| ModelError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let pt = |p: [f64; 2]| Point::new(p[0], p[1]);
    Instance::new(
        pt(raw.sink),
        raw.sensors.into_iter().map(pt).collect(),
        raw.candidates.into_iter().map(pt).collect(),
        raw.r,
        raw.big_r,
        raw.delta,
    )
}

fn fmt_point(out: &mut String, p: &Point) {
    let _ = write!(out, "[{:.6}, {:.6}]", p.x, p.y);
}

fn fmt_point_list(out: &mut String, key: &str, pts: &[Point], last: bool) {
    let sep = if last { "" } else { "," };
    if pts.is_empty() {
        let _ = writeln!(out, "  \"{key}\": []{sep}");
        return;
    }
    let _ = writeln!(out, "  \"{key}\": [");
    for (i, p) in pts.iter().enumerate() {
        out.push_str("    ");
        fmt_point(out, p);
        if i + 1 < pts.len() {
            out.push(',');
        }
        out.push('\n');
    }
    let _ = writeln!(out, "  ]{sep}");
}

/// Canonical text form: keys sorted, one point per line, six decimals.
pub fn serialize_instance(instance: &Instance) -> String {
    let mut out = String::new();
    out.push_str("{\n");
    let _ = writeln!(out, "  \"R\": {:.6},", instance.big_r);
    fmt_point_list(&mut out, "candidates", &instance.candidates, false);
    let _ = writeln!(out, "  \"delta\": {},", instance.delta);
    let _ = writeln!(out, "  \"r\": {:.6},", instance.r);
    fmt_point_list(&mut out, "sensors", &instance.sensors, false);
    out.push_str("  \"sink\": ");
    fmt_point(&mut out, &instance.sink);
    out.push_str("\n}\n");
    out
}
