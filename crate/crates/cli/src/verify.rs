//! Standalone solution checker. It rebuilds links and hop counts from the
//! raw coordinates and does not call into any solver.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use dcrnp::{Instance, Point, SolutionFile};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    MarkedInfeasible,
    RelayOutOfRange(usize),
    DuplicateRelay(usize),
    EdgeOutOfRange(usize, usize),
    EdgeOutsideInduced(usize, usize),
    MissingLink(usize, usize),
    TwoParents(usize),
    HopListLength { expected: usize, found: usize },
    NoTreePath(usize),
    TreeDepthMismatch { sensor: usize, listed: u32, tree: u32 },
    OverBudget { sensor: usize, hops: u32, delta: u32 },
    NotShortest { sensor: usize, listed: u32, bfs: u32 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::MarkedInfeasible => write!(f, "solution is marked infeasible"),
            Violation::RelayOutOfRange(v) => write!(f, "relay {v} is not a candidate id"),
            Violation::DuplicateRelay(v) => write!(f, "relay {v} is listed twice"),
            Violation::EdgeOutOfRange(u, v) => write!(f, "edge ({u}, {v}) names an unknown node"),
            Violation::EdgeOutsideInduced(u, v) => {
                write!(f, "edge ({u}, {v}) uses a candidate that is not a listed relay")
            }
            Violation::MissingLink(u, v) => write!(f, "edge ({u}, {v}) is longer than its link radius"),
            Violation::TwoParents(v) => write!(f, "node {v} has more than one parent edge"),
            Violation::HopListLength { expected, found } => {
                write!(f, "sensor_hops has {found} entries, expected {expected}")
            }
            Violation::NoTreePath(s) => write!(f, "sensor {s} has no tree path to the sink"),
            Violation::TreeDepthMismatch { sensor, listed, tree } => {
                write!(f, "sensor {sensor} lists {listed} hops but its tree path has {tree}")
            }
            Violation::OverBudget { sensor, hops, delta } => {
                write!(f, "sensor {sensor} is {hops} hops from the sink, budget {delta}")
            }
            Violation::NotShortest { sensor, listed, bfs } => {
                write!(f, "sensor {sensor} lists {listed} hops but the relay graph gives {bfs}")
            }
        }
    }
}

fn linked(instance: &Instance, points: &[Point], u: usize, v: usize) -> bool {
    let n = instance.sensors.len();
    let sensor = |x: usize| (1..=n).contains(&x);
    let limit = if sensor(u) || sensor(v) {
        instance.r
    } else {
        instance.big_r
    };
    let dx = points[u].x - points[v].x;
    let dy = points[u].y - points[v].y;
    dx * dx + dy * dy <= limit * limit
}

/// Checks a solution file against its instance, returning the first
/// violation found.
pub fn check(instance: &Instance, solution: &SolutionFile) -> Result<(), Violation> {
    if !solution.feasible {
        return Err(Violation::MarkedInfeasible);
    }
    let n = instance.sensors.len();
    let total = 1 + n + instance.candidates.len();
    let mut points = Vec::with_capacity(total);
    points.push(instance.sink);
    points.extend_from_slice(&instance.sensors);
    points.extend_from_slice(&instance.candidates);

    let mut present = vec![false; total];
    present[0] = true;
    present[1..=n].iter_mut().for_each(|p| *p = true);
    let mut seen = HashSet::new();
    for &c in &solution.relays {
        if c <= n || c >= total {
            return Err(Violation::RelayOutOfRange(c));
        }
        if !seen.insert(c) {
            return Err(Violation::DuplicateRelay(c));
        }
        present[c] = true;
    }

    let mut parent = HashMap::new();
    for &[u, v] in &solution.tree_edges {
        if u >= total || v >= total {
            return Err(Violation::EdgeOutOfRange(u, v));
        }
        if !present[u] || !present[v] {
            return Err(Violation::EdgeOutsideInduced(u, v));
        }
        if u == v || !linked(instance, &points, u, v) {
            return Err(Violation::MissingLink(u, v));
        }
        if parent.insert(v, u).is_some() {
            return Err(Violation::TwoParents(v));
        }
    }

    if solution.sensor_hops.len() != n {
        return Err(Violation::HopListLength {
            expected: n,
            found: solution.sensor_hops.len(),
        });
    }

    let mut depth = vec![u32::MAX; total];
    depth[0] = 0;
    let mut queue = VecDeque::from([0usize]);
    while let Some(u) = queue.pop_front() {
        for v in 0..total {
            if present[v] && depth[v] == u32::MAX && v != u && linked(instance, &points, u, v) {
                depth[v] = depth[u] + 1;
                queue.push_back(v);
            }
        }
    }

    for (i, &listed) in solution.sensor_hops.iter().enumerate() {
        let s = i + 1;
        let mut hops = 0u32;
        let mut v = s;
        while v != 0 {
            match parent.get(&v) {
                Some(&p) if (hops as usize) < total => {
                    v = p;
                    hops += 1;
                }
                _ => return Err(Violation::NoTreePath(s)),
            }
        }
        if hops != listed {
            return Err(Violation::TreeDepthMismatch {
                sensor: s,
                listed,
                tree: hops,
            });
        }
        if hops > instance.delta {
            return Err(Violation::OverBudget {
                sensor: s,
                hops,
                delta: instance.delta,
            });
        }
        if depth[s] != listed {
            return Err(Violation::NotShortest {
                sensor: s,
                listed,
                bfs: depth[s],
            });
        }
    }
    Ok(())
}
