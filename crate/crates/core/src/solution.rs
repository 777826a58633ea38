//! Solver results and their text file form.

use serde::{Deserialize, Serialize};
use std::fmt::{self, Write as _};
use std::str::FromStr;

use crate::error::ModelError;
use crate::hops::SpTree;
use crate::model::{NodeId, TopologyGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Sca,
    Sptirp,
    Oracle,
}

impl Algorithm {
    pub fn as_str(&self) -> &'static str {
        match self {
            Algorithm::Sca => "sca",
            Algorithm::Sptirp => "sptirp",
            Algorithm::Oracle => "oracle",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "sca" => Ok(Algorithm::Sca),
            "sptirp" => Ok(Algorithm::Sptirp),
            "oracle" => Ok(Algorithm::Oracle),
            other => Err(format!("unknown algorithm `{other}` (expected sca, sptirp or oracle)")),
        }
    }
}

/// A feasible relay placement together with the BFS tree that proves it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub algorithm: Algorithm,
    /// Selected candidate ids, ascending.
    pub relays: Vec<NodeId>,
    pub tree: SpTree,
    /// Hop count of each sensor, in sensor order.
    pub sensor_hops: Vec<u32>,
    pub instance_id: Option<String>,
}

impl Solution {
    pub(crate) fn from_tree(graph: &TopologyGraph, algorithm: Algorithm, tree: SpTree) -> Self {
        let relays = graph.candidates().filter(|&c| tree.reaches(c)).collect();
        let sensor_hops = graph.sensors().map(|s| tree.depth(s)).collect();
        Self {
            algorithm,
            relays,
            tree,
            sensor_hops,
            instance_id: None,
        }
    }

    pub fn relay_count(&self) -> usize {
        self.relays.len()
    }

    pub fn max_hops(&self) -> u32 {
        self.sensor_hops.iter().copied().max().unwrap_or(0)
    }

    pub fn to_file(&self) -> SolutionFile {
        SolutionFile {
            algorithm: self.algorithm,
            instance: self.instance_id.clone().unwrap_or_default(),
            feasible: true,
            relays: self.relays.clone(),
            tree_edges: self.tree.edges().into_iter().map(|(u, v)| [u, v]).collect(),
            sensor_hops: self.sensor_hops.clone(),
        }
    }
}

/// Result of a heuristic solve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    /// Relays were needed and placed.
    Solved(Solution),
    /// Sensors reach the sink within budget on their own.
    ZeroRelay(Solution),
    /// Even with every candidate deployed some sensor is too far.
    Infeasible,
}

impl Outcome {
    pub fn solution(&self) -> Option<&Solution> {
        match self {
            Outcome::Solved(s) | Outcome::ZeroRelay(s) => Some(s),
            Outcome::Infeasible => None,
        }
    }

    pub fn into_solution(self) -> Option<Solution> {
        match self {
            Outcome::Solved(s) | Outcome::ZeroRelay(s) => Some(s),
            Outcome::Infeasible => None,
        }
    }

    pub fn relay_count(&self) -> Option<usize> {
        self.solution().map(Solution::relay_count)
    }

    pub fn is_feasible(&self) -> bool {
        !matches!(self, Outcome::Infeasible)
    }
}

/// On-disk solution record.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolutionFile {
    pub algorithm: Algorithm,
    #[serde(default)]
    pub instance: String,
    pub feasible: bool,
    pub relays: Vec<NodeId>,
    pub tree_edges: Vec<[NodeId; 2]>,
    pub sensor_hops: Vec<u32>,
}

impl SolutionFile {
    pub fn infeasible(algorithm: Algorithm, instance: String) -> Self {
        Self {
            algorithm,
            instance,
            feasible: false,
            relays: Vec::new(),
            tree_edges: Vec::new(),
            sensor_hops: Vec::new(),
        }
    }

    pub fn parse(text: &str) -> Result<Self, ModelError> {
        serde_json::from_str(text).map_err(|e| ModelError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    /// Canonical text form, keys sorted, one tree edge per line.
    pub fn serialize(&self) -> String {
        let join = |v: &[u32]| v.iter().map(u32::to_string).collect::<Vec<_>>().join(", ");
        let relays: Vec<String> = self.relays.iter().map(usize::to_string).collect();
        let mut out = String::from("{\n");
        let _ = writeln!(out, "  \"algorithm\": \"{}\",", self.algorithm);
        let _ = writeln!(out, "  \"feasible\": {},", self.feasible);
        let _ = writeln!(out, "  \"instance\": \"{}\",", self.instance);
        let _ = writeln!(out, "  \"relays\": [{}],", relays.join(", "));
        let _ = writeln!(out, "  \"sensor_hops\": [{}],", join(&self.sensor_hops));
        if self.tree_edges.is_empty() {
            out.push_str("  \"tree_edges\": []\n");
        } else {
            out.push_str("  \"tree_edges\": [\n");
            for (i, [u, v]) in self.tree_edges.iter().enumerate() {
                let sep = if i + 1 < self.tree_edges.len() { "," } else { "" };
                let _ = writeln!(out, "    [{u}, {v}]{sep}");
            }
            out.push_str("  ]\n");
        }
        out.push_str("}\n");
        out
    }
}
