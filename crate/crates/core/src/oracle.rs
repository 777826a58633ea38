//! Exact minimum relay sets for small instances by exhaustive search.

use itertools::Itertools;

use crate::error::OracleError;
use crate::hops::{bfs_from, induced_feasibility, HopTable, UNREACHABLE};
use crate::model::{NodeId, TopologyGraph, SINK};
use crate::solution::{Algorithm, Solution};

/// Largest candidate count searched without an explicit size limit.
pub const CANDIDATE_GUARD: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    pub optimum: usize,
    /// Lexicographically first optimal relay set.
    pub relays: Vec<NodeId>,
    pub optimal_sets: u64,
    /// Subsets whose feasibility was checked.
    pub explored: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleOutcome {
    Optimal(OracleResult),
    Infeasible,
    /// No feasible set of size up to the limit.
    LimitExceeded {
        limit: usize,
    },
}

impl OracleOutcome {
    pub fn optimum(&self) -> Option<usize> {
        match self {
            OracleOutcome::Optimal(r) => Some(r.optimum),
            _ => None,
        }
    }
}

/// Candidates that lie on a walk of at most `delta` hops between the sink
/// and at least one sensor. No other candidate can appear in an optimum.
pub fn useful_candidates(graph: &TopologyGraph, delta: u32) -> Vec<NodeId> {
    let hops = HopTable::build(graph);
    graph
        .candidates()
        .filter(|&c| {
            let nearest = graph
                .sensors()
                .map(|s| hops.to_sensor(s, c))
                .min()
                .unwrap_or(UNREACHABLE);
            crate::hops::feasible_node(nearest, hops.to_sink(c), delta)
        })
        .collect()
}

/// Minimum relay set, searching subsets in increasing size over the
/// candidates that pass the walk filter.
pub fn oracle_solve(graph: &TopologyGraph, delta: u32, limit: Option<usize>) -> Result<OracleOutcome, OracleError> {
    guard(graph, limit)?;
    Ok(enumerate(graph, delta, &useful_candidates(graph, delta), limit))
}

/// Same search over every candidate, without the filter.
pub fn oracle_solve_unpruned(
    graph: &TopologyGraph,
    delta: u32,
    limit: Option<usize>,
) -> Result<OracleOutcome, OracleError> {
    guard(graph, limit)?;
    let all: Vec<NodeId> = graph.candidates().collect();
    Ok(enumerate(graph, delta, &all, limit))
}

fn guard(graph: &TopologyGraph, limit: Option<usize>) -> Result<(), OracleError> {
    let m = graph.n_candidates();
    if m > CANDIDATE_GUARD && limit.is_none() {
        return Err(OracleError::TooManyCandidates {
            m,
            guard: CANDIDATE_GUARD,
        });
    }
    Ok(())
}

fn enumerate(graph: &TopologyGraph, delta: u32, pool: &[NodeId], limit: Option<usize>) -> OracleOutcome {
    let full = bfs_from(graph, SINK, None);
    if graph.sensors().any(|s| full.depth(s) > delta) {
        return OracleOutcome::Infeasible;
    }
    let max_size = limit.unwrap_or(pool.len()).min(pool.len());
    let mut explored = 0u64;
    for size in 0..=max_size {
        let mut first: Option<Vec<NodeId>> = None;
        let mut count = 0u64;
        for subset in pool.iter().copied().combinations(size) {
            explored += 1;
            if induced_feasibility(graph, &subset, delta).0 {
                count += 1;
                first.get_or_insert(subset);
            }
        }
        if let Some(relays) = first {
            return OracleOutcome::Optimal(OracleResult {
                optimum: size,
                relays,
                optimal_sets: count,
                explored,
            });
        }
    }
    // the whole filtered pool contains every shortest sensor path, so
    // only a size limit can end the loop without a hit
    OracleOutcome::LimitExceeded {
        limit: limit.unwrap_or(pool.len()),
    }
}

/// Solution wrapper for an oracle optimum.
pub fn oracle_solution(graph: &TopologyGraph, delta: u32, result: &OracleResult) -> Solution {
    let (ok, tree) = induced_feasibility(graph, &result.relays, delta);
    debug_assert!(ok);
    Solution::from_tree(graph, Algorithm::Oracle, tree)
}
