//! Shortest-path-tree baseline: take every relay on the sink-rooted BFS
//! tree's sensor paths, then prune with the same removal loop as SCA.

use crate::error::{ScaError, SolveError};
use crate::hops::bfs_from;
use crate::model::{build_graph, Instance, NodeId, TopologyGraph, SINK};
use crate::sca::sca_step3;
use crate::solution::{Algorithm, Outcome};

/// Candidates on the sensor-to-sink paths of the full BFS tree, or `None`
/// when some sensor is deeper than `delta`.
pub fn initial_relays(graph: &TopologyGraph, delta: u32) -> Option<Vec<NodeId>> {
    let tree = bfs_from(graph, SINK, None);
    if graph.sensors().any(|s| tree.depth(s) > delta) {
        return None;
    }
    let on = tree.path_nodes(graph.sensors());
    Some(graph.candidates().filter(|&c| on[c]).collect())
}

pub fn sptirp_solve_graph(graph: &TopologyGraph, delta: u32) -> Result<Outcome, ScaError> {
    let Some(start) = initial_relays(graph, delta) else {
        return Ok(Outcome::Infeasible);
    };
    Ok(Outcome::Solved(sca_step3(graph, delta, &start, Algorithm::Sptirp)?))
}

pub fn sptirp_solve(instance: &Instance) -> Result<Outcome, SolveError> {
    let graph = build_graph(instance)?;
    let mut out = sptirp_solve_graph(&graph, instance.delta)?;
    if let Outcome::Solved(s) = &mut out {
        s.instance_id = Some(instance.fingerprint());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Point;

    #[test]
    fn no_candidates_on_tree() {
        let i = Instance::new(
            Point::new(0.0, 0.0),
            vec![Point::new(5.0, 0.0), Point::new(10.0, 0.0)],
            vec![Point::new(0.0, 40.0)],
            6.0,
            6.0,
            2,
        )
        .unwrap();
        let out = sptirp_solve(&i).unwrap();
        assert_eq!(out.relay_count(), Some(0));
    }

    #[test]
    fn line_matches_sca() {
        let g = TopologyGraph::from_edges(1, 2, &[(0, 2), (2, 3), (3, 1)]).unwrap();
        assert_eq!(initial_relays(&g, 3), Some(vec![2, 3]));
        let out = sptirp_solve_graph(&g, 3).unwrap();
        assert_eq!(out.solution().unwrap().relays, vec![2, 3]);
        assert_eq!(sptirp_solve_graph(&g, 2).unwrap(), Outcome::Infeasible);
    }

    #[test]
    fn stays_inside_initial_tree() {
        // the BFS tree routes s through c1 (lower id); c2 offers an equal route
        // s=1, c1=2, c2=3
        let g = TopologyGraph::from_edges(1, 2, &[(0, 2), (2, 1), (0, 3), (3, 1)]).unwrap();
        let out = sptirp_solve_graph(&g, 2).unwrap();
        assert_eq!(out.solution().unwrap().relays, vec![2]);
    }
}
