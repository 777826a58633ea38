//! Set-covering based approximation.
//!
//! The solver runs in three steps:
//!
//! 1. A gate on two BFS trees from the sink: one over every node decides
//!    feasibility, one over sensors only decides whether relays are needed.
//! 2. The tree is grown level by level. At level `k` the pool is every
//!    unplaced candidate or unconnected sensor adjacent to level `k-1`.
//!    Unconnected sensors in the pool join level `k` for free; the
//!    remaining unconnected sensors are covered by a greedy set cover over
//!    the pool's candidates.
//! 3. Relays are removed one at a time, least useful first, as long as the
//!    induced BFS tree stays within the hop budget.

use std::collections::{BTreeSet, HashSet};

use crate::error::{ScaError, SolveError};
use crate::hops::{bfs_from, canonical_path, feasible_node, induced_feasibility, induced_mask, HopTable, SpTree};
use crate::model::{build_graph, Instance, NodeId, TopologyGraph, SINK};
use crate::solution::{Algorithm, Outcome, Solution};

/// A node placed on some level together with the sensors it covers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelNode {
    pub id: NodeId,
    pub covers: BTreeSet<NodeId>,
}

/// State of the level-wise construction just before level `level` is built.
#[derive(Debug, Clone)]
pub struct Frontier {
    /// Level about to be built, starting at 1.
    pub level: u32,
    /// Nodes on level `level - 1`.
    pub previous: Vec<LevelNode>,
    pub unconnected: BTreeSet<NodeId>,
    placed: Vec<bool>,
}

impl Frontier {
    /// Level 0 holds only the sink, which covers every sensor within budget.
    pub fn initial(graph: &TopologyGraph, hops: &HopTable, delta: u32) -> Self {
        let covers = graph.sensors().filter(|&s| hops.to_sink(s) <= delta).collect();
        let mut placed = vec![false; graph.node_count()];
        placed[SINK] = true;
        Self {
            level: 1,
            previous: vec![LevelNode { id: SINK, covers }],
            unconnected: graph.sensors().collect(),
            placed,
        }
    }

    pub fn is_placed(&self, v: NodeId) -> bool {
        self.placed[v]
    }

    /// Neighbors of the previous level that are unplaced candidates or
    /// unconnected sensors, ascending.
    pub fn pool(&self, graph: &TopologyGraph) -> Vec<NodeId> {
        let mut pool: Vec<NodeId> = self
            .previous
            .iter()
            .flat_map(|n| graph.neighbors(n.id).iter().copied())
            .filter(|&v| !self.placed[v] && (graph.is_candidate(v) || self.unconnected.contains(&v)))
            .collect();
        pool.sort_unstable();
        pool.dedup();
        pool
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverElement {
    pub node: NodeId,
    pub covers: BTreeSet<NodeId>,
    /// Distinct candidates on the canonical paths from `node` to the
    /// sensors it covers.
    pub weight: usize,
    /// 0 for sensors, 1 for candidates.
    pub cost: u8,
}

/// Whether membership in a cover set also requires moving strictly closer
/// to the sensor than some covering neighbor on the previous level.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoverRule {
    /// Hop budget and progress requirement, the rule used by the solver.
    Full,
    /// Hop budget only.
    BudgetOnly,
}

/// Unconnected sensors that `q` can connect to the sink if placed on the
/// frontier's level.
pub fn covered_sensors(
    graph: &TopologyGraph,
    hops: &HopTable,
    frontier: &Frontier,
    q: NodeId,
    delta: u32,
    rule: CoverRule,
) -> BTreeSet<NodeId> {
    let k = frontier.level;
    let prev: Vec<&LevelNode> = match rule {
        CoverRule::Full => frontier.previous.iter().filter(|n| graph.has_edge(n.id, q)).collect(),
        CoverRule::BudgetOnly => Vec::new(),
    };
    frontier
        .unconnected
        .iter()
        .copied()
        .filter(|&s| s != q)
        .filter(|&s| feasible_node(hops.to_sensor(s, q), k, delta))
        .filter(|&s| match rule {
            CoverRule::BudgetOnly => true,
            CoverRule::Full => {
                let d = hops.to_sensor(s, q);
                prev.iter()
                    .any(|p| p.covers.contains(&s) && d < hops.to_sensor(s, p.id))
            }
        })
        .collect()
}

/// Number of distinct candidates on the canonical shortest paths from `q`
/// to each sensor in `covers`.
pub fn cover_weight(graph: &TopologyGraph, hops: &HopTable, q: NodeId, covers: &BTreeSet<NodeId>) -> usize {
    let mut seen = HashSet::new();
    for &s in covers {
        let path = canonical_path(hops.sensor_tree(s), q).expect("covered sensor must be reachable");
        seen.extend(path.candidates(graph));
    }
    seen.len()
}

/// Cover elements for each node of `pool`; nodes covering nothing are
/// dropped.
pub fn compute_cover_elements(
    graph: &TopologyGraph,
    hops: &HopTable,
    frontier: &Frontier,
    pool: &[NodeId],
    delta: u32,
) -> Vec<CoverElement> {
    pool.iter()
        .filter_map(|&q| {
            let covers = covered_sensors(graph, hops, frontier, q, delta, CoverRule::Full);
            if covers.is_empty() {
                return None;
            }
            let weight = cover_weight(graph, hops, q, &covers);
            let cost = if graph.is_sensor(q) { 0 } else { 1 };
            Some(CoverElement {
                node: q,
                covers,
                weight,
                cost,
            })
        })
        .collect()
}

/// Greedy set cover over `universe`.
///
/// Each round picks the element covering the most still-uncovered
/// sensors; ties go to zero-cost elements, then lower weight, then lower
/// id. Returns the chosen node ids in selection order, or the sensors left
/// uncovered when the elements cannot cover the universe.
pub fn greedy_cover(elements: &[CoverElement], universe: &BTreeSet<NodeId>) -> Result<Vec<NodeId>, Vec<NodeId>> {
    let mut uncovered = universe.clone();
    let mut used = vec![false; elements.len()];
    let mut chosen = Vec::new();
    while !uncovered.is_empty() {
        let best = elements
            .iter()
            .enumerate()
            .filter(|(i, _)| !used[*i])
            .map(|(i, e)| (i, e.covers.intersection(&uncovered).count()))
            .filter(|&(_, gain)| gain > 0)
            .min_by_key(|&(i, gain)| {
                let e = &elements[i];
                (std::cmp::Reverse(gain), e.cost, e.weight, e.node)
            });
        let Some((i, _)) = best else {
            return Err(uncovered.into_iter().collect());
        };
        used[i] = true;
        for s in &elements[i].covers {
            uncovered.remove(s);
        }
        chosen.push(elements[i].node);
    }
    Ok(chosen)
}

/// What happened while building one level.
#[derive(Debug, Clone)]
pub struct LevelRecord {
    pub level: u32,
    pub pool: Vec<NodeId>,
    /// Unconnected sensors after the free sensors joined this level.
    pub unconnected: BTreeSet<NodeId>,
    pub free_sensors: Vec<NodeId>,
    pub selected: Vec<NodeId>,
    pub nodes: Vec<LevelNode>,
}

#[derive(Debug, Clone)]
pub struct Step2Result {
    /// Candidates placed, ascending.
    pub relays: Vec<NodeId>,
    pub levels: Vec<LevelRecord>,
}

impl Step2Result {
    pub fn depth(&self) -> u32 {
        self.levels.last().map_or(0, |l| l.level)
    }
}

/// Level-wise greedy covering. Expects a graph that passed the gate.
pub fn sca_step2(graph: &TopologyGraph, hops: &HopTable, delta: u32) -> Result<Step2Result, ScaError> {
    let mut frontier = Frontier::initial(graph, hops, delta);
    let mut relays = Vec::new();
    let mut levels = Vec::new();

    while !frontier.unconnected.is_empty() {
        let k = frontier.level;
        if k > delta {
            return Err(ScaError::LevelOverflow { level: k, delta });
        }
        let pool = frontier.pool(graph);
        let free_sensors: Vec<NodeId> = pool.iter().copied().filter(|&v| graph.is_sensor(v)).collect();
        for &s in &free_sensors {
            frontier.unconnected.remove(&s);
            frontier.placed[s] = true;
        }

        let elements = compute_cover_elements(graph, hops, &frontier, &pool, delta);
        let mut universe = frontier.unconnected.clone();
        let mut nodes = Vec::new();
        for &s in &free_sensors {
            let covers = elements
                .iter()
                .find(|e| e.node == s)
                .map(|e| e.covers.clone())
                .unwrap_or_default();
            for c in &covers {
                universe.remove(c);
            }
            nodes.push(LevelNode { id: s, covers });
        }
        let candidates: Vec<CoverElement> = elements.into_iter().filter(|e| e.cost > 0).collect();
        let selected =
            greedy_cover(&candidates, &universe).map_err(|uncovered| ScaError::Uncoverable { level: k, uncovered })?;
        for &c in &selected {
            frontier.placed[c] = true;
            let e = candidates
                .iter()
                .find(|e| e.node == c)
                .expect("selected element exists");
            nodes.push(LevelNode {
                id: c,
                covers: e.covers.clone(),
            });
        }
        relays.extend_from_slice(&selected);

        levels.push(LevelRecord {
            level: k,
            pool,
            unconnected: frontier.unconnected.clone(),
            free_sensors,
            selected,
            nodes: nodes.clone(),
        });
        frontier.previous = nodes;
        frontier.level += 1;
    }

    relays.sort_unstable();
    Ok(Step2Result { relays, levels })
}

/// Pruning weight of every relay: how many sensors have a walk through it
/// within budget, measured on the subgraph induced by `relays`.
pub fn relay_weights(graph: &TopologyGraph, relays: &[NodeId], delta: u32) -> Vec<(NodeId, usize)> {
    let mask = induced_mask(graph, relays);
    let to_sink = bfs_from(graph, SINK, Some(&mask));
    let mut weight = vec![0usize; relays.len()];
    for s in graph.sensors() {
        let from_s = bfs_from(graph, s, Some(&mask));
        for (w, &q) in weight.iter_mut().zip(relays) {
            if feasible_node(from_s.depth(q), to_sink.depth(q), delta) {
                *w += 1;
            }
        }
    }
    relays.iter().copied().zip(weight).collect()
}

/// Removes relays greedily, least weight first, while the induced tree
/// stays feasible. The result is 1-minimal.
pub fn sca_step3(
    graph: &TopologyGraph,
    delta: u32,
    relays: &[NodeId],
    algorithm: Algorithm,
) -> Result<Solution, ScaError> {
    let mut current: Vec<NodeId> = relays.to_vec();
    current.sort_unstable();
    current.dedup();
    let (ok, mut tree) = induced_feasibility(graph, &current, delta);
    if !ok {
        return Err(ScaError::InfeasibleRelaySet);
    }
    current.retain(|&c| tree.reaches(c));

    let mut order = sorted_by_weight(graph, &current, delta);
    let mut tried: HashSet<NodeId> = HashSet::new();
    while let Some(&victim) = order.iter().find(|c| !tried.contains(c)) {
        let trial: Vec<NodeId> = current.iter().copied().filter(|&c| c != victim).collect();
        let (ok, t) = induced_feasibility(graph, &trial, delta);
        if ok {
            current = trial.into_iter().filter(|&c| t.reaches(c)).collect();
            tree = t;
            order = sorted_by_weight(graph, &current, delta);
            tried.clear();
        } else {
            tried.insert(victim);
        }
    }
    Ok(Solution::from_tree(graph, algorithm, tree))
}

fn sorted_by_weight(graph: &TopologyGraph, relays: &[NodeId], delta: u32) -> Vec<NodeId> {
    let mut w = relay_weights(graph, relays, delta);
    w.sort_by_key(|&(id, weight)| (weight, id));
    w.into_iter().map(|(id, _)| id).collect()
}

/// First step: BFS over all nodes, then over sensors and sink only.
pub(crate) fn gate(graph: &TopologyGraph, delta: u32) -> Gate {
    let full = bfs_from(graph, SINK, None);
    if graph.sensors().any(|s| full.depth(s) > delta) {
        return Gate::Infeasible;
    }
    let (ok, bare) = induced_feasibility(graph, &[], delta);
    if ok {
        Gate::NoRelays(bare)
    } else {
        Gate::NeedsRelays
    }
}

pub(crate) enum Gate {
    Infeasible,
    NoRelays(SpTree),
    NeedsRelays,
}

/// Runs all three steps on a prebuilt graph.
pub fn sca_solve_graph(graph: &TopologyGraph, delta: u32) -> Result<Outcome, ScaError> {
    match gate(graph, delta) {
        Gate::Infeasible => Ok(Outcome::Infeasible),
        Gate::NoRelays(tree) => Ok(Outcome::ZeroRelay(Solution::from_tree(graph, Algorithm::Sca, tree))),
        Gate::NeedsRelays => {
            let hops = HopTable::build(graph);
            let step2 = sca_step2(graph, &hops, delta)?;
            let sol = sca_step3(graph, delta, &step2.relays, Algorithm::Sca)?;
            Ok(Outcome::Solved(sol))
        }
    }
}

pub fn sca_solve(instance: &Instance) -> Result<Outcome, SolveError> {
    let graph = build_graph(instance)?;
    let mut out = sca_solve_graph(&graph, instance.delta)?;
    if let Outcome::Solved(s) | Outcome::ZeroRelay(s) = &mut out {
        s.instance_id = Some(instance.fingerprint());
    }
    Ok(out)
}
