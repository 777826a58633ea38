use dcrnp::bench::gen_instance;
use dcrnp::hops::{bfs_from, induced_feasibility};
use dcrnp::{build_graph, HopTable, Instance, TopologyGraph, SINK, UNREACHABLE};
use proptest::prelude::*;

fn instance(seed: u64, n: usize, m: usize, field: f64, r: f64, big_r: f64) -> Instance {
    gen_instance(field, n, m, r, big_r, 3, seed).unwrap()
}

fn floyd_warshall(g: &TopologyGraph) -> Vec<Vec<u32>> {
    let n = g.node_count();
    let mut d = vec![vec![UNREACHABLE; n]; n];
    for u in 0..n {
        d[u][u] = 0;
        for &v in g.neighbors(u) {
            d[u][v] = 1;
        }
    }
    for k in 0..n {
        for i in 0..n {
            if d[i][k] == UNREACHABLE {
                continue;
            }
            for j in 0..n {
                if d[k][j] != UNREACHABLE && d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    d
}

#[test]
fn bfs_matches_floyd_warshall() {
    for seed in 0..30 {
        let inst = instance(seed, 5 + seed as usize % 10, 40 + seed as usize, 60.0, 12.0, 16.0);
        let g = build_graph(&inst).unwrap();
        assert!(g.node_count() <= 100);
        let fw = floyd_warshall(&g);
        let hops = HopTable::build(&g);
        for v in 0..g.node_count() {
            assert_eq!(hops.to_sink(v), fw[SINK][v]);
            for s in g.sensors() {
                assert_eq!(hops.to_sensor(s, v), fw[s][v], "seed {seed} s {s} v {v}");
            }
        }
    }
}

#[test]
fn edges_match_pairwise_distances() {
    for seed in 0..10 {
        let inst = instance(seed, 20, 170, 100.0, 10.0, 15.0);
        let g = build_graph(&inst).unwrap();
        let pts: Vec<_> = inst.points().copied().collect();
        assert!(pts.len() <= 200);
        let sensor = |i: usize| (1..=inst.n()).contains(&i);
        let mut count = 0;
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                let limit = if sensor(i) || sensor(j) { inst.r } else { inst.big_r };
                let d = ((pts[i].x - pts[j].x).powi(2) + (pts[i].y - pts[j].y).powi(2)).sqrt();
                let expect = d <= limit;
                assert_eq!(
                    g.has_edge(i, j),
                    expect,
                    "seed {seed} pair ({i}, {j}) at {d} vs {limit}"
                );
                assert_eq!(g.has_edge(j, i), expect);
                count += usize::from(expect);
            }
        }
        assert_eq!(g.edge_count(), count);
    }
}

#[test]
fn bfs_parent_is_one_step_up_and_lowest() {
    for seed in 0..20 {
        let inst = instance(seed, 15, 120, 100.0, 15.0, 20.0);
        let g = build_graph(&inst).unwrap();
        let t = bfs_from(&g, SINK, None);
        for v in 0..g.node_count() {
            if let Some(p) = t.parent(v) {
                assert!(g.has_edge(p, v));
                assert_eq!(t.depth(p) + 1, t.depth(v));
                let lowest = g.neighbors(v).iter().copied().find(|&u| t.depth(u) + 1 == t.depth(v));
                assert_eq!(Some(p), lowest);
            }
            for &u in g.neighbors(v) {
                if t.reaches(v) {
                    assert!(t.depth(u) <= t.depth(v) + 1);
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn adding_relays_never_hurts(seed in any::<u64>(), keep in proptest::collection::vec(any::<bool>(), 60), delta in 1u32..8) {
        let inst = instance(seed, 8, 60, 80.0, 15.0, 20.0);
        let g = build_graph(&inst).unwrap();
        let all: Vec<_> = g.candidates().collect();
        let some: Vec<_> = all.iter().copied().zip(&keep).filter(|(_, &k)| k).map(|(c, _)| c).collect();
        let (ok_some, t_some) = induced_feasibility(&g, &some, delta);
        let (ok_all, t_all) = induced_feasibility(&g, &all, delta);
        prop_assert!(!ok_some || ok_all);
        for s in g.sensors() {
            prop_assert!(t_all.depth(s) <= t_some.depth(s));
        }
    }
}
