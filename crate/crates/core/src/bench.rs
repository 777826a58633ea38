//! Seeded instance generation and batch experiments comparing SCA with
//! the SPT pruning baseline.
//!
//! Every random draw comes from a ChaCha8 stream seeded per trial, so a
//! config plus its base seed fully determines every output byte. The
//! generator identifier [`PRNG_VERSION`] is written next to the outputs;
//! changing the generator is a format break.
//!
//! Generated coordinates are rounded to six decimals (so instance files
//! round-trip exactly) and every point is redrawn while it would sit
//! within [`BOUNDARY_GAP`] of a link threshold to an earlier point, so no
//! link depends on the last bits of a distance computation.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, StudentsT};
use statrs::statistics::Statistics;
use std::fmt::{self, Write as _};
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use crate::error::{BenchError, ModelError};
use crate::hops::bfs_from;
use crate::model::{build_graph, Instance, NodeId, Point, TopologyGraph, SINK};
use crate::oracle::{oracle_solve, CANDIDATE_GUARD};
use crate::sca::sca_solve_graph;
use crate::sptirp::sptirp_solve_graph;

pub const PRNG_VERSION: &str = "chacha8-v1";

/// Minimum gap between any pairwise distance and the link radius that
/// applies to the pair.
pub const BOUNDARY_GAP: f64 = 1e-6;

fn round6(v: f64) -> f64 {
    (v * 1e6).round() / 1e6
}

/// Random instance on a `field x field` square with the sink at its
/// center. Sensors are drawn first, then candidates.
pub fn gen_instance(
    field: f64,
    n: usize,
    m: usize,
    r: f64,
    big_r: f64,
    delta: u32,
    seed: u64,
) -> Result<Instance, ModelError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sink = Point::new(round6(field / 2.0), round6(field / 2.0));
    let mut placed: Vec<(Point, bool)> = vec![(sink, false)];
    let total = n + m;
    let mut sensors = Vec::with_capacity(n);
    let mut candidates = Vec::with_capacity(m);
    for i in 0..total {
        let is_sensor = i < n;
        let p = loop {
            let p = Point::new(round6(rng.gen::<f64>() * field), round6(rng.gen::<f64>() * field));
            let clear = placed.iter().all(|(q, q_sensor)| {
                let limit = if is_sensor || *q_sensor { r } else { big_r };
                let d = p.dist(q);
                d > 0.0 && (d - limit).abs() >= BOUNDARY_GAP
            });
            if clear {
                break p;
            }
        };
        placed.push((p, is_sensor));
        if is_sensor {
            sensors.push(p);
        } else {
            candidates.push(p);
        }
    }
    Instance::new(sink, sensors, candidates, r, big_r, delta)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadiusPair {
    pub r: f64,
    #[serde(rename = "R")]
    pub big_r: f64,
}

/// Hop budget of a cell: either fixed, or a multiple of the smallest
/// feasible budget of each generated instance, rounded up.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "DeltaRepr", into = "DeltaRepr")]
pub enum DeltaSpec {
    Fixed(u32),
    Scaled(f64),
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum DeltaRepr {
    Fixed(u32),
    Text(String),
}

impl TryFrom<DeltaRepr> for DeltaSpec {
    type Error = String;

    fn try_from(value: DeltaRepr) -> Result<Self, Self::Error> {
        match value {
            DeltaRepr::Fixed(d) => Ok(DeltaSpec::Fixed(d)),
            DeltaRepr::Text(t) => t.parse(),
        }
    }
}

impl From<DeltaSpec> for DeltaRepr {
    fn from(value: DeltaSpec) -> Self {
        match value {
            DeltaSpec::Fixed(d) => DeltaRepr::Fixed(d),
            s @ DeltaSpec::Scaled(_) => DeltaRepr::Text(s.to_string()),
        }
    }
}

impl std::str::FromStr for DeltaSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || format!("bad delta `{s}`: expected an integer or a factor like `1.5x`");
        match s.strip_suffix('x') {
            Some(f) => f.parse::<f64>().map(DeltaSpec::Scaled).map_err(|_| bad()),
            None => s.parse::<u32>().map(DeltaSpec::Fixed).map_err(|_| bad()),
        }
    }
}

impl fmt::Display for DeltaSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DeltaSpec::Fixed(d) => write!(f, "{d}"),
            DeltaSpec::Scaled(x) => write!(f, "{x}x"),
        }
    }
}

impl DeltaSpec {
    /// Budget for a graph whose deepest sensor sits `depth` hops from the
    /// sink over all nodes.
    pub fn resolve(&self, depth: u32) -> u32 {
        match *self {
            DeltaSpec::Fixed(d) => d,
            DeltaSpec::Scaled(x) => ((x * depth as f64).ceil() as u32).max(1),
        }
    }
}

fn default_resamples() -> u32 {
    10
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub field: f64,
    pub candidates: usize,
    pub sensor_counts: Vec<usize>,
    pub radii: Vec<RadiusPair>,
    pub deltas: Vec<DeltaSpec>,
    pub trials: usize,
    pub base_seed: u64,
    /// Extra draws allowed per trial when an instance is infeasible.
    #[serde(default = "default_resamples")]
    pub max_resamples: u32,
    /// Also compute the exact optimum when the candidate count allows it.
    #[serde(default)]
    pub oracle: bool,
}

impl ExperimentConfig {
    /// Scaled-down protocol that finishes in minutes on a laptop.
    pub fn desk() -> Self {
        Self {
            field: 100.0,
            candidates: 100,
            sensor_counts: vec![10, 20, 30, 40],
            radii: vec![
                RadiusPair { r: 10.0, big_r: 10.0 },
                RadiusPair { r: 15.0, big_r: 15.0 },
                RadiusPair { r: 20.0, big_r: 20.0 },
                RadiusPair { r: 10.0, big_r: 15.0 },
            ],
            deltas: vec![DeltaSpec::Scaled(1.0), DeltaSpec::Scaled(1.5), DeltaSpec::Scaled(2.0)],
            trials: 30,
            base_seed: 1,
            max_resamples: default_resamples(),
            oracle: false,
        }
    }

    /// 400 candidates and 10 to 100 sensors.
    pub fn full() -> Self {
        Self {
            candidates: 400,
            sensor_counts: (1..=10).map(|i| i * 10).collect(),
            ..Self::desk()
        }
    }

    pub fn validate(&self) -> Result<(), BenchError> {
        let bad = |m: &str| Err(BenchError::Config(m.to_string()));
        if !(self.field.is_finite() && self.field > 0.0) {
            return bad("field must be positive");
        }
        if self.trials < 1 {
            return bad("trials must be at least 1");
        }
        if self.sensor_counts.is_empty() || self.sensor_counts.contains(&0) {
            return bad("sensor_counts must be nonempty and positive");
        }
        if self.radii.is_empty() || self.deltas.is_empty() {
            return bad("radii and deltas must be nonempty");
        }
        for p in &self.radii {
            if !(p.r > 0.0 && p.r <= p.big_r && p.big_r.is_finite()) {
                return Err(BenchError::Config(format!(
                    "radius pair r={} R={} needs 0 < r <= R",
                    p.r, p.big_r
                )));
            }
        }
        for d in &self.deltas {
            match *d {
                DeltaSpec::Fixed(0) => return bad("fixed delta must be at least 1"),
                DeltaSpec::Scaled(x) if !(x.is_finite() && x > 0.0) => return bad("delta factor must be positive"),
                _ => {}
            }
        }
        Ok(())
    }

    /// Cells in output order: sensor count, then radius pair, then delta.
    pub fn cells(&self) -> Vec<Cell> {
        let mut out = Vec::new();
        for &n in &self.sensor_counts {
            for &radii in &self.radii {
                for &delta in &self.deltas {
                    out.push(Cell {
                        index: out.len(),
                        n,
                        radii,
                        delta,
                    });
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cell {
    pub index: usize,
    pub n: usize,
    pub radii: RadiusPair,
    pub delta: DeltaSpec,
}

/// Seed for one draw: the base seed XOR the cell index, trial and attempt
/// packed into disjoint bit ranges.
pub fn trial_seed(base: u64, cell: usize, trial: usize, attempt: u32) -> u64 {
    base ^ ((cell as u64) << 40) ^ ((trial as u64) << 8) ^ attempt as u64
}

#[derive(Debug, Clone, PartialEq)]
pub struct AlgoRun {
    pub relays: Vec<NodeId>,
    pub wall: Duration,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrialRecord {
    pub cell: usize,
    pub trial: usize,
    /// Seed of the instance actually solved (the last draw).
    pub seed: u64,
    pub attempts: u32,
    pub field: f64,
    pub n: usize,
    pub m: usize,
    pub radii: RadiusPair,
    pub delta_spec: DeltaSpec,
    /// Budget used for the last draw.
    pub delta: u32,
    pub feasible: bool,
    pub sca: Option<AlgoRun>,
    pub sptirp: Option<AlgoRun>,
    pub oracle: Option<usize>,
    pub error: Option<String>,
}

impl TrialRecord {
    pub fn regenerate(&self) -> Result<Instance, ModelError> {
        gen_instance(
            self.field,
            self.n,
            self.m,
            self.radii.r,
            self.radii.big_r,
            self.delta,
            self.seed,
        )
    }

    pub fn diff(&self) -> Option<f64> {
        Some(self.sptirp.as_ref()?.relays.len() as f64 - self.sca.as_ref()?.relays.len() as f64)
    }
}

/// Deepest sensor's full-graph hop distance from the sink, if all reach.
pub fn min_feasible_delta(graph: &TopologyGraph) -> Option<u32> {
    let t = bfs_from(graph, SINK, None);
    graph
        .sensors()
        .map(|s| t.reaches(s).then(|| t.depth(s)))
        .try_fold(0, |acc, d| Some(acc.max(d?)))
}

fn run_trial(config: &ExperimentConfig, cell: &Cell, trial: usize) -> TrialRecord {
    let mut rec = TrialRecord {
        cell: cell.index,
        trial,
        seed: 0,
        attempts: 0,
        field: config.field,
        n: cell.n,
        m: config.candidates,
        radii: cell.radii,
        delta_spec: cell.delta,
        delta: 0,
        feasible: false,
        sca: None,
        sptirp: None,
        oracle: None,
        error: None,
    };
    for attempt in 0..=config.max_resamples {
        let seed = trial_seed(config.base_seed, cell.index, trial, attempt);
        rec.seed = seed;
        rec.attempts = attempt + 1;
        let RadiusPair { r, big_r } = cell.radii;
        let inst = match gen_instance(config.field, cell.n, config.candidates, r, big_r, 1, seed) {
            Ok(i) => i,
            Err(e) => {
                rec.error = Some(e.to_string());
                return rec;
            }
        };
        let graph = match build_graph(&inst) {
            Ok(g) => g,
            Err(e) => {
                rec.error = Some(e.to_string());
                return rec;
            }
        };
        let Some(depth) = min_feasible_delta(&graph) else {
            rec.delta = cell.delta.resolve(1);
            continue;
        };
        let delta = cell.delta.resolve(depth);
        rec.delta = delta;

        let t0 = Instant::now();
        let sca = match sca_solve_graph(&graph, delta) {
            Ok(o) => o,
            Err(e) => {
                rec.error = Some(format!("sca: {e}"));
                return rec;
            }
        };
        let sca_wall = t0.elapsed();
        let Some(sca) = sca.into_solution() else {
            continue;
        };
        let t0 = Instant::now();
        let sptirp = match sptirp_solve_graph(&graph, delta) {
            Ok(o) => o,
            Err(e) => {
                rec.error = Some(format!("sptirp: {e}"));
                return rec;
            }
        };
        let sptirp_wall = t0.elapsed();
        rec.feasible = true;
        rec.sca = Some(AlgoRun {
            relays: sca.relays,
            wall: sca_wall,
        });
        rec.sptirp = sptirp.into_solution().map(|s| AlgoRun {
            relays: s.relays,
            wall: sptirp_wall,
        });
        if config.oracle && config.candidates <= CANDIDATE_GUARD {
            rec.oracle = oracle_solve(&graph, delta, None).ok().and_then(|o| o.optimum());
        }
        return rec;
    }
    rec
}

/// Runs every (cell, trial) pair. Trials run in parallel; the returned
/// order is cell index, then trial index.
pub fn run_experiment(config: &ExperimentConfig) -> Result<Vec<TrialRecord>, BenchError> {
    config.validate()?;
    let jobs: Vec<(Cell, usize)> = config
        .cells()
        .into_iter()
        .flat_map(|c| (0..config.trials).map(move |t| (c, t)))
        .collect();
    Ok(jobs.par_iter().map(|(c, t)| run_trial(config, c, *t)).collect())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellSummary {
    pub n: usize,
    pub r: f64,
    #[serde(rename = "R")]
    pub big_r: f64,
    pub delta: String,
    pub trials: usize,
    pub mean_sca: f64,
    pub sd_sca: f64,
    pub mean_sptirp: f64,
    pub sd_sptirp: f64,
    pub mean_diff: f64,
    pub rel_saving: f64,
    pub infeasible_count: usize,
}

pub const CSV_HEADER: [&str; 12] = [
    "n",
    "r",
    "R",
    "delta",
    "trials",
    "mean_sca",
    "sd_sca",
    "mean_sptirp",
    "sd_sptirp",
    "mean_diff",
    "rel_saving",
    "infeasible_count",
];

fn mean_sd(xs: &[f64]) -> (f64, f64) {
    match xs.len() {
        0 => (f64::NAN, f64::NAN),
        1 => (xs[0], 0.0),
        _ => (xs.mean(), xs.std_dev()),
    }
}

/// Per-cell statistics over feasible trials. Cells appear in record order.
pub fn summarize(records: &[TrialRecord]) -> Result<Vec<CellSummary>, BenchError> {
    if records.is_empty() {
        return Err(BenchError::Empty);
    }
    let mut out = Vec::new();
    for group in records.chunk_by(|a, b| a.cell == b.cell) {
        let first = &group[0];
        let ok: Vec<&TrialRecord> = group.iter().filter(|r| r.sca.is_some() && r.sptirp.is_some()).collect();
        let sca: Vec<f64> = ok.iter().map(|r| r.sca.as_ref().unwrap().relays.len() as f64).collect();
        let spt: Vec<f64> = ok
            .iter()
            .map(|r| r.sptirp.as_ref().unwrap().relays.len() as f64)
            .collect();
        let diffs: Vec<f64> = ok.iter().filter_map(|r| r.diff()).collect();
        let (mean_sca, sd_sca) = mean_sd(&sca);
        let (mean_sptirp, sd_sptirp) = mean_sd(&spt);
        let (mean_diff, _) = mean_sd(&diffs);
        let rel_saving = if mean_sptirp > 0.0 {
            mean_diff / mean_sptirp
        } else {
            0.0
        };
        out.push(CellSummary {
            n: first.n,
            r: first.radii.r,
            big_r: first.radii.big_r,
            delta: first.delta_spec.to_string(),
            trials: group.len(),
            mean_sca,
            sd_sca,
            mean_sptirp,
            sd_sptirp,
            mean_diff,
            rel_saving,
            infeasible_count: group.len() - ok.len(),
        });
    }
    Ok(out)
}

fn f6(v: f64) -> String {
    format!("{v:.6}")
}

pub fn summary_csv(cells: &[CellSummary]) -> Result<String, BenchError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER)?;
    for c in cells {
        w.write_record([
            c.n.to_string(),
            f6(c.r),
            f6(c.big_r),
            c.delta.clone(),
            c.trials.to_string(),
            f6(c.mean_sca),
            f6(c.sd_sca),
            f6(c.mean_sptirp),
            f6(c.sd_sptirp),
            f6(c.mean_diff),
            f6(c.rel_saving),
            c.infeasible_count.to_string(),
        ])?;
    }
    let bytes = w.into_inner().map_err(|e| BenchError::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is ASCII"))
}

pub fn parse_summary_csv(text: &str) -> Result<Vec<CellSummary>, BenchError> {
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let rows: Result<Vec<CellSummary>, _> = rdr.deserialize().collect();
    Ok(rows?)
}

fn trim_float(v: f64) -> String {
    format!("{v}")
}

/// One series per (r, R, delta) in first-seen order, rows sorted by
/// sensor count: `n mean_sca mean_sptirp diff`.
pub fn plot_series(cells: &[CellSummary]) -> Vec<(String, String)> {
    let mut keys: Vec<(f64, f64, String)> = Vec::new();
    for c in cells {
        let key = (c.r, c.big_r, c.delta.clone());
        if !keys.contains(&key) {
            keys.push(key);
        }
    }
    keys.into_iter()
        .map(|(r, big_r, delta)| {
            let name = format!("series_r{}_R{}_d{}.dat", trim_float(r), trim_float(big_r), delta);
            let mut rows: Vec<&CellSummary> = cells
                .iter()
                .filter(|c| c.r == r && c.big_r == big_r && c.delta == delta)
                .collect();
            rows.sort_by_key(|c| c.n);
            let mut body = format!("# prng {PRNG_VERSION}\n# n mean_sca mean_sptirp diff\n");
            for c in rows {
                let _ = writeln!(
                    body,
                    "{} {:.6} {:.6} {:.6}",
                    c.n, c.mean_sca, c.mean_sptirp, c.mean_diff
                );
            }
            (name, body)
        })
        .collect()
}

pub fn emit_plotdata(cells: &[CellSummary], dir: &Path) -> Result<Vec<PathBuf>, BenchError> {
    std::fs::create_dir_all(dir)?;
    let mut paths = Vec::new();
    for (name, body) in plot_series(cells) {
        let path = dir.join(name);
        std::fs::write(&path, body)?;
        paths.push(path);
    }
    Ok(paths)
}

/// Spearman rank correlation and its two-sided p-value from the t
/// approximation. `None` for fewer than three points or constant input.
pub fn spearman(xs: &[f64], ys: &[f64]) -> Option<(f64, f64)> {
    assert_eq!(xs.len(), ys.len());
    let n = xs.len();
    if n < 3 {
        return None;
    }
    let rx = ranks(xs);
    let ry = ranks(ys);
    let (mx, my) = (rx.as_slice().mean(), ry.as_slice().mean());
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    let mut syy = 0.0;
    for (a, b) in rx.iter().zip(&ry) {
        sxy += (a - mx) * (b - my);
        sxx += (a - mx) * (a - mx);
        syy += (b - my) * (b - my);
    }
    if sxx == 0.0 || syy == 0.0 {
        return None;
    }
    let rho = sxy / (sxx * syy).sqrt();
    let df = (n - 2) as f64;
    let p = if rho.abs() >= 1.0 {
        0.0
    } else {
        let t = rho * (df / (1.0 - rho * rho)).sqrt();
        let dist = StudentsT::new(0.0, 1.0, df).expect("df is positive");
        2.0 * (1.0 - dist.cdf(t.abs()))
    };
    Some((rho, p))
}

/// Average ranks, 1-based.
fn ranks(v: &[f64]) -> Vec<f64> {
    let mut idx: Vec<usize> = (0..v.len()).collect();
    idx.sort_by(|&a, &b| v[a].total_cmp(&v[b]));
    let mut out = vec![0.0; v.len()];
    let mut i = 0;
    while i < idx.len() {
        let mut j = i;
        while j + 1 < idx.len() && v[idx[j + 1]] == v[idx[i]] {
            j += 1;
        }
        let rank = (i + j) as f64 / 2.0 + 1.0;
        for &k in &idx[i..=j] {
            out[k] = rank;
        }
        i = j + 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{parse_instance, serialize_instance};

    #[test]
    fn same_seed_same_bytes() {
        let a = gen_instance(100.0, 10, 40, 10.0, 15.0, 4, 42).unwrap();
        let b = gen_instance(100.0, 10, 40, 10.0, 15.0, 4, 42).unwrap();
        assert_eq!(serialize_instance(&a), serialize_instance(&b));
        let c = gen_instance(100.0, 10, 40, 10.0, 15.0, 4, 43).unwrap();
        assert_ne!(serialize_instance(&a), serialize_instance(&c));
    }

    #[test]
    fn full_scale_node_count() {
        let i = gen_instance(100.0, 10, 400, 10.0, 10.0, 5, 7).unwrap();
        assert_eq!(i.node_count(), 411);
    }

    #[test]
    fn generated_instance_is_a_fixpoint() {
        let i = gen_instance(100.0, 20, 60, 15.0, 15.0, 6, 3).unwrap();
        let text = serialize_instance(&i);
        let back = parse_instance(&text).unwrap();
        assert_eq!(back, i);
        assert_eq!(serialize_instance(&back), text);
    }

    #[test]
    fn generated_points_stay_clear_of_thresholds() {
        let i = gen_instance(30.0, 15, 60, 4.0, 6.0, 3, 11).unwrap();
        let pts: Vec<(Point, bool)> = i
            .points()
            .enumerate()
            .map(|(id, p)| (*p, id >= 1 && id <= i.n()))
            .collect();
        for (a, (p, ps)) in pts.iter().enumerate() {
            for (q, qs) in &pts[a + 1..] {
                let limit = if *ps || *qs { i.r } else { i.big_r };
                assert!((p.dist(q) - limit).abs() >= BOUNDARY_GAP);
            }
        }
    }

    #[test]
    fn coordinates_are_uniform_on_average() {
        // 10^4 draws: 5000 points, two coordinates each
        let i = gen_instance(100.0, 1, 4999, 1e-3, 1e-3, 1, 2024).unwrap();
        let xs: Vec<f64> = i.points().skip(1).flat_map(|p| [p.x, p.y]).collect();
        assert_eq!(xs.len(), 10_000);
        let mean = xs.iter().sum::<f64>() / xs.len() as f64;
        assert!((mean - 50.0).abs() <= 5.0, "mean {mean}");
        assert!(xs.iter().all(|&x| (0.0..=100.0).contains(&x)));
    }

    #[test]
    fn delta_spec_parsing() {
        assert_eq!("4".parse::<DeltaSpec>().unwrap(), DeltaSpec::Fixed(4));
        assert_eq!("1.5x".parse::<DeltaSpec>().unwrap(), DeltaSpec::Scaled(1.5));
        assert!("x".parse::<DeltaSpec>().is_err());
        assert_eq!(DeltaSpec::Scaled(1.5).to_string(), "1.5x");
        assert_eq!(DeltaSpec::Scaled(1.5).resolve(5), 8);
        assert_eq!(DeltaSpec::Scaled(1.0).resolve(5), 5);
        assert_eq!(DeltaSpec::Fixed(3).resolve(9), 3);
    }

    fn record(cell: usize, sca: usize, spt: usize) -> TrialRecord {
        let run = |k: usize| AlgoRun {
            relays: (0..k).collect(),
            wall: Duration::ZERO,
        };
        TrialRecord {
            cell,
            trial: 0,
            seed: 0,
            attempts: 1,
            field: 100.0,
            n: 10,
            m: 100,
            radii: RadiusPair { r: 10.0, big_r: 10.0 },
            delta_spec: DeltaSpec::Fixed(5),
            delta: 5,
            feasible: true,
            sca: Some(run(sca)),
            sptirp: Some(run(spt)),
            oracle: None,
            error: None,
        }
    }

    #[test]
    fn summary_single_record() {
        let s = summarize(&[record(0, 4, 6)]).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].mean_sca, 4.0);
        assert_eq!(s[0].mean_sptirp, 6.0);
        assert_eq!(s[0].sd_sca, 0.0);
        assert_eq!(s[0].mean_diff, 2.0);
    }

    #[test]
    fn summary_arithmetic() {
        let s = summarize(&[record(0, 7, 10), record(0, 7, 8)]).unwrap();
        assert_eq!(s[0].mean_diff, 2.0);
        assert_eq!(s[0].rel_saving, 2.0 / 9.0);
        assert_eq!(s[0].mean_sptirp, 9.0);
        assert!((s[0].sd_sptirp - 2f64.sqrt()).abs() < 1e-12);
        assert_eq!(s[0].trials, 2);
    }

    #[test]
    fn summary_counts_infeasible() {
        let mut bad = record(0, 0, 0);
        bad.feasible = false;
        bad.sca = None;
        bad.sptirp = None;
        let s = summarize(&[record(0, 3, 5), bad]).unwrap();
        assert_eq!(s[0].infeasible_count, 1);
        assert_eq!(s[0].trials, 2);
        assert_eq!(s[0].mean_sca, 3.0);
    }

    #[test]
    fn summary_rejects_empty() {
        assert!(matches!(summarize(&[]), Err(BenchError::Empty)));
    }

    #[test]
    fn csv_round_trip() {
        let s = summarize(&[record(0, 7, 10), record(0, 8, 8), record(1, 1, 2)]).unwrap();
        let text = summary_csv(&s).unwrap();
        assert!(text.starts_with(&CSV_HEADER.join(",")));
        let back = parse_summary_csv(&text).unwrap();
        assert_eq!(back.len(), s.len());
        for (a, b) in back.iter().zip(&s) {
            assert_eq!(a.n, b.n);
            assert_eq!(a.delta, b.delta);
            for (x, y) in [
                (a.mean_sca, b.mean_sca),
                (a.sd_sca, b.sd_sca),
                (a.mean_sptirp, b.mean_sptirp),
                (a.sd_sptirp, b.sd_sptirp),
                (a.mean_diff, b.mean_diff),
                (a.rel_saving, b.rel_saving),
            ] {
                assert!((x - y).abs() <= 5e-7, "{x} vs {y}");
            }
        }
    }

    #[test]
    fn plot_files_per_series() {
        let mut recs = Vec::new();
        for (cell, n) in [10, 20, 30].into_iter().enumerate() {
            let mut r = record(cell, 2, 3);
            r.n = n;
            recs.push(r);
        }
        let s = summarize(&recs).unwrap();
        let files = plot_series(&s);
        assert_eq!(files.len(), 1);
        assert_eq!(files[0].0, "series_r10_R10_d5.dat");
        let data_rows = files[0].1.lines().filter(|l| !l.starts_with('#')).count();
        assert_eq!(data_rows, 3);
    }

    #[test]
    fn spearman_basics() {
        let (rho, p) = spearman(&[1.0, 2.0, 3.0, 4.0], &[10.0, 9.0, 8.0, 1.0]).unwrap();
        assert_eq!(rho, -1.0);
        assert_eq!(p, 0.0);
        let (rho, _) = spearman(&[1.0, 2.0, 3.0, 4.0, 5.0], &[2.0, 1.0, 4.0, 3.0, 5.0]).unwrap();
        assert!((rho - 0.8).abs() < 1e-12);
        assert!(spearman(&[1.0, 1.0, 1.0], &[1.0, 2.0, 3.0]).is_none());
        assert_eq!(ranks(&[3.0, 1.0, 3.0, 2.0]), vec![3.5, 1.0, 3.5, 2.0]);
    }

    #[test]
    fn config_validation_and_cells() {
        let mut c = ExperimentConfig::desk();
        c.validate().unwrap();
        assert_eq!(c.cells().len(), 4 * 4 * 3);
        c.trials = 0;
        assert!(c.validate().is_err());
        let mut c = ExperimentConfig::desk();
        c.radii = vec![RadiusPair { r: 15.0, big_r: 10.0 }];
        assert!(c.validate().is_err());
        assert_eq!(ExperimentConfig::full().candidates, 400);
    }

    #[test]
    fn seeds_differ_per_slot() {
        let a = trial_seed(1, 0, 0, 0);
        assert_ne!(a, trial_seed(1, 1, 0, 0));
        assert_ne!(a, trial_seed(1, 0, 1, 0));
        assert_ne!(a, trial_seed(1, 0, 0, 1));
    }
}
