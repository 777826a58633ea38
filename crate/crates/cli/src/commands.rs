use std::fmt::Write as _;
use std::path::Path;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use anyhow::{bail, Context, Result};
use dcrnp::bench::{self, ExperimentConfig, PRNG_VERSION};
use dcrnp::oracle::{oracle_solution, oracle_solve, OracleOutcome, CANDIDATE_GUARD};
use dcrnp::sca::sca_solve_graph;
use dcrnp::sptirp::sptirp_solve_graph;
use dcrnp::{build_graph, parse_instance, serialize_instance, Algorithm, Instance, OracleError, Outcome, SolutionFile};

use crate::verify::check;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    Infeasible,
    VerifyFailed,
}

impl From<Status> for ExitCode {
    fn from(s: Status) -> Self {
        match s {
            Status::Ok => ExitCode::SUCCESS,
            Status::Infeasible => ExitCode::from(2),
            Status::VerifyFailed => ExitCode::from(3),
        }
    }
}

fn read_instance(path: &Path) -> Result<Instance> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_instance(&text).with_context(|| format!("parsing {}", path.display()))
}

fn write_or_print(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

#[allow(clippy::too_many_arguments)]
pub fn gen(
    n: usize,
    m: usize,
    field: f64,
    r: f64,
    big_r: f64,
    delta: u32,
    seed: u64,
    out: Option<&Path>,
) -> Result<Status> {
    if !(field.is_finite() && field > 0.0) {
        bail!("field must be positive");
    }
    let inst = bench::gen_instance(field, n, m, r, big_r, delta, seed)?;
    write_or_print(out, &serialize_instance(&inst))?;
    Ok(Status::Ok)
}

enum Solved {
    Found(dcrnp::Solution),
    Infeasible,
}

fn run(instance: &Instance, algo: Algorithm, limit: Option<usize>) -> Result<Solved> {
    let graph = build_graph(instance)?;
    let delta = instance.delta;
    let outcome = match algo {
        Algorithm::Sca => sca_solve_graph(&graph, delta)?,
        Algorithm::Sptirp => sptirp_solve_graph(&graph, delta)?,
        Algorithm::Oracle => match oracle_solve(&graph, delta, limit) {
            Ok(OracleOutcome::Optimal(r)) => Outcome::Solved(oracle_solution(&graph, delta, &r)),
            Ok(OracleOutcome::Infeasible) => Outcome::Infeasible,
            Ok(OracleOutcome::LimitExceeded { limit }) => {
                bail!("no feasible relay set with at most {limit} relays; raise --limit")
            }
            Err(e @ OracleError::TooManyCandidates { .. }) => {
                bail!("{e} (for example --limit 6, or use --algo sca)")
            }
        },
    };
    Ok(match outcome.into_solution() {
        Some(mut s) => {
            s.instance_id = Some(instance.fingerprint());
            Solved::Found(s)
        }
        None => Solved::Infeasible,
    })
}

pub fn solve(instance_path: &Path, algo: Algorithm, limit: Option<usize>, out: Option<&Path>) -> Result<Status> {
    let instance = read_instance(instance_path)?;
    let (file, status) = match run(&instance, algo, limit)? {
        Solved::Found(s) => {
            println!("algorithm: {algo}");
            println!("relays: {}", s.relay_count());
            println!("max sensor hops: {} (budget {})", s.max_hops(), instance.delta);
            (s.to_file(), Status::Ok)
        }
        Solved::Infeasible => {
            println!("algorithm: {algo}");
            println!(
                "infeasible: some sensor is more than {} hops from the sink even with every candidate",
                instance.delta
            );
            (
                SolutionFile::infeasible(algo, instance.fingerprint()),
                Status::Infeasible,
            )
        }
    };
    if let Some(p) = out {
        std::fs::write(p, file.serialize()).with_context(|| format!("writing {}", p.display()))?;
    }
    Ok(status)
}

pub fn verify(instance_path: &Path, solution_path: &Path) -> Result<Status> {
    let instance = read_instance(instance_path)?;
    let text =
        std::fs::read_to_string(solution_path).with_context(|| format!("reading {}", solution_path.display()))?;
    let solution = SolutionFile::parse(&text).with_context(|| format!("parsing {}", solution_path.display()))?;
    match check(&instance, &solution) {
        Ok(()) => {
            println!(
                "PASS: {} relays, every sensor within {} hops",
                solution.relays.len(),
                instance.delta
            );
            Ok(Status::Ok)
        }
        Err(v) => {
            println!("FAIL: {v}");
            Ok(Status::VerifyFailed)
        }
    }
}

struct Row {
    name: &'static str,
    relays: usize,
    max_hops: u32,
    wall: Duration,
}

pub fn compare(instance_path: &Path, limit: Option<usize>) -> Result<Status> {
    let instance = read_instance(instance_path)?;
    let mut rows = Vec::new();
    for (name, algo) in [("sca", Algorithm::Sca), ("sptirp", Algorithm::Sptirp)] {
        let t0 = Instant::now();
        let solved = run(&instance, algo, None)?;
        let wall = t0.elapsed();
        match solved {
            Solved::Found(s) => rows.push(Row {
                name,
                relays: s.relay_count(),
                max_hops: s.max_hops(),
                wall,
            }),
            Solved::Infeasible => {
                println!("infeasible: no relay set meets the {}-hop budget", instance.delta);
                return Ok(Status::Infeasible);
            }
        }
    }
    let mut opt = None;
    if instance.m() <= CANDIDATE_GUARD || limit.is_some() {
        let t0 = Instant::now();
        if let Solved::Found(s) = run(&instance, Algorithm::Oracle, limit)? {
            opt = Some(s.relay_count());
            rows.push(Row {
                name: "opt",
                relays: s.relay_count(),
                max_hops: s.max_hops(),
                wall: t0.elapsed(),
            });
        }
    }
    print!("{}", render_table(&rows, opt));
    Ok(Status::Ok)
}

fn render_table(rows: &[Row], opt: Option<usize>) -> String {
    let mut out = String::new();
    let _ = write!(out, "{:<8} {:>7} {:>9} {:>10}", "algo", "relays", "max_hops", "time_ms");
    if opt.is_some() {
        let _ = write!(out, " {:>5}", "gap");
    }
    out.push('\n');
    for r in rows {
        let _ = write!(
            out,
            "{:<8} {:>7} {:>9} {:>10.3}",
            r.name,
            r.relays,
            r.max_hops,
            r.wall.as_secs_f64() * 1e3
        );
        if let Some(o) = opt {
            let _ = write!(out, " {:>5}", r.relays - o);
        }
        out.push('\n');
    }
    let sca = rows[0].relays as i64;
    let spt = rows[1].relays as i64;
    let _ = writeln!(out, "diff (sptirp - sca): {}", spt - sca);
    out
}

pub fn bench(config: Option<&Path>, preset: ExperimentConfig, seed: Option<u64>, out: &Path) -> Result<Status> {
    let mut cfg = match config {
        Some(p) => {
            let text = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            toml::from_str::<ExperimentConfig>(&text).with_context(|| format!("parsing {}", p.display()))?
        }
        None => preset,
    };
    if let Some(s) = seed {
        cfg.base_seed = s;
    }
    cfg.validate()?;
    std::fs::create_dir_all(out).with_context(|| format!("creating {}", out.display()))?;

    let records = bench::run_experiment(&cfg)?;
    let cells = bench::summarize(&records)?;
    std::fs::write(out.join("summary.csv"), bench::summary_csv(&cells)?)
        .with_context(|| format!("writing into {}", out.display()))?;
    std::fs::write(out.join("trials.csv"), trials_csv(&records))
        .with_context(|| format!("writing into {}", out.display()))?;
    bench::emit_plotdata(&cells, out)?;
    let meta = format!("prng = \"{PRNG_VERSION}\"\n\n{}", toml::to_string(&cfg)?);
    std::fs::write(out.join("meta.toml"), meta)?;

    let faults: Vec<_> = records.iter().filter_map(|r| r.error.as_ref()).collect();
    for f in &faults {
        eprintln!("trial fault: {f}");
    }
    let (mut spt, mut diff, mut feasible) = (0.0, 0.0, 0usize);
    for r in &records {
        if let (Some(a), Some(b)) = (&r.sca, &r.sptirp) {
            spt += b.relays.len() as f64;
            diff += b.relays.len() as f64 - a.relays.len() as f64;
            feasible += 1;
        }
    }
    println!(
        "cells: {}, trials: {}, feasible: {feasible}",
        cells.len(),
        records.len()
    );
    if feasible > 0 && spt > 0.0 {
        println!(
            "mean saving of sca over sptirp: {:.4} relays ({:.2}%)",
            diff / feasible as f64,
            100.0 * diff / spt
        );
    }
    println!("wrote {}", out.display());
    Ok(Status::Ok)
}

fn trials_csv(records: &[bench::TrialRecord]) -> String {
    let mut out = String::from("cell,trial,seed,attempts,n,m,r,R,delta,feasible,sca,sptirp,oracle\n");
    let count = |x: &Option<bench::AlgoRun>| x.as_ref().map(|a| a.relays.len().to_string()).unwrap_or_default();
    for r in records {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{:.6},{:.6},{},{},{},{},{}",
            r.cell,
            r.trial,
            r.seed,
            r.attempts,
            r.n,
            r.m,
            r.radii.r,
            r.radii.big_r,
            r.delta,
            r.feasible,
            count(&r.sca),
            count(&r.sptirp),
            r.oracle.map(|o| o.to_string()).unwrap_or_default()
        );
    }
    out
}
