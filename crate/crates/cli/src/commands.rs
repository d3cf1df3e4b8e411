// SPDX-License-Identifier: Apache-2.0

use std::fs;
use std::io::Write;
use std::path::Path;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use qdsfm::apps::{
    cardinality_bench, cheeger_classify, classification_error, cut_labels, observe_labels,
    planted_clusters, ssl_solve, sweep_cut, CardinalityParams, CheegerDenominator, ClusterParams, Hypergraph,
};
use qdsfm::io::{
    hypergraph_to_string, instance_to_string, parse_hypergraph, parse_instance, read_vector, write_trace,
    write_vector,
};
use qdsfm::projection::{check_kkt, ProjectionOptions};
use qdsfm::solver::solve as run_solver;
use qdsfm::{Backend, Method, ProblemInstance, SolveReport, SolverConfig};
use rayon::prelude::*;

use crate::{BenchArgs, GenArgs, GenPreset, PagerankArgs, ProjectArgs, SolveArgs, SolverArgs, SslArgs, SslPreset};

pub enum Outcome {
    Converged,
    NotConverged,
}

impl Outcome {
    fn from_flag(converged: bool) -> Self {
        if converged {
            Outcome::Converged
        } else {
            Outcome::NotConverged
        }
    }
}

fn config(args: &SolverArgs, backend: Option<Backend>) -> SolverConfig {
    SolverConfig {
        max_iterations: args.max_iters,
        gap_tolerance: args.tol,
        rng_seed: args.seed,
        backend,
        trace_every: args.trace_every,
        parallel: !args.sequential,
        ..SolverConfig::default()
    }
}

fn summary(report: &SolveReport) -> String {
    format!(
        "iterations={} gap={:.3e} status={:?}",
        report.iterations_run, report.final_gap, report.status
    )
}

pub fn solve(args: SolveArgs) -> Result<Outcome> {
    let inst = parse_instance(&args.instance)?;
    let cfg = config(&args.solver, args.backend.map(Into::into));
    let report = run_solver(&inst, args.method.into(), &cfg)?;
    if let Some(path) = &args.trace {
        write_trace(&report.trace, path)?;
    }
    if let Some(path) = &args.solution {
        write_vector(&report.x, path)?;
    }
    println!("{}", summary(&report));
    if args.solution.is_none() {
        for v in &report.x {
            println!("{v:.16e}");
        }
    }
    Ok(Outcome::from_flag(report.converged()))
}

fn join(v: &[f64]) -> String {
    v.iter().map(|x| format!("{x:.6}")).collect::<Vec<_>>().join(",")
}

pub fn project(args: ProjectArgs) -> Result<Outcome> {
    let inst = parse_instance(&args.instance)?;
    let Some(atom) = inst.atoms().get(args.atom) else {
        bail!(qdsfm::Error::Config(format!(
            "function index {} out of range; the instance has {}",
            args.atom,
            inst.num_atoms()
        )));
    };
    let local = |v: &[f64]| atom.members().iter().map(|&i| v[i]).collect::<Vec<f64>>();
    let point = args.point.unwrap_or_else(|| local(inst.a()));
    let metric = args.metric.unwrap_or_else(|| local(inst.w()));
    if point.len() != atom.len() || metric.len() != atom.len() {
        bail!(qdsfm::Error::Config(format!(
            "point and metric need {} entries, one per member",
            atom.len()
        )));
    }
    if metric.iter().any(|w| !(*w > 0.0)) {
        bail!(qdsfm::Error::Config("metric weights must be positive".to_string()));
    }
    let opts = ProjectionOptions::with_delta(args.delta);
    let res = qdsfm::projection::project(atom, &point, &metric, args.backend.into(), &opts)?;
    let kkt = check_kkt(atom, &point, &metric, &res.y, res.phi);
    println!("y={}", join(&res.y));
    println!("phi={:.6}", res.phi);
    println!("h={:.6}", res.h_value);
    println!("kkt={kkt:.3e}");
    Ok(Outcome::from_flag(res.status == qdsfm::ProjectionStatus::Converged))
}

pub fn pagerank(args: PagerankArgs) -> Result<Outcome> {
    let (hg, _) = parse_hypergraph(&args.hypergraph)?;
    let p0 = match (&args.p0, args.source) {
        (Some(path), _) => read_vector(path)?,
        (None, Some(s)) => {
            if s >= hg.n() {
                bail!(qdsfm::Error::Config(format!("source {s} out of range for {} vertices", hg.n())));
            }
            let mut p0 = vec![0.0; hg.n()];
            p0[s] = 1.0;
            p0
        }
        (None, None) => unreachable!("clap requires --source or --p0"),
    };
    let res = qdsfm::apps::pagerank(&hg, args.alpha, &p0, &config(&args.solver, None))?;
    println!("{}", summary(&res.report));
    match &args.output {
        Some(path) => write_vector(&res.p, path)?,
        None => {
            for v in &res.p {
                println!("{v:.16e}");
            }
        }
    }
    if args.sweep {
        let cut = sweep_cut(&hg, &res.p)?;
        let set: Vec<String> = cut.best_set.iter().map(|v| v.to_string()).collect();
        println!("sweep_set={}", set.join(","));
        println!("sweep_conductance={:.6}", cut.best_conductance);
    }
    Ok(Outcome::from_flag(res.report.converged()))
}

pub fn ssl_demo(args: SslArgs) -> Result<Outcome> {
    let file = match (args.preset, &args.hypergraph) {
        (SslPreset::File, Some(path)) => {
            let (hg, truth) = parse_hypergraph(path)?;
            let Some(truth) = truth else {
                bail!(qdsfm::Error::Config(format!("{} has no labels", path.display())));
            };
            Some((hg, truth))
        }
        _ => None,
    };
    let cfg = SolverConfig {
        gap_tolerance: args.tol,
        max_iterations: args.max_iters,
        ..SolverConfig::default()
    };
    let params = ClusterParams {
        labeled_per_cluster: args.labels,
        ..ClusterParams::default()
    };
    let mut errors = Vec::new();
    let mut all_converged = true;
    for seed in 0..args.seeds {
        let (hg, truth, labels): (Hypergraph, Vec<i8>, Vec<i8>) = match &file {
            Some((hg, truth)) => (hg.clone(), truth.clone(), observe_labels(truth, args.labels, seed)?),
            None => {
                let data = planted_clusters(&params, seed)?;
                (data.hypergraph, data.truth, data.labels)
            }
        };
        let w_norm = hg.incidence_counts();
        let run_cfg = SolverConfig {
            rng_seed: seed,
            ..cfg.clone()
        };
        let res = ssl_solve(&hg, &labels, args.beta, &w_norm, args.method.into(), &run_cfg)?;
        all_converged &= res.report.converged();
        let cut = cheeger_classify(&hg, &res.scores, &w_norm, CheegerDenominator::Min)?;
        let err = classification_error(&cut_labels(hg.n(), &cut), &truth);
        println!(
            "seed={seed} error={:.2}% cheeger={:.6} gap={:.3e}",
            100.0 * err,
            cut.score,
            res.report.final_gap
        );
        errors.push(err);
    }
    if errors.is_empty() {
        bail!(qdsfm::Error::Config("--seeds must be at least 1".to_string()));
    }
    let mean = errors.iter().sum::<f64>() / errors.len() as f64;
    let mut sorted = errors.clone();
    sorted.sort_by(f64::total_cmp);
    let mid = sorted.len() / 2;
    let median = if sorted.len() % 2 == 0 {
        (sorted[mid - 1] + sorted[mid]) / 2.0
    } else {
        sorted[mid]
    };
    println!("mean_error={:.2}% median_error={:.2}%", 100.0 * mean, 100.0 * median);
    Ok(Outcome::from_flag(all_converged))
}

fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn cardinality_preset(theta: f64, seed: u64) -> qdsfm::Result<ProblemInstance> {
    cardinality_bench(
        &CardinalityParams {
            theta,
            ..CardinalityParams::default()
        },
        seed,
    )
}

pub fn gen(args: GenArgs) -> Result<Outcome> {
    let text = match args.preset {
        GenPreset::Cardinality => instance_to_string(&cardinality_preset(args.theta, args.seed)?),
        GenPreset::Planted => {
            let data = planted_clusters(&ClusterParams::default(), args.seed)?;
            hypergraph_to_string(&data.hypergraph, Some(&data.truth))
        }
    };
    emit(&text, args.out.as_deref())?;
    Ok(Outcome::Converged)
}

pub fn bench(args: BenchArgs) -> Result<Outcome> {
    let inst = match &args.instance {
        Some(path) => parse_instance(path)?,
        None => cardinality_preset(args.theta, args.solver.seed)?,
    };
    fs::create_dir_all(&args.out_dir).with_context(|| format!("creating {}", args.out_dir.display()))?;
    let all_cut = inst.atoms().iter().all(|a| a.is_cut());
    let mut cells = Vec::new();
    for method in [Method::Rcd, Method::Ap] {
        for backend in [Backend::Exact, Backend::Mnp, Backend::Fw] {
            if backend != Backend::Exact || all_cut {
                cells.push((method, backend));
            }
        }
    }
    let results: Vec<Result<(SolveReport, f64)>> = cells
        .par_iter()
        .map(|&(method, backend)| {
            let start = Instant::now();
            let report = run_solver(&inst, method, &config(&args.solver, Some(backend)))?;
            let seconds = start.elapsed().as_secs_f64();
            let path = args.out_dir.join(format!("{}-{}.csv", method.name(), backend.name()));
            write_trace(&report.trace, &path)?;
            Ok((report, seconds))
        })
        .collect();
    println!("method,backend,iterations,final_gap,seconds");
    let mut all_converged = true;
    for ((method, backend), res) in cells.iter().zip(results) {
        let (report, seconds) = res?;
        all_converged &= report.converged();
        println!(
            "{},{},{},{:.3e},{seconds:.3}",
            method.name(),
            backend.name(),
            report.iterations_run,
            report.final_gap
        );
    }
    Ok(Outcome::from_flag(all_converged))
}
