use std::collections::HashMap;
use std::fs::{self, File};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use corecut::dangling::enumerate_dangling;
use corecut::experiments::{run_overfit_experiment, write_reports_csv, ExperimentReport, Method};
use corecut::io::{write_edge_list, write_id_map, Ingested};
use corecut::spectral::{smallest_eigenpairs, smallest_eigenpairs_by_component, sweep_cut, LanczosOptions, LaplacianOperator};
use corecut::{corecut, cut_stats, NodeSet, RegularizationConfig, Scoring};
use serde::Serialize;

use crate::args::{CensusArgs, OverfitArgs, PartitionArgs, Regularizer, ScoringArg, SimulateArgs, SpectrumArgs, TableArgs};
use crate::input::{load, GenSpec};

fn create(dir: &Path, name: &str) -> Result<BufWriter<File>> {
    let path = dir.join(name);
    Ok(BufWriter::new(File::create(&path).with_context(|| format!("creating {}", path.display()))?))
}

fn prepare(out: &Path) -> Result<()> {
    fs::create_dir_all(out).with_context(|| format!("creating {}", out.display()))
}

fn config(reg: &Regularizer) -> RegularizationConfig {
    RegularizationConfig::new(reg.tau, reg.variant.into())
}

fn write_json<T: Serialize>(out: &Path, name: &str, value: &T) -> Result<()> {
    let mut w = create(out, name)?;
    serde_json::to_writer_pretty(&mut w, value)?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}

fn write_members(out: &Path, set: &NodeSet, ids: &[u64]) -> Result<()> {
    let mut w = csv::Writer::from_writer(create(out, "members.csv")?);
    w.write_record(["node", "external_id"])?;
    for v in set.iter() {
        w.write_record([v.to_string(), ids[v].to_string()])?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct PartitionRow {
    method: Method,
    seed: u64,
    n: usize,
    smaller_side_size: usize,
    conductance: f64,
    corecut: f64,
    score: f64,
    matvec_count: usize,
    wall_time_ms: f64,
    tau: f64,
    converged: bool,
    degenerate: bool,
}

pub fn partition(args: &PartitionArgs) -> Result<()> {
    let Ingested { graph, external_ids } = load(&args.common.source, args.common.seed)?;
    prepare(&args.common.out)?;
    let reg = config(&args.reg).resolve(&graph)?;
    let start = Instant::now();
    let op = LaplacianOperator::new(&graph, reg)?;
    let spec = if graph.node_count() > 2 {
        smallest_eigenpairs(&op, LanczosOptions::new(2).seed(args.common.seed))?
    } else {
        smallest_eigenpairs_by_component(&graph, reg, LanczosOptions::new(2).seed(args.common.seed))?
    };
    let scoring = match args.scoring {
        ScoringArg::Raw => Scoring::Raw,
        ScoringArg::Regularized => Scoring::Regularized { tau: reg.tau() },
    };
    let part = sweep_cut(&graph, scoring, &spec.eigenvectors[1])?;
    let ms = if args.omit_timing { 0.0 } else { start.elapsed().as_secs_f64() * 1e3 };
    let row = PartitionRow {
        method: if reg.is_vanilla() { Method::Vanilla } else { Method::Regularized },
        seed: args.common.seed,
        n: graph.node_count(),
        smaller_side_size: part.smaller_side_size,
        conductance: part.stats.conductance,
        corecut: part.corecut_value,
        score: part.score,
        matvec_count: spec.matvec_count,
        wall_time_ms: ms,
        tau: reg.tau(),
        converged: spec.converged,
        degenerate: part.degenerate,
    };
    let mut w = csv::Writer::from_writer(create(&args.common.out, "partition.csv")?);
    w.serialize(&row)?;
    w.flush()?;
    write_members(&args.common.out, &part.set, &external_ids)?;
    write_id_map(create(&args.common.out, "id_map.csv")?, &external_ids)?;
    if !spec.converged {
        eprintln!("warning: eigensolver did not reach tolerance; results written anyway");
    }
    Ok(())
}

pub fn spectrum(args: &SpectrumArgs) -> Result<()> {
    let Ingested { graph, external_ids } = load(&args.common.source, args.common.seed)?;
    let k = args.k as usize;
    if k > graph.node_count() {
        bail!("--k {k} exceeds the {} nodes of the graph", graph.node_count());
    }
    prepare(&args.common.out)?;
    let reg = config(&args.reg).resolve(&graph)?;
    let spec = smallest_eigenpairs_by_component(&graph, reg, LanczosOptions::new(k).seed(args.common.seed))?;
    let mut w = csv::Writer::from_writer(create(&args.common.out, "spectrum.csv")?);
    w.write_record(["index", "eigenvalue", "residual"])?;
    for (i, (l, r)) in spec.eigenvalues.iter().zip(&spec.residuals).enumerate() {
        w.write_record([i.to_string(), format!("{l:?}"), format!("{r:e}")])?;
    }
    w.flush()?;
    write_id_map(create(&args.common.out, "id_map.csv")?, &external_ids)?;
    if !spec.converged {
        eprintln!("warning: eigensolver did not reach tolerance; results written anyway");
    }
    Ok(())
}

pub fn dangling_census(args: &CensusArgs) -> Result<()> {
    let Ingested { graph, external_ids } = load(&args.common.source, args.common.seed)?;
    prepare(&args.common.out)?;
    let census = enumerate_dangling(&graph, args.g_max as usize, !args.no_component_clause)?.with_seed(args.common.seed);
    census.write_csv(create(&args.common.out, "census.csv")?)?;
    let mut w = csv::Writer::from_writer(create(&args.common.out, "sets.csv")?);
    w.write_record(["g", "set", "node", "external_id"])?;
    for (i, s) in census.sets.iter().enumerate() {
        for v in s.members.iter() {
            w.write_record([s.g.to_string(), i.to_string(), v.to_string(), external_ids[v].to_string()])?;
        }
    }
    w.flush()?;
    write_id_map(create(&args.common.out, "id_map.csv")?, &external_ids)?;
    Ok(())
}

pub fn simulate(args: &SimulateArgs) -> Result<()> {
    let spec = GenSpec::load(&args.gen_spec)?;
    let sample = spec.sample(args.seed)?;
    prepare(&args.out)?;
    write_edge_list(create(&args.out, "graph.tsv")?, &sample.graph)?;
    if let Some(labels) = &sample.labels {
        let mut w = csv::Writer::from_writer(create(&args.out, "labels.csv")?);
        w.write_record(["node", "block"])?;
        for (v, l) in labels.iter().enumerate() {
            w.write_record([v.to_string(), l.to_string()])?;
        }
        w.flush()?;
    }
    Ok(())
}

#[derive(Serialize)]
struct BenchSummary {
    seeds: Vec<u64>,
    median_smaller_side_vanilla: f64,
    median_smaller_side_regularized: f64,
    catastrophic_vanilla: usize,
    catastrophic_regularized: usize,
    variants_agree: usize,
    total_matvec_vanilla: usize,
    total_matvec_regularized: usize,
}

fn median(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(f64::total_cmp);
    let m = xs.len() / 2;
    if xs.len() % 2 == 1 {
        xs[m]
    } else {
        (xs[m - 1] + xs[m]) / 2.0
    }
}

pub fn overfit_bench(args: &OverfitArgs) -> Result<()> {
    let cfg = config(&args.reg);
    let seeds: Vec<u64> = (0..args.seeds).map(|i| args.common.seed + i).collect();
    let fixed = match &args.common.source.input {
        Some(_) => Some(load(&args.common.source, args.common.seed)?.graph),
        None => {
            // Validate the spec before any work.
            GenSpec::load(args.common.source.gen_spec.as_deref().expect("one source is set"))?;
            None
        }
    };
    prepare(&args.common.out)?;
    let mut reports: Vec<ExperimentReport> = Vec::new();
    let mut agree = 0;
    for &seed in &seeds {
        let graph = match &fixed {
            Some(g) => g.clone(),
            None => load(&args.common.source, seed)?.graph,
        };
        let outcome = run_overfit_experiment(&graph, &cfg, args.split, seed)
            .with_context(|| format!("seed {seed}"))?;
        agree += usize::from(outcome.variants_agree);
        for mut r in [outcome.vanilla, outcome.regularized] {
            if args.omit_timing {
                r.wall_time_ms = 0.0;
            }
            if !r.converged {
                eprintln!("warning: seed {seed} {:?} eigensolver did not reach tolerance", r.method);
            }
            reports.push(r);
        }
    }
    write_reports_csv(create(&args.common.out, "report.csv")?, &reports)?;
    let pick = |m: Method| reports.iter().filter(move |r| r.method == m);
    let summary = BenchSummary {
        seeds,
        median_smaller_side_vanilla: median(pick(Method::Vanilla).map(|r| r.smaller_side_size as f64).collect()),
        median_smaller_side_regularized: median(pick(Method::Regularized).map(|r| r.smaller_side_size as f64).collect()),
        catastrophic_vanilla: pick(Method::Vanilla).filter(|r| r.catastrophic).count(),
        catastrophic_regularized: pick(Method::Regularized).filter(|r| r.catastrophic).count(),
        variants_agree: agree,
        total_matvec_vanilla: pick(Method::Vanilla).map(|r| r.matvec_count).sum(),
        total_matvec_regularized: pick(Method::Regularized).map(|r| r.matvec_count).sum(),
    };
    write_json(&args.common.out, "summary.json", &summary)
}

fn read_sets(path: &Path, ids: &HashMap<u64, usize>, n: usize) -> Result<Vec<(String, NodeSet)>> {
    let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    let mut sets = Vec::new();
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut fields = line.split_whitespace();
        let name = fields.next().expect("non-empty line").to_string();
        let mut members = Vec::new();
        for f in fields {
            let ext: u64 = f
                .parse()
                .with_context(|| format!("{}:{}: invalid node id {f:?}", path.display(), i + 1))?;
            match ids.get(&ext) {
                Some(&v) => members.push(v),
                None => bail!("{}:{}: node {ext} is not in the largest component", path.display(), i + 1),
            }
        }
        let set = NodeSet::new(members, n)?;
        set.ensure_proper(n)
            .with_context(|| format!("{}:{}: set {name}", path.display(), i + 1))?;
        sets.push((name, set));
    }
    Ok(sets)
}

pub fn corecut_table(args: &TableArgs) -> Result<()> {
    let Ingested { graph, external_ids } = load(&args.common.source, args.common.seed)?;
    let n = graph.node_count();
    let index: HashMap<u64, usize> = external_ids.iter().enumerate().map(|(v, &e)| (e, v)).collect();
    let sets = read_sets(&args.sets, &index, n)?;
    let taus: Vec<f64> = args
        .tau
        .iter()
        .map(|t| RegularizationConfig::new(*t, corecut::Variant::EdgeWise).resolve(&graph).map(|r| r.tau()))
        .collect::<corecut::Result<_>>()?;
    prepare(&args.common.out)?;
    let mut w = csv::Writer::from_writer(create(&args.common.out, "table.csv")?);
    w.write_record(["set", "size", "volume", "conductance", "tau", "corecut"])?;
    for (name, set) in &sets {
        let stats = cut_stats(&graph, set)?;
        for &tau in &taus {
            let cc = corecut(&graph, tau, set)?;
            w.write_record([
                name.clone(),
                set.len().to_string(),
                stats.vol_s.to_string(),
                stats.conductance.to_string(),
                tau.to_string(),
                cc.value.to_string(),
            ])?;
        }
    }
    w.flush()?;
    write_id_map(create(&args.common.out, "id_map.csv")?, &external_ids)?;
    Ok(())
}
