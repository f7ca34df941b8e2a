//! Command-line driver for `biaslab-core`: argument parsing, experiment
//! dispatch and JSON reports.
//!
//! Each run produces one document `{"command", "version", "inputs",
//! "result"}`. With identical inputs and seeds the bytes are identical; the
//! optional `timestamp` field is the only exception and is off by default.

pub mod args;

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context as _, Result};
use biaslab_core::bias::{
    count_biased_cliques, count_biased_graphs, is_biased_clique, is_biased_graph, is_scarce, max_stable_set, rng_for,
    sample_greedy_stable, StableMode, DEFAULT_COUNT_CAP, DEFAULT_OPTIMA_CAP,
};
use biaslab_core::bounds::{bounds_report, crossover};
use biaslab_core::cache::{cache_file_name, cache_load, cache_save, load_or_build};
use biaslab_core::compression::{compress, reconstruct, CompressionScheme};
use biaslab_core::containers::{run_containers, ContainerOverrides, ContainerParams};
use biaslab_core::cycles::{cycle_count_by_length, edge_index};
use biaslab_core::labelling::{
    abelian_labellable, abelian_pattern_decomposition, balanced_set, zero_patterns, AbelianGroup, EdgeLabelling,
    ZeroPatternSystem, DEFAULT_CYCLE_CAP, DEFAULT_WITNESS_CAP,
};
use biaslab_core::rings::{
    dependent_pairs, dependent_pairs_bound, enumerate_diamond_rings, is_bad_ring, monte_carlo, ring_count_formula,
    ring_dependency, ring_hamiltons,
};
use biaslab_core::{enumerate_cycles, hamilton_ids, BiasSet, BuildMethod, CycleCatalog, OverlapGraph, SimpleGraph};
use serde::Serialize;
use serde_json::{json, Map, Value};

use args::*;
pub use args::{Cli, Command, Experiment, Globals, TopCommand};

/// Settings that affect where things are stored but not what is computed.
#[derive(Clone, Debug, Default)]
pub struct Context {
    pub cache_dir: Option<PathBuf>,
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

/// Wraps a result with the experiment that produced it.
pub fn report(exp: &Experiment, result: Value, timestamp: Option<u64>) -> Value {
    let mut doc = Map::new();
    doc.insert("command".into(), json!(exp.command.name()));
    doc.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
    doc.insert("inputs".into(), to_value(exp));
    doc.insert("result".into(), result);
    if let Some(t) = timestamp {
        doc.insert("timestamp".into(), json!(t));
    }
    Value::Object(doc)
}

/// Parses one spec object, rejecting keys no command understands.
pub fn parse_experiment(spec: &Value) -> Result<Experiment> {
    let exp: Experiment = serde_json::from_value(spec.clone()).map_err(|e| anyhow!("invalid experiment spec: {e}"))?;
    let echoed = to_value(&exp);
    if let (Some(given), Some(known)) = (spec.as_object(), echoed.as_object()) {
        for (key, value) in given {
            let empty = value.is_null() || value.as_array().is_some_and(|a| a.is_empty());
            if !empty && !known.contains_key(key) {
                bail!("unknown parameter `{key}` for command `{}`", exp.command.name());
            }
        }
    }
    Ok(exp)
}

/// Runs a spec file's contents: one object gives one report, an array gives
/// an array of reports.
pub fn run_spec(text: &str, ctx: &Context) -> Result<Value> {
    let spec: Value = serde_json::from_str(text).context("spec is not valid JSON")?;
    match &spec {
        Value::Array(items) => items
            .iter()
            .map(|s| {
                let exp = parse_experiment(s)?;
                Ok(report(&exp, run_experiment(&exp, ctx)?, None))
            })
            .collect::<Result<Vec<_>>>()
            .map(Value::Array),
        _ => {
            let exp = parse_experiment(&spec)?;
            Ok(report(&exp, run_experiment(&exp, ctx)?, None))
        }
    }
}

pub fn run_experiment(exp: &Experiment, ctx: &Context) -> Result<Value> {
    let g = &exp.globals;
    match &exp.command {
        Command::Cycles(a) => cmd_cycles(g, a),
        Command::Omega(a) => cmd_omega(g, a, ctx),
        Command::Validate(a) => cmd_validate(g, a, ctx),
        Command::Count(a) => cmd_count(g, a),
        Command::Mis(a) => cmd_mis(g, a, ctx),
        Command::Containers(a) => cmd_containers(g, a, ctx),
        Command::Compress(a) => cmd_compress(g, a, ctx),
        Command::Reconstruct(a) => cmd_reconstruct(g, a, ctx),
        Command::Label(a) => cmd_label(g, a),
        Command::Patterns(a) => cmd_patterns(g, a),
        Command::Rings(a) => cmd_rings(g, a),
        Command::Mc(a) => cmd_mc(g, a),
        Command::Bounds(a) => cmd_bounds(g, a),
        Command::Cache(a) => cmd_cache(g, a, ctx),
    }
}

fn build_method(m: Method) -> BuildMethod {
    match m {
        Method::Pairwise => BuildMethod::Pairwise,
        Method::Extension => BuildMethod::Extension,
    }
}

/// The overlap graph, through the cache when a directory is configured.
/// Cache hits are reported on stderr so the JSON stays reproducible.
fn overlap(n: usize, method: Method, ctx: &Context) -> Result<OverlapGraph> {
    match &ctx.cache_dir {
        Some(dir) => {
            let (g, hit) = load_or_build(dir, n, build_method(method))?;
            eprintln!("cache {}: {}", if hit { "hit" } else { "miss" }, dir.join(cache_file_name(n)).display());
            Ok(g)
        }
        None => Ok(OverlapGraph::build(n, build_method(method))?),
    }
}

fn parse_vertices(s: &str) -> Result<Vec<u8>> {
    s.split('-')
        .map(|v| v.trim().parse::<u8>().map_err(|_| anyhow!("`{s}` is not a dash-separated vertex list")))
        .collect()
}

fn parse_graph(n: usize, edges: Option<&Vec<String>>) -> Result<SimpleGraph> {
    let Some(edges) = edges else {
        return Ok(SimpleGraph::complete(n));
    };
    let mut mask = 0u64;
    for e in edges {
        match parse_vertices(e)?[..] {
            [u, v] if u != v && (1..=n as u8).contains(&u) && (1..=n as u8).contains(&v) => {
                mask |= 1 << edge_index(n, u, v);
            }
            _ => bail!("`{e}` is not an edge of K_{n}"),
        }
    }
    Ok(SimpleGraph { n, edges: mask })
}

fn parse_cycles(cat: &CycleCatalog, cycles: &[String]) -> Result<BiasSet> {
    let mut ids = Vec::new();
    for c in cycles {
        ids.push(cat.id_of_sequence(&parse_vertices(c)?).with_context(|| format!("cycle `{c}`"))?);
    }
    Ok(BiasSet::from_ids(cat, ids))
}

fn bias_from_file(cat: &CycleCatalog, path: &Path) -> Result<BiasSet> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let v: Value = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    let id_list = |a: &Vec<Value>| -> Result<BiasSet> {
        let mut ids = Vec::new();
        for x in a {
            let id = x.as_u64().filter(|&i| (i as usize) < cat.len()).ok_or_else(|| anyhow!("bad cycle id {x}"))?;
            ids.push(id as u32);
        }
        Ok(BiasSet::from_ids(cat, ids))
    };
    match &v {
        Value::Array(a) => id_list(a),
        Value::Object(o) => {
            if let Some(n) = o.get("n").and_then(Value::as_u64) {
                if n as usize != cat.n() {
                    bail!("{} holds a set on {n} vertices, not {}", path.display(), cat.n());
                }
            }
            match (o.get("cycles").and_then(Value::as_array), o.get("ids").and_then(Value::as_array)) {
                (Some(seqs), _) => {
                    let mut ids = Vec::new();
                    for s in seqs {
                        let seq: Vec<u8> = serde_json::from_value(s.clone())?;
                        ids.push(cat.id_of_sequence(&seq)?);
                    }
                    Ok(BiasSet::from_ids(cat, ids))
                }
                (None, Some(a)) => id_list(a),
                _ => bail!("{} has neither `cycles` nor `ids`", path.display()),
            }
        }
        _ => bail!("{} is not a bias set", path.display()),
    }
}

fn random_labelling(n: usize, graph: SimpleGraph, moduli: &[u64], seed: u64) -> EdgeLabelling<AbelianGroup> {
    EdgeLabelling::<AbelianGroup>::random(graph, AbelianGroup::from_moduli(moduli), &mut rng_for(seed, n as u64))
}

fn read_bias(g: &Globals, cat: &CycleCatalog, input: &BiasInput) -> Result<BiasSet> {
    if !input.cycles.is_empty() {
        parse_cycles(cat, &input.cycles)
    } else if let Some(p) = &input.bias_file {
        bias_from_file(cat, p)
    } else if let Some(moduli) = &input.labelled {
        let l = random_labelling(g.n, SimpleGraph::complete(g.n), moduli, g.seed);
        Ok(balanced_set(cat, &l, cycle_cap(g))?)
    } else {
        bail!("no bias set given: use --cycles, --bias-file or --labelled")
    }
}

fn cycle_cap(g: &Globals) -> usize {
    g.cap.map_or(DEFAULT_CYCLE_CAP, |c| c as usize)
}

fn cmd_cycles(g: &Globals, a: &CyclesArgs) -> Result<Value> {
    let cat = enumerate_cycles(g.n)?;
    let mut by_length = Vec::new();
    for k in 3..=g.n {
        let count = cat.ids_of_length(k).len();
        let formula = cycle_count_by_length(g.n, k)?;
        by_length.push(
            json!({ "k": k, "count": count, "formula": formula.to_string(), "matches": formula == count.into() }),
        );
    }
    let mut out = json!({ "n": g.n, "total": cat.len(), "by_length": by_length });
    if a.list {
        out["cycles"] = to_value(&cat.cycles().iter().map(|c| c.vertices()).collect::<Vec<_>>());
    }
    Ok(out)
}

fn cmd_omega(g: &Globals, a: &OmegaArgs, ctx: &Context) -> Result<Value> {
    let omega = overlap(g.n, a.method, ctx)?;
    let degrees: Vec<usize> = omega.catalog().ids().map(|i| omega.degree(i)).collect();
    let mut out = to_value(&omega.stats());
    out["min_degree"] = json!(degrees.iter().min());
    out["max_degree"] = json!(degrees.iter().max());
    if a.degrees {
        out["degrees"] = json!(degrees);
    }
    Ok(out)
}

fn cmd_validate(g: &Globals, a: &ValidateArgs, ctx: &Context) -> Result<Value> {
    let omega = overlap(g.n, Method::default(), ctx)?;
    let cat = omega.catalog();
    let b = read_bias(g, cat, &a.bias)?;
    let host = parse_graph(g.n, a.graph.as_ref())?;
    // first theta with two members in B and the third missing
    let violation = b.ids().find_map(|x| {
        omega.neighbors(x).iter().filter(|&&y| y > x && b.contains(y)).find_map(|&y| {
            let z = omega.third_id(x, y);
            (!b.contains(z)).then(|| json!({ "present": [cat.get(x).vertices(), cat.get(y).vertices()], "missing": cat.get(z).vertices() }))
        })
    });
    Ok(json!({
        "n": g.n,
        "bias": b.to_record(cat),
        "size": b.len(),
        "biased_clique": is_biased_clique(&b, &omega),
        "biased_graph": is_biased_graph(&host, &b, cat)?,
        "scarce": is_scarce(&b, &omega),
        "violation": violation,
    }))
}

fn cmd_count(g: &Globals, a: &CountArgs) -> Result<Value> {
    let count = match a.kind {
        CountKind::Cliques => count_biased_cliques(g.n, g.cap.map_or(DEFAULT_COUNT_CAP, |c| c as usize))?,
        CountKind::Graphs => count_biased_graphs(g.n)?,
    };
    Ok(json!({ "n": g.n, "kind": a.kind, "count": count.to_string() }))
}

fn cmd_mis(g: &Globals, a: &MisArgs, ctx: &Context) -> Result<Value> {
    let omega = overlap(g.n, Method::default(), ctx)?;
    let mode = match a.mode {
        MisMode::Size => StableMode::SizeOnly,
        MisMode::One => StableMode::OneWitness,
        MisMode::All => StableMode::AllOptima { cap: g.cap.map_or(DEFAULT_OPTIMA_CAP, |c| c as usize) },
    };
    let res = max_stable_set(&omega, mode);
    let hamiltons = hamilton_ids(omega.catalog());
    let witness = res.witnesses.first();
    Ok(json!({
        "n": g.n,
        "size": res.size,
        "hamilton_count": hamiltons.len(),
        "optimum_count": res.optimum_count,
        "unique": res.optimum_count.map(|c| c == 1),
        "cap_exceeded": res.cap_exceeded,
        "witness": witness,
        "witness_is_hamilton_set": witness.map(|w| *w == hamiltons),
    }))
}

fn cmd_containers(g: &Globals, a: &ContainersArgs, ctx: &Context) -> Result<Value> {
    let omega = overlap(g.n, Method::default(), ctx)?;
    let params = ContainerParams::new(g.n, ContainerOverrides { s: a.s, a: a.a, alpha: a.alpha })?;
    let inputs: Vec<BiasSet> = if a.bias.is_given() {
        vec![read_bias(g, omega.catalog(), &a.bias)?]
    } else {
        (0..a.samples).map(|t| sample_greedy_stable(&omega, &mut rng_for(g.seed, t))).collect()
    };
    let mut runs = Vec::new();
    let mut all_ok = true;
    for b in &inputs {
        let tr = run_containers(b, &omega, &params, false);
        let again = run_containers(&tr.fingerprint, &omega, &params, false);
        let contained = b.is_subset(&tr.container);
        let fingerprint_within = tr.fingerprint.is_subset(b);
        let rerun_agrees = again.container == tr.container;
        all_ok &= contained && fingerprint_within && rerun_agrees;
        let mut run = to_value(&tr.summary(&params));
        run["input_size"] = json!(b.len());
        run["input_scarce"] = json!(is_scarce(b, &omega));
        run["contained"] = json!(contained);
        run["fingerprint_within_input"] = json!(fingerprint_within);
        run["rerun_agrees"] = json!(rerun_agrees);
        if a.steps {
            run["steps"] = to_value(&tr.steps);
        }
        runs.push(run);
    }
    Ok(json!({ "params": params, "runs": runs, "all_checks_pass": all_ok }))
}

fn cmd_compress(g: &Globals, a: &CompressArgs, ctx: &Context) -> Result<Value> {
    let omega = overlap(g.n, Method::default(), ctx)?;
    let cat = omega.catalog();
    let b = read_bias(g, cat, &a.bias)?;
    let scheme = CompressionScheme::build(&omega);
    let c = compress(&b, &scheme, &omega)?;
    let short = b.intersection(scheme.short_set());
    let back = reconstruct(&c, &short, &scheme, &omega);
    Ok(json!({
        "scheme": scheme.summary(),
        "input": b.to_record(cat),
        "compressed": c.to_record(cat),
        "short": short.to_record(cat),
        "round_trip": back.as_ref() == Some(&b),
    }))
}

fn sequences_at(v: &Value, key: &str) -> Option<Vec<String>> {
    let seqs = v.get(key)?.get("cycles")?.as_array()?;
    seqs.iter()
        .map(|s| {
            let vs: Vec<u64> = serde_json::from_value(s.clone()).ok()?;
            Some(vs.iter().map(u64::to_string).collect::<Vec<_>>().join("-"))
        })
        .collect()
}

fn cmd_reconstruct(g: &Globals, a: &ReconstructArgs, ctx: &Context) -> Result<Value> {
    let omega = overlap(g.n, Method::default(), ctx)?;
    let cat = omega.catalog();
    let (compressed, short) = match &a.from {
        Some(p) => {
            let text = fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            let doc: Value = serde_json::from_str(&text)?;
            let body = doc.get("result").unwrap_or(&doc);
            let c =
                sequences_at(body, "compressed").ok_or_else(|| anyhow!("{} has no `compressed` set", p.display()))?;
            let s = sequences_at(body, "short").ok_or_else(|| anyhow!("{} has no `short` set", p.display()))?;
            (c, s)
        }
        None => (a.compressed.clone(), a.short.clone()),
    };
    let c = parse_cycles(cat, &compressed)?;
    let s = parse_cycles(cat, &short)?;
    let scheme = CompressionScheme::build(&omega);
    let b = reconstruct(&c, &s, &scheme, &omega);
    Ok(json!({ "n": g.n, "found": b.is_some(), "reconstructed": b.map(|b| b.to_record(cat)) }))
}

fn cmd_label(g: &Globals, a: &LabelArgs) -> Result<Value> {
    let cat = enumerate_cycles(g.n)?;
    let host = parse_graph(g.n, a.graph.as_ref())?;
    let cap = cycle_cap(g);
    let regenerates = |d: &biaslab_core::labelling::LabellabilityDecision, b: &BiasSet| -> Result<Option<bool>> {
        d.witness.as_ref().map(|w| balanced_set(&cat, w, cap).map(|wb| wb == *b)).transpose().map_err(Into::into)
    };
    if a.bias.is_given() {
        let b = read_bias(g, &cat, &a.bias)?;
        let d = abelian_labellable(&cat, &host, &b, cap)?;
        return Ok(json!({
            "mode": "decide",
            "bias": b.to_record(&cat),
            "decision": d,
            "witness_regenerates": regenerates(&d, &b)?,
        }));
    }
    let l = random_labelling(g.n, host, &a.moduli, g.seed);
    let b = balanced_set(&cat, &l, cap)?;
    let d = abelian_labellable(&cat, &host, &b, cap)?;
    let dec = abelian_pattern_decomposition(&cat, &l, cap)?;
    Ok(json!({
        "mode": "sample",
        "labelling": l,
        "balanced": b.to_record(&cat),
        "theta_property": is_biased_graph(&host, &b, &cat)?,
        "decision": d,
        "witness_regenerates": regenerates(&d, &b)?,
        "decomposition": {
            "moduli": dec.moduli.iter().map(|q| q.to_string()).collect::<Vec<_>>(),
            "patterns": dec.patterns,
            "union_is_unbalanced": dec.union(&cat) == BiasSet::full(&cat).difference(&b),
        },
    }))
}

fn cmd_patterns(g: &Globals, a: &PatternsArgs) -> Result<Value> {
    let cat = enumerate_cycles(g.n)?;
    let host = parse_graph(g.n, a.graph.as_ref())?;
    let system = ZeroPatternSystem::for_graph(&cat, &host);
    let mut r = zero_patterns(&system, a.q, g.cap.unwrap_or(DEFAULT_WITNESS_CAP))?;
    if !a.list {
        r.patterns.clear();
    }
    let mut out = to_value(&r);
    out["cycles"] = to_value(&system.cycles.iter().flatten().map(|&c| cat.get(c).vertices()).collect::<Vec<_>>());
    Ok(out)
}

fn cmd_rings(g: &Globals, a: &RingsArgs) -> Result<Value> {
    let cat = enumerate_cycles(g.n)?;
    let rings = enumerate_diamond_rings(&cat)?;
    let formula = ring_count_formula(g.n);
    let four = rings.iter().all(|r| ring_hamiltons(r, &cat).is_ok_and(|h| h == r.hamiltons));
    let dependent = rings.iter().all(|r| ring_dependency(r, &cat).is_some());
    let mut bad_found = 0u64;
    for t in 0..a.labelled_trials {
        let l = random_labelling(g.n, SimpleGraph::complete(g.n), &a.moduli, g.seed.wrapping_add(t));
        let b = balanced_set(&cat, &l, DEFAULT_CYCLE_CAP)?;
        bad_found += rings.iter().filter(|r| is_bad_ring(&b, r)).count() as u64;
    }
    let bound = dependent_pairs_bound(g.n);
    let mut out = json!({
        "n": g.n,
        "count": rings.len(),
        "formula": formula.to_string(),
        "matches_formula": formula.to_string() == rings.len().to_string(),
        "four_hamiltons_each": four,
        "signed_dependency_each": dependent,
        "dependent_pairs": dependent_pairs(&rings),
        "dependent_pairs_bound": bound.to_string(),
        "labelled": { "trials": a.labelled_trials, "moduli": a.moduli, "bad_rings_found": bad_found },
    });
    if a.list {
        out["rings"] = to_value(&rings);
    }
    Ok(out)
}

fn cmd_mc(g: &Globals, a: &McArgs) -> Result<Value> {
    let cat = enumerate_cycles(g.n)?;
    let mut r = monte_carlo(&cat, a.trials, g.seed, a.per_trial || a.csv.is_some())?;
    if let Some(path) = &a.csv {
        fs::write(path, r.per_trial_csv().unwrap_or_default())
            .with_context(|| format!("writing {}", path.display()))?;
    }
    if !a.per_trial {
        r.per_trial = None;
    }
    Ok(to_value(&r))
}

fn cmd_bounds(g: &Globals, a: &BoundsArgs) -> Result<Value> {
    let mut out = to_value(&bounds_report(g.n as u64)?);
    out["crossover"] = json!(crossover(a.crossover_max)?);
    Ok(out)
}

fn cmd_cache(g: &Globals, a: &CacheArgs, ctx: &Context) -> Result<Value> {
    let dir = ctx.cache_dir.as_deref();
    let default_path = || -> Result<PathBuf> {
        dir.map(|d| d.join(cache_file_name(g.n)))
            .ok_or_else(|| anyhow!("no cache directory: pass --cache-dir or set BIASLAB_CACHE_DIR"))
    };
    let (path, omega, extra) = match a.action {
        CacheAction::Ensure => {
            let d = dir.ok_or_else(|| anyhow!("no cache directory: pass --cache-dir or set BIASLAB_CACHE_DIR"))?;
            let (omega, hit) = load_or_build(d, g.n, BuildMethod::Extension)?;
            (default_path()?, omega, json!({ "hit": hit }))
        }
        CacheAction::Rebuild => {
            let path = default_path()?;
            let omega = OverlapGraph::build(g.n, BuildMethod::Extension)?;
            cache_save(&omega, &path)?;
            (path, omega, json!({}))
        }
        CacheAction::Verify => {
            let path = match &a.path {
                Some(p) => p.clone(),
                None => default_path()?,
            };
            let omega = cache_load(&path)?;
            let fresh = OverlapGraph::build(omega.n(), BuildMethod::Extension)?;
            let same = fresh.offsets() == omega.offsets() && fresh.neighbor_array() == omega.neighbor_array();
            (path, omega, json!({ "matches_fresh_build": same }))
        }
    };
    let mut out = json!({
        "n": omega.n(),
        "path": path.display().to_string(),
        "bytes": fs::metadata(&path)?.len(),
        "vertex_count": omega.vertex_count(),
        "edge_count": omega.edge_count(),
    });
    if let (Some(o), Some(e)) = (out.as_object_mut(), extra.as_object()) {
        o.extend(e.clone());
    }
    Ok(out)
}
