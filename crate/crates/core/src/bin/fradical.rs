use std::io::Write;
use std::process::ExitCode;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::mpsc;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use fradical::formation::parse_formation;
use fradical::group::mix_seed;
use fradical::input::{parse_group, parse_quotient};
use fradical::oracle::DEFAULT_ORACLE_BOUND;
use fradical::radical::{flength_series, fradical, fstar_radical, LengthKind};
use fradical::series::chief_series;
use fradical::suite::{check_group, Suite};
use fradical::{catalog, stats, Error, PermGroup, QuotientRef, Result, DEFAULT_SEED};

#[derive(Parser)]
#[command(name = "fradical", version, about = "Radicals, chief series and lengths of permutation groups")]
struct Cli {
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// The radical of a formation.
    Radical {
        #[arg(long)]
        group: String,
        #[arg(long)]
        formation: String,
        /// Normal subgroup to factor out (same syntax as --group).
        #[arg(long = "mod")]
        kernel: Option<String>,
        /// Include the chief series and per-factor audit.
        #[arg(long)]
        report: bool,
    },
    /// A length: h, lp:<p>, hstar, lambdap:<p> or lambda.
    Length {
        #[arg(long)]
        kind: String,
        #[arg(long)]
        group: String,
    },
    /// A chief series with the type of each factor
    ChiefSeries {
        #[arg(long)]
        group: String,
    },
    /// The generalized Fitting subgroup.
    Fstar {
        #[arg(long)]
        group: String,
    },
    /// Compare engine radicals with the brute-force oracle over a suite file.
    Check {
        #[arg(long)]
        suite: String,
        /// Oracle order bound; defaults to FRADICAL_ORACLE_BOUND or 5000.
        #[arg(long)]
        max_order: Option<u64>,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Time a formation radical across a one-parameter catalog family.
    Bench {
        #[arg(long)]
        family: String,
        /// Inclusive range such as 5..30.
        #[arg(long)]
        range: String,
        #[arg(long)]
        formation: Option<String>,
        /// Time a length instead of a radical.
        #[arg(long, conflicts_with = "formation")]
        length: Option<String>,
        /// Print an aligned table instead of records.
        #[arg(long)]
        table: bool,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn emit(record: &Value) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{record}");
}

fn subgroup_json(g: &PermGroup) -> Value {
    json!({
        "order": g.order().to_string(),
        "generators": g.gens().iter().map(|p| p.to_cycle_string()).collect::<Vec<_>>(),
    })
}

fn record(command: &str, input: Value, result: Value, ms: f64, seed: u64) -> Value {
    json!({ "command": command, "input": input, "result": result, "timings": { "wall_ms": ms }, "seed": seed })
}

fn elapsed_ms(t: Instant) -> f64 {
    t.elapsed().as_secs_f64() * 1e3
}

fn run(cli: Cli) -> Result<u8> {
    let seed = cli.seed;
    match cli.command {
        Command::Radical {
            group,
            formation,
            kernel,
            report,
        } => {
            let f = parse_formation(&formation)?;
            let mut q = parse_quotient(&group, seed)?;
            if let Some(k) = &kernel {
                let k = parse_group(k, seed)?;
                q = QuotientRef::new(q.ambient().clone(), k)?;
            }
            let t = Instant::now();
            let r = fradical(&q, &f)?;
            let ms = elapsed_ms(t);
            let mut result = subgroup_json(&r.subgroup);
            if report {
                result["report"] = json!({
                    "chief_series": r.series.as_ref().map(series_json),
                    "factors": r.factors.iter().map(|a| json!({
                        "type": a.factor_type.to_string(),
                        "value": a.value.to_string(),
                        "centralizer_order": a.centralizer.as_ref().map(|c| c.order().to_string()),
                        "generalized_order": a.generalized.as_ref().map(|c| c.order().to_string()),
                    })).collect::<Vec<_>>(),
                    "intersection_order": r.intersection.as_ref().map(|g| g.order().to_string()),
                    "sweep_orders": r.sweep.iter().map(|g| g.order().to_string()).collect::<Vec<_>>(),
                });
            }
            let input = json!({ "group": group, "formation": f.to_string(), "mod": kernel });
            emit(&record("radical", input, result, ms, seed));
        }
        Command::Length { kind, group } => {
            let k: LengthKind = kind.parse()?;
            let q = parse_quotient(&group, seed)?;
            let t = Instant::now();
            let (len, series) = flength_series(&q, k)?;
            let ms = elapsed_ms(t);
            let result = json!({
                "length": len.to_string(),
                "series_orders": series.iter().map(|g| g.order().to_string()).collect::<Vec<_>>(),
            });
            emit(&record("length", json!({ "group": group, "kind": k.to_string() }), result, ms, seed));
        }
        Command::ChiefSeries { group } => {
            let q = parse_quotient(&group, seed)?;
            let t = Instant::now();
            let s = chief_series(&q, &[], seed)?;
            let ms = elapsed_ms(t);
            emit(&record("chief-series", json!({ "group": group }), series_json(&s), ms, seed));
        }
        Command::Fstar { group } => {
            let q = parse_quotient(&group, seed)?;
            let t = Instant::now();
            let r = fstar_radical(&q)?;
            let ms = elapsed_ms(t);
            emit(&record("fstar", json!({ "group": group }), subgroup_json(&r), ms, seed));
        }
        Command::Check { suite, max_order, jobs } => return check(&suite, max_order, jobs, seed),
        Command::Bench {
            family,
            range,
            formation,
            length,
            table,
        } => bench(&family, &range, formation.as_deref(), length.as_deref(), table, seed)?,
    }
    Ok(0)
}

fn series_json(s: &fradical::series::ChiefSeries) -> Value {
    json!({
        "length": s.len(),
        "term_orders": s.terms().iter().map(|g| g.order().to_string()).collect::<Vec<_>>(),
        "factor_types": s.factor_types().iter().map(|t| t.to_string()).collect::<Vec<_>>(),
    })
}

fn oracle_bound(flag: Option<u64>) -> Result<u64> {
    if let Some(b) = flag {
        return Ok(b);
    }
    match std::env::var("FRADICAL_ORACLE_BOUND") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::InvalidSpec(format!("FRADICAL_ORACLE_BOUND is not a number: {v}"))),
        Err(_) => Ok(DEFAULT_ORACLE_BOUND),
    }
}

/// One group of a suite: its records and the worst exit code it implies.
fn check_one(suite: &Suite, idx: usize, bound: u64, seed: u64) -> (Vec<Value>, u8) {
    let entry = &suite.groups[idx];
    let texts = suite.formations_for(entry);
    let t = Instant::now();
    let outcome = parse_group(&entry.spec, mix_seed(seed, idx as u64)).and_then(|g| {
        let fs = texts.iter().map(|t| parse_formation(t)).collect::<Result<Vec<_>>>()?;
        check_group(&g, &fs, bound)
    });
    let ms = elapsed_ms(t);
    let input = json!({ "group": entry.spec, "name": entry.label() });
    match outcome {
        Ok(out) => {
            let mut code = 0;
            let mut records = Vec::new();
            let pairs: Vec<Value> = out
                .pairs
                .iter()
                .map(|p| {
                    json!({
                        "formation": p.formation.to_string(),
                        "engine_order": p.engine.order().to_string(),
                        "oracle_order": p.oracle.order().to_string(),
                        "pass": p.agrees(),
                    })
                })
                .collect();
            if !out.passed() {
                code = 3;
            }
            let result = json!({
                "pass": out.passed(),
                "normal_subgroups": out.lattice.len(),
                "chief_series_verified": out.chief_verified,
                "pairs": pairs,
            });
            records.push(record("check", input, result, ms, seed));
            (records, code)
        }
        Err(e) => {
            let result = json!({ "pass": false, "error": e.to_string() });
            (vec![record("check", input, result, ms, seed)], e.exit_code() as u8)
        }
    }
}

fn check(path: &str, max_order: Option<u64>, jobs: Option<usize>, seed: u64) -> Result<u8> {
    let suite = Suite::load(path)?;
    let bound = oracle_bound(max_order)?;
    let jobs = jobs
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
        .clamp(1, suite.groups.len().max(1));
    let next = AtomicUsize::new(0);
    let (tx, rx) = mpsc::channel();
    let mut worst = 0u8;
    let (mut failures, mut refusals) = (0usize, 0usize);
    std::thread::scope(|scope| {
        for _ in 0..jobs {
            let tx = tx.clone();
            let (suite, next) = (&suite, &next);
            scope.spawn(move || loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= suite.groups.len() {
                    break;
                }
                if tx.send((i, check_one(suite, i, bound, seed))).is_err() {
                    break;
                }
            });
        }
        drop(tx);
        // records leave in suite order through this single writer
        let mut pending = std::collections::BTreeMap::new();
        let mut due = 0;
        for (i, result) in rx {
            pending.insert(i, result);
            while let Some((records, code)) = pending.remove(&due) {
                for r in &records {
                    emit(r);
                }
                match code {
                    0 => {}
                    2 => refusals += 1,
                    _ => failures += 1,
                }
                worst = worst.max(code);
                due += 1;
            }
        }
    });
    eprintln!(
        "{} groups: {} passed, {} failed, {} refused",
        suite.groups.len(),
        suite.groups.len() - failures - refusals,
        failures,
        refusals
    );
    Ok(worst)
}

fn parse_range(text: &str) -> Result<(usize, usize)> {
    let bad = || Error::InvalidSpec(format!("range must look like 5..30, got '{text}'"));
    let (a, b) = text.split_once("..").ok_or_else(bad)?;
    let a: usize = a.trim().parse().map_err(|_| bad())?;
    let b: usize = b.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
    if a > b {
        return Err(bad());
    }
    Ok((a, b))
}

fn family_member(family: &str, n: usize) -> Option<Result<PermGroup>> {
    match family {
        "sym" => Some(Ok(catalog::symmetric(n))),
        "alt" => Some(Ok(catalog::alternating(n))),
        "cyclic" => Some(Ok(catalog::cyclic(n))),
        "dihedral" => Some(catalog::dihedral(n)),
        "psl2" | "agl1" | "sl2" | "gl2" if !fradical::perm::is_prime(n as u64) => None,
        "psl2" => Some(catalog::psl2(n)),
        "agl1" => Some(catalog::agl1(n)),
        "sl2" => Some(catalog::sl2(n)),
        "gl2" => Some(catalog::gl2(n)),
        "wreath-s2" => Some(Ok(catalog::wreath(&catalog::symmetric(2), &catalog::symmetric(n)))),
        "wreath-s3" => Some(Ok(catalog::wreath(&catalog::symmetric(3), &catalog::symmetric(n)))),
        _ => Some(Err(Error::InvalidSpec(format!(
            "unknown family '{family}' (sym, alt, cyclic, dihedral, psl2, agl1, sl2, gl2, wreath-s2, wreath-s3)"
        )))),
    }
}

fn bench(
    family: &str,
    range: &str,
    formation: Option<&str>,
    length: Option<&str>,
    table: bool,
    seed: u64,
) -> Result<()> {
    let (lo, hi) = parse_range(range)?;
    let task = match (formation, length) {
        (_, Some(k)) => Task::Length(k.parse()?),
        (Some(f), None) => Task::Radical(parse_formation(f)?),
        (None, None) => Task::Radical(parse_formation("nil")?),
    };
    let label = match &task {
        Task::Radical(f) => f.to_string(),
        Task::Length(k) => k.to_string(),
    };
    if table {
        println!("{:>6} {:>10} {:>12} {:>10} {:>12} {:>10}  result", "param", "degree", "wall_ms", "ratio", "sifts", "nodes");
    }
    let mut previous: Option<f64> = None;
    for n in lo..=hi {
        let Some(g) = family_member(family, n) else { continue };
        let g = g?.reseeded(mix_seed(seed, n as u64));
        let q = QuotientRef::whole(g.clone());
        let before = stats::snapshot();
        let t = Instant::now();
        let result = match &task {
            Task::Radical(f) => fradical(&q, f)?.subgroup.order().to_string(),
            Task::Length(k) => flength_series(&q, *k)?.0.to_string(),
        };
        let ms = elapsed_ms(t);
        let work = stats::snapshot().since(before);
        let ratio = previous.map(|p| ms / p.max(1e-3));
        previous = Some(ms);
        if table {
            println!(
                "{:>6} {:>10} {:>12.3} {:>10} {:>12} {:>10}  {}",
                n,
                g.degree(),
                ms,
                ratio.map_or("-".to_string(), |r| format!("{r:.2}")),
                work.sifts,
                work.backtrack_nodes,
                result
            );
        } else {
            let input = json!({ "family": family, "parameter": n, "degree": g.degree(), "task": label });
            let result = json!({ "group_order": g.order().to_string(), "value": result, "time_ratio": ratio });
            let mut r = record("bench", input, result, ms, seed);
            r["timings"]["sifts"] = json!(work.sifts);
            r["timings"]["backtrack_nodes"] = json!(work.backtrack_nodes);
            emit(&r);
        }
    }
    Ok(())
}

enum Task {
    Radical(fradical::formation::Formation),
    Length(LengthKind),
}
