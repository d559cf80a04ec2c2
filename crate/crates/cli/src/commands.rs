//! The `eval`, `compare` and `bench` commands.

use std::f64::consts::PI;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use jfourier::{Error, Evaluation, C64};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::args::{BenchArgs, CompareArgs, EvalArgs, PointArgs};
use crate::error::CliError;
use crate::functions::{Function, Point};
use crate::grid::{expand, RawPoint};
use crate::report::{
    diagnostic_fields, write_comparison, write_reports, ComparisonRow, ComparisonSummary,
    EvalReport,
};

fn open_output(out: Option<&Path>) -> Result<Box<dyn Write>, CliError> {
    Ok(match out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(std::io::stdout())),
    })
}

fn typed_points(function: Function, points: &PointArgs) -> Result<Vec<Point>, CliError> {
    let raw = expand(points)?;
    if raw.iter().all(RawPoint::is_empty) {
        return Err(CliError::usage(format!(
            "{} needs parameters (see --help)",
            function.name()
        )));
    }
    raw.iter().map(|r| function.typed_point(r)).collect()
}

/// Runs `f` over the points on at most `jobs` threads, keeping input order.
fn par_map<T: Send>(
    points: &[Point],
    jobs: Option<usize>,
    f: impl Fn(&Point) -> T + Sync + Send,
) -> Result<Vec<T>, CliError> {
    if jobs == Some(0) {
        return Err(CliError::usage("--jobs must be at least 1"));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.unwrap_or(0))
        .build()
        .map_err(|e| CliError::Io(std::io::Error::other(e)))?;
    Ok(pool.install(|| points.par_iter().map(f).collect()))
}

fn timed(function: Function, method: &str, p: &Point) -> (Result<Evaluation, Error>, u64) {
    let start = Instant::now();
    let r = function.evaluate(method, p);
    (r, start.elapsed().as_nanos() as u64)
}

fn describe(p: &Point) -> String {
    p.values
        .iter()
        .map(|(k, v)| format!("--{k} {v}"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn report_failures(failures: &[String]) -> Result<(), CliError> {
    for f in failures {
        eprintln!("error: {f}");
    }
    if failures.is_empty() {
        Ok(())
    } else {
        Err(CliError::Numeric(format!(
            "{} point(s) failed",
            failures.len()
        )))
    }
}

pub fn cmd_eval(args: &EvalArgs) -> Result<(), CliError> {
    let f = args.function;
    let method = f.method(args.method.as_deref().unwrap_or(f.oracle()))?;
    let points = typed_points(f, &args.points)?;
    let results = par_map(&points, args.output.jobs, |p| timed(f, method, p))?;

    let mut reports = Vec::new();
    let mut failures = Vec::new();
    for (p, (r, ns)) in points.iter().zip(results) {
        match r {
            Ok(e) => reports.push(EvalReport {
                function: f.name().to_string(),
                method: method.to_string(),
                parameters: p.values.clone(),
                value: e.value,
                diagnostics: diagnostic_fields(&e.diagnostics),
                wall_time_ns: ns,
            }),
            Err(e) => failures.push(format!("{} {method} at {}: {e}", f.name(), describe(p))),
        }
    }
    let mut out = open_output(args.output.out.as_deref())?;
    write_reports(&mut out, &reports, args.output.format)?;
    out.flush()?;
    report_failures(&failures)
}

pub fn cmd_compare(args: &CompareArgs) -> Result<(), CliError> {
    let f = args.function;
    if args.methods.len() < 2 {
        return Err(CliError::usage("compare needs at least two methods"));
    }
    let methods = args
        .methods
        .iter()
        .map(|m| f.method(m.trim()))
        .collect::<Result<Vec<_>, _>>()?;
    if !(args.tol >= 0.0) {
        return Err(CliError::usage("--tol must be a nonnegative number"));
    }
    let points = typed_points(f, &args.points)?;
    let results = par_map(&points, args.output.jobs, |p| {
        methods
            .iter()
            .map(|m| f.evaluate(m, p).map(|e| e.value))
            .collect::<Vec<_>>()
    })?;

    let mut rows = Vec::new();
    let mut failures = Vec::new();
    for (p, values) in points.iter().zip(results) {
        for (m, v) in methods.iter().zip(&values) {
            if let Err(e) = v {
                failures.push(format!("{} {m} at {}: {e}", f.name(), describe(p)));
            }
        }
        let Ok(reference) = values[0] else { continue };
        for (m, v) in methods.iter().zip(&values).skip(1) {
            if let Ok(v) = v {
                rows.push(ComparisonRow::new(
                    f.name(),
                    methods[0],
                    m,
                    p.values.clone(),
                    reference,
                    *v,
                ));
            }
        }
    }
    let fold = |g: fn(&ComparisonRow) -> f64| rows.iter().map(g).fold(0.0, f64::max);
    let max_discrepancy = fold(|r| r.discrepancy);
    let summary = ComparisonSummary {
        points: points.len(),
        max_abs_err: fold(|r| r.abs_err),
        max_rel_err: fold(|r| r.rel_err),
        max_discrepancy,
        tol: args.tol,
        pass: failures.is_empty() && max_discrepancy <= args.tol,
    };
    let mut out = open_output(args.output.out.as_deref())?;
    write_comparison(&mut out, &rows, &summary, args.output.format)?;
    out.flush()?;
    report_failures(&failures)?;
    if !summary.pass {
        return Err(CliError::Numeric(format!(
            "max discrepancy {:e} exceeds tolerance {:e}",
            summary.max_discrepancy, args.tol
        )));
    }
    Ok(())
}

/// The default benchmark grid for `bessel-j`: seven orders times sixteen
/// arguments (moduli 0.5, 1, 3, 10 at phases 0, π/8, π/4, 3π/8).
pub fn default_bessel_grid() -> PointArgs {
    let nu = ["0", "0.3", "0.5", "1", "2.5", "1.7,0.5", "-0.3"];
    let mut z = Vec::new();
    for r in [0.5, 1.0, 3.0, 10.0] {
        for k in 0..4 {
            let c = C64::from_polar(r, k as f64 * PI / 8.0);
            z.push(format!("{:.17},{:.17}", c.re, c.im));
        }
    }
    PointArgs {
        nu: nu.iter().map(|s| s.to_string()).collect(),
        z,
        ..PointArgs::default()
    }
}

fn median(v: &mut [u64]) -> u64 {
    v.sort_unstable();
    if v.is_empty() {
        0
    } else {
        v[v.len() / 2]
    }
}

fn median_f(mut v: Vec<f64>) -> Option<f64> {
    if v.is_empty() {
        return None;
    }
    v.sort_by(f64::total_cmp);
    Some(v[v.len() / 2])
}

fn environment() -> Value {
    json!({
        "os": std::env::consts::OS,
        "arch": std::env::consts::ARCH,
        "logical_cpus": std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1),
        "rustc": env!("JFOURIER_RUSTC_VERSION"),
        "jfourier_version": env!("CARGO_PKG_VERSION"),
        "profile": if cfg!(debug_assertions) { "debug" } else { "release" },
        "timestamp_unix": SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0),
    })
}

fn value_json(v: C64) -> Value {
    json!([v.re, v.im])
}

/// Builds the benchmark report. Points are evaluated sequentially so that
/// timings do not compete for cores. The returned flag is false when any
/// point failed for any method.
pub fn bench_report(args: &BenchArgs) -> Result<(Value, bool), CliError> {
    let f = args.function;
    if args.repetitions == 0 {
        return Err(CliError::usage("--repetitions must be at least 1"));
    }
    let methods: Vec<&'static str> = if args.methods.is_empty() {
        let mut m = vec![f.oracle()];
        if f.default_contender() != f.oracle() {
            m.push(f.default_contender());
        }
        m
    } else {
        args.methods
            .iter()
            .map(|m| f.method(m.trim()))
            .collect::<Result<_, _>>()?
    };
    let points = if args.points.is_empty() && f == Function::BesselJ {
        typed_points(f, &default_bessel_grid())?
    } else {
        typed_points(f, &args.points)?
    };

    let oracle = f.oracle();
    let reference: Vec<Result<C64, Error>> = points
        .iter()
        .map(|p| f.evaluate(oracle, p).map(|e| e.value))
        .collect();

    let mut per_point: Vec<Value> = points
        .iter()
        .zip(&reference)
        .map(|(p, r)| {
            let params: serde_json::Map<String, Value> = p
                .values
                .iter()
                .map(|(k, v)| (k.clone(), crate::report::param_json(v)))
                .collect();
            json!({
                "parameters": params,
                "oracle": match r {
                    Ok(v) => json!({ "value": value_json(*v) }),
                    Err(e) => json!({ "error": e.to_string() }),
                },
                "results": {},
            })
        })
        .collect();

    let mut summaries = Vec::new();
    let mut all_ok = reference.iter().all(Result::is_ok);
    for &m in &methods {
        let mut medians = Vec::new();
        let mut rel_errs = Vec::new();
        let mut max_abs: f64 = 0.0;
        let mut failures = 0;
        for (i, p) in points.iter().enumerate() {
            let mut times = Vec::with_capacity(args.repetitions);
            let mut last = None;
            for _ in 0..args.repetitions {
                let (r, ns) = timed(f, m, p);
                times.push(ns);
                last = Some(r);
            }
            let med = median(&mut times);
            let entry = match last.expect("at least one repetition") {
                Ok(e) => {
                    medians.push(med);
                    let mut o = json!({ "value": value_json(e.value), "median_ns": med });
                    if let Ok(r) = &reference[i] {
                        let abs = (e.value - r).norm();
                        let rel = abs / r.norm().max(1.0);
                        max_abs = max_abs.max(abs);
                        rel_errs.push(rel);
                        o["abs_err"] = json!(abs);
                        o["rel_err"] = json!(rel);
                    }
                    o
                }
                Err(e) => {
                    failures += 1;
                    all_ok = false;
                    json!({ "error": e.to_string(), "median_ns": med })
                }
            };
            per_point[i]["results"][m] = entry;
        }
        let total: u64 = medians.iter().sum();
        summaries.push(json!({
            "method": m,
            "median_ns": median(&mut medians.clone()),
            "total_median_ns": total,
            "evaluated": medians.len(),
            "failures": failures,
            "max_abs_err": max_abs,
            "max_rel_err": rel_errs.iter().copied().fold(0.0, f64::max),
            "median_rel_err": median_f(rel_errs),
        }));
    }

    let report = json!({
        "function": f.name(),
        "oracle": oracle,
        "methods": methods,
        "repetitions": args.repetitions,
        "points": points.len(),
        "environment": environment(),
        "accuracy_metric": "|value - oracle| / max(1, |oracle|)",
        "summary": summaries,
        "per_point": per_point,
    });
    Ok((report, all_ok))
}

pub fn cmd_bench(args: &BenchArgs) -> Result<(), CliError> {
    let (report, all_ok) = bench_report(args)?;
    let mut out = open_output(args.out.as_deref())?;
    serde_json::to_writer_pretty(&mut out, &report)?;
    writeln!(out)?;
    out.flush()?;
    if !all_ok {
        return Err(CliError::Numeric(
            "some points failed; see the per_point errors in the report".into(),
        ));
    }
    Ok(())
}
