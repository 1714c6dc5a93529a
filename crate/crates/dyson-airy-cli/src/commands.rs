use std::fs;
use std::time::Instant;

use dyson_airy::airy::{airy_constants, airy_real, airy_zeros, shared_zeros};
use dyson_airy::config::check_conditions;
use dyson_airy::correlations::{
    correlation_function, density_profile, fredholm, initial_recovery, painleve_curve, relaxation_residual, CorrelationQuery, Probe, RelaxationBox,
};
use dyson_airy::kernels::evaluate_batch;
use dyson_airy::sim::{estimate_correlation, simulate, Ensemble};
use dyson_airy::verify::{all_ids, run_criterion, CRITERIA};
use dyson_airy::{Configuration, Generator, KernelKind, KernelSpec, SimMethod, SimPlan, Thresholds};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::args::*;
use crate::error::CliError;
use crate::output::{float, Sink};

/// What a command resolved from its arguments, recorded in the manifest.
#[derive(Default)]
pub struct Run {
    pub inputs: Value,
    pub seed: Option<u64>,
}

pub fn execute(command: &Command, sink: &mut Sink, run: &mut Run) -> Result<(), CliError> {
    match command {
        Command::Airy(AiryCommand::Zeros { count }) => airy_zeros_cmd(*count, sink, run),
        Command::Airy(AiryCommand::Constants) => airy_constants_cmd(sink, run),
        Command::ConfigCheck(a) => config_check(a, sink, run),
        Command::Kernel(KernelCommand::Eval(a)) => kernel_eval(a, sink, run),
        Command::Kernel(KernelCommand::Grid(a)) => kernel_grid(a, sink, run),
        Command::Correlate(CorrelateCommand::Point(a)) => correlate_point(a, sink, run),
        Command::Correlate(CorrelateCommand::Density(a)) => correlate_density(a, sink, run),
        Command::Simulate(a) => simulate_cmd(a, sink, run),
        Command::Relax(RelaxCommand::Residual(a)) => relax_residual(a, sink, run),
        Command::Relax(RelaxCommand::Recovery(a)) => relax_recovery(a, sink, run),
        Command::Tw(a) => tw(a, sink, run),
        Command::Verify(a) => verify(a, sink, run),
    }
}

fn airy_zeros_cmd(count: usize, sink: &mut Sink, run: &mut Run) -> Result<(), CliError> {
    run.inputs = json!({ "command": "airy zeros", "count": count });
    if count == 0 {
        return Err(CliError::Usage("--count must be at least 1".into()));
    }
    let table = airy_zeros::<f64>(count).map_err(|e| CliError::Numeric(e.to_string()))?;
    let rows = table.as_slice().iter().enumerate().map(|(j, &a)| vec![(j + 1).to_string(), float(a), float(airy_real(a).1)]);
    sink.csv(&["j", "a_j", "ai_prime"], rows)?;
    Ok(())
}

fn airy_constants_cmd(sink: &mut Sink, run: &mut Run) -> Result<(), CliError> {
    run.inputs = json!({ "command": "airy constants" });
    let c = airy_constants::<f64>();
    sink.json(json!({ "d0": c.d0, "d1": c.d1 }))?;
    Ok(())
}

/// Resolves the configuration flags; `None` when neither was given.
fn load_config(src: &ConfigSource) -> Result<Option<Configuration>, CliError> {
    let config = match (&src.config, src.generator) {
        (Some(path), _) => {
            let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
            Configuration::from_json(&text)?
        }
        (None, Some(g)) => Configuration::builtin(match g {
            GeneratorName::Airy => Generator::Airy { n: src.n },
            GeneratorName::Integers => Generator::Integers { n: src.n },
            GeneratorName::Eta => Generator::Eta { kappa: src.kappa, n: src.n },
        })?,
        (None, None) => return Ok(None),
    };
    Ok(Some(if src.finite { config.without_generator() } else { config }))
}

fn config_value(c: &Option<Configuration>) -> Value {
    c.as_ref().map_or(Value::Null, |c| serde_json::from_str(&c.to_json()).expect("configuration JSON round-trips"))
}

fn require_config(src: &ConfigSource) -> Result<Configuration, CliError> {
    load_config(src)?.ok_or_else(|| CliError::Usage("a configuration is required (--config or --generator)".into()))
}

fn config_check(a: &ConfigCheckArgs, sink: &mut Sink, run: &mut Run) -> Result<(), CliError> {
    let config = require_config(&a.source)?;
    let th = Thresholds {
        c0: a.c0,
        alpha: a.alpha,
        c1: a.c1,
        beta: a.beta,
        c2: a.c2,
        kappa: a.occupancy,
        tolerance: a.tolerance,
        ..Thresholds::default()
    };
    run.inputs = json!({ "command": "config-check", "config": config_value(&Some(config.clone())), "thresholds": th });
    let report = check_conditions(&config, &th)?;
    sink.json(json!({ "inputs": run.inputs, "admissible": report.admissible(), "report": report }))?;
    Ok(())
}

fn kernel_spec(choice: &KernelChoice) -> Result<(KernelSpec, Value), CliError> {
    let config = load_config(&choice.source)?;
    let kind = match choice.kind {
        KindName::Sine => KernelKind::Sine,
        KindName::ExtSine => KernelKind::ExtSine,
        KindName::Airy => KernelKind::Airy,
        KindName::ExtAiry => KernelKind::ExtAiry,
        KindName::Finite => KernelKind::FiniteConfig,
        KindName::Infinite => KernelKind::InfiniteConfig,
        KindName::AiryRelaxation => KernelKind::AiryRelaxation,
    };
    // the finite kernel only uses the materialized atoms
    let config = if kind == KernelKind::FiniteConfig { config.map(|c| c.without_generator()) } else { config };
    let inputs = json!({ "kind": kind, "config": config_value(&config) });
    let spec = match config {
        Some(c) => KernelSpec::with_config(kind, c),
        None => KernelSpec::new(kind),
    };
    Ok((spec, inputs))
}

type Point4 = (f64, f64, f64, f64);

fn read_points(path: &std::path::Path) -> Result<Vec<Point4>, CliError> {
    let mut reader = csv::Reader::from_path(path).map_err(|e| CliError::io(path, std::io::Error::other(e.to_string())))?;
    let headers = reader.headers().map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?.clone();
    let col = |name: &str| {
        headers.iter().position(|h| h.trim() == name).ok_or_else(|| CliError::Usage(format!("{}: missing column {name}", path.display())))
    };
    let idx = [col("s")?, col("x")?, col("t")?, col("y")?];
    let mut out = Vec::new();
    for (line, record) in reader.records().enumerate() {
        let record = record.map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
        let v: Result<Vec<f64>, _> = idx.iter().map(|&i| record.get(i).unwrap_or("").trim().parse::<f64>()).collect();
        let v = v.map_err(|_| CliError::Usage(format!("{}: bad number on data row {}", path.display(), line + 1)))?;
        out.push((v[0], v[1], v[2], v[3]));
    }
    Ok(out)
}

fn write_kernel_rows(sink: &mut Sink, points: &[Point4], values: &[f64]) -> Result<(), CliError> {
    let rows = points.iter().zip(values).map(|(&(s, x, t, y), &v)| vec![float(s), float(x), float(t), float(y), float(v)]);
    sink.csv(&["s", "x", "t", "y", "value"], rows)?;
    Ok(())
}

fn kernel_eval(a: &KernelEvalArgs, sink: &mut Sink, run: &mut Run) -> Result<(), CliError> {
    let (spec, kernel) = kernel_spec(&a.kernel)?;
    let mut points: Vec<Point4> = a.at.iter().map(|q| (q.0[0], q.0[1], q.0[2], q.0[3])).collect();
    if let Some(path) = &a.points {
        points.extend(read_points(path)?);
    }
    run.inputs = json!({ "command": "kernel eval", "kernel": kernel, "points": points });
    if points.is_empty() {
        return Err(CliError::Usage("no points given (--at or --points)".into()));
    }
    let values = evaluate_batch(&spec, &points)?;
    write_kernel_rows(sink, &points, &values)
}

fn kernel_grid(a: &KernelGridArgs, sink: &mut Sink, run: &mut Run) -> Result<(), CliError> {
    let (spec, kernel) = kernel_spec(&a.kernel)?;
    let (xs, ys) = (a.x.nodes(), a.y.nodes());
    let points: Vec<Point4> = xs.iter().flat_map(|&x| ys.iter().map(move |&y| (a.s, x, a.t, y))).collect();
    run.inputs = json!({ "command": "kernel grid", "kernel": kernel, "s": a.s, "t": a.t, "x": xs, "y": ys });
    let values = evaluate_batch(&spec, &points)?;
    write_kernel_rows(sink, &points, &values)
}

fn correlate_point(a: &CorrelatePointArgs, sink: &mut Sink, run: &mut Run) -> Result<(), CliError> {
    let (spec, kernel) = kernel_spec(&a.kernel)?;
    let blocks: Vec<(f64, Vec<f64>)> = a.blocks.iter().map(|b| (b.t, b.xs.clone())).collect();
    run.inputs = json!({ "command": "correlate point", "kernel": kernel, "blocks": blocks });
    let start = Instant::now();
    let query = CorrelationQuery::new(spec, blocks)?;
    let c = correlation_function(&query)?;
    let seconds = start.elapsed().as_secs_f64();
    let n = query.point_count();
    sink.csv(
        &["points", "value", "condition", "ill_conditioned"],
        [vec![n.to_string(), float(c.value), float(c.condition), c.ill_conditioned.to_string()]],
    )?;
    sink.json(json!({ "inputs": run.inputs, "outputs": c, "runtime_seconds": seconds }))?;
    Ok(())
}

fn correlate_density(a: &CorrelateDensityArgs, sink: &mut Sink, run: &mut Run) -> Result<(), CliError> {
    let (spec, kernel) = kernel_spec(&a.kernel)?;
    let grid = a.grid.nodes();
    run.inputs = json!({ "command": "correlate density", "kernel": kernel, "t": a.t, "grid": grid });
    let start = Instant::now();
    let rho = density_profile(&spec, a.t, &grid)?;
    let seconds = start.elapsed().as_secs_f64();
    sink.csv(&["t", "x", "rho"], grid.iter().zip(&rho).map(|(&x, &r)| vec![float(a.t), float(x), float(r)]))?;
    sink.json(json!({ "inputs": run.inputs, "outputs": { "points": grid.len() }, "runtime_seconds": seconds }))?;
    Ok(())
}

fn simulate_cmd(a: &SimulateArgs, sink: &mut Sink, run: &mut Run) -> Result<(), CliError> {
    let initial = require_config(&a.source)?.without_generator();
    let plan = SimPlan {
        initial,
        times: a.times.clone(),
        paths: a.paths,
        dt: a.dt,
        method: match a.method {
            MethodName::Euler => SimMethod::Euler,
            MethodName::Matrix => SimMethod::Matrix,
        },
        seed: a.seed,
    };
    run.seed = a.seed;
    run.inputs = json!({
        "command": "simulate",
        "plan": plan,
        "format": format!("{:?}", a.format).to_lowercase(),
        "bins": [a.bins.lo, a.bins.hi, a.bins.n],
    });
    let start = Instant::now();
    let ens = simulate(&plan)?;
    let seconds = start.elapsed().as_secs_f64();
    match a.format {
        Format::Csv => {
            let rows = (0..ens.paths()).flat_map(|p| {
                let ens = &ens;
                plan.times.iter().enumerate().flat_map(move |(k, &t)| {
                    ens.sample(p, k).iter().enumerate().map(move |(j, &y)| vec![p.to_string(), float(t), (j + 1).to_string(), float(y)])
                })
            });
            sink.csv(&["path", "time", "j", "y"], rows)?;
        }
        Format::Json => {
            let summary = summarize(&ens, &a.bins)?;
            sink.json(json!({
                "inputs": run.inputs,
                "advised_dt": plan.advised_dt(),
                "diagnostics": ens.diagnostics,
                "ordering_violations": ens.ordering_violations(),
                "times": summary,
                "runtime_seconds": seconds,
            }))?;
        }
    }
    Ok(())
}

/// Per-time moments of each particle and of the center of mass, plus a histogram.
fn summarize(ens: &Ensemble, bins: &Grid) -> Result<Vec<Value>, CliError> {
    let n = ens.particles;
    let paths = ens.paths() as f64;
    let edges: Vec<f64> = (0..=bins.n).map(|k| bins.lo + (bins.hi - bins.lo) * k as f64 / bins.n as f64).collect();
    ens.plan
        .times
        .iter()
        .enumerate()
        .map(|(k, &t)| {
            let mut sum = vec![0.0; n + 1];
            let mut sq = vec![0.0; n + 1];
            for sample in ens.at_time(k) {
                let com = sample.iter().sum::<f64>() / n as f64;
                for (j, &y) in sample.iter().chain(std::iter::once(&com)).enumerate() {
                    sum[j] += y;
                    sq[j] += y * y;
                }
            }
            let moments: Vec<Value> = (0..=n)
                .map(|j| {
                    let mean = sum[j] / paths;
                    let var = if paths > 1.0 { (sq[j] - paths * mean * mean) / (paths - 1.0) } else { 0.0 };
                    json!({ "mean": mean, "variance": var, "stderr": (var / paths).sqrt() })
                })
                .collect();
            let hist = estimate_correlation(ens, t, &edges)?;
            Ok(json!({
                "t": t,
                "particles": moments[..n],
                "center_of_mass": moments[n],
                "histogram": hist,
            }))
        })
        .collect()
}

fn relax_residual(a: &RelaxResidualArgs, sink: &mut Sink, run: &mut Run) -> Result<(), CliError> {
    if a.x.n != a.y.n {
        return Err(CliError::Usage("x and y grids need the same point count".into()));
    }
    let bx = RelaxationBox { x: (a.x.lo, a.x.hi), y: (a.y.lo, a.y.hi), points: a.x.n };
    run.inputs = json!({ "command": "relax residual", "s": a.s, "t": a.t, "thetas": a.thetas, "box": bx });
    let start = Instant::now();
    let res = relaxation_residual(a.s, a.t, &bx, &a.thetas)?;
    let seconds = start.elapsed().as_secs_f64();
    sink.csv(&["theta", "residual"], a.thetas.iter().zip(&res).map(|(&th, &r)| vec![float(th), float(r)]))?;
    let ratio = match (res.first(), res.last()) {
        (Some(&f), Some(&l)) if f > 0.0 => Some(l / f),
        _ => None,
    };
    sink.json(json!({ "inputs": run.inputs, "outputs": { "residuals": res, "final_over_initial": ratio }, "runtime_seconds": seconds }))?;
    Ok(())
}

fn relax_recovery(a: &RelaxRecoveryArgs, sink: &mut Sink, run: &mut Run) -> Result<(), CliError> {
    let probe = match a.probe {
        ProbeName::Bump => {
            let center = match a.center {
                Some(c) => c,
                None => shared_zeros(1).map_err(|e| CliError::Numeric(e.to_string()))?.as_slice()[0],
            };
            Probe::Bump { center, width: a.width }
        }
        ProbeName::Interval => match (a.lo, a.hi) {
            (Some(lo), Some(hi)) => Probe::Interval { lo, hi },
            _ => return Err(CliError::Usage("interval probe needs --lo and --hi".into())),
        },
    };
    run.inputs = json!({ "command": "relax recovery", "ts": a.ts, "probe": probe });
    let start = Instant::now();
    let values = initial_recovery(&a.ts, probe)?;
    let seconds = start.elapsed().as_secs_f64();
    sink.csv(&["t", "value"], a.ts.iter().zip(&values).map(|(&t, &v)| vec![float(t), float(v)]))?;
    sink.json(json!({ "inputs": run.inputs, "outputs": { "values": values }, "runtime_seconds": seconds }))?;
    Ok(())
}

fn tw(a: &TwArgs, sink: &mut Sink, run: &mut Run) -> Result<(), CliError> {
    if !(a.step > 0.0) || !(a.from <= a.to) || !a.from.is_finite() || !a.to.is_finite() {
        return Err(CliError::Usage("need --from <= --to and --step > 0".into()));
    }
    let count = ((a.to - a.from) / a.step + 1e-9).floor() as usize + 1;
    let ss: Vec<f64> = (0..count).map(|k| a.from + a.step * k as f64).collect();
    run.inputs = json!({ "command": "tw", "s": ss, "nodes": a.nodes, "map_scale": a.map_scale });
    let start = Instant::now();
    let f: Vec<f64> = ss.par_iter().map(|&s| fredholm(s, a.nodes, a.map_scale)).collect::<Result<_, _>>()?;
    // a blow-up at one s leaves that cell empty instead of failing the curve
    let p: Vec<Option<f64>> = ss.par_iter().map(|&s| painleve_curve(&[s]).ok().map(|v| v[0])).collect();
    let seconds = start.elapsed().as_secs_f64();
    let rows = ss.iter().zip(&f).zip(&p).map(|((&s, &f), p)| match p {
        Some(p) => vec![float(s), float(f), float(*p), float((f - p).abs())],
        None => vec![float(s), float(f), String::new(), String::new()],
    });
    sink.csv(&["s", "F_fredholm", "F_painleve", "delta"], rows)?;
    let max_delta = f.iter().zip(&p).filter_map(|(f, p)| p.map(|p| (f - p).abs())).fold(0.0, f64::max);
    let failed: Vec<f64> = ss.iter().zip(&p).filter(|(_, p)| p.is_none()).map(|(&s, _)| s).collect();
    let monotone = f.windows(2).all(|w| w[1] >= w[0] - 1e-12);
    sink.json(json!({
        "inputs": run.inputs,
        "tolerances": { "painleve_rtol": 1e-13 },
        "outputs": { "max_delta": max_delta, "painleve_failures": failed, "fredholm_monotone": monotone },
        "runtime_seconds": seconds,
    }))?;
    Ok(())
}

fn parse_suite(s: &str) -> Result<Vec<u8>, CliError> {
    if s.trim() == "all" {
        return Ok(all_ids());
    }
    let ids: Vec<u8> =
        s.split(',').map(|p| p.trim().parse::<u8>().map_err(|_| CliError::Usage(format!("bad criterion id {p:?}")))).collect::<Result<_, _>>()?;
    if let Some(bad) = ids.iter().find(|id| !CRITERIA.iter().any(|c| c.0 == **id)) {
        return Err(CliError::Usage(format!("no criterion {bad}")));
    }
    Ok(ids)
}

fn verify(a: &VerifyArgs, sink: &mut Sink, run: &mut Run) -> Result<(), CliError> {
    let ids = parse_suite(&a.suite)?;
    run.inputs = json!({ "command": "verify", "suite": ids });
    let mut outcomes = Vec::new();
    for id in &ids {
        let o = run_criterion(*id);
        println!("{:>3}  {}  {:<30} {:>8.2}s  {}", o.id, if o.passed { "PASS" } else { "FAIL" }, o.title, o.seconds, o.detail);
        outcomes.push(o);
    }
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    println!("{} of {} passed", outcomes.len() - failed, outcomes.len());
    sink.csv(
        &["id", "title", "passed", "seconds"],
        outcomes.iter().map(|o| vec![o.id.to_string(), o.title.to_string(), o.passed.to_string(), float(o.seconds)]),
    )?;
    sink.json(json!({ "inputs": run.inputs, "passed": failed == 0, "outcomes": outcomes }))?;
    if failed > 0 {
        return Err(CliError::SuiteFailed { failed, total: outcomes.len() });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_ids() {
        assert_eq!(parse_suite("all").unwrap().len(), 12);
        assert_eq!(parse_suite("2, 11").unwrap(), vec![2, 11]);
        assert!(parse_suite("13").is_err());
        assert!(parse_suite("x").is_err());
    }
}
