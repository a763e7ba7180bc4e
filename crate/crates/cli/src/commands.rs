use std::path::Path;
use std::time::Instant;

use meo_core::oracles::{random_instance, InstanceSpec, PRNG_NAME};
use meo_core::{
    measured_relative_entropy, measured_renyi, smoothness_for, spectral_decompose, Config64, IterationLimit, Kind64,
    Report64, SolverConfig,
};
use rayon::prelude::*;
use serde::Serialize;

use crate::args::{BenchArgs, Command, ComputeArgs, QuantityArg, ValidateArgs};
use crate::output::{fmt_f64, to_csv, to_json, write_atomic};
use crate::record::ResultRecord;
use crate::state::StateFile;
use crate::{CliError, EXIT_NOT_CONVERGED, EXIT_OK};

pub const TRACE_HEADER: [&str; 3] = ["iter", "objective", "grad_hs_norm"];
pub const BENCH_HEADER: [&str; 6] = ["seed", "t", "kappa", "iterations", "value", "wall_time_seconds"];

pub fn dispatch(command: &Command) -> Result<i32, CliError> {
    match command {
        Command::Compute(a) => compute(a),
        Command::Bench(a) => bench(a),
        Command::Validate(a) => validate(a),
    }
}

fn solver_config(epsilon: f64, max_iters: Option<usize>, trace: bool) -> Result<Config64, CliError> {
    let mut c = SolverConfig::new(epsilon)?.with_trace(trace);
    if let Some(n) = max_iters {
        c = c.with_max_iterations(IterationLimit::Fixed(n));
    }
    Ok(c)
}

fn kind_for(quantity: QuantityArg, alpha: Option<f64>) -> Result<Kind64, CliError> {
    match (quantity, alpha) {
        (QuantityArg::Relent, None) => Ok(Kind64::MeasuredRelEnt),
        (QuantityArg::Relent, Some(_)) => Err(CliError::Usage("--alpha only applies to --quantity renyi".into())),
        (QuantityArg::Renyi, None) => Err(CliError::Usage("--quantity renyi requires --alpha".into())),
        (QuantityArg::Renyi, Some(a)) => Ok(Kind64::renyi(a)?),
    }
}

fn solve(inst: &meo_core::Instance64, config: &Config64) -> Result<Report64, CliError> {
    Ok(match inst.kind().alpha() {
        None => measured_relative_entropy(inst.rho(), inst.sigma(), config)?,
        Some(a) => measured_renyi(inst.rho(), inst.sigma(), a, config)?,
    })
}

pub fn compute(args: &ComputeArgs) -> Result<i32, CliError> {
    let kind = kind_for(args.quantity, args.alpha)?;
    let config = solver_config(args.epsilon, args.max_iters, args.trace.is_some())?;
    let inst = StateFile::load(&args.input)?.instance(kind)?;
    let start = Instant::now();
    let report = solve(&inst, &config)?;
    let elapsed = start.elapsed().as_secs_f64();
    let record = ResultRecord::from_report(&report, args.epsilon, elapsed);

    if let (Some(path), Some(trace)) = (&args.trace, &report.solver.trace) {
        let rows: Vec<Vec<String>> = trace
            .iter()
            .map(|t| vec![t.iteration.to_string(), fmt_f64(t.objective), fmt_f64(t.grad_hs_norm)])
            .collect();
        write_atomic(path, &to_csv(&TRACE_HEADER, &rows)?)?;
    }
    let json = to_json(&record)?;
    match &args.output {
        Some(path) => write_atomic(path, json.as_bytes())?,
        None => print!("{json}"),
    }
    if report.solver.converged {
        Ok(EXIT_OK)
    } else {
        eprintln!("warning: {}", report.solver.check().unwrap_err());
        Ok(EXIT_NOT_CONVERGED)
    }
}

struct BenchRow {
    seed: u64,
    t_index: usize,
    t: f64,
    kappa: f64,
    iterations: usize,
    value: f64,
    converged: bool,
    wall: f64,
}

fn bench_cell(
    args: &BenchArgs,
    kind: Kind64,
    config: &Config64,
    seed: u64,
    t_index: usize,
) -> Result<BenchRow, CliError> {
    let t = args.mixing[t_index];
    let inst = random_instance(&InstanceSpec::new(args.dim, seed).mixing(t))?.with_kind(kind)?;
    let start = Instant::now();
    let report = solve(&inst, config)?;
    let wall = if args.timing { start.elapsed().as_secs_f64() } else { 0.0 };
    Ok(BenchRow {
        seed,
        t_index,
        t,
        kappa: report.profile.kappa,
        iterations: report.solver.iterations,
        value: report.value,
        converged: report.solver.converged,
        wall,
    })
}

#[derive(Serialize)]
struct BenchMeta<'a> {
    prng: &'a str,
    dim: usize,
    seeds: u64,
    mixing: &'a [f64],
    epsilon: f64,
    alpha: Option<f64>,
    timing: bool,
}

fn thread_pool() -> Result<rayon::ThreadPool, CliError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var("MEO_THREADS") {
        let n: usize = v.parse().map_err(|_| CliError::Usage(format!("MEO_THREADS={v} is not a thread count")))?;
        builder = builder.num_threads(n);
    }
    builder.build().map_err(|e| CliError::Usage(e.to_string()))
}

/// Sidecar metadata path: `<output>.meta.json`.
pub fn meta_path(output: &Path) -> std::path::PathBuf {
    let mut name = output.as_os_str().to_owned();
    name.push(".meta.json");
    name.into()
}

pub fn bench(args: &BenchArgs) -> Result<i32, CliError> {
    if args.dim == 0 || args.seeds == 0 {
        return Err(CliError::Usage("--dim and --seeds must be positive".into()));
    }
    if let Some(t) = args.mixing.iter().find(|t| !(**t > 0.0 && **t <= 1.0)) {
        return Err(CliError::Usage(format!("mixing weight {t} outside (0, 1]")));
    }
    let kind = match args.alpha {
        Some(a) => Kind64::renyi(a)?,
        None => Kind64::MeasuredRelEnt,
    };
    let config = solver_config(args.epsilon, None, false)?;
    let cells: Vec<(u64, usize)> = (0..args.seeds).flat_map(|s| (0..args.mixing.len()).map(move |i| (s, i))).collect();
    let mut rows = thread_pool()?.install(|| {
        cells.par_iter().map(|&(seed, i)| bench_cell(args, kind, &config, seed, i)).collect::<Result<Vec<_>, _>>()
    })?;
    rows.sort_by_key(|r| (r.seed, r.t_index));

    let table: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                r.seed.to_string(),
                fmt_f64(r.t),
                fmt_f64(r.kappa),
                r.iterations.to_string(),
                fmt_f64(r.value),
                fmt_f64(r.wall),
            ]
        })
        .collect();
    let meta = BenchMeta {
        prng: PRNG_NAME,
        dim: args.dim,
        seeds: args.seeds,
        mixing: &args.mixing,
        epsilon: args.epsilon,
        alpha: args.alpha,
        timing: args.timing,
    };
    write_atomic(&args.output, &to_csv(&BENCH_HEADER, &table)?)?;
    write_atomic(&meta_path(&args.output), to_json(&meta)?.as_bytes())?;

    let stalled = rows.iter().filter(|r| !r.converged).count();
    if stalled > 0 {
        eprintln!("warning: {stalled} of {} runs hit the iteration cap", rows.len());
        return Ok(EXIT_NOT_CONVERGED);
    }
    Ok(EXIT_OK)
}

pub fn validate(args: &ValidateArgs) -> Result<i32, CliError> {
    let file = StateFile::load(&args.input)?;
    let (rho, sigma) = file.matrices()?;
    let inst = meo_core::Instance64::new(rho, sigma, Kind64::MeasuredRelEnt)?;
    let kappa = smoothness_for(&inst)?.kappa;
    println!("dim: {}", inst.dim());
    println!("lambda_min(rho): {}", fmt_f64(spectral_decompose(inst.rho())?.min_eigenvalue()));
    println!("lambda_min(sigma): {}", fmt_f64(spectral_decompose(inst.sigma())?.min_eigenvalue()));
    println!("kappa(relent): {}", fmt_f64(kappa));
    Ok(EXIT_OK)
}
